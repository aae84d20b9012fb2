#include "pbt/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pbt {

Permutation identity_permutation(int n) {
  if (n < 0) throw std::invalid_argument("negative permutation size");
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation transposition(int n, int a, int b) {
  if (a < 1 || b < 1 || a > n || b > n) throw std::invalid_argument("transposition label out of range");
  Permutation p = identity_permutation(n);
  std::swap(p[static_cast<std::size_t>(a - 1)], p[static_cast<std::size_t>(b - 1)]);
  return p;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw std::invalid_argument("composing permutations of different degree");
  Permutation out(sigma.size());
  for (std::size_t k = 0; k < tau.size(); ++k) out[k] = sigma[static_cast<std::size_t>(tau[k])];
  return out;
}

Permutation inverse(const Permutation& sigma) {
  Permutation out(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) out[static_cast<std::size_t>(sigma[k])] = static_cast<int>(k);
  return out;
}

bool is_permutation(const Permutation& sigma) {
  std::vector<char> seen(sigma.size(), 0);
  for (int v : sigma) {
    if (v < 0 || static_cast<std::size_t>(v) >= sigma.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

std::vector<int> cycle_type(const Permutation& sigma) {
  std::vector<int> out;
  std::vector<char> seen(sigma.size(), 0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(sigma[j])) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

int cycle_count(const Permutation& sigma) { return static_cast<int>(cycle_type(sigma).size()); }

std::vector<int> adjacent_word(const Permutation& sigma) {
  // p <- p * s_j swaps the entries at positions j, j+1; once sorted,
  // id = sigma s_{j1} ... s_{jm}, so sigma = s_{jm} ... s_{j1}.
  Permutation p = sigma;
  std::vector<int> applied;
  const int n = static_cast<int>(p.size());
  for (int pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (p[static_cast<std::size_t>(j)] > p[static_cast<std::size_t>(j + 1)]) {
        std::swap(p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j + 1)]);
        applied.push_back(j);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  std::reverse(applied.begin(), applied.end());
  return applied;
}

std::vector<int> adjacent_word_by_values(const Permutation& sigma) {
  // p <- s_v * p exchanges the values v, v+1; once sorted,
  // id = s_{vm} ... s_{v1} sigma, so sigma = s_{v1} ... s_{vm}.
  Permutation pos = inverse(sigma);
  std::vector<int> applied;
  const int n = static_cast<int>(pos.size());
  // sorting values of p is sorting positions of p^-1 from the right
  for (int pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (int v = n - 2; v >= 0; --v) {
      if (pos[static_cast<std::size_t>(v)] > pos[static_cast<std::size_t>(v + 1)]) {
        std::swap(pos[static_cast<std::size_t>(v)], pos[static_cast<std::size_t>(v + 1)]);
        applied.push_back(v);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  return applied;
}

std::vector<Permutation> all_permutations(int n, std::vector<int>* steps) {
  std::vector<Permutation> out;
  if (steps) steps->clear();
  Permutation p = identity_permutation(n);
  out.push_back(p);
  if (n < 2) return out;
  // Even's speedup of Steinhaus-Johnson-Trotter on the image list
  std::vector<int> dir(static_cast<std::size_t>(n), -1);
  dir[0] = 0;
  while (true) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (dir[static_cast<std::size_t>(i)] == 0) continue;
      if (best < 0 || p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(best)]) best = i;
    }
    if (best < 0) break;
    const int next = best + dir[static_cast<std::size_t>(best)];
    const int j = std::min(best, next);
    std::swap(p[static_cast<std::size_t>(best)], p[static_cast<std::size_t>(next)]);
    std::swap(dir[static_cast<std::size_t>(best)], dir[static_cast<std::size_t>(next)]);
    const int moved = next;
    const int value = p[static_cast<std::size_t>(moved)];
    if (moved == 0 || moved == n - 1 ||
        p[static_cast<std::size_t>(moved + dir[static_cast<std::size_t>(moved)])] > value)
      dir[static_cast<std::size_t>(moved)] = 0;
    for (int i = 0; i < n; ++i) {
      if (p[static_cast<std::size_t>(i)] > value) dir[static_cast<std::size_t>(i)] = i < moved ? 1 : -1;
    }
    out.push_back(p);
    if (steps) steps->push_back(j);
  }
  return out;
}

}  // namespace pbt

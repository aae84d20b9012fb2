#pragma once

#include <vector>

namespace pbt {

/// Permutation of {0..n-1} stored as its image list: sigma[k] is where k goes.
/// Composition is right to left, (sigma * tau)(k) = sigma(tau(k)).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);

/// The transposition (a b) of S(n) with 1-based labels; a == b gives the identity.
Permutation transposition(int n, int a, int b);

Permutation compose(const Permutation& sigma, const Permutation& tau);
Permutation inverse(const Permutation& sigma);
bool is_permutation(const Permutation& sigma);
int cycle_count(const Permutation& sigma);

/// Cycle lengths sorted descending, e.g. {2,1} for a transposition in S(3).
std::vector<int> cycle_type(const Permutation& sigma);

/// Reduced word sigma = s_{w[0]} s_{w[1]} ... with s_k swapping k and k+1
/// (0-based), obtained by bubble-sorting positions.
std::vector<int> adjacent_word(const Permutation& sigma);

/// A second reduced word for sigma, obtained by bubble-sorting values.
std::vector<int> adjacent_word_by_values(const Permutation& sigma);

/// All of S(n) in Steinhaus-Johnson-Trotter order; consecutive entries differ
/// by right multiplication with one adjacent transposition, whose index is
/// returned through `steps` (steps[i] links entry i to entry i+1).
std::vector<Permutation> all_permutations(int n, std::vector<int>* steps = nullptr);

}  // namespace pbt

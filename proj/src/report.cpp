#include "pbt/report.hpp"

#include <cmath>

namespace pbt {

void OracleReport::add(std::string label, double deviation, double tolerance) {
  items.push_back({std::move(label), deviation, tolerance});
}

void OracleReport::merge(const OracleReport& other) {
  for (const CheckItem& item : other.items) items.push_back({other.check + ": " + item.label, item.deviation, item.tolerance});
}

bool OracleReport::pass() const {
  for (const CheckItem& item : items)
    if (!item.pass()) return false;
  return true;
}

double OracleReport::max_deviation() const {
  double out = 0.0;
  for (const CheckItem& item : items) {
    if (std::isnan(item.deviation)) return item.deviation;
    if (item.deviation > out) out = item.deviation;
  }
  return out;
}

const CheckItem* OracleReport::worst() const {
  const CheckItem* out = nullptr;
  double worst_ratio = -1.0;
  for (const CheckItem& item : items) {
    if (!item.pass()) return &item;
    const double ratio = item.tolerance > 0 ? item.deviation / item.tolerance : item.deviation;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      out = &item;
    }
  }
  return out;
}

}  // namespace pbt

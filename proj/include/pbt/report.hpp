#pragma once

#include <string>
#include <vector>

namespace pbt {

struct CheckItem {
  std::string label;
  double deviation = 0.0;
  double tolerance = 0.0;

  bool pass() const { return deviation <= tolerance; }
};

/// Outcome of one verification check. Each item carries its own tolerance;
/// the report passes iff every item does.
struct OracleReport {
  std::string check;
  std::vector<CheckItem> items;

  void add(std::string label, double deviation, double tolerance);
  void merge(const OracleReport& other);
  bool pass() const;
  double max_deviation() const;
  /// First failing item, or the item closest to its tolerance when all pass.
  const CheckItem* worst() const;
};

}  // namespace pbt

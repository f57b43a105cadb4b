#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace glevy {

struct CheckItem {
  std::string name;
  bool passed = true;
  bool warning = false;
  double value = 0.0;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckItem> items;

  bool all_passed() const {
    for (const auto& c : items)
      if (!c.passed) return false;
    return true;
  }
  bool any_warning() const {
    for (const auto& c : items)
      if (c.warning) return true;
    return false;
  }
  const CheckItem* find(const std::string& name) const {
    for (const auto& c : items)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Structural problems (mismatched dimensions, malformed input) are reported
// by throwing this, as opposed to a ValidationReport row that fails.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glevy

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "glevy/uncertainty.hpp"

namespace glevy {

// Uniform binning over a box. Internal boundaries assign to the upper bin;
// the top bin is right-closed; states outside the box clamp.
struct StateBinning {
  Vector lo;
  Vector hi;
  int bins_per_dim = 1;

  int total_bins() const;
  int bin_of(const Vector& state) const;
};

// One control: a previsible piecewise-constant selection of (jump measure,
// volatility matrix) indices over the control grid. The drift slot of the
// control is identically zero.
struct Scenario {
  struct Cell {
    int nu = 0;
    int q = 0;
    bool operator==(const Cell&) const = default;
  };

  std::vector<double> control_times;           // 0 = t_0 < ... < t_M = T
  std::vector<Cell> fixed;                     // size M when not feedback
  std::optional<StateBinning> binning;         // present iff feedback
  std::vector<std::vector<Cell>> table;        // [interval][bin] when feedback

  bool is_feedback() const { return binning.has_value(); }
  std::size_t intervals() const { return control_times.size() - 1; }

  // Selection on interval i given the state at the interval start.
  Cell at(std::size_t interval, const Vector& state) const;

  void validate_against(const UncertaintySet& set) const;

  // Content signature on a refined grid (fixed selections only): serializes
  // the concrete measure/matrix chosen on every simulation step, so nesting
  // of families with different control resolutions or index orders can be
  // checked by value.
  std::string signature(const UncertaintySet& set, double T, double dt) const;
};

enum class FamilyMode { Single, ProductLattice, FeedbackLattice };

struct ScenarioFamily {
  FamilyMode mode = FamilyMode::Single;
  int control_intervals = 1;
  std::size_t cap = 65536;
  bool allow_truncation = false;
  Scenario::Cell single_cell{0, 0};
  StateBinning binning;  // used by FeedbackLattice

  std::string mode_name() const;
};

struct EnumeratedScenarios {
  std::vector<Scenario> scenarios;
  bool truncated = false;
};

// Deterministic enumeration. Product/feedback lattices run a mixed-radix
// counter with the earliest interval (and lowest bin) as the most
// significant digit; each digit orders cells as nu * |Q| + q.
EnumeratedScenarios enumerate_scenarios(const ScenarioFamily& family, const UncertaintySet& set,
                                        double T);

}  // namespace glevy

#include "glevy/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace glevy {

int StateBinning::total_bins() const {
  int total = 1;
  for (int i = 0; i < lo.size(); ++i) total *= bins_per_dim;
  return total;
}

int StateBinning::bin_of(const Vector& state) const {
  if (state.size() != lo.size()) throw StructuralError("StateBinning: state dimension mismatch");
  int index = 0;
  for (int i = 0; i < state.size(); ++i) {
    const double width = (hi[i] - lo[i]) / bins_per_dim;
    int b;
    if (state[i] < lo[i]) {
      b = 0;
    } else if (state[i] >= hi[i]) {
      b = bins_per_dim - 1;
    } else {
      b = static_cast<int>(std::floor((state[i] - lo[i]) / width));
      if (b >= bins_per_dim) b = bins_per_dim - 1;
    }
    index = index * bins_per_dim + b;
  }
  return index;
}

Scenario::Cell Scenario::at(std::size_t interval, const Vector& state) const {
  if (interval >= intervals()) throw StructuralError("Scenario::at: interval out of range");
  if (!is_feedback()) return fixed[interval];
  return table[interval][static_cast<std::size_t>(binning->bin_of(state))];
}

void Scenario::validate_against(const UncertaintySet& set) const {
  if (control_times.size() < 2) throw StructuralError("Scenario: control grid too short");
  for (std::size_t i = 1; i < control_times.size(); ++i)
    if (!(control_times[i] > control_times[i - 1]))
      throw StructuralError("Scenario: control grid not strictly increasing");
  auto check_cell = [&](const Cell& c) {
    if (c.nu < 0 || c.nu >= static_cast<int>(set.jump_family.size()))
      throw StructuralError("Scenario: jump-measure index out of range");
    if (c.q < 0 || c.q >= static_cast<int>(set.vol_family.size()))
      throw StructuralError("Scenario: volatility index out of range");
  };
  if (is_feedback()) {
    if (table.size() != intervals()) throw StructuralError("Scenario: table size mismatch");
    const std::size_t bins = static_cast<std::size_t>(binning->total_bins());
    for (const auto& row : table) {
      if (row.size() != bins) throw StructuralError("Scenario: table row size mismatch");
      for (const auto& c : row) check_cell(c);
    }
  } else {
    if (fixed.size() != intervals()) throw StructuralError("Scenario: selection size mismatch");
    for (const auto& c : fixed) check_cell(c);
  }
}

namespace {

void append_hex(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a,", v);
  out += buf;
}

void append_measure(std::string& out, const JumpMeasure& nu) {
  if (nu.density) {
    out += "density[";
    append_hex(out, nu.density->lo);
    append_hex(out, nu.density->hi);
    append_hex(out, nu.density->declared_mass);
    out += "]";
    return;
  }
  out += "atoms[";
  for (std::size_t k = 0; k < nu.atoms.size(); ++k) {
    for (int i = 0; i < nu.atoms[k].size(); ++i) append_hex(out, nu.atoms[k][i]);
    out += "@";
    append_hex(out, nu.weights[k]);
    out += ";";
  }
  out += "]";
}

}  // namespace

std::string Scenario::signature(const UncertaintySet& set, double T, double dt) const {
  if (is_feedback())
    throw StructuralError("Scenario::signature: feedback scenarios have no static signature");
  const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
  std::string out;
  std::size_t interval = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    while (interval + 1 < intervals() && t >= control_times[interval + 1] - 1e-12) ++interval;
    const Cell c = fixed[interval];
    out += "{";
    append_measure(out, set.jump_family[static_cast<std::size_t>(c.nu)]);
    out += "|Q:";
    const Matrix& q = set.vol_family[static_cast<std::size_t>(c.q)];
    for (int r = 0; r < q.rows(); ++r)
      for (int col = 0; col < q.cols(); ++col) append_hex(out, q(r, col));
    out += "}";
  }
  return out;
}

std::string ScenarioFamily::mode_name() const {
  switch (mode) {
    case FamilyMode::Single: return "single";
    case FamilyMode::ProductLattice: return "product-lattice";
    case FamilyMode::FeedbackLattice: return "feedback-lattice";
  }
  return "?";
}

EnumeratedScenarios enumerate_scenarios(const ScenarioFamily& family, const UncertaintySet& set,
                                        double T) {
  if (family.control_intervals < 1)
    throw StructuralError("enumerate_scenarios: need at least one control interval");
  if (family.cap < 1) throw StructuralError("enumerate_scenarios: cap must be >= 1");
  if (!(T > 0.0)) throw StructuralError("enumerate_scenarios: horizon must be positive");

  std::vector<double> grid(static_cast<std::size_t>(family.control_intervals) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = T * static_cast<double>(i) / family.control_intervals;

  const std::size_t choices = set.jump_family.size() * set.vol_family.size();
  const int nq = static_cast<int>(set.vol_family.size());
  auto cell_of = [&](std::size_t digit) {
    return Scenario::Cell{static_cast<int>(digit) / nq, static_cast<int>(digit) % nq};
  };

  EnumeratedScenarios out;

  if (family.mode == FamilyMode::Single) {
    Scenario s;
    s.control_times = grid;
    s.fixed.assign(static_cast<std::size_t>(family.control_intervals), family.single_cell);
    s.validate_against(set);
    out.scenarios.push_back(std::move(s));
    return out;
  }

  std::size_t slots;
  if (family.mode == FamilyMode::ProductLattice) {
    slots = static_cast<std::size_t>(family.control_intervals);
  } else {
    if (family.binning.lo.size() == 0)
      throw StructuralError("enumerate_scenarios: feedback lattice needs a state box");
    slots = static_cast<std::size_t>(family.control_intervals) *
            static_cast<std::size_t>(family.binning.total_bins());
  }

  // count = choices^slots, saturating at cap+1 to avoid overflow
  std::size_t count = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    if (count > family.cap) break;
    count *= choices;
  }
  const bool over_cap = count > family.cap;
  if (over_cap && !family.allow_truncation)
    throw StructuralError("enumerate_scenarios: family size exceeds cap " +
                          std::to_string(family.cap) + " (truncation not allowed)");
  const std::size_t keep = over_cap ? family.cap : count;
  out.truncated = over_cap;

  std::vector<std::size_t> digits(slots, 0);
  for (std::size_t n = 0; n < keep; ++n) {
    Scenario s;
    s.control_times = grid;
    if (family.mode == FamilyMode::ProductLattice) {
      s.fixed.resize(slots);
      for (std::size_t i = 0; i < slots; ++i) s.fixed[i] = cell_of(digits[i]);
    } else {
      s.binning = family.binning;
      const std::size_t bins = static_cast<std::size_t>(family.binning.total_bins());
      s.table.assign(static_cast<std::size_t>(family.control_intervals),
                     std::vector<Scenario::Cell>(bins));
      for (std::size_t i = 0; i < static_cast<std::size_t>(family.control_intervals); ++i)
        for (std::size_t b = 0; b < bins; ++b) s.table[i][b] = cell_of(digits[i * bins + b]);
    }
    s.validate_against(set);
    out.scenarios.push_back(std::move(s));
    // increment the mixed-radix counter, last slot fastest
    for (std::size_t i = slots; i-- > 0;) {
      if (++digits[i] < choices) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace glevy

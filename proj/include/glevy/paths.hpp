#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "glevy/rng.hpp"
#include "glevy/scenario.hpp"
#include "glevy/uncertainty.hpp"

namespace glevy {

// One realized driver trajectory on a uniform grid: Brownian increments,
// the continuous part B with its exact quadratic covariation, the jump
// events, and the canonical process X = B + jump sum. Node arrays are flat
// (node-major, dim stride) and exposed through Eigen maps.
struct DriverPath {
  double dt = 0.0;
  double horizon = 0.0;
  int dim = 1;
  std::vector<double> brownian_increments;  // steps * dim
  std::vector<double> b;                    // (steps+1) * dim
  std::vector<double> x;                    // (steps+1) * dim
  std::vector<double> qv;                   // (steps+1) * dim * dim, cumulative
  struct JumpEvent {
    std::size_t step = 0;  // event time lies in (step*dt, (step+1)*dt]
    double time = 0.0;
    Vector mark;
  };
  std::vector<JumpEvent> events;        // sorted by time
  std::vector<Scenario::Cell> active;   // per-step (nu, Q) selection
  SeedTriple seed;

  std::size_t steps() const { return active.size(); }
  double time_at(std::size_t i) const { return dt * static_cast<double>(i); }

  Eigen::Map<const Vector> dw_at(std::size_t i) const {
    return {brownian_increments.data() + i * dim, dim};
  }
  Eigen::Map<const Vector> b_at(std::size_t i) const { return {b.data() + i * dim, dim}; }
  Eigen::Map<const Vector> x_at(std::size_t i) const { return {x.data() + i * dim, dim}; }
  Eigen::Map<const Matrix> qv_at(std::size_t i) const {
    return {qv.data() + i * dim * dim, dim, dim};
  }
  Matrix qv_increment(std::size_t i) const { return qv_at(i + 1) - qv_at(i); }
};

// Simulates the driver under one scenario. Brownian increments are centered
// Gaussians with covariance dt*I scaled through the active Q; the covariation
// increment is the exact conditional value Q Q^T dt; per step the jump count
// is Poisson(mass * dt) with marks i.i.d. from the active measure. Identical
// seed triples give bit-identical paths.
DriverPath simulate_driver(const Scenario& scenario, const UncertaintySet& set, double horizon,
                           double dt, const SeedTriple& seed);
void simulate_driver_into(DriverPath& out, const Scenario& scenario, const UncertaintySet& set,
                          double horizon, double dt, const SeedTriple& seed);

// Sum of f(time, mark) over recorded events with time in (from, to].
double random_measure_sum(const DriverPath& path,
                          const std::function<double(double, const Vector&)>& f, double from,
                          double to);

// Coefficients of the SDE
//   dY = b dt + h_ij d<B^i,B^j> + sigma dB + integral of f dL.
// h is stored upper-triangular (h_ij = h_ji); absent callbacks mean zero.
struct CoefficientSet {
  int dim = 1;
  std::function<Vector(double, const Vector&)> drift;
  std::function<std::vector<Vector>(double, const Vector&)> h_upper;
  std::function<Matrix(double, const Vector&)> sigma;
  std::function<Vector(double, const Vector&, const Vector&)> jump;
  double recorded_c1 = 0.0;
  double recorded_c2 = 0.0;

  static std::size_t h_index(int i, int j, int dim);  // i <= j
  static CoefficientSet pure_driver(int dim);
};

struct BlowupError : std::runtime_error {
  double time;
  explicit BlowupError(double t)
      : std::runtime_error("state became non-finite at t=" + std::to_string(t)), time(t) {}
};

// Euler solution along one driver, with jumps applied in event-time order
// after the continuous part of each step, each using the pre-jump state.
struct PathRecord {
  DriverPath driver;
  std::vector<double> y;  // (steps+1) * dim
  struct YJump {
    std::size_t event_index = 0;
    double time = 0.0;
    Vector y_pre;
    Vector y_post;
  };
  std::vector<YJump> y_jumps;

  Eigen::Map<const Vector> y_at(std::size_t i) const {
    return {y.data() + i * driver.dim, driver.dim};
  }
  Eigen::Map<const Vector> terminal_y() const { return y_at(driver.steps()); }
};

PathRecord simulate_sde(const CoefficientSet& coeffs, const DriverPath& driver, const Vector& y0);

// Fills record.y / record.y_jumps from record.driver. A null coefficient set
// means the pure driver: Y = y0 + X node-for-node, no truncation error.
void run_euler_on_driver(PathRecord& record, const CoefficientSet* coeffs, const Vector& y0);

// Driver + Euler in one pass, reusing the record's buffers.
void simulate_path_into(PathRecord& record, const Scenario& scenario, const UncertaintySet& set,
                        const CoefficientSet* coeffs, const Vector& y0, double horizon, double dt,
                        const SeedTriple& seed);

struct CoefficientProbeOptions {
  Vector box_lo;
  Vector box_hi;
  double horizon = 1.0;
  std::size_t probe_pairs = 256;
  std::uint64_t seed = 2024;
};

// Empirical Lipschitz / linear-growth check on random probe pairs, including
// the jump term through the worst-case squared integral. Divergence of the
// ratio as probes shrink toward a point is reported as a warning.
ValidationReport validate_coefficients(const CoefficientSet& coeffs, const UncertaintySet& set,
                                       const CoefficientProbeOptions& options);

}  // namespace glevy

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "glevy/checks.hpp"

namespace glevy {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Bounded-support density on the line, away from the origin. Densities are
// only supported in dimension 1; multidimensional measures use atoms.
struct DensitySpec {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> pdf;
  double declared_mass = 0.0;  // may be +inf, which the validator rejects
};

// A finite-activity jump intensity measure on R^d \ {0}.
struct JumpMeasure {
  int dimension = 1;
  std::vector<Vector> atoms;
  std::vector<double> weights;
  std::optional<DensitySpec> density;

  static JumpMeasure zero(int dim);
  static JumpMeasure atomic(std::vector<Vector> atoms, std::vector<double> weights);
  static JumpMeasure atomic1d(std::vector<std::pair<double, double>> atom_weight);
  static JumpMeasure from_density(DensitySpec spec);

  bool is_atomic() const { return !density.has_value(); }
  double total_mass() const;
};

// Integral of phi against one measure: exact weighted sum for atoms,
// fixed Gauss-Legendre quadrature for densities.
double jump_integral(const std::function<double(const Vector&)>& phi, const JumpMeasure& nu,
                     int quadrature_nodes = 64);

// Base measure mu plus one pointwise map per target measure; images[j][k]
// is where the k-th mu-atom lands under the j-th map.
struct BaseMeasureTransport {
  JumpMeasure base;
  std::vector<std::vector<Vector>> images;
};

// Exact pushforward identity on atoms: each target atom's weight equals the
// summed base weights of its preimages.
bool pushforward_matches(const BaseMeasureTransport& transport,
                         const std::vector<JumpMeasure>& targets, double tol = 1e-12);

// The scenario set U = V x {0} x Q: finite families of jump measures and
// volatility matrices, zero drift throughout.
struct UncertaintySet {
  int dimension = 1;
  std::vector<JumpMeasure> jump_family;
  std::vector<Matrix> vol_family;
  bool elliptic = false;
  double ellipticity_floor = 0.0;
  int quadrature_nodes = 64;

  static UncertaintySet make1d(std::vector<std::pair<double, double>> atoms_mass_of_single_nu,
                               std::vector<double> vols, double floor = 0.0);
};

// Checks the boundedness display, the q-moment condition, the mass bound,
// and (when flagged elliptic) the eigenvalue floor of QQ*.
ValidationReport validate_uncertainty_set(const UncertaintySet& set, double q_moment);

struct GResult {
  double value = 0.0;
  int argmax = -1;
};

// G(A) = 1/2 max_Q tr(Q Q^T A) over the volatility family, A symmetric.
GResult G_of(const Matrix& a, const UncertaintySet& set);

// Inverse of the scalar G in dimension 1; requires the elliptic flag.
double G_inverse_1d(double y, const UncertaintySet& set);

struct SupIntegral {
  double value = 0.0;
  int argmax = -1;
};

// max over the jump family of the integral of phi.
SupIntegral sup_jump_integral(const std::function<double(const Vector&)>& phi,
                              const UncertaintySet& set);

// Levy-Khintchine functional on g with g(0)=0:
// max over V x Q of [ integral of g dnu + 1/2 tr(H_g(0) Q Q^T) ].
// The Hessian at 0 is taken from hessian_at_zero when given, otherwise by
// central differences with the given step.
double g_x_functional(const std::function<double(const Vector&)>& g, const UncertaintySet& set,
                      const std::optional<Matrix>& hessian_at_zero = std::nullopt,
                      double fd_step = 1e-5);

}  // namespace glevy

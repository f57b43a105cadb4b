#include "glevy/uncertainty.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "glevy/quadrature.hpp"

namespace glevy {

namespace {

constexpr double kAtomTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

JumpMeasure JumpMeasure::zero(int dim) {
  JumpMeasure m;
  m.dimension = dim;
  return m;
}

JumpMeasure JumpMeasure::atomic(std::vector<Vector> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size())
    throw StructuralError("JumpMeasure: atom/weight count mismatch");
  JumpMeasure m;
  m.dimension = atoms.empty() ? 1 : static_cast<int>(atoms.front().size());
  for (const auto& a : atoms)
    if (a.size() != m.dimension) throw StructuralError("JumpMeasure: mixed atom dimensions");
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!(weights[k] > 0.0)) throw StructuralError("JumpMeasure: weights must be positive");
    if (atoms[k].norm() <= kAtomTol)
      throw StructuralError("JumpMeasure: atom at the origin is not allowed");
  }
  m.atoms = std::move(atoms);
  m.weights = std::move(weights);
  return m;
}

JumpMeasure JumpMeasure::atomic1d(std::vector<std::pair<double, double>> atom_weight) {
  std::vector<Vector> atoms;
  std::vector<double> weights;
  for (auto& [u, w] : atom_weight) {
    Vector a(1);
    a[0] = u;
    atoms.push_back(a);
    weights.push_back(w);
  }
  return atomic(std::move(atoms), std::move(weights));
}

JumpMeasure JumpMeasure::from_density(DensitySpec spec) {
  if (!(spec.lo < spec.hi)) throw StructuralError("DensitySpec: need lo < hi");
  if (!spec.pdf) throw StructuralError("DensitySpec: missing pdf");
  JumpMeasure m;
  m.dimension = 1;
  m.density = std::move(spec);
  return m;
}

double JumpMeasure::total_mass() const {
  if (density) return density->declared_mass;
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double jump_integral(const std::function<double(const Vector&)>& phi, const JumpMeasure& nu,
                     int quadrature_nodes) {
  if (nu.density) {
    Vector u(1);
    auto f = [&](double z) {
      u[0] = z;
      return phi(u) * nu.density->pdf(z);
    };
    return fixed_quadrature(f, nu.density->lo, nu.density->hi, quadrature_nodes);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < nu.atoms.size(); ++k) {
    const double v = phi(nu.atoms[k]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "jump_integral: integrand non-finite at atom " << k;
      throw std::runtime_error(os.str());
    }
    sum += nu.weights[k] * v;
  }
  return sum;
}

bool pushforward_matches(const BaseMeasureTransport& transport,
                         const std::vector<JumpMeasure>& targets, double tol) {
  if (!transport.base.is_atomic()) return false;
  if (transport.images.size() != targets.size()) return false;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const JumpMeasure& nu = targets[j];
    if (!nu.is_atomic()) return false;
    const auto& image = transport.images[j];
    if (image.size() != transport.base.atoms.size()) return false;
    for (std::size_t a = 0; a < nu.atoms.size(); ++a) {
      double mass = 0.0;
      for (std::size_t k = 0; k < image.size(); ++k)
        if ((image[k] - nu.atoms[a]).norm() <= kAtomTol) mass += transport.base.weights[k];
      if (std::abs(mass - nu.weights[a]) > tol) return false;
    }
    // every base atom must land on some target atom (or the origin, which is
    // excluded by construction)
    for (std::size_t k = 0; k < image.size(); ++k) {
      bool hit = false;
      for (const auto& a : nu.atoms)
        if ((image[k] - a).norm() <= kAtomTol) hit = true;
      if (!hit) return false;
    }
  }
  return true;
}

UncertaintySet UncertaintySet::make1d(
    std::vector<std::pair<double, double>> atoms_mass_of_single_nu, std::vector<double> vols,
    double floor) {
  UncertaintySet set;
  set.dimension = 1;
  if (atoms_mass_of_single_nu.empty())
    set.jump_family.push_back(JumpMeasure::zero(1));
  else
    set.jump_family.push_back(JumpMeasure::atomic1d(std::move(atoms_mass_of_single_nu)));
  for (double q : vols) {
    Matrix Q(1, 1);
    Q(0, 0) = q;
    set.vol_family.push_back(Q);
  }
  if (floor > 0.0) {
    set.elliptic = true;
    set.ellipticity_floor = floor;
  }
  return set;
}

namespace {

void require_structural(const UncertaintySet& set) {
  if (set.dimension < 1) throw StructuralError("UncertaintySet: dimension must be >= 1");
  if (set.vol_family.empty()) throw StructuralError("UncertaintySet: empty volatility family");
  if (set.jump_family.empty()) throw StructuralError("UncertaintySet: empty jump family");
  for (const auto& q : set.vol_family)
    if (q.rows() != set.dimension || q.cols() != set.dimension)
      throw StructuralError("UncertaintySet: volatility matrix dimension mismatch");
  for (const auto& nu : set.jump_family) {
    if (nu.dimension != set.dimension && !(nu.atoms.empty() && !nu.density))
      throw StructuralError("UncertaintySet: jump measure dimension mismatch");
    if (nu.density && set.dimension != 1)
      throw StructuralError("UncertaintySet: density measures require dimension 1");
  }
}

double abs_moment(const JumpMeasure& nu, int quadrature_nodes) {
  return jump_integral([](const Vector& u) { return u.norm(); }, nu, quadrature_nodes);
}

double small_jump_q_moment(const JumpMeasure& nu, double q, int quadrature_nodes) {
  auto phi = [q](const Vector& u) {
    const double r = u.norm();
    return (r > 0.0 && r < 1.0) ? std::pow(r, q) : 0.0;
  };
  return jump_integral(phi, nu, quadrature_nodes);
}

}  // namespace

ValidationReport validate_uncertainty_set(const UncertaintySet& set, double q_moment) {
  require_structural(set);
  if (!(q_moment > 0.0 && q_moment < 1.0))
    throw StructuralError("validate_uncertainty_set: q must lie in (0,1)");

  ValidationReport report;

  // sup over the set of [ |u|-moment + |zeta| + 1/2 tr(QQ*) ]; drift is zero.
  double worst_moment = 0.0;
  bool moment_finite = true;
  for (const auto& nu : set.jump_family) {
    const double m = abs_moment(nu, set.quadrature_nodes);
    if (!std::isfinite(m)) moment_finite = false;
    worst_moment = std::max(worst_moment, m);
  }
  double worst_trace = 0.0;
  for (const auto& q : set.vol_family)
    worst_trace = std::max(worst_trace, 0.5 * (q * q.transpose()).trace());
  const double bound = worst_moment + worst_trace;
  report.items.push_back({"boundedness", moment_finite && std::isfinite(bound), false, bound,
                          "sup of |u|-moment + |zeta| + tr(QQ*)/2"});

  double worst_q = 0.0;
  bool q_finite = true;
  for (const auto& nu : set.jump_family) {
    const double m = small_jump_q_moment(nu, q_moment, set.quadrature_nodes);
    if (!std::isfinite(m)) q_finite = false;
    worst_q = std::max(worst_q, m);
  }
  report.items.push_back({"small-jump q-moment", q_finite, false, worst_q,
                          "sup over measures of the |u|^q moment on 0<|u|<1, q=" + fmt(q_moment)});

  double worst_mass = 0.0;
  for (const auto& nu : set.jump_family) worst_mass = std::max(worst_mass, nu.total_mass());
  report.items.push_back({"finite total mass", std::isfinite(worst_mass), false, worst_mass,
                          "sup over measures of total mass"});

  if (set.elliptic) {
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& q : set.vol_family) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(q * q.transpose());
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    const bool ok = set.ellipticity_floor > 0.0 && min_eig >= set.ellipticity_floor;
    report.items.push_back({"ellipticity floor", ok, false, min_eig,
                            "min eigenvalue of QQ* vs floor " + fmt(set.ellipticity_floor)});
  }
  return report;
}

GResult G_of(const Matrix& a, const UncertaintySet& set) {
  require_structural(set);
  if (a.rows() != set.dimension || a.cols() != set.dimension)
    throw StructuralError("G_of: matrix dimension mismatch");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw StructuralError("G_of: matrix must be symmetric");
  GResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < set.vol_family.size(); ++m) {
    const Matrix& q = set.vol_family[m];
    const double v = 0.5 * (q * q.transpose() * a).trace();
    if (v > best.value) {
      best.value = v;
      best.argmax = static_cast<int>(m);
    }
  }
  return best;
}

double G_inverse_1d(double y, const UncertaintySet& set) {
  require_structural(set);
  if (set.dimension != 1) throw StructuralError("G_inverse_1d: requires dimension 1");
  if (!set.elliptic) throw StructuralError("G_inverse_1d: requires an elliptic set");
  double q2_min = std::numeric_limits<double>::infinity();
  double q2_max = 0.0;
  for (const auto& q : set.vol_family) {
    const double q2 = q(0, 0) * q(0, 0);
    q2_min = std::min(q2_min, q2);
    q2_max = std::max(q2_max, q2);
  }
  if (!(q2_min > 0.0)) throw StructuralError("G_inverse_1d: degenerate volatility family");
  return y >= 0.0 ? 2.0 * y / q2_max : 2.0 * y / q2_min;
}

SupIntegral sup_jump_integral(const std::function<double(const Vector&)>& phi,
                              const UncertaintySet& set) {
  require_structural(set);
  SupIntegral best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < set.jump_family.size(); ++k) {
    const double v = jump_integral(phi, set.jump_family[k], set.quadrature_nodes);
    if (v > best.value) {
      best.value = v;
      best.argmax = static_cast<int>(k);
    }
  }
  return best;
}

double g_x_functional(const std::function<double(const Vector&)>& g, const UncertaintySet& set,
                      const std::optional<Matrix>& hessian_at_zero, double fd_step) {
  require_structural(set);
  const int d = set.dimension;
  Matrix hess;
  if (hessian_at_zero) {
    hess = *hessian_at_zero;
    if (hess.rows() != d || hess.cols() != d)
      throw StructuralError("g_x_functional: Hessian dimension mismatch");
  } else {
    hess = Matrix::Zero(d, d);
    const double h = fd_step;
    Vector z = Vector::Zero(d);
    const double g0 = g(z);
    for (int i = 0; i < d; ++i) {
      Vector ei = Vector::Zero(d);
      ei[i] = h;
      hess(i, i) = (g(ei) - 2.0 * g0 + g(-ei)) / (h * h);
      for (int j = i + 1; j < d; ++j) {
        Vector ej = Vector::Zero(d);
        ej[j] = h;
        const double v =
            (g(ei + ej) - g(ei - ej) - g(-ei + ej) + g(-ei - ej)) / (4.0 * h * h);
        hess(i, j) = v;
        hess(j, i) = v;
      }
    }
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& nu : set.jump_family) {
    const double integral = jump_integral(g, nu, set.quadrature_nodes);
    for (const auto& q : set.vol_family) {
      const double v = integral + 0.5 * (hess * q * q.transpose()).trace();
      best = std::max(best, v);
    }
  }
  return best;
}

}  // namespace glevy

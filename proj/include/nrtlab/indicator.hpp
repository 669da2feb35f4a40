#pragma once

// No-response-test indicator for the annulus cavity problem.
//
// Probe data g range over the span of {1, cos n theta, sin n theta : n <= N} on
// the outer circle. The constraint ||z_g||_{H^1(G)} <= eps is the ellipsoid
// c^T Q c <= eps^2 in the coefficient vector c, where Q is the H^1(G) Gram
// matrix of the probe fields, and the boundary functional is l(g) = b^T c.
// The constrained supremum of |l(g)| is eps * sqrt(b^T Q^+ b).
//
// Q is severely ill-conditioned once G sits away from the origin (its spectrum
// decays geometrically in n), so it is diagonally rescaled before the
// eigendecomposition and eigenvalues below a relative floor are discarded.
// The share of b that falls into the discarded eigenspace is reported; a
// non-negligible share means the functional is not controlled by the
// constraint within double precision, which is how blow-up shows up.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nrtlab/errors.hpp"
#include "nrtlab/geometry.hpp"
#include "nrtlab/harmonic.hpp"

namespace nrtlab {

// ---------------------------------------------------------------------------
// H^1 inner product
// ---------------------------------------------------------------------------

namespace detail {

template <HarmonicField F>
void reject_singular_in_area(const F& f, const QuadratureRule& quad, const char* which) {
  for (const auto& d : quad.areas)
    for (const auto& s : f.singular_points())
      if (d.contains(s, 1e-12))
        throw SingularPointError(std::string(which) + " is singular at " + to_string(s) +
                                 ", inside " + to_string(d));
}

}  // namespace detail

/// Quadrature value of the integral of (f g + grad f . grad g) over the area
/// the rule was built on.
template <HarmonicField F, HarmonicField G>
[[nodiscard]] double h1_inner(const F& f, const G& g, const QuadratureRule& quad) {
  detail::require(quad.kind == QuadratureKind::Area, "h1_inner needs an area rule");
  detail::reject_singular_in_area(f, quad, "first field");
  detail::reject_singular_in_area(g, quad, "second field");
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Point2 p = quad.nodes[i];
    acc += quad.weights[i] * (f.value(p) * g.value(p) + dot(f.gradient(p), g.gradient(p)));
  }
  return acc;
}

template <HarmonicField F>
[[nodiscard]] double h1_norm(const F& f, const QuadratureRule& quad) {
  return std::sqrt(std::max(0.0, h1_inner(f, f, quad)));
}

// ---------------------------------------------------------------------------
// Probe basis
// ---------------------------------------------------------------------------

// Index layout of the probe basis: 0 -> 1, 2n-1 -> cos n theta, 2n -> sin n theta.
[[nodiscard]] constexpr int basis_size(int order) { return 2 * order + 1; }
[[nodiscard]] constexpr int basis_mode(int index) { return (index + 1) / 2; }
[[nodiscard]] constexpr bool basis_is_sine(int index) { return index > 0 && index % 2 == 0; }

[[nodiscard]] inline BoundaryData basis_boundary_data(int index, int order) {
  BoundaryData g(order);
  const int n = basis_mode(index);
  if (basis_is_sine(index))
    g.sin_coeff(n) = 1.0;
  else
    g.cos_coeff(n) = 1.0;
  return g;
}

/// Coefficient vector in the probe basis -> boundary data.
[[nodiscard]] inline BoundaryData coefficients_to_boundary(const Eigen::VectorXd& c, int order) {
  detail::require(c.size() == basis_size(order), "coefficient vector has the wrong length");
  BoundaryData g(order);
  g.cos_coeff(0) = c(0);
  for (int n = 1; n <= order; ++n) {
    g.cos_coeff(n) = c(2 * n - 1);
    g.sin_coeff(n) = c(2 * n);
  }
  return g;
}

[[nodiscard]] inline Eigen::VectorXd boundary_to_coefficients(const BoundaryData& g, int order) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis_size(order));
  c(0) = g.cos_coeff(0);
  for (int n = 1; n <= order; ++n) {
    c(2 * n - 1) = g.cos_coeff(n);
    c(2 * n) = g.sin_coeff(n);
  }
  return c;
}

/// Values and gradients of every probe field z_{phi_k} at the nodes of a rule,
/// one row per node. z_{cos n} = Re (z/R)^n, z_{sin n} = Im (z/R)^n.
struct BasisSamples {
  Eigen::MatrixXd value;
  Eigen::MatrixXd grad_x;
  Eigen::MatrixXd grad_y;
  Eigen::VectorXd weights;

  BasisSamples(const QuadratureRule& quad, int order, double R) {
    const auto m = static_cast<Eigen::Index>(quad.size());
    const int k = basis_size(order);
    value.resize(m, k);
    grad_x.resize(m, k);
    grad_y.resize(m, k);
    weights.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Point2 p = quad.nodes[static_cast<std::size_t>(i)];
      weights(i) = quad.weights[static_cast<std::size_t>(i)];
      const std::complex<double> s(p.x / R, p.y / R);
      std::complex<double> power(1.0, 0.0);  // s^n
      std::complex<double> dpower(0.0, 0.0);  // d/dz s^n = n s^{n-1} / R
      value(i, 0) = 1.0;
      grad_x(i, 0) = 0.0;
      grad_y(i, 0) = 0.0;
      for (int n = 1; n <= order; ++n) {
        dpower = static_cast<double>(n) * power / R;
        power *= s;
        value(i, 2 * n - 1) = power.real();
        grad_x(i, 2 * n - 1) = dpower.real();
        grad_y(i, 2 * n - 1) = -dpower.imag();
        value(i, 2 * n) = power.imag();
        grad_x(i, 2 * n) = dpower.imag();
        grad_y(i, 2 * n) = dpower.real();
      }
    }
  }

  [[nodiscard]] Eigen::MatrixXd gram() const {
    const auto W = weights.asDiagonal();
    Eigen::MatrixXd Q = value.transpose() * W * value + grad_x.transpose() * W * grad_x +
                        grad_y.transpose() * W * grad_y;
    return 0.5 * (Q + Q.transpose());
  }

  template <HarmonicField F>
  [[nodiscard]] Eigen::VectorXd load(const F& f, const QuadratureRule& quad) const {
    const auto m = static_cast<Eigen::Index>(quad.size());
    Eigen::VectorXd fv(m), fx(m), fy(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Point2 p = quad.nodes[static_cast<std::size_t>(i)];
      const Vec2 d = f.gradient(p);
      fv(i) = weights(i) * f.value(p);
      fx(i) = weights(i) * d.x;
      fy(i) = weights(i) * d.y;
    }
    return value.transpose() * fv + grad_x.transpose() * fx + grad_y.transpose() * fy;
  }
};

// ---------------------------------------------------------------------------
// Gram system
// ---------------------------------------------------------------------------

struct QuadratureOrders {
  int radial = 48;
  int angular = 128;

  /// Orders that integrate products of two degree-`order` probe fields exactly.
  [[nodiscard]] QuadratureOrders at_least_exact_for(int order) const {
    return {std::max(radial, order + 2), std::max(angular, 2 * order + 2)};
  }
};

enum class Preconditioning {
  None,         // raw probe basis cos n theta, sin n theta
  RadialPower,  // boundary modes scaled by R^n, so z = r^n cos n theta
  Jacobi        // unit diagonal
};

[[nodiscard]] inline const char* to_string(Preconditioning p) {
  switch (p) {
    case Preconditioning::None: return "none";
    case Preconditioning::RadialPower: return "radial-power";
    case Preconditioning::Jacobi: return "jacobi";
  }
  return "?";
}

inline constexpr double kDefaultEigenFloor = 1e-12;
inline constexpr double kNegativeEigenTol = 1e-12;
inline constexpr double kDiscardedShareTol = 1e-8;

struct IndicatorOptions {
  QuadratureOrders quadrature{};
  double eigen_floor = kDefaultEigenFloor;
  Preconditioning preconditioning = Preconditioning::Jacobi;
};

/// H^1(G) Gram matrix Q of the probe fields and the load b_k = l(phi_k).
struct GramSystem {
  int order = 0;
  double outer_radius = 2.0;
  Eigen::MatrixXd Q;
  Eigen::VectorXd b;
  std::vector<DiskRegion> region;
  double eigen_floor = kDefaultEigenFloor;
  Preconditioning preconditioning = Preconditioning::Jacobi;
};

[[nodiscard]] inline DiskRegion outer_domain(double R) { return DiskRegion(kOrigin, R); }

/// b_k = l(phi_k) for the probe basis, with the flux of w = u - v.
[[nodiscard]] inline Eigen::VectorXd probe_load(const HarmonicSeries& u, double R, int order) {
  const BoundaryData flux = neumann_trace_w(u, R);
  Eigen::VectorXd b(basis_size(order));
  for (int k = 0; k < basis_size(order); ++k)
    b(k) = boundary_pairing(flux, basis_boundary_data(k, order), R);
  return b;
}

[[nodiscard]] inline GramSystem assemble_gram(const DiskRegion& G, double R, int order,
                                              const IndicatorOptions& options = {},
                                              std::optional<HarmonicSeries> u = std::nullopt) {
  detail::require(R > 1.0, "outer radius must exceed the cavity radius 1");
  detail::require(order >= 0, "truncation order must be non-negative");
  if (!validate_admissible(G, outer_domain(R)))
    throw PreconditionError("trial region " + to_string(G) +
                            " is not compactly contained in the outer disk of radius " +
                            std::to_string(R));
  const HarmonicSeries cavity = u ? *u : annulus_neumann_solution(R);
  const QuadratureOrders q = options.quadrature.at_least_exact_for(order);
  const QuadratureRule quad = build_disk_quadrature(G, q.radial, q.angular);

  GramSystem sys;
  sys.order = order;
  sys.outer_radius = R;
  sys.Q = BasisSamples(quad, order, R).gram();
  sys.b = probe_load(cavity, R, order);
  sys.region = {G};
  sys.eigen_floor = options.eigen_floor;
  sys.preconditioning = options.preconditioning;
  return sys;
}

/// Diagonal congruence D applied as D Q D before factorization.
[[nodiscard]] inline Eigen::VectorXd preconditioner(const Eigen::MatrixXd& Q, int order, double R,
                                                    Preconditioning p) {
  Eigen::VectorXd d = Eigen::VectorXd::Ones(Q.rows());
  switch (p) {
    case Preconditioning::None: break;
    case Preconditioning::RadialPower:
      for (int k = 0; k < basis_size(order); ++k) d(k) = std::pow(R, basis_mode(k));
      break;
    case Preconditioning::Jacobi:
      for (Eigen::Index k = 0; k < Q.rows(); ++k) {
        if (!(Q(k, k) > 0.0))
          throw NumericalFailure("Gram diagonal entry " + std::to_string(k) + " is not positive");
        d(k) = 1.0 / std::sqrt(Q(k, k));
      }
      break;
  }
  return d;
}

/// Pseudo-inverse of a symmetric PSD matrix through the eigendecomposition of
/// D Q D, keeping eigenvalues above `floor` times the largest.
class SpectralPseudoInverse {
 public:
  SpectralPseudoInverse(const Eigen::MatrixXd& Q, const Eigen::VectorXd& scaling, double floor)
      : scaling_(scaling), floor_(floor) {
    detail::require(Q.rows() == Q.cols() && Q.rows() == scaling.size(),
                    "pseudo-inverse: dimension mismatch");
    detail::require(floor >= 0.0, "eigenvalue floor must be non-negative");
    const Eigen::MatrixXd S = scaling_.asDiagonal() * Q * scaling_.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (S + S.transpose()));
    if (eig.info() != Eigen::Success) throw NumericalFailure("eigendecomposition failed");
    eigenvalues_ = eig.eigenvalues();   // ascending
    eigenvectors_ = eig.eigenvectors();
    const double top = eigenvalues_.size() ? eigenvalues_(eigenvalues_.size() - 1) : 0.0;
    if (eigenvalues_.size() && eigenvalues_(0) < -kNegativeEigenTol * std::abs(top))
      throw NumericalFailure("Gram matrix is indefinite: min eigenvalue " +
                             std::to_string(eigenvalues_(0)) + " vs max " + std::to_string(top));
    first_retained_ = 0;
    while (first_retained_ < eigenvalues_.size() &&
           !(eigenvalues_(first_retained_) > floor_ * top && eigenvalues_(first_retained_) > 0.0))
      ++first_retained_;
  }

  [[nodiscard]] Eigen::Index dimension() const { return eigenvalues_.size(); }
  [[nodiscard]] Eigen::Index retained_rank() const { return dimension() - first_retained_; }
  [[nodiscard]] const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  [[nodiscard]] const Eigen::VectorXd& scaling() const { return scaling_; }

  /// Retained eigenvalues / eigenvectors of the rescaled matrix D Q D.
  [[nodiscard]] Eigen::VectorXd retained_eigenvalues() const {
    return eigenvalues_.tail(retained_rank());
  }
  [[nodiscard]] Eigen::MatrixXd retained_eigenvectors() const {
    return eigenvectors_.rightCols(retained_rank());
  }

  [[nodiscard]] double max_eigenvalue() const {
    return dimension() ? eigenvalues_(dimension() - 1) : 0.0;
  }
  [[nodiscard]] double min_eigenvalue() const { return dimension() ? eigenvalues_(0) : 0.0; }
  [[nodiscard]] double retained_condition() const {
    if (retained_rank() == 0) return std::numeric_limits<double>::infinity();
    return max_eigenvalue() / eigenvalues_(first_retained_);
  }

  /// b^T Q^+ b.
  [[nodiscard]] double quadratic_form(const Eigen::VectorXd& b) const {
    const Eigen::VectorXd p = retained_eigenvectors().transpose() * scaling_.cwiseProduct(b);
    return p.cwiseAbs2().cwiseQuotient(retained_eigenvalues()).sum();
  }

  /// Q^+ f.
  [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& f) const {
    const Eigen::MatrixXd V = retained_eigenvectors();
    const Eigen::VectorXd p =
        (V.transpose() * scaling_.cwiseProduct(f)).cwiseQuotient(retained_eigenvalues());
    return scaling_.cwiseProduct(V * p);
  }

  /// |P_discarded D b| / |D b|; zero for b = 0.
  [[nodiscard]] double discarded_share(const Eigen::VectorXd& b) const {
    const Eigen::VectorXd bs = scaling_.cwiseProduct(b);
    const double total = bs.norm();
    if (total == 0.0 || first_retained_ == 0) return 0.0;
    const Eigen::VectorXd p = eigenvectors_.leftCols(first_retained_).transpose() * bs;
    return p.norm() / total;
  }

 private:
  Eigen::VectorXd scaling_;
  double floor_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::Index first_retained_ = 0;
};

[[nodiscard]] inline SpectralPseudoInverse pseudo_inverse(const GramSystem& sys) {
  return SpectralPseudoInverse(
      sys.Q, preconditioner(sys.Q, sys.order, sys.outer_radius, sys.preconditioning),
      sys.eigen_floor);
}

struct IndicatorValue {
  double value = 0.0;
  double eps = 0.0;
  Eigen::Index dimension = 0;
  Eigen::Index retained_rank = 0;
  double discarded_share = 0.0;
  bool unbounded_in_subspace = false;
  double cond_retained = 1.0;
  double min_eigenvalue_ratio = 0.0;  // lambda_min / lambda_max of D Q D
};

/// sup{ |b^T c| : c^T Q c <= eps^2 } = eps sqrt(b^T Q^+ b) over the retained
/// eigenspace.
[[nodiscard]] inline IndicatorValue sup_indicator(const GramSystem& sys, double eps) {
  detail::require(eps > 0.0, "eps must be positive");
  const SpectralPseudoInverse pinv = pseudo_inverse(sys);
  IndicatorValue out;
  out.eps = eps;
  out.value = eps * std::sqrt(std::max(0.0, pinv.quadratic_form(sys.b)));
  out.dimension = pinv.dimension();
  out.retained_rank = pinv.retained_rank();
  out.discarded_share = pinv.discarded_share(sys.b);
  out.unbounded_in_subspace = out.discarded_share > kDiscardedShareTol;
  out.cond_retained = pinv.retained_condition();
  out.min_eigenvalue_ratio =
      pinv.max_eigenvalue() > 0.0 ? pinv.min_eigenvalue() / pinv.max_eigenvalue() : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Indicator curves and verdicts
// ---------------------------------------------------------------------------

enum class Verdict { Bounded, BlowUp, Inconclusive };

[[nodiscard]] inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "Bounded";
    case Verdict::BlowUp: return "BlowUp";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

enum class ParameterAxis { TruncationOrder, Offset, Epsilon };

[[nodiscard]] inline const char* to_string(ParameterAxis a) {
  switch (a) {
    case ParameterAxis::TruncationOrder: return "N";
    case ParameterAxis::Offset: return "t";
    case ParameterAxis::Epsilon: return "eps";
  }
  return "?";
}

struct IndicatorCurve {
  ParameterAxis axis = ParameterAxis::TruncationOrder;
  std::vector<double> parameters;
  std::vector<double> values;
  double eps = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> growth_ratios;  // values[i+1] / values[i]
  std::vector<double> cond_numbers;
  std::vector<double> discarded_shares;
  std::vector<bool> unbounded_flags;
};

inline constexpr double kPlateauTol = 0.10;
inline constexpr double kBlowUpGrowth = 2.0;

/// Sweep rule: BlowUp when any sample is flagged or the last value is at least
/// twice the first; Bounded when the last three samples lie within 10% of each
/// other; otherwise Inconclusive. BlowUp is checked first.
[[nodiscard]] inline Verdict classify_sweep(const std::vector<double>& values,
                                            const std::vector<bool>& unbounded_flags) {
  detail::require(!values.empty(), "empty sweep");
  const bool flagged = std::any_of(unbounded_flags.begin(), unbounded_flags.end(),
                                   [](bool b) { return b; });
  if (flagged) return Verdict::BlowUp;
  if (values.front() > 0.0 && values.back() >= kBlowUpGrowth * values.front())
    return Verdict::BlowUp;
  if (values.size() >= 3) {
    const auto tail = std::vector<double>(values.end() - 3, values.end());
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    if (*hi == 0.0) return Verdict::Bounded;
    if (*lo > 0.0 && (*hi - *lo) / *lo < kPlateauTol) return Verdict::Bounded;
  }
  return Verdict::Inconclusive;
}

[[nodiscard]] inline IndicatorCurve indicator_sweep(const DiskRegion& G, double R, double eps,
                                                    const std::vector<int>& orders,
                                                    const IndicatorOptions& options = {}) {
  detail::require(!orders.empty(), "indicator sweep needs at least one order");
  detail::require(std::is_sorted(orders.begin(), orders.end()) &&
                      std::adjacent_find(orders.begin(), orders.end()) == orders.end(),
                  "truncation orders must be strictly increasing");
  IndicatorCurve curve;
  curve.axis = ParameterAxis::TruncationOrder;
  curve.eps = eps;
  for (int N : orders) {
    const GramSystem sys = assemble_gram(G, R, N, options);
    const IndicatorValue v = sup_indicator(sys, eps);
    curve.parameters.push_back(N);
    curve.values.push_back(v.value);
    curve.cond_numbers.push_back(v.cond_retained);
    curve.discarded_shares.push_back(v.discarded_share);
    curve.unbounded_flags.push_back(v.unbounded_in_subspace);
  }
  for (std::size_t i = 1; i < curve.values.size(); ++i)
    curve.growth_ratios.push_back(curve.values[i - 1] > 0.0 ? curve.values[i] / curve.values[i - 1]
                                                            : 0.0);
  curve.verdict = classify_sweep(curve.values, curve.unbounded_flags);
  return curve;
}

// ---------------------------------------------------------------------------
// Runge approximation of the log source
// ---------------------------------------------------------------------------

struct RungeFit {
  double t = 0.0;
  std::vector<DiskRegion> fit_region;  // G and B_{t/2}
  int order = 0;
  BoundaryData g;
  double residual = 0.0;       // ||z_g - E_t||_{H^1(G u B_{t/2})}
  double norm_on_G = 0.0;      // ||E_t||_{H^1(G)}
  double ell = 0.0;            // l(g)
  Eigen::Index retained_rank = 0;
};

[[nodiscard]] inline ClosedFormTarget log_source_at_offset(double t) {
  return ClosedFormTarget::log_source({t, 0.0});
}

/// Least-squares fit of E_t(x) = log|x - t e_1| by probe fields z_g over
/// G u B_{t/2}, through the Gram normal equations and the pseudo-inverse.
[[nodiscard]] inline RungeFit runge_fit(double t, const DiskRegion& G, double R, int order,
                                        const IndicatorOptions& options = {}) {
  detail::require(R > 1.0, "outer radius must exceed the cavity radius 1");
  detail::require(order >= 1, "Runge fit needs order >= 1");
  detail::require(t > 0.0, "offset t must be positive");
  if (!validate_admissible(G, outer_domain(R)))
    throw PreconditionError("trial region " + to_string(G) + " is not inside the outer disk");
  const Point2 pole{t, 0.0};
  if (G.contains(pole))
    throw PreconditionError("singular point t*e1 = " + to_string(pole) + " lies in closure of " +
                            to_string(G));
  const double t0 = G.center().norm() - G.radius();
  if (!(t < t0))
    throw PreconditionError("offset t = " + std::to_string(t) +
                            " must satisfy t < dist(0, G) = " + std::to_string(t0) +
                            " so that closure(B_t) misses " + to_string(G));
  detail::require(t < R, "offset t must stay inside the outer disk");

  const DiskRegion small(kOrigin, 0.5 * t);
  const QuadratureOrders q = options.quadrature.at_least_exact_for(order);
  const QuadratureRule quad_G = build_disk_quadrature(G, q.radial, q.angular);
  const QuadratureRule quad_fit = merge(quad_G, build_disk_quadrature(small, q.radial, q.angular));
  const ClosedFormTarget target = log_source_at_offset(t);

  const BasisSamples samples(quad_fit, order, R);
  const Eigen::MatrixXd Q = samples.gram();
  const Eigen::VectorXd f = samples.load(target, quad_fit);
  const SpectralPseudoInverse pinv(Q, preconditioner(Q, order, R, options.preconditioning),
                                   options.eigen_floor);
  const Eigen::VectorXd c = pinv.apply(f);

  RungeFit fit;
  fit.t = t;
  fit.fit_region = {G, small};
  fit.order = order;
  fit.g = coefficients_to_boundary(c, order);
  fit.retained_rank = pinv.retained_rank();

  // Residual straight from the quadrature, not from the expanded quadratic form.
  const Eigen::VectorXd dv = samples.value * c;
  const Eigen::VectorXd dx = samples.grad_x * c;
  const Eigen::VectorXd dy = samples.grad_y * c;
  double res2 = 0.0;
  for (std::size_t i = 0; i < quad_fit.size(); ++i) {
    const Point2 p = quad_fit.nodes[i];
    const Vec2 e = target.gradient(p);
    const auto k = static_cast<Eigen::Index>(i);
    const double ev = dv(k) - target.value(p);
    const double ex = dx(k) - e.x;
    const double ey = dy(k) - e.y;
    res2 += quad_fit.weights[i] * (ev * ev + ex * ex + ey * ey);
  }
  fit.residual = std::sqrt(res2);
  fit.norm_on_G = h1_norm(target, quad_G);
  fit.ell = boundary_pairing(neumann_trace_w(annulus_neumann_solution(R), R), fit.g, R);
  return fit;
}

/// g~ = eps / (2 ||E_t||_{H^1(G)}) g.
[[nodiscard]] inline BoundaryData scaled_sequence(const RungeFit& fit, double eps) {
  detail::require(eps > 0.0, "eps must be positive");
  detail::require(fit.norm_on_G > 0.0, "cannot scale by a zero target norm");
  return (eps / (2.0 * fit.norm_on_G)) * fit.g;
}

/// ||z_g||_{H^1(G)} for probe data g.
[[nodiscard]] inline double probe_h1_norm(const BoundaryData& g, const DiskRegion& G, double R,
                                          QuadratureOrders orders = {}) {
  const QuadratureOrders q = orders.at_least_exact_for(g.max_order());
  return h1_norm(dirichlet_disk_solve(g, R), build_disk_quadrature(G, q.radial, q.angular));
}

// ---------------------------------------------------------------------------
// Power-law blow-up diagnostic
// ---------------------------------------------------------------------------

struct BlowUpFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  Verdict verdict = Verdict::Inconclusive;
};

inline constexpr double kBlowUpSlope = 0.8;
inline constexpr double kBlowUpRSquared = 0.9;
inline constexpr double kBoundedSlope = 0.1;

/// Least-squares line through (log x, log value), with x = 1/t on the offset
/// axis and x = the parameter otherwise. BlowUp iff slope >= 0.8 with
/// R^2 >= 0.9; Bounded iff slope <= 0.1.
[[nodiscard]] inline BlowUpFit blow_up_diagnostic(const IndicatorCurve& curve) {
  detail::require(curve.values.size() >= 3 && curve.values.size() == curve.parameters.size(),
                  "blow-up diagnostic needs at least three samples");
  const auto n = static_cast<double>(curve.values.size());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    detail::require(curve.values[i] > 0.0 && curve.parameters[i] > 0.0,
                    "blow-up diagnostic needs positive values and parameters");
    const double x = curve.axis == ParameterAxis::Offset ? 1.0 / curve.parameters[i]
                                                         : curve.parameters[i];
    xs.push_back(std::log(x));
    ys.push_back(std::log(curve.values[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  detail::require(sxx > 0.0, "blow-up diagnostic needs distinct parameters");
  BlowUpFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  if (fit.slope >= kBlowUpSlope && fit.r_squared >= kBlowUpRSquared)
    fit.verdict = Verdict::BlowUp;
  else if (fit.slope <= kBoundedSlope)
    fit.verdict = Verdict::Bounded;
  else
    fit.verdict = Verdict::Inconclusive;
  return fit;
}

}  // namespace nrtlab

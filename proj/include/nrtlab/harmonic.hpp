#pragma once

// Harmonic function representations about the origin and the explicit
// annulus cavity problem: the Neumann solution u (and its extension to the
// punctured disk), Dirichlet solves z_g on the outer disk, the comparison
// field v, the flux of w = u - v, and boundary / contour pairings.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nrtlab/errors.hpp"
#include "nrtlab/geometry.hpp"

namespace nrtlab {

inline constexpr double kSingularTol = 1e-12;

/// Anything that can be evaluated with its Cartesian gradient, and that can
/// report where it stops being harmonic.
template <class F>
concept HarmonicField = requires(const F& f, Point2 p) {
  { f.value(p) } -> std::convertible_to<double>;
  { f.gradient(p) } -> std::convertible_to<Vec2>;
  { f.singular_points() } -> std::convertible_to<std::vector<Point2>>;
};

/// Fourier coefficients of Dirichlet data on the outer circle:
/// g(theta) = sum_n cos_coeff[n] cos(n theta) + sin_coeff[n] sin(n theta).
/// sin_coeff[0] is carried for symmetry of the layout and always read as zero.
class BoundaryData {
 public:
  BoundaryData() : BoundaryData(0) {}
  explicit BoundaryData(int max_order)
      : cos_(static_cast<std::size_t>(check_order(max_order)) + 1, 0.0),
        sin_(static_cast<std::size_t>(max_order) + 1, 0.0) {}

  static BoundaryData cosine(int n, double amplitude = 1.0) {
    BoundaryData g(n);
    g.cos_coeff(n) = amplitude;
    return g;
  }
  static BoundaryData sine(int n, double amplitude = 1.0) {
    detail::require(n >= 1, "sin(0 theta) is not a basis mode");
    BoundaryData g(n);
    g.sin_coeff(n) = amplitude;
    return g;
  }

  [[nodiscard]] int max_order() const { return static_cast<int>(cos_.size()) - 1; }

  [[nodiscard]] double cos_coeff(int n) const { return n <= max_order() ? cos_[idx(n)] : 0.0; }
  [[nodiscard]] double sin_coeff(int n) const {
    return (n >= 1 && n <= max_order()) ? sin_[idx(n)] : 0.0;
  }
  double& cos_coeff(int n) { return cos_.at(idx(n)); }
  double& sin_coeff(int n) {
    detail::require(n >= 1, "sin_coeff index starts at 1");
    return sin_.at(idx(n));
  }

  [[nodiscard]] std::span<const double> cos_coeffs() const { return cos_; }
  [[nodiscard]] std::span<const double> sin_coeffs() const { return sin_; }

  [[nodiscard]] double value(double theta) const {
    double acc = cos_[0];
    for (int n = 1; n <= max_order(); ++n)
      acc += cos_[idx(n)] * std::cos(n * theta) + sin_[idx(n)] * std::sin(n * theta);
    return acc;
  }

  [[nodiscard]] bool finite() const {
    auto ok = [](double v) { return std::isfinite(v); };
    return std::all_of(cos_.begin(), cos_.end(), ok) && std::all_of(sin_.begin(), sin_.end(), ok);
  }

  friend BoundaryData operator*(double s, BoundaryData g) {
    for (auto& c : g.cos_) c *= s;
    for (auto& c : g.sin_) c *= s;
    return g;
  }
  friend BoundaryData operator+(const BoundaryData& a, const BoundaryData& b) {
    BoundaryData out(std::max(a.max_order(), b.max_order()));
    for (int n = 0; n <= out.max_order(); ++n) {
      out.cos_[idx(n)] = a.cos_coeff(n) + b.cos_coeff(n);
      if (n >= 1) out.sin_[idx(n)] = a.sin_coeff(n) + b.sin_coeff(n);
    }
    return out;
  }

 private:
  static int check_order(int n) {
    detail::require(n >= 0, "max_order must be non-negative");
    return n;
  }
  static std::size_t idx(int n) { return static_cast<std::size_t>(n); }

  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Truncated Fourier-Laurent expansion about the origin:
///   a_0 + sum_{n>=1} r^n (a_n cos n theta + b_n sin n theta)
///       + sum_{n>=1} r^{-n} (c_n cos n theta + d_n sin n theta) + L log r.
/// Evaluation is exact for r > 0; the origin is singular whenever any c_n,
/// d_n or L is nonzero.
class HarmonicSeries {
 public:
  HarmonicSeries() : HarmonicSeries(0) {}
  explicit HarmonicSeries(int max_order) {
    detail::require(max_order >= 0, "max_order must be non-negative");
    const auto n = static_cast<std::size_t>(max_order) + 1;
    regular_cos_.assign(n, 0.0);
    regular_sin_.assign(n, 0.0);
    singular_cos_.assign(n, 0.0);
    singular_sin_.assign(n, 0.0);
  }

  [[nodiscard]] int max_order() const { return static_cast<int>(regular_cos_.size()) - 1; }

  // Mode n of each family; index 0 of sin/singular families is unused.
  [[nodiscard]] double regular_cos(int n) const { return get(regular_cos_, n); }
  [[nodiscard]] double regular_sin(int n) const { return n >= 1 ? get(regular_sin_, n) : 0.0; }
  [[nodiscard]] double singular_cos(int n) const { return n >= 1 ? get(singular_cos_, n) : 0.0; }
  [[nodiscard]] double singular_sin(int n) const { return n >= 1 ? get(singular_sin_, n) : 0.0; }
  [[nodiscard]] double log_coeff() const { return log_coeff_; }

  double& regular_cos(int n) { return regular_cos_.at(static_cast<std::size_t>(n)); }
  double& regular_sin(int n) { return at_positive(regular_sin_, n); }
  double& singular_cos(int n) { return at_positive(singular_cos_, n); }
  double& singular_sin(int n) { return at_positive(singular_sin_, n); }
  double& log_coeff() { return log_coeff_; }

  /// No singular or log terms: harmonic on the whole plane.
  [[nodiscard]] bool is_regular() const {
    auto zero = [](double v) { return v == 0.0; };
    return log_coeff_ == 0.0 && std::all_of(singular_cos_.begin(), singular_cos_.end(), zero) &&
           std::all_of(singular_sin_.begin(), singular_sin_.end(), zero);
  }

  [[nodiscard]] std::vector<Point2> singular_points() const {
    if (is_regular()) return {};
    return {kOrigin};
  }

  [[nodiscard]] double value(Point2 p) const { return potential(p).real(); }

  [[nodiscard]] Vec2 gradient(Point2 p) const {
    // u = Re F(z) with F analytic, so grad u = (Re F', -Im F').
    const std::complex<double> d = derivative(p);
    return {d.real(), -d.imag()};
  }

  /// Radial derivative at a point with r > 0.
  [[nodiscard]] double radial_derivative(Point2 p) const {
    const double r = p.norm();
    const Vec2 g = gradient(p);
    return (g.x * p.x + g.y * p.y) / r;
  }

 private:
  static double get(const std::vector<double>& v, int n) {
    return (n >= 0 && n < static_cast<int>(v.size())) ? v[static_cast<std::size_t>(n)] : 0.0;
  }
  static double& at_positive(std::vector<double>& v, int n) {
    detail::require(n >= 1, "mode index for this family starts at 1");
    return v.at(static_cast<std::size_t>(n));
  }

  void check_point(Point2 p) const {
    if (!is_regular() && p.norm() <= kSingularTol)
      throw SingularPointError("harmonic series evaluated at its singular center " +
                               to_string(p));
  }

  // F(z) = sum (a_n - i b_n) z^n + sum (c_n + i d_n) z^{-n} + L log z
  [[nodiscard]] std::complex<double> potential(Point2 p) const {
    check_point(p);
    const std::complex<double> z(p.x, p.y);
    const int N = max_order();
    std::complex<double> acc(0.0, 0.0);
    for (int n = N; n >= 0; --n) acc = acc * z + std::complex<double>(regular_cos(n), -regular_sin(n));
    if (!is_regular()) {
      const std::complex<double> w = 1.0 / z;
      std::complex<double> sing(0.0, 0.0);
      for (int n = N; n >= 1; --n)
        sing = (sing + std::complex<double>(singular_cos(n), singular_sin(n))) * w;
      acc += sing;
      if (log_coeff_ != 0.0) acc += log_coeff_ * std::log(z);
    }
    return acc;
  }

  [[nodiscard]] std::complex<double> derivative(Point2 p) const {
    check_point(p);
    const std::complex<double> z(p.x, p.y);
    const int N = max_order();
    std::complex<double> acc(0.0, 0.0);
    for (int n = N; n >= 1; --n)
      acc = acc * z + static_cast<double>(n) * std::complex<double>(regular_cos(n), -regular_sin(n));
    if (!is_regular()) {
      // d/dz z^{-n} = -n z^{-n-1}
      const std::complex<double> w = 1.0 / z;
      std::complex<double> sing(0.0, 0.0);
      for (int n = N; n >= 1; --n)
        sing = (sing - static_cast<double>(n) * std::complex<double>(singular_cos(n), singular_sin(n))) * w;
      acc += sing * w;
      acc += log_coeff_ * w;
    }
    return acc;
  }

  std::vector<double> regular_cos_;
  std::vector<double> regular_sin_;
  std::vector<double> singular_cos_;
  std::vector<double> singular_sin_;
  double log_coeff_ = 0.0;
};

/// E_p(x) = log|x - p|, harmonic away from p.
struct LogSource {
  Point2 source;

  [[nodiscard]] double value(Point2 x) const {
    check(x);
    return std::log(distance(x, source));
  }
  [[nodiscard]] Vec2 gradient(Point2 x) const {
    check(x);
    const Vec2 d = x - source;
    const double r2 = dot(d, d);
    return {d.x / r2, d.y / r2};
  }
  [[nodiscard]] std::vector<Point2> singular_points() const { return {source}; }

 private:
  void check(Point2 x) const {
    if (distance(x, source) <= kSingularTol)
      throw SingularPointError("log source evaluated at its pole " + to_string(source));
  }
};

/// (r + 1/r) cos(theta) restricted to the physical annulus 1 <= r <= R.
struct ExplicitU {
  double outer_radius = 2.0;

  [[nodiscard]] double value(Point2 x) const {
    const double r = check(x);
    return (r + 1.0 / r) * (x.x / r);
  }
  [[nodiscard]] Vec2 gradient(Point2 x) const {
    check(x);
    return closed_form_gradient(x);
  }
  [[nodiscard]] std::vector<Point2> singular_points() const { return {kOrigin}; }

  // grad of x + x/r^2
  static Vec2 closed_form_gradient(Point2 x) {
    const double r2 = x.x * x.x + x.y * x.y;
    const double r4 = r2 * r2;
    return {1.0 + (x.y * x.y - x.x * x.x) / r4, -2.0 * x.x * x.y / r4};
  }

 private:
  double check(Point2 x) const {
    const double r = x.norm();
    if (r < 1.0 - 1e-12 || r > outer_radius + 1e-12)
      throw PreconditionError("u is only defined on 1 <= |x| <= R; got " + to_string(x));
    return r;
  }
};

/// The same formula continued to the punctured disk 0 < r < R.
struct ExplicitUTilde {
  [[nodiscard]] double value(Point2 x) const {
    const double r = check(x);
    return (r + 1.0 / r) * (x.x / r);
  }
  [[nodiscard]] Vec2 gradient(Point2 x) const {
    check(x);
    return ExplicitU::closed_form_gradient(x);
  }
  [[nodiscard]] std::vector<Point2> singular_points() const { return {kOrigin}; }

 private:
  static double check(Point2 x) {
    const double r = x.norm();
    if (r <= kSingularTol) throw SingularPointError("u-tilde evaluated at the origin");
    return r;
  }
};

/// Harmonic targets kept in closed form rather than expanded about the origin.
class ClosedFormTarget {
 public:
  using Kind = std::variant<LogSource, ExplicitU, ExplicitUTilde>;

  ClosedFormTarget(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  static ClosedFormTarget log_source(Point2 p) { return ClosedFormTarget(LogSource{p}); }

  [[nodiscard]] const Kind& kind() const { return kind_; }
  [[nodiscard]] double value(Point2 p) const {
    return std::visit([p](const auto& k) { return k.value(p); }, kind_);
  }
  [[nodiscard]] Vec2 gradient(Point2 p) const {
    return std::visit([p](const auto& k) { return k.gradient(p); }, kind_);
  }
  [[nodiscard]] std::vector<Point2> singular_points() const {
    return std::visit([](const auto& k) { return k.singular_points(); }, kind_);
  }

 private:
  Kind kind_;
};

static_assert(HarmonicField<HarmonicSeries>);
static_assert(HarmonicField<ClosedFormTarget>);
static_assert(HarmonicField<LogSource>);

// ---------------------------------------------------------------------------
// Explicit solves
// ---------------------------------------------------------------------------

/// The cavity solution (r + 1/r) cos(theta). One series stands for both u on
/// the annulus and its harmonic extension to 0 < |x| < R.
[[nodiscard]] inline HarmonicSeries annulus_neumann_solution(double R) {
  detail::require(R > 1.0, "outer radius must exceed the cavity radius 1");
  HarmonicSeries u(1);
  u.regular_cos(1) = 1.0;
  u.singular_cos(1) = 1.0;
  return u;
}

/// z_g: harmonic in |x| < R with trace g, i.e. coefficient g_n / R^n on r^n.
[[nodiscard]] inline HarmonicSeries dirichlet_disk_solve(const BoundaryData& g, double R) {
  detail::require(R > 0.0, "disk radius must be positive");
  HarmonicSeries z(g.max_order());
  double scale = 1.0;
  for (int n = 0; n <= g.max_order(); ++n) {
    z.regular_cos(n) = g.cos_coeff(n) * scale;
    if (n >= 1) z.regular_sin(n) = g.sin_coeff(n) * scale;
    scale /= R;
  }
  return z;
}

/// Fourier trace of a series on the circle r = R.
[[nodiscard]] inline BoundaryData trace_on_circle(const HarmonicSeries& u, double R) {
  detail::require(R > 0.0, "trace radius must be positive");
  BoundaryData g(u.max_order());
  g.cos_coeff(0) = u.regular_cos(0) + u.log_coeff() * std::log(R);
  for (int n = 1; n <= u.max_order(); ++n) {
    const double up = std::pow(R, n);
    g.cos_coeff(n) = u.regular_cos(n) * up + u.singular_cos(n) / up;
    g.sin_coeff(n) = u.regular_sin(n) * up + u.singular_sin(n) / up;
  }
  return g;
}

/// v: harmonic in the full disk with the same trace as u on r = R.
[[nodiscard]] inline HarmonicSeries v_from_u(const HarmonicSeries& u, double R) {
  return dirichlet_disk_solve(trace_on_circle(u, R), R);
}

/// Fourier coefficients of d_nu w on r = R for w = u - v. Regular parts of u
/// cancel; mode n of the singular part contributes -2 n c_n R^{-n-1}, and the
/// log term contributes L / R to the constant mode.
[[nodiscard]] inline BoundaryData neumann_trace_w(const HarmonicSeries& u, double R) {
  detail::require(R > 0.0, "outer radius must be positive");
  BoundaryData flux(u.max_order());
  flux.cos_coeff(0) = u.log_coeff() / R;
  for (int n = 1; n <= u.max_order(); ++n) {
    const double s = -2.0 * n * std::pow(R, -n - 1);
    flux.cos_coeff(n) = s * u.singular_cos(n);
    flux.sin_coeff(n) = s * u.singular_sin(n);
  }
  return flux;
}

/// l(g) = integral over |x| = R of d_nu w * g ds, by Parseval on the circle.
[[nodiscard]] inline double boundary_pairing(const BoundaryData& w_trace, const BoundaryData& g,
                                             double R) {
  detail::require(R > 0.0, "outer radius must be positive");
  const int N = std::min(w_trace.max_order(), g.max_order());
  double modes = 0.0;
  for (int n = 1; n <= N; ++n)
    modes += w_trace.cos_coeff(n) * g.cos_coeff(n) + w_trace.sin_coeff(n) * g.sin_coeff(n);
  return std::numbers::pi * R * modes +
         2.0 * std::numbers::pi * R * w_trace.cos_coeff(0) * g.cos_coeff(0);
}

// ---------------------------------------------------------------------------
// Contour pairings
// ---------------------------------------------------------------------------

/// The two halves of the Green pairing on a contour:
///   flux  = integral of d_nu f * z ds,   trace = integral of f * d_nu z ds.
struct GreenPairing {
  double flux = 0.0;
  double trace = 0.0;
  [[nodiscard]] double value() const { return flux - trace; }
};

namespace detail {

template <HarmonicField F>
void reject_singular_on_contour(const F& f, const QuadratureRule& quad, const char* which) {
  for (const auto& c : quad.contours)
    for (const auto& s : f.singular_points())
      if (c.passes_through(s, 1e-9))
        throw SingularPointError(std::string(which) + " is singular at " + to_string(s) +
                                 ", which lies on the contour");
}

}  // namespace detail

template <HarmonicField F, HarmonicField Z>
[[nodiscard]] GreenPairing contour_green_pieces(const F& f, const Z& z, const QuadratureRule& quad) {
  detail::require(quad.kind == QuadratureKind::Contour, "Green pairing needs a contour rule");
  detail::reject_singular_on_contour(f, quad, "first field");
  detail::reject_singular_on_contour(z, quad, "second field");
  GreenPairing out;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Point2 p = quad.nodes[i];
    const Vec2 nu = quad.normals[i];
    const double w = quad.weights[i];
    out.flux += w * dot(f.gradient(p), nu) * z.value(p);
    out.trace += w * f.value(p) * dot(z.gradient(p), nu);
  }
  return out;
}

/// Quadrature value of the integral of (d_nu f * z - f * d_nu z) ds over the
/// contour the rule was built on.
template <HarmonicField F, HarmonicField Z>
[[nodiscard]] double contour_green_pairing(const F& f, const Z& z, const QuadratureRule& quad) {
  return contour_green_pieces(f, z, quad).value();
}

template <HarmonicField F, HarmonicField Z>
[[nodiscard]] double contour_green_pairing(const F& f, const Z& z, const CircleContour& contour,
                                           int angular_order = 128) {
  return contour_green_pairing(f, z, build_contour_quadrature(contour, angular_order));
}

}  // namespace nrtlab

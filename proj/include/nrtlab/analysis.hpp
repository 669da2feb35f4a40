#pragma once

// Standalone checks: the gradient identity for the boundary functional, the
// flat-boundary sign field of the probe kernel, and the enclosure-method
// functional with complex exponential probes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "nrtlab/errors.hpp"
#include "nrtlab/geometry.hpp"
#include "nrtlab/harmonic.hpp"

namespace nrtlab {

// ---------------------------------------------------------------------------
// Gradient identity
// ---------------------------------------------------------------------------

/// |l(g) + 2 pi d_x z_g(0,0)| for the explicit cavity solution.
[[nodiscard]] inline double verify_identity_21(const BoundaryData& g, double R) {
  const double ell = boundary_pairing(neumann_trace_w(annulus_neumann_solution(R), R), g, R);
  const double dx = dirichlet_disk_solve(g, R).gradient(kOrigin).x;
  return std::abs(ell + 2.0 * std::numbers::pi * dx);
}

// ---------------------------------------------------------------------------
// Sign field on a flat boundary patch
// ---------------------------------------------------------------------------

/// d_nu F_a(x, y) for x = (x1, x2, 0) on the flat patch and y = (0, 0, y3):
/// -(2 y3^2 - x1^2 - x2^2) / |x - y|^5.
[[nodiscard]] inline double flat_probe_kernel(double x1, double x2, double y3) {
  const double rho2 = x1 * x1 + x2 * x2;
  const double d2 = rho2 + y3 * y3;
  return -(2.0 * y3 * y3 - rho2) / (d2 * d2 * std::sqrt(d2));
}

struct SignSample {
  double x1 = 0.0;
  double x2 = 0.0;
  double value = 0.0;
};

[[nodiscard]] inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct SignField {
  double y3 = 0.0;
  double half_width = 0.0;
  int resolution = 0;
  std::vector<SignSample> samples;  // row-major, x2 outer, x1 inner
  double zero_radius_estimate = 0.0;
  bool signs_consistent = false;  // negative inside sqrt(2) y3, positive outside

  [[nodiscard]] double spacing() const { return 2.0 * half_width / (resolution - 1); }
  [[nodiscard]] const SignSample& at(int i1, int i2) const {
    return samples[static_cast<std::size_t>(i2) * static_cast<std::size_t>(resolution) +
                   static_cast<std::size_t>(i1)];
  }
};

/// Samples the kernel on a (resolution x resolution) grid over
/// [-half_width, half_width]^2 and locates its zero circle along the four axis
/// rays through the center node. `resolution` must be odd so the center is a node.
[[nodiscard]] inline SignField sign_map(double y3, double half_width, int resolution) {
  detail::require(y3 > 0.0, "probe height y3 must be positive");
  detail::require(half_width > 0.0, "patch half width must be positive");
  detail::require(resolution >= 3 && resolution % 2 == 1, "grid resolution must be odd and >= 3");

  SignField field;
  field.y3 = y3;
  field.half_width = half_width;
  field.resolution = resolution;
  const double h = field.spacing();
  field.samples.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int i2 = 0; i2 < resolution; ++i2)
    for (int i1 = 0; i1 < resolution; ++i1) {
      const double x1 = -half_width + i1 * h;
      const double x2 = -half_width + i2 * h;
      field.samples.push_back({x1, x2, flat_probe_kernel(x1, x2, y3)});
    }

  const int c = resolution / 2;
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  double sum = 0.0;
  int found = 0;
  for (const auto& d : dirs) {
    double prev = field.at(c, c).value;
    for (int k = 1; k <= c; ++k) {
      const double cur = field.at(c + k * d[0], c + k * d[1]).value;
      if (sign_of(cur) != sign_of(prev)) {
        // linear interpolation between radii (k-1) h and k h
        const double frac = prev / (prev - cur);
        sum += (k - 1 + frac) * h;
        ++found;
        break;
      }
      prev = cur;
    }
  }
  field.zero_radius_estimate = found ? sum / found : std::numeric_limits<double>::quiet_NaN();

  const double r0sq = 2.0 * y3 * y3;
  field.signs_consistent = std::all_of(field.samples.begin(), field.samples.end(),
                                       [r0sq](const SignSample& s) {
                                         const double rho2 = s.x1 * s.x1 + s.x2 * s.x2;
                                         if (rho2 < r0sq) return s.value < 0.0;
                                         if (rho2 > r0sq) return s.value > 0.0;
                                         return true;
                                       });
  return field;
}

inline constexpr int kDefaultSignResolution = 201;

/// True iff, for every height in the list, the disk of radius `patch_radius`
/// holds both a strictly negative and a strictly positive kernel sample.
[[nodiscard]] inline bool sign_indefiniteness_certificate(const std::vector<double>& y3_list,
                                                          double patch_radius,
                                                          int resolution = kDefaultSignResolution) {
  detail::require(!y3_list.empty(), "certificate needs at least one probe height");
  detail::require(patch_radius > 0.0, "patch radius must be positive");
  for (std::size_t i = 0; i < y3_list.size(); ++i) {
    detail::require(y3_list[i] > 0.0, "probe heights must be positive");
    if (i > 0) detail::require(y3_list[i] < y3_list[i - 1], "probe heights must decrease");
  }
  const double r2 = patch_radius * patch_radius;
  for (double y3 : y3_list) {
    const SignField field = sign_map(y3, patch_radius, resolution);
    bool neg = false;
    bool pos = false;
    for (const auto& s : field.samples) {
      if (s.x1 * s.x1 + s.x2 * s.x2 > r2) continue;
      neg = neg || s.value < 0.0;
      pos = pos || s.value > 0.0;
    }
    if (!(neg && pos)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enclosure-method functional
// ---------------------------------------------------------------------------

struct EnclosureSample {
  double tau = 0.0;
  double phi = 0.0;
  std::complex<double> value;
  int quad_order = 0;
  bool resolved = true;
};

/// Nodes needed so the trapezoid rule resolves the angular bandwidth ~ tau R.
[[nodiscard]] inline int enclosure_required_order(double tau, double R) {
  return 8 * static_cast<int>(std::ceil(tau * R));
}

// Floor on the automatic order. At tau R = 2 the 16-node rule still aliases
// the mode-15 probe coefficient 2^15 / 15! ~ 2.5e-8 onto the flux.
inline constexpr int kEnclosureMinOrder = 64;

[[nodiscard]] inline int enclosure_default_order(double tau, double R) {
  return std::max(enclosure_required_order(tau, R), kEnclosureMinOrder);
}

/// -2 pi tau e^{-i phi}: only the first Fourier mode of the probe pairs with
/// the cos(theta) flux of the explicit w.
[[nodiscard]] inline std::complex<double> enclosure_closed_form(double tau, double phi) {
  return -2.0 * std::numbers::pi * tau * std::polar(1.0, -phi);
}

namespace detail {

template <unsigned Digits10>
std::complex<double> enclosure_trapezoid(const BoundaryData& flux, double tau, double phi,
                                         double R, int M) {
  using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits10>,
                                             boost::multiprecision::et_off>;
  const real two_pi = 2 * boost::math::constants::pi<real>();
  const real tR = real(tau) * real(R);
  const real ph(phi);
  real re = 0;
  real im = 0;
  for (int j = 0; j < M; ++j) {
    const real theta = two_pi * j / M;
    real f = flux.cos_coeff(0);
    for (int n = 1; n <= flux.max_order(); ++n)
      f += flux.cos_coeff(n) * cos(n * theta) + flux.sin_coeff(n) * sin(n * theta);
    const real a = tR * cos(theta - ph);
    const real b = tR * sin(theta - ph);
    const real mag = f * exp(a);
    re += mag * cos(b);
    im += mag * sin(b);
  }
  const real w = two_pi * R / M;
  return {static_cast<double>(re * w), static_cast<double>(im * w)};
}

}  // namespace detail

/// Trapezoid value of the integral over |x| = R of d_nu w * exp(tau x.(omega + i omega_perp)) ds,
/// omega = (cos phi, sin phi), omega_perp = omega rotated by +pi/2. The probe
/// reaches e^{tau R} while the integral is O(tau), so the sum is carried in
/// MPFR with about tau R / ln 10 + 30 decimal digits. quad_order = 0 selects
/// max(8 ceil(tau R), 64); explicit orders below 8 ceil(tau R) are flagged.
[[nodiscard]] inline EnclosureSample enclosure_indicator(double tau, double phi, double R,
                                                         int quad_order = 0) {
  detail::require(tau > 0.0, "tau must be positive");
  detail::require(R > 1.0, "outer radius must exceed the cavity radius 1");
  detail::require(quad_order == 0 || quad_order >= 2, "quadrature order must be >= 2");
  const int required = enclosure_required_order(tau, R);
  EnclosureSample s;
  s.tau = tau;
  s.phi = phi;
  s.quad_order = quad_order == 0 ? enclosure_default_order(tau, R) : quad_order;
  s.resolved = s.quad_order >= required;

  const BoundaryData flux = neumann_trace_w(annulus_neumann_solution(R), R);
  const double digits = tau * R / std::numbers::ln10 + 30.0;
  if (digits <= 50)
    s.value = detail::enclosure_trapezoid<50>(flux, tau, phi, R, s.quad_order);
  else if (digits <= 100)
    s.value = detail::enclosure_trapezoid<100>(flux, tau, phi, R, s.quad_order);
  else if (digits <= 200)
    s.value = detail::enclosure_trapezoid<200>(flux, tau, phi, R, s.quad_order);
  else if (digits <= 400)
    s.value = detail::enclosure_trapezoid<400>(flux, tau, phi, R, s.quad_order);
  else
    throw PreconditionError("tau * R too large for the multiprecision enclosure sum");
  return s;
}

struct EnclosureSweep {
  std::vector<EnclosureSample> samples;
  std::vector<double> log_over_tau;  // (1/tau) log |I_tau|
  double fitted_limit = 0.0;         // h in h + (alpha log tau + beta) / tau
  double fitted_log_power = 0.0;     // alpha
  double fitted_log_constant = 0.0;  // beta
  bool strictly_decreasing = false;
  bool all_resolved = true;
};

/// (1/tau) log|I_tau| over the sweep, and its extrapolated limit from a least
/// squares fit of h + alpha log(tau)/tau + beta/tau, the form taken by
/// |I_tau| ~ C tau^alpha e^{tau h}.
[[nodiscard]] inline EnclosureSweep enclosure_sweep(const std::vector<double>& tau_list,
                                                    double phi, double R, int quad_order = 0) {
  detail::require(tau_list.size() >= 4, "enclosure sweep needs at least four samples");
  detail::require(std::is_sorted(tau_list.begin(), tau_list.end()) &&
                      std::adjacent_find(tau_list.begin(), tau_list.end()) == tau_list.end(),
                  "tau values must be strictly increasing");
  EnclosureSweep out;
  const auto n = static_cast<Eigen::Index>(tau_list.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double tau = tau_list[static_cast<std::size_t>(i)];
    const EnclosureSample s = enclosure_indicator(tau, phi, R, quad_order);
    const double lot = std::log(std::abs(s.value)) / tau;
    out.samples.push_back(s);
    out.log_over_tau.push_back(lot);
    out.all_resolved = out.all_resolved && s.resolved;
    A(i, 0) = 1.0;
    A(i, 1) = std::log(tau) / tau;
    A(i, 2) = 1.0 / tau;
    y(i) = lot;
  }
  const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
  out.fitted_limit = coef(0);
  out.fitted_log_power = coef(1);
  out.fitted_log_constant = coef(2);
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.log_over_tau.size(); ++i)
    out.strictly_decreasing = out.strictly_decreasing && out.log_over_tau[i] < out.log_over_tau[i - 1];
  return out;
}

}  // namespace nrtlab

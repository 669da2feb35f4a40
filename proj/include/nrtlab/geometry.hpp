#pragma once

// Planar regions, circle contours and the quadrature rules that realize every
// area and line integral in the library. All regions are disks or annuli, so a
// tensor-product rule in (shifted) polar coordinates is spectrally accurate for
// the smooth harmonic integrands used throughout.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nrtlab/errors.hpp"

namespace nrtlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

[[nodiscard]] constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
  [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline constexpr Point2 kOrigin{0.0, 0.0};

[[nodiscard]] inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

[[nodiscard]] inline std::string to_string(Point2 p) {
  std::ostringstream os;
  os << '(' << p.x << ", " << p.y << ')';
  return os.str();
}

class DiskRegion {
 public:
  DiskRegion(Point2 center, double radius) : center_(center), radius_(radius) {
    detail::require(center.finite(), "disk center must be finite");
    detail::require(std::isfinite(radius) && radius > 0.0, "disk radius must be positive");
  }

  [[nodiscard]] Point2 center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double area() const { return std::numbers::pi * radius_ * radius_; }

  /// Closed-disk membership with an absolute slack `tol`.
  [[nodiscard]] bool contains(Point2 p, double tol = 0.0) const {
    return distance(p, center_) <= radius_ + tol;
  }

  friend bool operator==(const DiskRegion&, const DiskRegion&) = default;

 private:
  Point2 center_;
  double radius_;
};

[[nodiscard]] inline std::string to_string(const DiskRegion& d) {
  std::ostringstream os;
  os << "disk(center=" << to_string(d.center()) << ", radius=" << d.radius() << ')';
  return os.str();
}

class AnnulusRegion {
 public:
  AnnulusRegion(Point2 center, double inner_radius, double outer_radius)
      : center_(center), inner_(inner_radius), outer_(outer_radius) {
    detail::require(center.finite(), "annulus center must be finite");
    detail::require(inner_radius > 0.0 && inner_radius < outer_radius,
                    "annulus requires 0 < inner_radius < outer_radius");
  }

  [[nodiscard]] Point2 center() const { return center_; }
  [[nodiscard]] double inner_radius() const { return inner_; }
  [[nodiscard]] double outer_radius() const { return outer_; }
  [[nodiscard]] double area() const {
    return std::numbers::pi * (outer_ * outer_ - inner_ * inner_);
  }
  [[nodiscard]] bool contains(Point2 p) const {
    const double r = distance(p, center_);
    return r >= inner_ && r <= outer_;
  }

 private:
  Point2 center_;
  double inner_;
  double outer_;
};

enum class Orientation { Outward, Inward };

class CircleContour {
 public:
  CircleContour(Point2 center, double radius, Orientation orientation = Orientation::Outward)
      : center_(center), radius_(radius), orientation_(orientation) {
    detail::require(center.finite(), "contour center must be finite");
    detail::require(std::isfinite(radius) && radius > 0.0, "contour radius must be positive");
  }

  [[nodiscard]] Point2 center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] Orientation orientation() const { return orientation_; }
  [[nodiscard]] double length() const { return 2.0 * std::numbers::pi * radius_; }

  [[nodiscard]] Point2 point_at(double theta) const {
    return {center_.x + radius_ * std::cos(theta), center_.y + radius_ * std::sin(theta)};
  }
  /// Unit normal at angle theta; points away from the center for Outward.
  [[nodiscard]] Vec2 normal_at(double theta) const {
    const double s = orientation_ == Orientation::Outward ? 1.0 : -1.0;
    return {s * std::cos(theta), s * std::sin(theta)};
  }
  /// True when `p` lies on the circle within `tol`.
  [[nodiscard]] bool passes_through(Point2 p, double tol) const {
    return std::abs(distance(p, center_) - radius_) <= tol;
  }

 private:
  Point2 center_;
  double radius_;
  Orientation orientation_;
};

enum class QuadratureKind { Area, Contour };

/// Nodes and positive weights for an area or contour integral. Contour rules
/// also carry the unit normal at each node. `areas`/`contours` record the
/// supports the rule was built on; merged rules keep all of them.
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::Area;
  std::vector<Point2> nodes;
  std::vector<double> weights;
  std::vector<Vec2> normals;
  std::vector<DiskRegion> areas;
  std::vector<CircleContour> contours;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }

  [[nodiscard]] double measure() const {
    double m = 0.0;
    for (const auto& d : areas) m += d.area();
    for (const auto& c : contours) m += c.length();
    return m;
  }

  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
[[nodiscard]] inline GaussLegendre gauss_legendre(int n) {
  detail::require(n >= 1, "Gauss-Legendre order must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

/// Gauss-Legendre in the radius (Jacobian r folded into the weights) times the
/// trapezoid rule in angle, both about the disk center.
[[nodiscard]] inline QuadratureRule build_disk_quadrature(const DiskRegion& region, int radial_order,
                                                          int angular_order) {
  detail::require(radial_order >= 1 && angular_order >= 1, "quadrature orders must be >= 1");
  const GaussLegendre gl = gauss_legendre(radial_order);
  const double rho = region.radius();
  const double dtheta = 2.0 * std::numbers::pi / angular_order;

  QuadratureRule rule;
  rule.kind = QuadratureKind::Area;
  rule.areas.push_back(region);
  rule.nodes.reserve(static_cast<std::size_t>(radial_order) * angular_order);
  rule.weights.reserve(rule.nodes.capacity());
  for (int i = 0; i < radial_order; ++i) {
    const double r = 0.5 * rho * (gl.nodes[i] + 1.0);
    const double wr = 0.5 * rho * gl.weights[i] * r;
    for (int j = 0; j < angular_order; ++j) {
      const double theta = j * dtheta;
      rule.nodes.push_back(
          {region.center().x + r * std::cos(theta), region.center().y + r * std::sin(theta)});
      rule.weights.push_back(wr * dtheta);
    }
  }
  return rule;
}

/// Equispaced trapezoid rule on a circle with ds weights and unit normals.
[[nodiscard]] inline QuadratureRule build_contour_quadrature(const CircleContour& contour,
                                                             int angular_order) {
  detail::require(angular_order >= 2, "contour quadrature needs angular_order >= 2");
  const double dtheta = 2.0 * std::numbers::pi / angular_order;
  const double w = contour.radius() * dtheta;

  QuadratureRule rule;
  rule.kind = QuadratureKind::Contour;
  rule.contours.push_back(contour);
  for (int j = 0; j < angular_order; ++j) {
    const double theta = j * dtheta;
    rule.nodes.push_back(contour.point_at(theta));
    rule.weights.push_back(w);
    rule.normals.push_back(contour.normal_at(theta));
  }
  return rule;
}

/// Concatenates two rules of the same kind; integrals over disjoint supports add.
[[nodiscard]] inline QuadratureRule merge(QuadratureRule a, const QuadratureRule& b) {
  detail::require(a.kind == b.kind, "cannot merge area and contour rules");
  a.nodes.insert(a.nodes.end(), b.nodes.begin(), b.nodes.end());
  a.weights.insert(a.weights.end(), b.weights.begin(), b.weights.end());
  a.normals.insert(a.normals.end(), b.normals.begin(), b.normals.end());
  a.areas.insert(a.areas.end(), b.areas.begin(), b.areas.end());
  a.contours.insert(a.contours.end(), b.contours.begin(), b.contours.end());
  return a;
}

enum class OriginLocation { Inside, Outside, Boundary };

[[nodiscard]] inline const char* to_string(OriginLocation loc) {
  switch (loc) {
    case OriginLocation::Inside: return "Inside";
    case OriginLocation::Outside: return "Outside";
    case OriginLocation::Boundary: return "Boundary";
  }
  return "?";
}

inline constexpr double kDefaultBoundaryTol = 1e-9;

/// Where the origin sits relative to `region`. Within `tol` of the boundary
/// circle the answer is Boundary and no indicator verdict is claimed.
[[nodiscard]] inline OriginLocation classify_origin(const DiskRegion& region,
                                                    double tol = kDefaultBoundaryTol) {
  detail::require(tol > 0.0, "classify_origin tolerance must be positive");
  const double d = region.center().norm();
  if (d < region.radius() - tol) return OriginLocation::Inside;
  if (d > region.radius() + tol) return OriginLocation::Outside;
  return OriginLocation::Boundary;
}

/// closure(G) inside the open disk Omega. For a disk G this also makes
/// Omega \ closure(G) connected, so that condition is not computed separately.
[[nodiscard]] inline bool validate_admissible(const DiskRegion& G, const DiskRegion& omega) {
  return distance(G.center(), omega.center()) + G.radius() < omega.radius();
}

}  // namespace nrtlab

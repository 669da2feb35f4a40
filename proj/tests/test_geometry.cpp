#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nrtlab/geometry.hpp"

using namespace nrtlab;
using std::numbers::pi;

namespace {

double integrate_disk(const DiskRegion& d, int nr, int na, auto f) {
  return build_disk_quadrature(d, nr, na).integrate(f);
}

}  // namespace

TEST(GaussLegendre, ExactForOddDegreeUpTo2nMinus1) {
  for (int n : {1, 2, 5, 12, 33}) {
    const auto gl = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += gl.weights[i] * std::pow(gl.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(q, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
    for (int i = 1; i < n; ++i) EXPECT_LT(gl.nodes[i - 1], gl.nodes[i]);
  }
}

TEST(DiskQuadrature, ConstantGivesArea) {
  const DiskRegion unit(kOrigin, 1.0);
  EXPECT_NEAR(integrate_disk(unit, 8, 16, [](Point2) { return 1.0; }) / pi, 1.0, 1e-12);
  const DiskRegion off({1.3, 0.0}, 0.25);
  EXPECT_NEAR(integrate_disk(off, 8, 16, [](Point2) { return 1.0; }) / (pi * 0.0625), 1.0, 1e-12);
}

TEST(DiskQuadrature, SecondMoment) {
  // int_0^1 r^2 r dr 2 pi = pi / 2
  const DiskRegion unit(kOrigin, 1.0);
  const double v = integrate_disk(unit, 8, 16, [](Point2 p) { return p.x * p.x + p.y * p.y; });
  EXPECT_NEAR(v, pi / 2.0, 1e-13);
}

TEST(DiskQuadrature, WeightsPositiveAndSumToMeasure) {
  for (const DiskRegion d : {DiskRegion(kOrigin, 0.5), DiskRegion({1.3, 0.0}, 0.25),
                             DiskRegion({-0.2, 0.7}, 1.1)}) {
    const auto q = build_disk_quadrature(d, 13, 29);
    double s = 0.0;
    for (double w : q.weights) {
      EXPECT_GT(w, 0.0);
      s += w;
    }
    EXPECT_NEAR(s / d.area(), 1.0, 1e-12);
    EXPECT_NEAR(q.measure(), d.area(), 0.0);
  }
}

TEST(DiskQuadrature, FirstMomentsVanishOnCenteredDisks) {
  for (double rho : {0.3, 1.0, 2.0}) {
    const DiskRegion d(kOrigin, rho);
    EXPECT_NEAR(integrate_disk(d, 10, 20, [](Point2 p) { return p.x; }), 0.0, 1e-12);
    EXPECT_NEAR(integrate_disk(d, 10, 20, [](Point2 p) { return p.y; }), 0.0, 1e-12);
  }
}

TEST(DiskQuadrature, SpectralConvergenceWitness) {
  auto f = [](Point2 p) { return std::exp(p.x) * std::cos(p.y); };
  for (const DiskRegion d : {DiskRegion(kOrigin, 1.0), DiskRegion({1.3, 0.0}, 0.25),
                             DiskRegion({0.4, -0.3}, 0.8)}) {
    const double coarse = integrate_disk(d, 16, 32, f);
    const double fine = integrate_disk(d, 32, 64, f);
    EXPECT_LT(std::abs(coarse - fine), 1e-10);
    // exp(x) cos(y) is harmonic: mean value property gives area * f(center).
    EXPECT_NEAR(fine, d.area() * f(d.center()), 1e-12);
  }
}

TEST(ContourQuadrature, LengthAndTrigonometricMoments) {
  const auto q2 = build_contour_quadrature(CircleContour(kOrigin, 2.0), 64);
  EXPECT_NEAR(q2.integrate([](Point2) { return 1.0; }), 4.0 * pi, 1e-12);

  const auto q1 = build_contour_quadrature(CircleContour(kOrigin, 1.0), 64);
  EXPECT_NEAR(q1.integrate([](Point2 p) { return p.x * p.x; }), pi, 1e-13);

  const auto qh = build_contour_quadrature(CircleContour(kOrigin, 0.5), 8);
  EXPECT_NEAR(qh.integrate([](Point2 p) {
    const double th = std::atan2(p.y, p.x);
    return std::cos(3.0 * th);
  }),
              0.0, 1e-14);
}

TEST(ContourQuadrature, NormalsAreUnitAndOutward) {
  const CircleContour c({0.3, -0.1}, 0.7);
  const auto q = build_contour_quadrature(c, 16);
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_NEAR(q.normals[i].norm(), 1.0, 1e-15);
    EXPECT_GT(dot(q.normals[i], q.nodes[i] - c.center()), 0.0);
  }
  const auto inward = build_contour_quadrature(CircleContour({0, 0}, 1.0, Orientation::Inward), 8);
  EXPECT_LT(dot(inward.normals[0], inward.nodes[0] - kOrigin), 0.0);
}

TEST(ContourQuadrature, RejectsTooFewNodes) {
  EXPECT_THROW((void)build_contour_quadrature(CircleContour(kOrigin, 1.0), 1), PreconditionError);
  EXPECT_THROW((void)build_disk_quadrature(DiskRegion(kOrigin, 1.0), 0, 4), PreconditionError);
}

TEST(Regions, InvariantsEnforced) {
  EXPECT_THROW(DiskRegion(kOrigin, 0.0), PreconditionError);
  EXPECT_THROW(DiskRegion(kOrigin, -1.0), PreconditionError);
  EXPECT_THROW(AnnulusRegion(kOrigin, 1.0, 1.0), PreconditionError);
  EXPECT_THROW(CircleContour(kOrigin, 0.0), PreconditionError);
  EXPECT_THROW(DiskRegion({std::nan(""), 0.0}, 1.0), PreconditionError);
  EXPECT_TRUE(AnnulusRegion(kOrigin, 1.0, 2.0).contains({1.5, 0.0}));
  EXPECT_FALSE(AnnulusRegion(kOrigin, 1.0, 2.0).contains({0.5, 0.0}));
}

TEST(ClassifyOrigin, Examples) {
  EXPECT_EQ(classify_origin(DiskRegion(kOrigin, 0.5), 1e-9), OriginLocation::Inside);
  EXPECT_EQ(classify_origin(DiskRegion({1.3, 0.0}, 0.25), 1e-9), OriginLocation::Outside);
  EXPECT_EQ(classify_origin(DiskRegion({0.5, 0.0}, 0.5), 1e-9), OriginLocation::Boundary);
  EXPECT_THROW((void)classify_origin(DiskRegion(kOrigin, 0.5), 0.0), PreconditionError);
}

TEST(ClassifyOrigin, RotationInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.5, 1.5), A(0.0, 2.0 * pi), Rad(0.05, 1.0);
  for (int k = 0; k < 200; ++k) {
    const Point2 c{U(rng), U(rng)};
    const double rho = Rad(rng);
    const double a = A(rng);
    const Point2 rc{std::cos(a) * c.x - std::sin(a) * c.y, std::sin(a) * c.x + std::cos(a) * c.y};
    // stay clear of the boundary band, where rounding of |c| decides
    if (std::abs(c.norm() - rho) < 1e-6) continue;
    EXPECT_EQ(classify_origin(DiskRegion(c, rho)), classify_origin(DiskRegion(rc, rho)));
  }
}

TEST(ValidateAdmissible, Examples) {
  const DiskRegion omega(kOrigin, 2.0);
  EXPECT_TRUE(validate_admissible(DiskRegion(kOrigin, 0.5), omega));
  EXPECT_FALSE(validate_admissible(DiskRegion({1.9, 0.0}, 0.5), omega));
  EXPECT_TRUE(validate_admissible(DiskRegion({1.3, 0.0}, 0.25), omega));
  EXPECT_FALSE(validate_admissible(DiskRegion({1.5, 0.0}, 0.5), omega));  // touches the boundary
}

TEST(Merge, IntegralsAddOverDisjointSupports) {
  const DiskRegion a(kOrigin, 0.25), b({1.3, 0.0}, 0.25);
  const auto m = merge(build_disk_quadrature(a, 8, 16), build_disk_quadrature(b, 8, 16));
  EXPECT_NEAR(m.integrate([](Point2) { return 1.0; }), a.area() + b.area(), 1e-14);
  EXPECT_EQ(m.areas.size(), 2u);
  EXPECT_THROW((void)merge(build_disk_quadrature(a, 2, 2),
                           build_contour_quadrature(CircleContour(kOrigin, 1.0), 4)),
               PreconditionError);
}

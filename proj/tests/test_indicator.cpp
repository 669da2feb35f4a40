#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nrtlab/indicator.hpp"

using namespace nrtlab;
using std::numbers::pi;

namespace {

constexpr double R = 2.0;
const DiskRegion kCentered(kOrigin, 0.5);
const DiskRegion kOffCentre({1.3, 0.0}, 0.25);

// ||r^n cos n theta||^2 over the disk of radius rho about the origin.
double polar_h1_sq(int n, double rho) {
  return n * pi * std::pow(rho, 2 * n) + pi * std::pow(rho, 2 * n + 2) / (2 * n + 2);
}

// sup value for the centred case in closed form: pi / ||x / R||_{H^1(B_rho)}.
double centred_sup_over_eps(double rho) { return pi / std::sqrt(polar_h1_sq(1, rho) / (R * R)); }

GramSystem identity_system(Eigen::VectorXd b) {
  GramSystem sys;
  sys.order = 0;
  sys.Q = Eigen::MatrixXd::Identity(b.size(), b.size());
  sys.b = std::move(b);
  sys.preconditioning = Preconditioning::None;
  return sys;
}

}  // namespace

TEST(H1Inner, ClosedFormPolarIntegrals) {
  const auto unit = build_disk_quadrature(DiskRegion(kOrigin, 1.0), 48, 128);
  const HarmonicSeries zc1 = dirichlet_disk_solve(BoundaryData::cosine(1), R);
  EXPECT_NEAR(h1_inner(zc1, zc1, unit) / (5.0 * pi / 16.0), 1.0, 1e-10);

  HarmonicSeries rc(1), rs(1);
  rc.regular_cos(1) = 1.0;
  rs.regular_sin(1) = 1.0;
  EXPECT_NEAR(h1_inner(rc, rc, unit) / (pi + pi / 4.0), 1.0, 1e-10);

  for (double rho : {0.25, 0.5, 1.7}) {
    const auto q = build_disk_quadrature(DiskRegion(kOrigin, rho), 48, 128);
    HarmonicSeries one(0);
    one.regular_cos(0) = 1.0;
    EXPECT_NEAR(h1_inner(one, one, q) / (pi * rho * rho), 1.0, 1e-12);
    EXPECT_NEAR(h1_inner(rc, rs, q), 0.0, 1e-14);
    for (int n : {2, 5, 9}) {
      HarmonicSeries s(n);
      s.regular_cos(n) = 1.0;
      EXPECT_NEAR(h1_inner(s, s, q) / polar_h1_sq(n, rho), 1.0, 1e-10) << "n=" << n;
    }
  }
}

TEST(H1Inner, RejectsSingularInsideRegion) {
  const auto q = build_disk_quadrature(kCentered, 8, 16);
  const HarmonicSeries ut = annulus_neumann_solution(R);
  EXPECT_THROW((void)h1_inner(ut, ut, q), SingularPointError);
  const ClosedFormTarget e = ClosedFormTarget::log_source({1.2, 0.0});
  EXPECT_THROW((void)h1_norm(e, build_disk_quadrature(kOffCentre, 8, 16)), SingularPointError);
  EXPECT_NO_THROW((void)h1_norm(e, q));
  EXPECT_THROW((void)h1_norm(e, build_contour_quadrature(CircleContour(kOrigin, 0.5), 8)),
               PreconditionError);
}

TEST(BasisLayout, RoundTrip) {
  EXPECT_EQ(basis_size(4), 9);
  EXPECT_EQ(basis_mode(0), 0);
  EXPECT_EQ(basis_mode(1), 1);
  EXPECT_EQ(basis_mode(2), 1);
  EXPECT_EQ(basis_mode(7), 4);
  EXPECT_FALSE(basis_is_sine(1));
  EXPECT_TRUE(basis_is_sine(4));
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(9, 1.0, 9.0);
  const BoundaryData g = coefficients_to_boundary(c, 4);
  EXPECT_EQ(g.cos_coeff(0), 1.0);
  EXPECT_EQ(g.cos_coeff(2), 4.0);
  EXPECT_EQ(g.sin_coeff(2), 5.0);
  EXPECT_EQ((boundary_to_coefficients(g, 4) - c).norm(), 0.0);
}

TEST(BasisSamples, AgreeWithSeriesEvaluation) {
  const auto q = build_disk_quadrature(kOffCentre, 4, 8);
  const int N = 6;
  const BasisSamples s(q, N, R);
  for (int k = 0; k < basis_size(N); ++k) {
    const HarmonicSeries z = dirichlet_disk_solve(basis_boundary_data(k, N), R);
    for (std::size_t i = 0; i < q.size(); i += 5) {
      const auto row = static_cast<Eigen::Index>(i);
      EXPECT_NEAR(s.value(row, k), z.value(q.nodes[i]), 1e-14);
      EXPECT_NEAR(s.grad_x(row, k), z.gradient(q.nodes[i]).x, 1e-14);
      EXPECT_NEAR(s.grad_y(row, k), z.gradient(q.nodes[i]).y, 1e-14);
    }
  }
}

TEST(AssembleGram, LoadAndEntries) {
  const GramSystem sys = assemble_gram(kCentered, R, 4);
  ASSERT_EQ(sys.b.size(), 9);
  for (int k = 0; k < 9; ++k) {
    if (k == 1)
      EXPECT_NEAR(sys.b(k), -pi, 1e-15);
    else
      EXPECT_EQ(sys.b(k), 0.0) << k;
  }
  EXPECT_NEAR(sys.Q(0, 0), pi * 0.25, 1e-13);
  for (int n = 1; n <= 4; ++n)
    EXPECT_NEAR(sys.Q(2 * n - 1, 2 * n - 1) / sys.Q(2 * n, 2 * n), 1.0, 1e-12) << "n=" << n;
  // diagonal entries against the closed form, z_{cos n} = r^n cos n theta / R^n
  for (int n = 1; n <= 4; ++n)
    EXPECT_NEAR(sys.Q(2 * n - 1, 2 * n - 1) / (polar_h1_sq(n, 0.5) / std::pow(R, 2 * n)), 1.0, 1e-10);
  // every entry against an independent h1_inner evaluation
  const auto q = build_disk_quadrature(kCentered, 48, 128);
  for (int m = 0; m < 9; ++m)
    for (int n = 0; n < 9; ++n) {
      const double ref = h1_inner(dirichlet_disk_solve(basis_boundary_data(m, 4), R),
                                  dirichlet_disk_solve(basis_boundary_data(n, 4), R), q);
      EXPECT_NEAR(sys.Q(m, n), ref, 1e-13 * sys.Q(0, 0));
    }
}

TEST(AssembleGram, SymmetricAndPositiveSemidefinite) {
  for (const DiskRegion& G : {kCentered, kOffCentre, DiskRegion({-0.4, 0.9}, 0.6)})
    for (int N : {4, 16, 32}) {
      const GramSystem sys = assemble_gram(G, R, N);
      const double nq = sys.Q.norm();
      EXPECT_LE((sys.Q - sys.Q.transpose()).norm(), 1e-13 * nq);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.Q);
      EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12 * nq);
    }
}

TEST(AssembleGram, RejectsInadmissibleRegion) {
  EXPECT_THROW((void)assemble_gram(DiskRegion({1.9, 0.0}, 0.5), R, 4), PreconditionError);
  EXPECT_THROW((void)assemble_gram(kCentered, 1.0, 4), PreconditionError);
}

TEST(SupIndicator, TrivialExamples) {
  Eigen::VectorXd b(2);
  b << 3.0, 4.0;
  EXPECT_NEAR(sup_indicator(identity_system(b), 0.1).value, 0.5, 1e-15);
  const IndicatorValue zero = sup_indicator(identity_system(Eigen::VectorXd::Zero(3)), 0.7);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_FALSE(zero.unbounded_in_subspace);

  GramSystem sys = assemble_gram(kCentered, R, 6);
  sys.b.setZero();
  EXPECT_EQ(sup_indicator(sys, 1e-3).value, 0.0);
  EXPECT_THROW((void)sup_indicator(sys, 0.0), PreconditionError);
}

TEST(SupIndicator, RejectsIndefiniteMatrix) {
  GramSystem sys = identity_system(Eigen::VectorXd::Ones(2));
  sys.Q(1, 1) = -0.5;
  EXPECT_THROW((void)sup_indicator(sys, 1.0), NumericalFailure);
}

TEST(SupIndicator, CentredRegionClosedForm) {
  const double expected = centred_sup_over_eps(0.5);
  EXPECT_NEAR(expected, 16.0 * std::sqrt(pi / 17.0), 1e-12);
  const IndicatorValue v = sup_indicator(assemble_gram(kCentered, R, 16), 1e-3);
  EXPECT_NEAR(v.value / 1e-3 / expected, 1.0, 1e-9);
  EXPECT_FALSE(v.unbounded_in_subspace);
  EXPECT_LT(v.discarded_share, 1e-8);
}

TEST(SupIndicator, DominatesRandomFeasibleSamples) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> Z;
  const double eps = 1e-3;
  for (const DiskRegion& G : {kCentered, kOffCentre})
    for (int N : {4, 16}) {
      const GramSystem sys = assemble_gram(G, R, N);
      const double sup = sup_indicator(sys, eps).value;
      const SpectralPseudoInverse pinv = pseudo_inverse(sys);
      const Eigen::MatrixXd basis = pinv.scaling().asDiagonal() * pinv.retained_eigenvectors();
      double best = 0.0;
      for (int s = 0; s < 1000; ++s) {
        Eigen::VectorXd y(basis.cols());
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = Z(rng);
        Eigen::VectorXd c = basis * y;
        const double qn = c.dot(sys.Q * c);
        ASSERT_GT(qn, 0.0);
        c *= eps / std::sqrt(qn);
        const double val = std::abs(sys.b.dot(c));
        EXPECT_LE(val, sup * (1.0 + 1e-9));
        best = std::max(best, val);
      }
      EXPECT_GT(best, 0.0);
      // the maximiser eps Q^+ b / sqrt(b^T Q^+ b) is feasible and attains sup
      const Eigen::VectorXd qb = pinv.apply(sys.b);
      const Eigen::VectorXd cstar = eps * qb / std::sqrt(sys.b.dot(qb));
      EXPECT_NEAR(cstar.dot(sys.Q * cstar) / (eps * eps), 1.0, 1e-6);
      EXPECT_NEAR(std::abs(sys.b.dot(cstar)) / sup, 1.0, 1e-9);
    }
}

TEST(SupIndicator, LinearInEps) {
  for (const DiskRegion& G : {kCentered, kOffCentre}) {
    const GramSystem sys = assemble_gram(G, R, 16);
    const double base = sup_indicator(sys, 1e-3).value;
    for (double a : {2.0, 10.0, 0.125})
      EXPECT_NEAR(sup_indicator(sys, a * 1e-3).value, a * base, 1e-15 * a * base + 1e-300);
  }
}

TEST(SupIndicator, InvariantUnderBasisRescaling) {
  for (const DiskRegion& G : {kCentered, DiskRegion({0.2, -0.1}, 0.6)}) {
    double ref = 0.0;
    for (Preconditioning p :
         {Preconditioning::Jacobi, Preconditioning::RadialPower, Preconditioning::None}) {
      IndicatorOptions opt;
      opt.preconditioning = p;
      const double v = sup_indicator(assemble_gram(G, R, 8, opt), 1.0).value;
      if (ref == 0.0) ref = v;
      EXPECT_NEAR(v / ref, 1.0, 1e-8) << to_string(p);
    }
  }
}

TEST(IndicatorSweep, CentredRegionIsBounded) {
  const std::vector<int> orders{4, 8, 16, 24, 32};
  const IndicatorCurve c = indicator_sweep(kCentered, R, 1e-3, orders);
  EXPECT_EQ(c.verdict, Verdict::Bounded);
  ASSERT_EQ(c.values.size(), orders.size());
  for (double v : c.values) EXPECT_NEAR(v / c.values.front(), 1.0, 1e-6);
  EXPECT_NEAR(c.values.back() / (1e-3 * centred_sup_over_eps(0.5)), 1.0, 1e-8);
  ASSERT_EQ(c.growth_ratios.size(), orders.size() - 1);
  for (bool f : c.unbounded_flags) EXPECT_FALSE(f);

  const IndicatorCurve c10 = indicator_sweep(kCentered, R, 1e-2, orders);
  for (std::size_t i = 0; i < orders.size(); ++i)
    EXPECT_NEAR(c10.values[i], 10.0 * c.values[i], 1e-14 * c10.values[i]);
}

TEST(IndicatorSweep, OffCentreRegionBlowsUp) {
  const IndicatorCurve c = indicator_sweep(kOffCentre, R, 1e-3, {4, 8, 16, 24, 32});
  EXPECT_EQ(c.verdict, Verdict::BlowUp);
  EXPECT_GT(c.values.back(), 2.0 * c.values.front());
  for (double v : c.values) EXPECT_GE(v, 0.0);
}

TEST(IndicatorSweep, RejectsUnsortedOrders) {
  EXPECT_THROW((void)indicator_sweep(kCentered, R, 1e-3, {8, 4}), PreconditionError);
  EXPECT_THROW((void)indicator_sweep(kCentered, R, 1e-3, {4, 4}), PreconditionError);
  EXPECT_THROW((void)indicator_sweep(kCentered, R, 1e-3, {}), PreconditionError);
}

TEST(ClassifySweep, Rules) {
  EXPECT_EQ(classify_sweep({1.0, 1.02, 1.05, 1.01}, {}), Verdict::Bounded);
  EXPECT_EQ(classify_sweep({1.0, 1.5, 2.0}, {}), Verdict::BlowUp);
  EXPECT_EQ(classify_sweep({1.0, 1.0, 1.0}, {false, true, false}), Verdict::BlowUp);
  EXPECT_EQ(classify_sweep({1.0, 1.3, 1.6, 1.9}, {}), Verdict::Inconclusive);
  EXPECT_EQ(classify_sweep({0.0, 0.0, 0.0}, {}), Verdict::Bounded);
  EXPECT_EQ(classify_sweep({1.0, 1.2}, {}), Verdict::Inconclusive);
  // growth wins over a late plateau
  EXPECT_EQ(classify_sweep({1.0, 3.0, 3.01, 3.02}, {}), Verdict::BlowUp);
}

TEST(BlowUpDiagnostic, Examples) {
  IndicatorCurve c;
  c.axis = ParameterAxis::Offset;
  c.parameters = {0.5, 0.25, 0.125};
  for (double t : c.parameters) c.values.push_back(3.7 * 2 * pi / t);
  const BlowUpFit f = blow_up_diagnostic(c);
  EXPECT_NEAR(f.slope, 1.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_EQ(f.verdict, Verdict::BlowUp);

  c.values = {2.0, 2.0, 2.0};
  EXPECT_EQ(blow_up_diagnostic(c).verdict, Verdict::Bounded);
  EXPECT_NEAR(blow_up_diagnostic(c).slope, 0.0, 1e-15);

  c.values = {1.0, std::pow(2.0, 0.5), 2.0};
  EXPECT_EQ(blow_up_diagnostic(c).verdict, Verdict::Inconclusive);

  c.parameters = {0.5, 0.25};
  c.values = {1.0, 2.0};
  EXPECT_THROW((void)blow_up_diagnostic(c), PreconditionError);

  IndicatorCurve byN;
  byN.axis = ParameterAxis::TruncationOrder;
  byN.parameters = {4, 8, 16};
  byN.values = {4, 8, 16};
  EXPECT_NEAR(blow_up_diagnostic(byN).slope, 1.0, 1e-12);
}

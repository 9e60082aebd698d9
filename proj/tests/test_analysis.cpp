#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "aniso/analysis.hpp"
#include "aniso/report.hpp"

using namespace aniso;

namespace {

ScalarField field(const std::string& label) { return *find_field(label); }

Triangle equilateral() { return Triangle{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}; }

}  // namespace

TEST(Constants, R0AndGamma) {
  EXPECT_NEAR(r0(), std::log(2.0) / (std::log(4.0) - std::log(3.0)), 1e-15);
  EXPECT_NEAR(r0(), 2.4094, 1e-4);
  const double r = r0();
  EXPECT_NEAR(gamma_factor(r), (std::pow(0.69, r) + 7) / 8, 1e-15);
  EXPECT_LT(gamma_factor(r), 1.0);
  const double g = gamma_factor(r);
  EXPECT_NEAR(sigma_power_bound(3.0, r, 4), std::pow(3.0, r) * std::pow(g, 4) +
                                                std::pow(5.0, r) / (8 * (1 - g)),
              1e-12);
}

TEST(HessianTauNorm, ConstantHessians) {
  auto square = unit_square_mesh();
  EXPECT_NEAR(hessian_tau_norm(field("disk"), square, 0.5), 2.0, 1e-12);
  for (int k : {2, 10, 100}) {
    auto f = field("aniso-" + std::to_string(k));
    for (double tau : {0.5, 2.0 / 3, 1.0}) {
      EXPECT_NEAR(hessian_tau_norm(f, square, tau), std::sqrt(4.0 * k), 1e-10 * k);
    }
    // |Omega| = 1/2 on the reference triangle.
    EXPECT_NEAR(hessian_tau_norm(f, reference_triangle_mesh(), 0.5),
                std::sqrt(4.0 * k) * 0.25, 1e-10 * k);
  }
  EXPECT_EQ(hessian_tau_norm(field("affine"), square, 0.5), 0.0);
}

TEST(HessianTauNorm, StableUnderRefinement) {
  for (const auto& f : builtin_catalog()) {
    if (!f.has_hessian()) continue;
    for (double tau : {0.5, 2.0 / 3, 1.0}) {
      double a = hessian_tau_norm(f, unit_square_mesh(), tau, 8);
      double b = hessian_tau_norm(f, unit_square_mesh(), tau, 9);
      EXPECT_LE(std::abs(a - b), 1e-6 * std::max(std::abs(b), 1e-300)) << f.label;
    }
  }
}

TEST(SigmaStudy, EquilateralIdentity) {
  auto stats = sigma_study(QuadForm::identity(), {equilateral()}, 2);
  ASSERT_EQ(stats.size(), 3u);
  EXPECT_NEAR(stats[0].mean, sigma(QuadForm::identity(), equilateral()), 1e-15);
  EXPECT_EQ(stats[0].fraction_above, 0.0);
  EXPECT_EQ(stats[2].count, 64u);
  for (const auto& s : stats) {
    EXPECT_GE(s.mean, 1.0 - 1e-12);
    EXPECT_GE(s.fraction_above, 0.0);
    EXPECT_LE(s.fraction_above, 1.0);
  }
}

TEST(SigmaStudy, ThinRootWashesOut) {
  // sigma0 ~ 50 for this sliver; the fraction of bad triangles should shrink.
  Triangle thin{{0, 0}, {1, 0}, {0.5, 0.01}};
  auto stats = sigma_study(QuadForm::identity(), {thin}, 4);
  EXPECT_GT(stats[0].fraction_above, 0.5);
  for (std::size_t n = 2; n < stats.size(); ++n) {
    EXPECT_LE(stats[n].fraction_above, stats[n - 1].fraction_above);
  }
  EXPECT_LT(stats.back().fraction_above, stats[1].fraction_above);
  for (const auto& s : stats) EXPECT_LE(s.mean_pow_r0, s.bound * (1 + 1e-12));
}

TEST(SigmaStudy, RejectsIndefinite) {
  EXPECT_THROW(sigma_study(QuadForm{1, 0, -1}, reference_triangle_mesh(), 1), std::exception);
}

TEST(ConvergenceStudy, AffineGivesZero) {
  GreedyConfig c;
  auto pts = convergence_study(field("affine"), c, {16, 64});
  for (const auto& p : pts) {
    EXPECT_EQ(p.error, 0.0);
    EXPECT_EQ(p.ratio, 0.0);
  }
}

TEST(ConvergenceStudy, QuadraticRatioStabilizes) {
  GreedyConfig c;
  c.initial = InitialMesh::reference_triangle;
  auto pts = convergence_study(field("aniso-2"), c, {256, 1024, 4096});
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_LE(std::max(pts[2].ratio, pts[1].ratio) / std::min(pts[2].ratio, pts[1].ratio), 2.0);
  for (const auto& p : pts) {
    EXPECT_GT(p.ratio, 0);
    EXPECT_NEAR(p.product, static_cast<double>(p.n) * p.error, 1e-12 * p.product);
  }
}

TEST(ConvergenceStudy, RejectsBadInput) {
  GreedyConfig c;
  EXPECT_THROW(convergence_study(field("gauss-ridge"), c, {16}), std::invalid_argument);
  EXPECT_THROW(convergence_study(field("disk"), c, {64, 16}), std::invalid_argument);
}

TEST(NearBisection, ExpbumpSmallTriangles) {
  auto f = field("expbump");
  GreedyConfig c;
  c.stop = StopRule::target(3000);
  auto r = greedy_run(f, c);
  int checked = 0;
  for (const auto& t : r.forest.leaf_triangles()) {
    if (t.diameter() > 0.05) continue;
    auto chk = check_near_bisection(f, t, c);
    EXPECT_TRUE(chk.near_longest) << "mu=" << chk.mu;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Report, CsvHeadersAndRows) {
  auto stats = sigma_study(QuadForm::diag(1, 10), reference_triangle_mesh(), 2);
  auto csv = sigma_csv(stats);
  EXPECT_EQ(csv.rfind(std::string(kSigmaCsvHeader) + "\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

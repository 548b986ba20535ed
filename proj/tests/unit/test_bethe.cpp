#include <gtest/gtest.h>

#include <numbers>

#include "gaudin/bethe.hpp"
#include "gaudin/norms.hpp"
#include "support/oracles.hpp"

using namespace gaudin;
namespace gt = gaudin::testing;

namespace {

constexpr double pi = std::numbers::pi;

double max_rel_entry_gap(const Matrix& a, const Matrix& b) {
  return (a - b).max_abs() / std::max(1.0, b.max_abs());
}

ChainSpec random_chain(int m, const Model& model, Rng& rng) {
  std::vector<cplx> nu;
  for (int k = 0; k < m; ++k) nu.emplace_back(rng.uniform(-0.5, 0.5), 0.0);
  return ChainSpec(nu, model);
}

}  // namespace

TEST(Phi, SingleNlsParticleIsLinear) {
  const auto phi = phi_vector(NlsVacuum{7.0, 1.0}, Model::xxx(1.0), RapiditySet({0.3}));
  EXPECT_NEAR(std::abs(phi.phi[0] - 2.1), 0.0, 1e-15);
  EXPECT_FALSE(phi.branch_warning);
}

TEST(Phi, PairScatteringCancelsInSum) {
  const Model m = Model::xxx(0.9);
  const VacuumSpec v = ChainVacuum{ChainSpec({0.1, -0.2, 0.3}, m)};
  const std::vector<cplx> l{0.4, -0.25};
  const auto phi = phi_vector(v, m, RapiditySet(l));
  const cplx ratio = vacuum_ratio_and_X(v, l[0]).ratio * vacuum_ratio_and_X(v, l[1]).ratio;
  const cplx diff = phi.phi[0] + phi.phi[1] - kI * std::log(ratio);
  EXPECT_LT(gt::off_integer(diff.real() / (2 * pi)), 1e-12);
  EXPECT_LT(std::abs(diff.imag()), 1e-12);
}

TEST(Phi, MatchesPrincipalBranchEvaluationModTwoPi) {
  const std::vector<cplx> l{0.1, -0.1};
  const auto phi = phi_vector(HomogeneousXXZ{4, 0.4}, Model::xxz(0.4), RapiditySet(l));
  const auto ref = gt::phi_principal_xxz(4, 0.4, l);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_LT(gt::off_integer((phi.phi[k] - ref[k]).real() / (2 * pi)), 1e-12);
    EXPECT_LT(std::abs((phi.phi[k] - ref[k]).imag()), 1e-12);
  }
}

TEST(Phi, BranchWarningNearCut) {
  const auto phi = phi_vector(NlsVacuum{1.0, 1.0}, Model::xxx(1.0), RapiditySet({-5e8, 5e8}));
  EXPECT_TRUE(phi.branch_warning);
}

TEST(Phi, RejectsFreeX) {
  EXPECT_THROW(phi_vector(FreeX{{1.0}}, Model::xxx(1.0), RapiditySet({0.0})), UnsupportedVariant);
}

TEST(GaudinMatrix, SingleRapidityIsDrive) {
  const auto g = gaudin_matrix(FreeX{{cplx(2.5, -1.0)}}, Model::xxz(0.3), RapiditySet({0.2}));
  EXPECT_EQ(g.entries(0, 0), cplx(2.5, -1.0));
}

TEST(GaudinMatrix, ZeroDriveXxxPair) {
  const auto g = gaudin_matrix(FreeX{{0.0, 0.0}}, Model::xxx(1.0), RapiditySet({0.5, -0.5}));
  EXPECT_NEAR(std::abs(g.entries(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.entries(0, 1) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.entries(1, 0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.entries(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(determinant(g.entries)), 0.0, 1e-15);
}

TEST(GaudinMatrix, KernelPoleThrows) {
  EXPECT_THROW(gaudin_matrix(FreeX{{1.0, 1.0}}, Model::xxx(1.0), RapiditySet({0.0, cplx(0.0, 1.0)})), PoleError);
  EXPECT_THROW(gaudin_matrix(FreeX{{1.0, 1.0}}, Model::xxz(0.3), RapiditySet({0.0, cplx(0.0, 0.6)})), PoleError);
}

TEST(GaudinMatrix, MatchesFiniteDifferenceJacobian) {
  Rng rng(21);
  for (const Model& model : {Model::xxx(0.8), Model::xxz(0.45)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ChainSpec chain = random_chain(4, model, rng);
      const VacuumSpec v = ChainVacuum{chain};
      std::vector<cplx> l;
      while (l.size() < 3) {
        const cplx x{rng.uniform(-1.5, 1.5), 0.0};
        if (RapiditySet::min_separation([&] { auto c = l; c.push_back(x); return c; }()) > 0.1) l.push_back(x);
      }
      const auto phi = [&](const std::vector<cplx>& x) { return phi_vector(v, model, RapiditySet(x)).phi; };
      const Matrix fd = gt::finite_difference_jacobian(phi, l);
      EXPECT_LT(max_rel_entry_gap(fd, gaudin_matrix(v, model, RapiditySet(l)).entries), 1e-5);
    }
  }
}

TEST(GaudinMatrix, RowSumsEqualDriveAndSymmetric) {
  Rng rng(8);
  for (const Model& model : {Model::xxx(1.3), Model::xxz(0.7)}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<cplx> l, x;
      for (int k = 0; k < 5; ++k) {
        l.emplace_back(rng.uniform(-2, 2) + 0.3 * k, rng.uniform(-0.1, 0.1));
        x.emplace_back(rng.uniform(-3, 3), rng.uniform(-3, 3));
      }
      const auto g = gaudin_matrix_from_drive(model, l, x);
      for (std::size_t k = 0; k < 5; ++k) {
        cplx sum{};
        for (std::size_t j = 0; j < 5; ++j) {
          sum += g.entries(k, j);
          EXPECT_LT(std::abs(g.entries(k, j) - g.entries(j, k)), 1e-13 * std::max(1.0, std::abs(g.entries(k, j))));
        }
        EXPECT_LT(std::abs(sum - x[k]), 1e-13 * std::max(1.0, g.entries.max_abs()));
      }
    }
  }
}

TEST(BetheResidual, Examples) {
  const std::vector<long> one{1};
  EXPECT_NEAR(bethe_residual(NlsVacuum{2 * pi, 1.0}, Model::xxx(1.0), RapiditySet({1.0}), one).max_additive(), 0.0,
              1e-14);
  const std::vector<long> zero{0};
  EXPECT_NEAR(bethe_residual(HomogeneousXXZ{2, 0.3}, Model::xxz(0.3), RapiditySet({0.0}), zero).max_additive(), 0.0,
              1e-14);
}

TEST(Newton, NlsSingleParticle) {
  const std::vector<long> qn{1};
  const auto root = newton_solve(NlsVacuum{2 * pi, 1.0}, Model::xxx(1.0), RapiditySet({0.9}), qn);
  EXPECT_TRUE(root.converged);
  EXPECT_LE(root.iterations, 5);
  EXPECT_NEAR(root.rapidities[0].real(), 1.0, 1e-13);
}

TEST(Newton, TwoSiteXxzRootAtOrigin) {
  const std::vector<long> qn{0};
  const auto root = newton_solve(HomogeneousXXZ{2, pi / 4}, Model::xxz(pi / 4), RapiditySet({0.3}), qn);
  ASSERT_TRUE(root.converged);
  EXPECT_NEAR(std::abs(root.rapidities[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(vacuum_ratio_and_X(HomogeneousXXZ{2, pi / 4}, root.rapidities[0]).ratio - 1.0), 0.0, 1e-12);
}

TEST(Newton, NlsSymmetricPairMatchesBisection) {
  const double length = 10.0, kappa = 1.0;
  const std::vector<long> qn{-1, 1};
  const auto root = newton_solve(NlsVacuum{length, kappa}, Model::xxx(kappa), RapiditySet({-0.5, 0.5}), qn);
  ASSERT_TRUE(root.converged);
  EXPECT_LT(root.residual_norm, 1e-12);
  // λ_2 = −λ_1 = t with L t + 2 atan(2t/κ) = 3π
  const double t = gt::bisect([&](double x) { return length * x + 2 * std::atan(2 * x / kappa) - 3 * pi; }, 0.0, 1.0);
  EXPECT_NEAR(root.rapidities[1].real(), t, 1e-12);
  EXPECT_NEAR(root.rapidities[0].real(), -t, 1e-12);
  EXPECT_NEAR(t, 0.7463676, 1e-7);
}

TEST(Newton, ConvergedRootsSatisfyUnloggedEquations) {
  for (double eta : {0.3, pi / 4, 1.2}) {
    const auto root = find_root(HomogeneousXXZ{6, eta}, Model::xxz(eta), 2, 99);
    ASSERT_TRUE(root.has_value());
    const auto r = bethe_residual(HomogeneousXXZ{6, eta}, Model::xxz(eta), root->rapidities, root->quantum_numbers);
    EXPECT_LT(r.max_multiplicative(), 1e-10);
  }
}

TEST(Newton, QuadraticTail) {
  const auto root = find_root(HomogeneousXXZ{6, 0.3}, Model::xxz(0.3), 2, 4);
  ASSERT_TRUE(root.has_value());
  const auto& h = root->history;
  ASSERT_GE(h.size(), 3u);
  for (std::size_t i = h.size() - 3; i + 1 < h.size(); ++i) {
    if (h[i + 1] < 1e-13) continue;  // rounding floor
    EXPECT_LE(h[i + 1] / (h[i] * h[i]), 1e3);
  }
}

TEST(Newton, SelfConjugateRootHasRealDeterminant) {
  const std::vector<long> qn{-1, 1};
  const auto root = newton_solve(NlsVacuum{10.0, 1.0}, Model::xxx(1.0), RapiditySet({-0.5, 0.5}), qn);
  const cplx det = determinant(gaudin_matrix(NlsVacuum{10.0, 1.0}, Model::xxx(1.0), root.rapidities).entries);
  EXPECT_LT(std::abs(det.imag()), 1e-9 * std::abs(det));
}

TEST(Newton, InputValidation) {
  const std::vector<long> qn{0};
  NewtonOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(newton_solve(NlsVacuum{1.0, 1.0}, Model::xxx(1.0), RapiditySet({0.1}), qn, bad), InvalidArgument);
  EXPECT_THROW(newton_solve(FreeX{{1.0}}, Model::xxx(1.0), RapiditySet({0.1}), qn), UnsupportedVariant);
}

TEST(Newton, ReportsMaxIterations) {
  NewtonOptions opts;
  opts.max_iter = 0;
  const std::vector<long> qn{1};
  const auto root = newton_solve(NlsVacuum{2 * pi, 1.0}, Model::xxx(1.0), RapiditySet({0.5}), qn, opts);
  EXPECT_FALSE(root.converged);
  EXPECT_EQ(root.status, SolveStatus::max_iterations);
}

TEST(FindRoot, DeterministicForSeed) {
  const auto a = find_root(HomogeneousXXZ{4, 0.3}, Model::xxz(0.3), 2, 17);
  const auto b = find_root(HomogeneousXXZ{4, 0.3}, Model::xxz(0.3), 2, 17);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->rapidities.values(), b->rapidities.values());
}

#include <gtest/gtest.h>

#include <numbers>

#include "gaudin/core_model.hpp"
#include "gaudin/random.hpp"
#include "support/oracles.hpp"

using namespace gaudin;
using gaudin::testing::sinh_exp;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(ModelKind, RejectsBadCouplings) {
  EXPECT_THROW(Model::xxx(0.0), InvalidArgument);
  EXPECT_THROW(Model::xxz(0.0), InvalidArgument);
  EXPECT_THROW(Model::xxz(pi / 2), InvalidArgument);
  EXPECT_THROW(Model::xxz(-0.1), InvalidArgument);
  EXPECT_NO_THROW(Model::xxz(0.3));
  EXPECT_THROW(Model::xxz(0.3).kappa(), InvalidArgument);
}

TEST(WeightF, XxxDirectSubstitution) {
  // f = (λ−μ+iκ)/(λ−μ) with κ = 1, λ−μ = 1
  EXPECT_NEAR(std::abs(weight_f(Model::xxx(1.0), 1.0, 0.0) - cplx(1.0, 1.0)), 0.0, 1e-15);
}

TEST(WeightF, XxzZeroAtShift) {
  const double eta = 0.4;
  EXPECT_NEAR(std::abs(weight_f(Model::xxz(eta), cplx(0.1, -2 * eta), 0.1)), 0.0, 1e-15);
}

TEST(WeightF, XxzMatchesExponentialForm) {
  const cplx expected = sinh_exp(cplx(0.5, pi / 3)) / sinh_exp(0.5);
  EXPECT_LT(gaudin::testing::rel(expected, weight_f(Model::xxz(pi / 6), 0.3, -0.2)), 1e-14);
}

TEST(WeightF, PoleThrows) {
  EXPECT_THROW(weight_f(Model::xxx(1.0), 0.2, 0.2), PoleError);
  EXPECT_THROW(weight_f(Model::xxz(0.3), 0.2, cplx(0.2, pi)), PoleError);
  EXPECT_THROW(weight_g(Model::xxz(0.3), 0.2, 0.2), PoleError);
}

TEST(WeightG, Examples) {
  EXPECT_NEAR(std::abs(weight_g(Model::xxx(1.0), 1.0, 0.0) - kI), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(weight_g(Model::xxz(pi / 4), cplx(0.0, pi / 2), 0.0) - 1.0), 0.0, 1e-15);
  const Model m = Model::xxx(0.7);
  EXPECT_NEAR(std::abs(weight_g(m, 0.3, -0.4) + weight_g(m, -0.4, 0.3)), 0.0, 1e-15);
}

TEST(WeightG, AntisymmetryAcrossModels) {
  Rng rng(11);
  for (const Model& m : {Model::xxx(0.8), Model::xxz(0.35)}) {
    for (int i = 0; i < 50; ++i) {
      const cplx l{rng.uniform(-2, 2), rng.uniform(-0.5, 0.5)};
      const cplx u{rng.uniform(-2, 2), rng.uniform(-0.5, 0.5)};
      const cplx f = weight_f(m, l, u);
      EXPECT_LT(std::abs(f * weight_g(m, u, l) + f * weight_g(m, l, u)), 1e-12 * std::abs(f * weight_g(m, l, u)));
    }
  }
}

TEST(WeightF, Limits) {
  EXPECT_NEAR(std::abs(weight_f(Model::xxz(1e-9), 0.4, -0.3) - 1.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(weight_f(Model::xxx(1.0), 1e6, 0.0) - 1.0), 0.0, 1e-5);
}

TEST(Chi, Examples) {
  EXPECT_NEAR(std::abs(chi(0.0, pi / 4) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(chi(0.0, pi / 6) - 2.0 * std::sqrt(3.0)), 0.0, 1e-13);
  EXPECT_THROW(chi(cplx(0.0, 0.3), 0.3), PoleError);
}

TEST(Chi, EvenAndMatchesProductOfDenominators) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const cplx l{rng.uniform(-2, 2), rng.uniform(-0.2, 0.2)};
    const double eta = rng.uniform(0.1, 1.4);
    const cplx direct = std::sin(2 * eta) / (sinh_exp(l - kI * eta) * sinh_exp(l + kI * eta));
    EXPECT_LT(gaudin::testing::rel(direct, chi(l, eta)), 1e-12);
    EXPECT_LT(gaudin::testing::rel(chi(l, eta), chi(-l, eta)), 1e-12);
  }
}

TEST(Vacuum, NlsRatioAndDrive) {
  const auto v = vacuum_ratio_and_X(NlsVacuum{2 * pi, 1.0}, 0.37);
  EXPECT_NEAR(std::abs(v.ratio - std::exp(-2.0 * pi * kI * 0.37)), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(v.x.real(), 2 * pi);
  EXPECT_DOUBLE_EQ(v.x.imag(), 0.0);
}

TEST(Vacuum, HomogeneousXxzRatioAtOrigin) {
  EXPECT_NEAR(std::abs(vacuum_ratio_and_X(HomogeneousXXZ{2, 0.4}, 0.0).ratio - 1.0), 0.0, 1e-15);
}

TEST(Vacuum, FreeXRejectsEvaluation) {
  const VacuumSpec v = FreeX{{1.0}};
  EXPECT_THROW(vacuum_a(v, 0.0), UnsupportedVariant);
  EXPECT_THROW(vacuum_ratio_and_X(v, 0.0), UnsupportedVariant);
}

TEST(Vacuum, ZeroDenominatorAtDZero) {
  EXPECT_THROW(vacuum_ratio_and_X(HomogeneousXXZ{3, 0.4}, cplx(0.0, -0.4)), ZeroDenominator);
}

TEST(Vacuum, DriveMatchesFiniteDifferences) {
  Rng rng(3);
  const double h = 1e-6;
  const auto check = [&](const VacuumSpec& v, cplx l) {
    // i d/dλ ln(a/d) by central differences of ln of the ratio quotient
    const cplx up = vacuum_ratio_and_X(v, l + h).ratio;
    const cplx dn = vacuum_ratio_and_X(v, l - h).ratio;
    const cplx fd = kI * std::log(up / dn) / (2 * h);
    const cplx x = vacuum_ratio_and_X(v, l).x;
    EXPECT_LT(std::abs(fd - x), 1e-6 * std::max(1.0, std::abs(x)));
  };
  for (int i = 0; i < 100; ++i) {
    std::vector<cplx> nu;
    for (int k = 0; k < 3; ++k) nu.emplace_back(rng.uniform(-1, 1), 0.0);
    const double eta = rng.uniform(0.1, 1.4);
    const cplx l{rng.uniform(-1.5, 1.5), rng.uniform(-0.1, 0.1)};
    check(ChainVacuum{ChainSpec(nu, Model::xxz(eta))}, l);
    check(ChainVacuum{ChainSpec(nu, Model::xxx(rng.uniform(0.3, 2.0)))}, l);
    check(HomogeneousXXZ{4, eta}, l);
    check(NlsVacuum{rng.uniform(1, 20), 1.0}, l);
  }
}

TEST(Vacuum, HomogeneousXxzDriveEqualsMinusMChi) {
  for (double l : {-0.7, 0.0, 0.45})
    EXPECT_LT(gaudin::testing::rel(-5.0 * chi(l, 0.6), vacuum_ratio_and_X(HomogeneousXXZ{5, 0.6}, l).x), 1e-13);
}

TEST(Vacuum, ModelCompatibility) {
  EXPECT_THROW(require_compatible(NlsVacuum{1.0, 1.0}, Model::xxx(2.0)), InvalidArgument);
  EXPECT_THROW(require_compatible(HomogeneousXXZ{2, 0.3}, Model::xxx(0.3)), InvalidArgument);
  EXPECT_NO_THROW(require_compatible(FreeX{{1.0}}, Model::xxz(0.3)));
}

TEST(RapiditySet, Validation) {
  EXPECT_THROW(RapiditySet(std::vector<cplx>{}), InvalidArgument);
  EXPECT_THROW(RapiditySet({0.1, 0.1 + 1e-11}), CollisionError);
  EXPECT_THROW(RapiditySet({0.1, 0.2}, {1}), InvalidArgument);
  const RapiditySet s({0.1, -0.3}, {0, 1});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.min_separation(), 0.4, 1e-15);
}

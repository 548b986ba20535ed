#include <gtest/gtest.h>

#include <numbers>
#include <set>

#include "gaudin/six_vertex.hpp"
#include "support/oracles.hpp"

using namespace gaudin;
namespace gt = gaudin::testing;

namespace {

constexpr double pi = std::numbers::pi;

DwbcInstance random_instance(int n, double eta, Rng& rng) {
  std::vector<cplx> lambda, nu;
  for (int k = 0; k < n; ++k) {
    lambda.emplace_back(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3));
    nu.emplace_back(rng.uniform(-1, 1), rng.uniform(-0.1, 0.1));
  }
  return DwbcInstance(lambda, nu, eta);
}

}  // namespace

TEST(DwbcEnumeration, CountsAreAsmNumbers) {
  const std::array<std::uint64_t, 7> expected{1, 2, 7, 42, 429, 7436, 218348};
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(count_dwbc_configs(n), expected[static_cast<std::size_t>(n - 1)]) << n;
  EXPECT_THROW(count_dwbc_configs(8), CapExceeded);
}

TEST(DwbcEnumeration, ConfigurationsAreDistinctAsms) {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<int>> seen;
    for (const auto& c : enumerate_dwbc_configs(n)) {
      EXPECT_TRUE(gt::is_alternating_sign_matrix(c.asm_entries, n));
      EXPECT_TRUE(seen.insert(c.asm_entries).second);
      int c_vertices = 0;
      for (auto v : c.vertices) c_vertices += is_c(v);
      int nonzero = 0;
      for (int x : c.asm_entries) nonzero += x != 0;
      EXPECT_EQ(c_vertices, nonzero);
    }
  }
}

TEST(DwbcPartition, SingleVertex) {
  for (double eta : {0.3, pi / 4}) {
    const DwbcInstance inst({0.0}, {0.0}, eta);
    const cplx expected = -kI * std::sin(2 * eta);
    EXPECT_NEAR(std::abs(dwbc_partition_enumerate(inst) - expected), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(dwbc_partition_algebraic(inst) - expected), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(dwbc_partition_algebraic(DwbcInstance({0.0}, {0.0}, pi / 4)) + kI), 0.0, 1e-15);
}

TEST(DwbcPartition, RoutesAgree) {
  Rng rng(41);
  for (int n = 2; n <= 5; ++n)
    for (int draw = 0; draw < 20; ++draw) {
      const auto inst = random_instance(n, rng.uniform(0.1, 1.4), rng);
      EXPECT_LE(gt::rel(dwbc_partition_algebraic(inst), dwbc_partition_enumerate(inst)), 1e-11) << n;
    }
}

TEST(DwbcPartition, SymmetricInRows) {
  Rng rng(5);
  const auto inst = random_instance(4, 0.5, rng);
  auto swapped = inst;
  std::swap(swapped.lambda[0], swapped.lambda[3]);
  std::swap(swapped.lambda[1], swapped.lambda[2]);
  EXPECT_LE(gt::rel(dwbc_partition_enumerate(inst), dwbc_partition_enumerate(swapped)), 1e-12);
  EXPECT_LE(gt::rel(dwbc_partition_algebraic(inst), dwbc_partition_algebraic(swapped)), 1e-12);
}

TEST(DwbcPartition, TrigonometricPolynomialInFirstRow) {
  // Z_N(λ_1) = Σ_{j<N} c_j exp((N−1−2j) λ_1)
  Rng rng(17);
  for (int n = 2; n <= 4; ++n) {
    auto inst = random_instance(n, 0.6, rng);
    const auto z_at = [&](double x) {
      inst.lambda[0] = x;
      return dwbc_partition_enumerate(inst);
    };
    Matrix basis(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<cplx> rhs;
    for (int s = 0; s < n; ++s) {
      const double x = -0.8 + 0.4 * s;
      for (int j = 0; j < n; ++j) basis(static_cast<std::size_t>(s), static_cast<std::size_t>(j)) = std::exp((n - 1 - 2 * j) * x);
      rhs.push_back(z_at(x));
    }
    const auto coef = LuDecomposition(basis).solve(rhs);
    for (double x : {0.93, -1.1}) {
      cplx fit{};
      for (int j = 0; j < n; ++j) fit += coef[static_cast<std::size_t>(j)] * std::exp((n - 1 - 2 * j) * x);
      EXPECT_LE(gt::rel(z_at(x), fit), 1e-8);
    }
  }
}

TEST(Recursion, HoldsAtSpecialPoint) {
  Rng rng(23);
  for (int n = 2; n <= 4; ++n) {
    const auto inst = with_recursion_point(random_instance(n, 0.45, rng));
    EXPECT_LE(recursion_check(inst).relative_gap, n == 2 ? 1e-11 : 1e-10);
    EXPECT_LE(recursion_check(inst, DwbcRoute::enumeration).relative_gap, 1e-10);
  }
}

TEST(Recursion, FailsAwayFromSpecialPoint) {
  Rng rng(24);
  const auto inst = random_instance(2, 0.45, rng);
  EXPECT_GT(recursion_check(inst).relative_gap, 1e-3);
  EXPECT_THROW(recursion_check(DwbcInstance({0.1}, {0.2}, 0.3)), InvalidArgument);
}

TEST(DwbcInstance, Validation) {
  EXPECT_THROW(DwbcInstance({0.1, 0.2}, {0.0}, 0.3), InvalidArgument);
  EXPECT_THROW(DwbcInstance({0.1}, {0.0}, 2.0), InvalidArgument);
}

TEST(CompensatedSum, RecoversSmallTerms) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), cplx(1000.0));
}

#pragma once

// Numerical witnesses for the five properties that characterize the
// normalized object |λ_1 … λ_N| = det G(λ, X) with free drive terms X:
// symmetry, affinity in each X_k, the coefficient-modification rule, vanishing
// at X = 0, and the N = 1 base case |λ_1| = X_1.

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/bethe.hpp"
#include "gaudin/core_model.hpp"
#include "gaudin/norms.hpp"
#include "gaudin/random.hpp"

namespace gaudin {

namespace tolerance {
inline constexpr double symmetry = 1e-11;
inline constexpr double linearity = 1e-11;
inline constexpr double modification = 1e-10;
inline constexpr double vanishing = 1e-10;
inline constexpr double base_case = 1e-14;
}  // namespace tolerance

namespace detail {

inline cplx object(const Model& model, std::span<const cplx> lambda, std::span<const cplx> x,
                   OffDiagonalSign sign = OffDiagonalSign::standard) {
  return determinant(gaudin_matrix_from_drive(model, lambda, x, sign).entries);
}

inline double relative_gap(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline void require_same_length(std::span<const cplx> lambda, std::span<const cplx> x) {
  if (lambda.empty()) throw InvalidArgument("need at least one rapidity");
  if (lambda.size() != x.size()) throw InvalidArgument("X must have one entry per rapidity");
}

}  // namespace detail

enum class SwapMode { lambda_and_x, lambda_only };

/// max over pairs of |D(swapped) − D| / |D|. `lambda_only` leaves X in place.
inline double check_symmetry(const Model& model, std::span<const cplx> lambda, std::span<const cplx> x,
                             std::span<const std::pair<std::size_t, std::size_t>> pairs,
                             SwapMode mode = SwapMode::lambda_and_x) {
  detail::require_same_length(lambda, x);
  const cplx base = detail::object(model, lambda, x);
  double worst = 0.0;
  for (const auto& [j, k] : pairs) {
    if (j >= lambda.size() || k >= lambda.size()) throw InvalidArgument("swap index out of range");
    std::vector<cplx> l(lambda.begin(), lambda.end());
    std::vector<cplx> xs(x.begin(), x.end());
    std::swap(l[j], l[k]);
    if (mode == SwapMode::lambda_and_x) std::swap(xs[j], xs[k]);
    const cplx swapped = detail::object(model, l, xs);
    worst = std::max(worst, std::abs(swapped - base) / std::abs(base));
  }
  return worst;
}

/// All index pairs j < k.
inline std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) out.emplace_back(j, k);
  return out;
}

/// Relative second difference of D in X_k over the probe points {0, 1, 2}.
inline double check_linearity(const Model& model, std::span<const cplx> lambda, std::span<const cplx> x,
                              std::size_t index) {
  detail::require_same_length(lambda, x);
  if (index >= x.size()) throw InvalidArgument("X index out of range");
  std::vector<cplx> xs(x.begin(), x.end());
  std::array<cplx, 3> d{};
  for (int t = 0; t < 3; ++t) {
    xs[index] = static_cast<double>(t);
    d[static_cast<std::size_t>(t)] = detail::object(model, lambda, xs);
  }
  const double scale = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  return scale == 0.0 ? 0.0 : std::abs(d[0] - 2.0 * d[1] + d[2]) / scale;
}

/// U_1 = D(X_1=1) − D(X_1=0) against the (N−1)-object on λ_2…λ_N with
/// X_k → X_k + K(λ_k − λ_1). `kernel_sign` = flipped uses X_k − K instead.
inline double check_coefficient_modification(const Model& model, std::span<const cplx> lambda,
                                             std::span<const cplx> x,
                                             OffDiagonalSign kernel_sign = OffDiagonalSign::standard) {
  detail::require_same_length(lambda, x);
  if (lambda.size() < 2) throw InvalidArgument("coefficient modification needs N >= 2");
  std::vector<cplx> xs(x.begin(), x.end());
  xs[0] = 1.0;
  const cplx d1 = detail::object(model, lambda, xs);
  xs[0] = 0.0;
  const cplx d0 = detail::object(model, lambda, xs);
  const cplx u1 = d1 - d0;

  const double s = kernel_sign == OffDiagonalSign::standard ? 1.0 : -1.0;
  std::vector<cplx> rest(lambda.begin() + 1, lambda.end());
  std::vector<cplx> modified(x.begin() + 1, x.end());
  for (std::size_t k = 0; k < rest.size(); ++k) modified[k] += s * gaudin_kernel(model, rest[k] - lambda[0]);
  return detail::relative_gap(u1, detail::object(model, rest, modified));
}

/// |D(X)| / (max |entry|)^N; with X omitted, X = 0 and the result should vanish.
inline double check_vanishing(const Model& model, std::span<const cplx> lambda,
                              std::span<const cplx> x = {}) {
  if (lambda.empty()) throw InvalidArgument("need at least one rapidity");
  std::vector<cplx> xs(lambda.size());
  if (!x.empty()) {
    detail::require_same_length(lambda, x);
    xs.assign(x.begin(), x.end());
  }
  const auto g = gaudin_matrix_from_drive(model, lambda, xs);
  const double scale = g.entries.max_abs();
  if (scale == 0.0) return 0.0;
  const auto det = scaled_determinant(g.entries);
  if (det.is_zero()) return 0.0;
  return std::exp2(det.log2_abs() - static_cast<double>(lambda.size()) * std::log2(scale));
}

/// |D([λ_1], [X_1]) − X_1|.
inline double check_base_case(cplx x1, const Model& model = Model::xxx(1.0), cplx lambda1 = 0.0) {
  const std::array<cplx, 1> l{lambda1};
  const std::array<cplx, 1> x{x1};
  return std::abs(detail::object(model, l, x) - x1);
}

// ---------------------------------------------------------------------------
// Suite

struct PropertyResult {
  std::string name;
  double max_violation = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool passed = true;
};

struct PropertyReport {
  Model model;
  std::size_t n;
  std::vector<PropertyResult> results;

  bool passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
};

struct PropertyDraw {
  std::vector<cplx> lambda;
  std::vector<cplx> x;
};

/// Random rapidities with real parts in [−2, 2] and imaginary parts in
/// [−0.2, 0.2], at least 0.05 apart, and complex X with parts in [−3, 3].
inline PropertyDraw draw_property_inputs(std::size_t n, Rng& rng) {
  PropertyDraw d;
  while (true) {
    d.lambda.clear();
    for (std::size_t k = 0; k < n; ++k) d.lambda.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-0.2, 0.2));
    if (RapiditySet::min_separation(d.lambda) >= 0.05) break;
  }
  d.x.clear();
  for (std::size_t k = 0; k < n; ++k) d.x.emplace_back(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
  return d;
}

/// Runs all five checks over `draws` random inputs of size N for one model.
/// Checks that need N ≥ 2 (or N = 1) report zero samples otherwise.
inline PropertyReport run_property_suite(const Model& model, std::size_t n, int draws, Rng& rng) {
  PropertyReport report{model, n, {}};
  PropertyResult sym{"symmetry", 0.0, 0, tolerance::symmetry, true};
  PropertyResult lin{"linearity", 0.0, 0, tolerance::linearity, true};
  PropertyResult mod{"coefficient_modification", 0.0, 0, tolerance::modification, true};
  PropertyResult van{"vanishing", 0.0, 0, tolerance::vanishing, true};
  PropertyResult base{"base_case", 0.0, 0, tolerance::base_case, true};
  const auto pairs = all_pairs(n);

  const auto record = [](PropertyResult& r, double v) {
    r.max_violation = std::max(r.max_violation, v);
    ++r.samples;
  };

  for (int i = 0; i < draws; ++i) {
    const auto d = draw_property_inputs(n, rng);
    if (n >= 2) record(sym, check_symmetry(model, d.lambda, d.x, pairs));
    for (std::size_t k = 0; k < n; ++k) record(lin, check_linearity(model, d.lambda, d.x, k));
    if (n >= 2) record(mod, check_coefficient_modification(model, d.lambda, d.x));
    record(van, check_vanishing(model, d.lambda));
    if (n == 1) record(base, check_base_case(d.x[0], model, d.lambda[0]) / std::max(1.0, std::abs(d.x[0])));
  }
  for (auto* r : {&sym, &lin, &mod, &van, &base}) {
    r->passed = r->max_violation <= r->tolerance;
    report.results.push_back(*r);
  }
  return report;
}

}  // namespace gaudin

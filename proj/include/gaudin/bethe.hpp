#pragma once

// Logarithmic Bethe equations, the Gaudin matrix, and a damped Newton solver.
//
//   φ_k = i ln a(λ_k)/d(λ_k) + i Σ_{j≠k} ln f(λ_k,λ_j)/f(λ_j,λ_k),   φ_k = 2π I_k
//
//   ∂φ_k/∂λ_j = δ_kj (X_k + Σ_{p≠k} K(λ_k−λ_p)) − (1−δ_kj) K(λ_k−λ_j)
//
// Branch convention: every logarithm is taken term by term, on the principal
// branch of −(ratio); the dropped factor −1 is restored as +π·sgn(j−k) for
// the scattering term (k, j) and −π·(M mod 2) for the vacuum term. The
// result is congruent to the literal φ_k modulo 2π, continuous along the
// real axis, and for rapidities sorted by real part it reproduces the plain
// principal-branch values.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "gaudin/core_model.hpp"
#include "gaudin/linalg.hpp"
#include "gaudin/random.hpp"

namespace gaudin {

struct PhiResult {
  std::vector<cplx> phi;
  /// Set when some logarithm argument lies within 1e-8 of the branch cut.
  bool branch_warning = false;
};

namespace detail {

inline PhiResult phi_raw(const VacuumSpec& spec, const Model& model, std::span<const cplx> lambda) {
  const std::size_t n = lambda.size();
  PhiResult out{std::vector<cplx>(n), false};
  for (std::size_t k = 0; k < n; ++k) {
    const auto vac = vacuum_phase(spec, lambda[k]);
    cplx phi = vac.value;
    bool warn = vac.near_cut;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const auto term = scattering_phase(model, lambda[k] - lambda[j]);
      phi += term.value + (j > k ? std::numbers::pi : -std::numbers::pi);
      warn = warn || term.near_cut;
    }
    out.phi[k] = phi;
    out.branch_warning = out.branch_warning || warn;
  }
  return out;
}

inline std::vector<cplx> drive_terms(const VacuumSpec& spec, std::span<const cplx> lambda) {
  std::vector<cplx> x(lambda.size());
  if (const auto* free = std::get_if<FreeX>(&spec)) {
    if (free->x.size() != lambda.size())
      throw InvalidArgument("FreeX drive list must match the number of rapidities");
    return free->x;
  }
  for (std::size_t k = 0; k < lambda.size(); ++k) x[k] = vacuum_ratio_and_X(spec, lambda[k]).x;
  return x;
}

}  // namespace detail

/// φ_k for every rapidity; FreeX is rejected because a and d are undefined.
inline PhiResult phi_vector(const VacuumSpec& spec, const Model& model, const RapiditySet& lambdas) {
  require_compatible(spec, model);
  return detail::phi_raw(spec, model, lambdas.values());
}

/// Off-diagonal sign of the Gaudin matrix; `flipped` exists only as a negative control.
enum class OffDiagonalSign { standard, flipped };

struct GaudinMatrix {
  Matrix entries;             ///< entries(k, j) = ∂φ_k/∂λ_j
  std::vector<cplx> lambda;   ///< evaluation point
  std::vector<cplx> drive;    ///< X_k
};

/// Gaudin matrix from explicit drive terms X_k.
inline GaudinMatrix gaudin_matrix_from_drive(const Model& model, std::span<const cplx> lambda,
                                             std::span<const cplx> drive,
                                             OffDiagonalSign sign = OffDiagonalSign::standard) {
  const std::size_t n = lambda.size();
  if (drive.size() != n) throw InvalidArgument("drive terms must match the number of rapidities");
  const double off = sign == OffDiagonalSign::standard ? -1.0 : 1.0;
  GaudinMatrix g{Matrix(n, n), {lambda.begin(), lambda.end()}, {drive.begin(), drive.end()}};
  for (std::size_t k = 0; k < n; ++k) {
    cplx diag = drive[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const cplx kern = gaudin_kernel(model, lambda[k] - lambda[j]);
      diag += kern;
      g.entries(k, j) = off * kern;
    }
    g.entries(k, k) = diag;
  }
  return g;
}

/// ∂φ_j/∂λ_k; X_k come from the vacuum in closed form, or verbatim from FreeX.
inline GaudinMatrix gaudin_matrix(const VacuumSpec& spec, const Model& model,
                                  const RapiditySet& lambdas,
                                  OffDiagonalSign sign = OffDiagonalSign::standard) {
  require_compatible(spec, model);
  const auto drive = detail::drive_terms(spec, lambdas.values());
  return gaudin_matrix_from_drive(model, lambdas.values(), drive, sign);
}

struct BetheResidual {
  std::vector<cplx> additive;          ///< φ_k − 2π I_k
  std::vector<double> multiplicative;  ///< |a/d ∏ f(λ_k,λ_j)/f(λ_j,λ_k) − 1|
  bool branch_warning = false;

  double max_additive() const {
    double m = 0.0;
    for (const auto& r : additive) m = std::max(m, std::abs(r));
    return m;
  }
  double max_multiplicative() const {
    double m = 0.0;
    for (const auto& r : multiplicative) m = std::max(m, r);
    return m;
  }
};

namespace detail {

inline std::vector<long> default_quantum_numbers(std::span<const long> qn, std::size_t n) {
  if (qn.empty()) return std::vector<long>(n, 0);
  if (qn.size() != n) throw InvalidArgument("quantum numbers must match the number of rapidities");
  return {qn.begin(), qn.end()};
}

inline std::vector<cplx> additive_residual(const VacuumSpec& spec, const Model& model,
                                           std::span<const cplx> lambda,
                                           std::span<const long> qn, bool* warn = nullptr) {
  auto phi = phi_raw(spec, model, lambda);
  for (std::size_t k = 0; k < lambda.size(); ++k)
    phi.phi[k] -= 2.0 * std::numbers::pi * static_cast<double>(qn[k]);
  if (warn) *warn = phi.branch_warning;
  return std::move(phi.phi);
}

inline double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

/// Multiplicative residual |a/d ∏_{j≠k} f(λ_k,λ_j)/f(λ_j,λ_k) − 1| of the unlogged equations.
inline std::vector<double> multiplicative_residual(const VacuumSpec& spec, const Model& model,
                                                   std::span<const cplx> lambda) {
  std::vector<double> out(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    cplx prod = vacuum_ratio_and_X(spec, lambda[k]).ratio;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      if (j == k) continue;
      prod *= weight_f(model, lambda[k], lambda[j]) / weight_f(model, lambda[j], lambda[k]);
    }
    out[k] = std::abs(prod - 1.0);
  }
  return out;
}

/// r_k = φ_k − 2π I_k together with the multiplicative residual.
inline BetheResidual bethe_residual(const VacuumSpec& spec, const Model& model,
                                    const RapiditySet& lambdas, std::span<const long> quantum_numbers) {
  require_compatible(spec, model);
  const auto qn = detail::default_quantum_numbers(quantum_numbers, lambdas.size());
  BetheResidual r;
  r.additive = detail::additive_residual(spec, model, lambdas.values(), qn, &r.branch_warning);
  r.multiplicative = multiplicative_residual(spec, model, lambdas.values());
  return r;
}

// ---------------------------------------------------------------------------
// Newton solver

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 100;
};

enum class SolveStatus { converged, max_iterations, stalled };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::stalled: return "stalled";
  }
  return "unknown";
}

struct BetheRoot {
  RapiditySet rapidities;
  std::vector<long> quantum_numbers;
  double residual_norm = 0.0;          ///< max_k |φ_k − 2π I_k|
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::max_iterations;
  std::vector<double> history;         ///< residual norm before each step, then the final one
};

/// Damped Newton iteration λ ← λ − α J⁻¹ r with α ∈ {1, ½, …, 2⁻⁸}.
///
/// J is exactly the Gaudin matrix. Throws SingularJacobian when
/// |det J| < 1e-30 · ∏_k max_j |J_kj|, and CollisionError when an accepted
/// iterate brings two rapidities within 1e-10 of each other.
inline BetheRoot newton_solve(const VacuumSpec& spec, const Model& model, const RapiditySet& initial,
                              std::span<const long> quantum_numbers, const NewtonOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("Newton tolerance must be positive");
  if (std::holds_alternative<FreeX>(spec))
    throw UnsupportedVariant("cannot solve Bethe equations for a FreeX vacuum");
  require_compatible(spec, model);
  const std::size_t n = initial.size();
  const auto qn = detail::default_quantum_numbers(quantum_numbers, n);

  std::vector<cplx> lambda = initial.values();
  auto residual = detail::additive_residual(spec, model, lambda, qn);
  double norm = detail::max_abs(residual);

  BetheRoot root;
  root.quantum_numbers = qn;
  int iter = 0;
  SolveStatus status = SolveStatus::max_iterations;
  while (true) {
    root.history.push_back(norm);
    if (norm <= opts.tol) {
      status = SolveStatus::converged;
      break;
    }
    if (iter >= opts.max_iter) break;

    const auto drive = detail::drive_terms(spec, lambda);
    const auto jac = gaudin_matrix_from_drive(model, lambda, drive);
    const LuDecomposition lu(jac.entries);
    double log2_scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double row_max = 0.0;
      for (const auto& v : jac.entries.row(k)) row_max = std::max(row_max, std::abs(v));
      log2_scale += std::log2(row_max);
    }
    if (lu.singular() || lu.determinant().log2_abs() < log2_scale + std::log2(1e-30))
      throw SingularJacobian("Gaudin matrix is numerically singular during Newton iteration");
    const auto step = lu.solve(residual);

    bool accepted = false;
    for (double alpha = 1.0; alpha >= 0x1.0p-8; alpha *= 0.5) {
      std::vector<cplx> trial(n);
      for (std::size_t k = 0; k < n; ++k) trial[k] = lambda[k] - alpha * step[k];
      std::vector<cplx> trial_residual;
      try {
        trial_residual = detail::additive_residual(spec, model, trial, qn);
      } catch (const PoleError&) {
        continue;
      } catch (const ZeroDenominator&) {
        continue;
      }
      const double trial_norm = detail::max_abs(trial_residual);
      if (std::isfinite(trial_norm) && trial_norm < norm) {
        if (RapiditySet::min_separation(trial) <= kDistinctTolerance)
          throw CollisionError("Newton iterates collided");
        lambda = std::move(trial);
        residual = std::move(trial_residual);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    ++iter;
    if (!accepted) {
      status = SolveStatus::stalled;
      break;
    }
  }

  root.rapidities = RapiditySet(lambda, qn);
  root.residual_norm = norm;
  root.iterations = iter;
  root.status = status;
  root.converged = status == SolveStatus::converged;
  return root;
}

// ---------------------------------------------------------------------------
// Seeding

struct SeedOptions {
  int max_trials = 400;
  /// Real parts of seeds are drawn uniformly from [−spread, spread].
  double spread = 1.5;
  /// XXZ only: also seed on the line Im λ = π/2, which carries the roots
  /// with |momentum| beyond the real-line range.
  bool use_shifted_line = true;
  double min_separation = 1e-3;
  double max_abs_real = 10.0;
  NewtonOptions newton{};
};

/// Multistart search for a converged Bethe root with N rapidities.
///
/// Each trial draws a seed, takes I_k = round(Re φ_k(seed)/2π), and runs
/// newton_solve. The first root whose rapidities are finite, mutually
/// separated by at least `min_separation`, and within `max_abs_real` of the
/// origin is returned. Deterministic for a given seed.
inline std::optional<BetheRoot> find_root(const VacuumSpec& spec, const Model& model, std::size_t n,
                                          std::uint64_t seed, const SeedOptions& opts = {}) {
  if (n == 0) throw InvalidArgument("need at least one rapidity");
  Rng rng(seed);
  const bool shifted = opts.use_shifted_line && model.is_xxz();
  for (int trial = 0; trial < opts.max_trials; ++trial) {
    std::vector<cplx> guess(n);
    for (auto& g : guess) {
      g = rng.uniform(-opts.spread, opts.spread);
      if (shifted && rng.coin()) g += kI * (std::numbers::pi / 2);
    }
    if (RapiditySet::min_separation(guess) < opts.min_separation) continue;
    try {
      const auto phi = detail::phi_raw(spec, model, guess);
      std::vector<long> qn(n);
      for (std::size_t k = 0; k < n; ++k)
        qn[k] = std::lround(phi.phi[k].real() / (2.0 * std::numbers::pi));
      auto root = newton_solve(spec, model, RapiditySet(guess), qn, opts.newton);
      if (!root.converged) continue;
      if (root.rapidities.min_separation() < opts.min_separation) continue;
      bool bounded = true;
      for (const auto& l : root.rapidities.values())
        bounded = bounded && std::abs(l.real()) <= opts.max_abs_real;
      if (!bounded) continue;
      return root;
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace gaudin

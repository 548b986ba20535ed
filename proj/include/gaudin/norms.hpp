#pragma once

// Determinant formulas for ⟨0|C(λ_1)…C(λ_N) B(λ_1)…B(λ_N)|0⟩ with ⟨0|0⟩ = 1:
//
//   c^N · ∏_j a(λ_j) d(λ_j) · ∏_{j≠k} f(λ_j, λ_k) · det_N ∂φ_j/∂λ_k
//
// with c = κ (XXX) or sin 2η (XXZ). The formula only holds on-shell; it is
// evaluated anywhere and the on-shell residual is recorded next to it.

#include <cmath>
#include <span>
#include <vector>

#include "gaudin/bethe.hpp"
#include "gaudin/core_model.hpp"
#include "gaudin/linalg.hpp"

namespace gaudin {

/// Residual below which the determinant formula is claimed to hold.
inline constexpr double kOnShellTolerance = 1e-8;

struct NormResult {
  cplx scalar_product;   ///< prefactor · determinant
  cplx determinant;      ///< det of the Gaudin matrix
  cplx prefactor;
  Model model;
  double on_shell_residual;  ///< max multiplicative Bethe residual

  bool on_shell() const noexcept { return on_shell_residual <= kOnShellTolerance; }
};

inline cplx norm_prefactor(const VacuumSpec& spec, const Model& model, const RapiditySet& lambdas) {
  require_compatible(spec, model);
  const auto& l = lambdas.values();
  cplx p = std::pow(cplx{model.c_weight_magnitude()}, static_cast<int>(l.size()));
  for (const auto& x : l) p *= vacuum_a(spec, x) * vacuum_d(spec, x);
  for (std::size_t j = 0; j < l.size(); ++j)
    for (std::size_t k = 0; k < l.size(); ++k)
      if (j != k) p *= weight_f(model, l[j], l[k]);
  return p;
}

inline NormResult predicted_scalar_product(const VacuumSpec& spec, const Model& model,
                                           const RapiditySet& lambdas,
                                           OffDiagonalSign sign = OffDiagonalSign::standard) {
  const cplx prefactor = norm_prefactor(spec, model, lambdas);
  const cplx det = determinant(gaudin_matrix(spec, model, lambdas, sign).entries);
  double residual = 0.0;
  for (double r : multiplicative_residual(spec, model, lambdas.values())) residual = std::max(residual, r);
  return {prefactor * det, det, prefactor, model, residual};
}

/// ⟨0|B†(λ_N)…B†(λ_1) B(λ_1)…B(λ_N)|0⟩ for the homogeneous XXZ chain, written with χ.
///
/// Equals (−1)^N times predicted_scalar_product on the same inputs, since
/// B†(λ) = −C(λ̄) for real η and the matrix below is minus the Gaudin matrix.
inline cplx norm_squared_xxz_chain(int sites, double eta, const RapiditySet& lambdas) {
  if (sites < 1) throw InvalidArgument("chain must have at least one site");
  (void)Model::xxz(eta);  // validates eta
  const auto& l = lambdas.values();
  const std::size_t n = l.size();

  cplx value = std::pow(cplx{std::sin(2.0 * eta)}, static_cast<int>(n));
  for (const auto& x : l)
    value *= std::pow(std::sinh(x - kI * eta), sites) * std::pow(std::sinh(x + kI * eta), sites);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const cplx x = l[j] - l[k];
      const cplx s = std::sinh(x);
      if (std::abs(s) < kPoleTolerance) throw PoleError("coinciding rapidities in norm formula");
      value *= std::sinh(x - 2.0 * kI * eta) * std::sinh(x + 2.0 * kI * eta) / (s * s);
    }

  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx diag = static_cast<double>(sites) * chi(l[k], eta);
    for (std::size_t p = 0; p < n; ++p)
      if (p != k) diag -= chi(l[k] - l[p], 2.0 * eta);
    m(k, k) = diag;
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) m(k, j) = chi(l[k] - l[j], 2.0 * eta);
  }
  return value * determinant(m);
}

/// det of the Gaudin matrix with free drive terms: the normalized object |λ_1 … λ_N|.
inline cplx normalized_object_rhs(const Model& model, const RapiditySet& lambdas,
                                  std::span<const cplx> drive,
                                  OffDiagonalSign sign = OffDiagonalSign::standard) {
  return determinant(gaudin_matrix_from_drive(model, lambdas.values(), drive, sign).entries);
}

}  // namespace gaudin

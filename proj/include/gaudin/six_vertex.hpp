#pragma once

// Six-vertex model with domain-wall boundary conditions on an N×N lattice.
//
// Row α carries spectral parameter λ_α, column k carries ν_k. Z_N is computed
// by summing over vertex configurations and, independently, as the amplitude
// ⟨Ω| B(λ_1)…B(λ_N) |0⟩ on an N-site XXZ chain.
//
// Vertex weights at (α, k), x = λ_α − ν_k, read off the L-operator:
//
//   aux  spin in → out   weight
//   ↑↑   ↑ → ↑           a = sinh(x − iη)
//   ↓↓   ↓ → ↓           a
//   ↑↑   ↓ → ↓           b = sinh(x + iη)
//   ↓↓   ↑ → ↑           b
//   ↓↑   ↑ → ↓           c = −i sin 2η
//   ↑↓   ↓ → ↑           c
//
// The auxiliary line enters each row at site 1 pointing down and leaves at
// site N pointing up. B(λ_N) acts first, so row N is the first row applied
// to the all-up state.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gaudin/core_model.hpp"
#include "gaudin/oracle.hpp"

namespace gaudin {

inline constexpr int kDwbcEnumerationCap = 7;

struct DwbcInstance {
  std::vector<cplx> lambda;  ///< row parameters λ_1 … λ_N
  std::vector<cplx> nu;      ///< column inhomogeneities ν_1 … ν_N
  double eta;

  DwbcInstance(std::vector<cplx> rows, std::vector<cplx> columns, double anisotropy)
      : lambda(std::move(rows)), nu(std::move(columns)), eta(anisotropy) {
    if (lambda.empty()) throw InvalidArgument("DWBC lattice must have at least one row");
    if (lambda.size() != nu.size()) throw InvalidArgument("DWBC lattice must be square (N = M)");
    (void)Model::xxz(eta);  // validates eta
  }

  int size() const noexcept { return static_cast<int>(lambda.size()); }
  Model model() const { return Model::xxz(eta); }
  ChainSpec chain() const { return ChainSpec(nu, model()); }
};

/// Same instance with ν_1 replaced by λ_1 + iη.
inline DwbcInstance with_recursion_point(DwbcInstance inst) {
  inst.nu.front() = inst.lambda.front() + kI * inst.eta;
  return inst;
}

/// Instance with row 1 and column 1 removed.
inline DwbcInstance reduced(const DwbcInstance& inst) {
  if (inst.size() < 2) throw InvalidArgument("cannot reduce a 1x1 lattice");
  return DwbcInstance({inst.lambda.begin() + 1, inst.lambda.end()}, {inst.nu.begin() + 1, inst.nu.end()},
                      inst.eta);
}

enum class VertexType : std::uint8_t { a_up, a_down, b_up, b_down, c_lower, c_raise };

inline bool is_c(VertexType t) { return t == VertexType::c_lower || t == VertexType::c_raise; }

/// One DWBC configuration: vertex types and the alternating sign matrix.
///
/// asm_entry(α, k) is +1 where row α flips site k down, −1 where it flips it
/// back up, 0 otherwise.
struct VertexConfiguration {
  int n = 0;
  std::vector<VertexType> vertices;  ///< row-major, index (α−1)·N + (k−1)
  std::vector<int> asm_entries;

  VertexType vertex(int row, int col) const {
    return vertices[static_cast<std::size_t>((row - 1) * n + (col - 1))];
  }
  int asm_entry(int row, int col) const {
    return asm_entries[static_cast<std::size_t>((row - 1) * n + (col - 1))];
  }
};

namespace detail {

inline void require_enumerable(int n) {
  if (n < 1) throw InvalidArgument("DWBC lattice size must be positive");
  if (n > kDwbcEnumerationCap)
    throw CapExceeded("DWBC enumeration is limited to N <= " + std::to_string(kDwbcEnumerationCap));
}

struct DwbcEnumerator {
  int n;
  const std::function<void(const VertexConfiguration&)>& visit;
  VertexConfiguration config;
  std::vector<int> down;  ///< per-site spin: 1 = down

  // Fill row `row` from column `col` with the auxiliary arrow `aux_down` entering it.
  void fill(int row, int col, bool aux_down) {
    if (col > n) {
      if (aux_down) return;  // must leave the row pointing up
      if (row == 1) {
        visit(config);
        return;
      }
      fill(row - 1, 1, true);
      return;
    }
    const std::size_t cell = static_cast<std::size_t>((row - 1) * n + (col - 1));
    int& spin = down[static_cast<std::size_t>(col - 1)];
    const bool spin_down = spin != 0;
    // Keep the arrow unchanged.
    config.asm_entries[cell] = 0;
    config.vertices[cell] = aux_down ? (spin_down ? VertexType::a_down : VertexType::b_down)
                                     : (spin_down ? VertexType::b_up : VertexType::a_up);
    fill(row, col + 1, aux_down);
    // Exchange aux and spin arrows.
    if (aux_down && !spin_down) {
      config.vertices[cell] = VertexType::c_lower;
      config.asm_entries[cell] = 1;
      spin = 1;
      fill(row, col + 1, false);
      spin = 0;
    } else if (!aux_down && spin_down) {
      config.vertices[cell] = VertexType::c_raise;
      config.asm_entries[cell] = -1;
      spin = 0;
      fill(row, col + 1, true);
      spin = 1;
    }
    config.asm_entries[cell] = 0;
  }
};

}  // namespace detail

/// Calls `visit` once per DWBC configuration of the N×N lattice.
inline void for_each_dwbc_config(int n, const std::function<void(const VertexConfiguration&)>& visit) {
  detail::require_enumerable(n);
  const auto cells = static_cast<std::size_t>(n * n);
  detail::DwbcEnumerator e{n, visit, {n, std::vector<VertexType>(cells), std::vector<int>(cells)},
                           std::vector<int>(static_cast<std::size_t>(n))};
  e.fill(n, 1, true);
}

inline std::vector<VertexConfiguration> enumerate_dwbc_configs(int n) {
  std::vector<VertexConfiguration> out;
  for_each_dwbc_config(n, [&](const VertexConfiguration& c) { out.push_back(c); });
  return out;
}

inline std::uint64_t count_dwbc_configs(int n) {
  std::uint64_t count = 0;
  for_each_dwbc_config(n, [&](const VertexConfiguration&) { ++count; });
  return count;
}

inline cplx vertex_weight(VertexType t, cplx lambda, cplx nu, double eta) {
  const cplx x = lambda - nu;
  switch (t) {
    case VertexType::a_up:
    case VertexType::a_down: return std::sinh(x - kI * eta);
    case VertexType::b_up:
    case VertexType::b_down: return std::sinh(x + kI * eta);
    case VertexType::c_lower:
    case VertexType::c_raise: return -kI * std::sin(2.0 * eta);
  }
  return {};
}

inline cplx configuration_weight(const DwbcInstance& inst, const VertexConfiguration& c) {
  cplx w{1.0};
  for (int row = 1; row <= c.n; ++row)
    for (int col = 1; col <= c.n; ++col)
      w *= vertex_weight(c.vertex(row, col), inst.lambda[static_cast<std::size_t>(row - 1)],
                         inst.nu[static_cast<std::size_t>(col - 1)], inst.eta);
  return w;
}

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx v) {
    add_part(sum_re_, comp_re_, v.real());
    add_part(sum_im_, comp_im_, v.imag());
  }
  cplx value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

/// Z_N as a sum over configurations of products of vertex weights.
inline cplx dwbc_partition_enumerate(const DwbcInstance& inst) {
  CompensatedSum z;
  for_each_dwbc_config(inst.size(), [&](const VertexConfiguration& c) { z.add(configuration_weight(inst, c)); });
  return z.value();
}

/// Z_N = ⟨Ω| B(λ_1)…B(λ_N) |0⟩ on the chain with inhomogeneities ν.
///
/// Throws ProportionalityViolation if the image has an amplitude above
/// 1e-12·max(1, |Z_N|) anywhere except on Ω.
inline cplx dwbc_partition_algebraic(const DwbcInstance& inst, int cap = oracle::kDefaultCap) {
  const ChainSpec chain = inst.chain();
  const auto psi = oracle::apply_b_product(chain, inst.lambda, oracle::OracleState::vacuum(chain.sites()), cap);
  const cplx z = psi.amplitudes.back();
  const double tol = 1e-12 * std::max(1.0, std::abs(z));
  for (std::size_t i = 0; i + 1 < psi.amplitudes.size(); ++i)
    if (std::abs(psi.amplitudes[i]) > tol)
      throw ProportionalityViolation("product of B operators is not proportional to the all-down state");
  return z;
}

enum class DwbcRoute { enumeration, algebraic };

inline cplx dwbc_partition(const DwbcInstance& inst, DwbcRoute route) {
  return route == DwbcRoute::enumeration ? dwbc_partition_enumerate(inst) : dwbc_partition_algebraic(inst);
}

struct RecursionCheck {
  cplx lhs;
  cplx rhs;
  double relative_gap;
};

/// Compares Z_N with −i sin2η ∏_{k≥2} sinh(λ_1−ν_k−iη) ∏_{α≥2} sinh(λ_α−ν_1−iη) Z_{N−1}.
///
/// The identity holds at ν_1 = λ_1 + iη (see with_recursion_point); other
/// instances are evaluated as given.
inline RecursionCheck recursion_check(const DwbcInstance& inst, DwbcRoute route = DwbcRoute::algebraic) {
  const int n = inst.size();
  if (n < 2) throw InvalidArgument("recursion needs N >= 2");
  const double eta = inst.eta;
  const cplx lhs = dwbc_partition(inst, route);
  cplx factor = -kI * std::sin(2.0 * eta);
  for (std::size_t k = 1; k < inst.nu.size(); ++k) factor *= std::sinh(inst.lambda[0] - inst.nu[k] - kI * eta);
  for (std::size_t a = 1; a < inst.lambda.size(); ++a) factor *= std::sinh(inst.lambda[a] - inst.nu[0] - kI * eta);
  const cplx rhs = factor * dwbc_partition(reduced(inst), route);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return {lhs, rhs, scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale};
}

}  // namespace gaudin

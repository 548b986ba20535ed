#pragma once

// Exact realization of the monodromy matrix on the 2^M-dimensional space of
// a spin-1/2 chain. Everything the determinant formulas predict is checked
// against this.
//
// Basis: index bit (k−1) is site k, 0 = spin up, 1 = spin down. The
// pseudo-vacuum |0⟩ = all up is index 0; Ω = all down is index 2^M − 1.
//
// L-operator at site k (XXZ), acting on auxiliary ⊗ site k:
//
//   [ sinh(λ−ν_k−iησ³_k)     −i sin2η σ⁻_k          ]
//   [ −i sin2η σ⁺_k          sinh(λ−ν_k+iησ³_k)      ]
//
// XXX analog: sinh(x ∓ iησ³) → x ∓ i(κ/2)σ³ and sin 2η → κ.
// T(λ) = L_M(λ−ν_M) … L_1(λ−ν_1).

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gaudin/bethe.hpp"
#include "gaudin/core_model.hpp"
#include "gaudin/linalg.hpp"
#include "gaudin/norms.hpp"

namespace gaudin::oracle {

inline constexpr int kDefaultCap = 12;
inline constexpr int kDenseCap = 10;

using SiteMatrix = std::array<std::array<cplx, 2>, 2>;

namespace site_ops {
inline constexpr SiteMatrix identity{{{1.0, 0.0}, {0.0, 1.0}}};
inline constexpr SiteMatrix sigma3{{{1.0, 0.0}, {0.0, -1.0}}};
/// σ⁺ raises: |↓⟩ → |↑⟩.
inline constexpr SiteMatrix sigma_plus{{{0.0, 1.0}, {0.0, 0.0}}};
/// σ⁻ lowers: |↑⟩ → |↓⟩.
inline constexpr SiteMatrix sigma_minus{{{0.0, 0.0}, {1.0, 0.0}}};
}  // namespace site_ops

inline SiteMatrix operator*(const SiteMatrix& a, const SiteMatrix& b) {
  SiteMatrix out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

inline SiteMatrix scaled(cplx s, SiteMatrix m) {
  for (auto& row : m)
    for (auto& v : row) v *= s;
  return m;
}

/// A 2×2 site matrix acting on one site of an M-site chain.
struct SiteOperator {
  int site;  ///< 1-based
  SiteMatrix m;
};

/// 2^M-dimensional dense embedding of a site operator.
inline Matrix embed(const SiteOperator& op, int sites) {
  const std::size_t dim = std::size_t{1} << sites;
  const std::size_t bit = std::size_t{1} << (op.site - 1);
  Matrix out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const int in = (col & bit) ? 1 : 0;
    for (int o = 0; o < 2; ++o) {
      const cplx v = op.m[o][in];
      if (v == cplx{}) continue;
      const std::size_t row = o ? (col | bit) : (col & ~bit);
      out(row, col) += v;
    }
  }
  return out;
}

/// out += op · in for a site operator, without forming the 2^M matrix.
inline void apply_add(const SiteOperator& op, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t bit = std::size_t{1} << (op.site - 1);
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const cplx v = in[idx];
    if (v == cplx{}) continue;
    const int s = (idx & bit) ? 1 : 0;
    const cplx up = op.m[0][s];
    const cplx dn = op.m[1][s];
    if (up != cplx{}) out[idx & ~bit] += up * v;
    if (dn != cplx{}) out[idx | bit] += dn * v;
  }
}

// ---------------------------------------------------------------------------
// States

struct OracleState {
  int sites = 0;
  std::vector<cplx> amplitudes;

  static OracleState vacuum(int sites) {
    OracleState s{sites, std::vector<cplx>(std::size_t{1} << sites)};
    s.amplitudes.front() = 1.0;
    return s;
  }

  static OracleState all_down(int sites) {
    OracleState s{sites, std::vector<cplx>(std::size_t{1} << sites)};
    s.amplitudes.back() = 1.0;
    return s;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }

  /// Σ conj(this_i) · other_i
  cplx inner(const OracleState& other) const {
    cplx s{};
    for (std::size_t i = 0; i < amplitudes.size(); ++i) s += std::conj(amplitudes[i]) * other.amplitudes[i];
    return s;
  }
};

inline void require_within_cap(int sites, int cap) {
  if (sites < 1) throw InvalidArgument("chain must have at least one site");
  if (sites > cap)
    throw CapExceeded("chain of " + std::to_string(sites) + " sites exceeds the oracle cap of " +
                      std::to_string(cap));
}

// ---------------------------------------------------------------------------
// L-operator and monodromy

/// The four operator entries of the L-operator at site k, [aux_out][aux_in].
struct LOperator {
  std::array<std::array<SiteOperator, 2>, 2> entry;
};

inline LOperator build_l_operator(int site, cplx lambda, cplx nu, const Model& model, int sites,
                                  int cap = kDefaultCap) {
  require_within_cap(sites, cap);
  if (site < 1 || site > sites) throw InvalidArgument("site index out of range");
  const auto f = detail::site_factors(model, lambda, nu);
  const cplx c = -kI * model.c_weight_magnitude();
  LOperator l{};
  l.entry[0][0] = {site, SiteMatrix{{{f.a, 0.0}, {0.0, f.d}}}};
  l.entry[0][1] = {site, scaled(c, site_ops::sigma_minus)};
  l.entry[1][0] = {site, scaled(c, site_ops::sigma_plus)};
  l.entry[1][1] = {site, SiteMatrix{{{f.d, 0.0}, {0.0, f.a}}}};
  return l;
}

/// 4×4 one-site matrix of an L-operator, rows/cols indexed 2·aux + spin.
inline Matrix one_site_matrix(const LOperator& l) {
  Matrix m(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) m(2 * a + s, 2 * b + t) = l.entry[a][b].m[s][t];
  return m;
}

/// XXZ L-operator from its Pauli expansion:
/// cosη sinh(x) − i sinη cosh(x) σ³⊗σ³_k − i sin2η (σ⁺⊗σ⁻_k + σ⁻⊗σ⁺_k).
inline Matrix l_operator_pauli_form(cplx lambda, cplx nu, double eta) {
  const cplx x = lambda - nu;
  const auto kron = [](const SiteMatrix& aux, const SiteMatrix& spin) {
    Matrix m(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) m(2 * a + s, 2 * b + t) = aux[a][b] * spin[s][t];
    return m;
  };
  using namespace site_ops;
  return std::cos(eta) * std::sinh(x) * kron(identity, identity) +
         (-kI * std::sin(eta) * std::cosh(x)) * kron(sigma3, sigma3) +
         (-kI * std::sin(2.0 * eta)) * (kron(sigma_plus, sigma_minus) + kron(sigma_minus, sigma_plus));
}

/// Auxiliary two-component state (aux up, aux down) of chain vectors.
using AuxPair = std::array<std::vector<cplx>, 2>;

/// Propagates an auxiliary pair through L_1, …, L_M, i.e. applies T(λ).
inline AuxPair propagate(const ChainSpec& chain, cplx lambda, AuxPair v) {
  const int m = chain.sites();
  for (int k = 1; k <= m; ++k) {
    const auto l = build_l_operator(k, lambda, chain.nu[static_cast<std::size_t>(k - 1)], chain.model, m, m);
    AuxPair next{std::vector<cplx>(v[0].size()), std::vector<cplx>(v[0].size())};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) apply_add(l.entry[a][b], v[b], next[a]);
    v = std::move(next);
  }
  return v;
}

enum class Entry { A, B, C, D };

inline std::pair<int, int> entry_indices(Entry e) {
  switch (e) {
    case Entry::A: return {0, 0};
    case Entry::B: return {0, 1};
    case Entry::C: return {1, 0};
    case Entry::D: return {1, 1};
  }
  return {0, 0};
}

/// T_ab(λ) ψ without materializing any operator.
inline OracleState apply(const ChainSpec& chain, cplx lambda, Entry e, const OracleState& psi,
                         int cap = kDefaultCap) {
  require_within_cap(chain.sites(), cap);
  if (psi.sites != chain.sites()) throw InvalidArgument("state and chain sizes differ");
  const auto [a, b] = entry_indices(e);
  AuxPair v{std::vector<cplx>(psi.amplitudes.size()), std::vector<cplx>(psi.amplitudes.size())};
  v[static_cast<std::size_t>(b)] = psi.amplitudes;
  auto out = propagate(chain, lambda, std::move(v));
  return {psi.sites, std::move(out[static_cast<std::size_t>(a)])};
}

/// B(λ_1) … B(λ_N) ψ (B(λ_N) acts first).
inline OracleState apply_b_product(const ChainSpec& chain, std::span<const cplx> lambdas,
                                   OracleState psi, int cap = kDefaultCap) {
  for (std::size_t i = lambdas.size(); i-- > 0;) psi = apply(chain, lambdas[i], Entry::B, psi, cap);
  return psi;
}

/// C(λ_1) … C(λ_N) ψ (C(λ_N) acts first).
inline OracleState apply_c_product(const ChainSpec& chain, std::span<const cplx> lambdas,
                                   OracleState psi, int cap = kDefaultCap) {
  for (std::size_t i = lambdas.size(); i-- > 0;) psi = apply(chain, lambdas[i], Entry::C, psi, cap);
  return psi;
}

/// Dense A, B, C, D at one spectral parameter.
struct MonodromyOperators {
  ChainSpec chain;
  cplx lambda;
  Matrix a, b, c, d;

  const Matrix& operator[](Entry e) const {
    switch (e) {
      case Entry::A: return a;
      case Entry::B: return b;
      case Entry::C: return c;
      case Entry::D: return d;
    }
    return a;
  }
};

inline MonodromyOperators build_monodromy(const ChainSpec& chain, cplx lambda, int cap = kDenseCap) {
  require_within_cap(chain.sites(), std::min(cap, kDenseCap));
  const std::size_t dim = std::size_t{1} << chain.sites();
  MonodromyOperators t{chain, lambda, Matrix(dim, dim), Matrix(dim, dim), Matrix(dim, dim), Matrix(dim, dim)};
  for (std::size_t col = 0; col < dim; ++col) {
    for (int b = 0; b < 2; ++b) {
      AuxPair v{std::vector<cplx>(dim), std::vector<cplx>(dim)};
      v[static_cast<std::size_t>(b)][col] = 1.0;
      const auto out = propagate(chain, lambda, std::move(v));
      Matrix& top = b == 0 ? t.a : t.b;
      Matrix& bottom = b == 0 ? t.c : t.d;
      for (std::size_t row = 0; row < dim; ++row) {
        top(row, col) = out[0][row];
        bottom(row, col) = out[1][row];
      }
    }
  }
  return t;
}

/// Thread-safe memo of dense monodromy operators keyed by exact (chain, λ).
///
/// Concurrent misses may build the same entry twice; the first insert wins.
class MonodromyCache {
 public:
  std::shared_ptr<const MonodromyOperators> get(const ChainSpec& chain, cplx lambda) {
    const Key key = make_key(chain, lambda);
    {
      std::lock_guard lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto built = std::make_shared<const MonodromyOperators>(build_monodromy(chain, lambda));
    std::lock_guard lock(mutex_);
    return entries_.emplace(key, std::move(built)).first->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

  void clear() {
    std::lock_guard lock(mutex_);
    entries_.clear();
  }

 private:
  using Key = std::tuple<int, double, std::vector<double>, double, double>;

  static Key make_key(const ChainSpec& chain, cplx lambda) {
    std::vector<double> nu;
    nu.reserve(2 * chain.nu.size());
    for (const auto& v : chain.nu) {
      nu.push_back(v.real());
      nu.push_back(v.imag());
    }
    return {static_cast<int>(chain.model.family()), chain.model.coupling(), std::move(nu), lambda.real(),
            lambda.imag()};
  }

  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const MonodromyOperators>> entries_;
};

// ---------------------------------------------------------------------------
// Checks

/// ⟨0| C(λᶜ_1)…C(λᶜ_N) B(λᵇ_1)…B(λᵇ_N) |0⟩ by direct application, right to left.
inline cplx scalar_product_oracle(const ChainSpec& chain, std::span<const cplx> c_lambdas,
                                  std::span<const cplx> b_lambdas, int cap = kDefaultCap) {
  require_within_cap(chain.sites(), cap);
  auto psi = apply_b_product(chain, b_lambdas, OracleState::vacuum(chain.sites()), cap);
  psi = apply_c_product(chain, c_lambdas, std::move(psi), cap);
  return psi.amplitudes.front();
}

/// ⟨ψ|ψ⟩ for ψ = B(λ_1)…B(λ_N)|0⟩.
inline double bethe_state_norm_squared(const ChainSpec& chain, std::span<const cplx> lambdas,
                                       int cap = kDefaultCap) {
  const auto psi = apply_b_product(chain, lambdas, OracleState::vacuum(chain.sites()), cap);
  const double n = psi.norm();
  return n * n;
}

/// 4×4 R(λ, μ) with f(μ,λ) on the outer diagonal and g(μ,λ) on the inner block.
inline Matrix r_matrix(const Model& model, cplx lambda, cplx mu) {
  const cplx f = weight_f(model, mu, lambda);
  const cplx g = weight_g(model, mu, lambda);
  Matrix r(4, 4);
  r(0, 0) = f;
  r(1, 1) = 1.0;
  r(1, 2) = g;
  r(2, 1) = g;
  r(2, 2) = 1.0;
  r(3, 3) = f;
  return r;
}

/// XXZ R(λ, μ) from the Pauli-matrix expansion in σ_α ⊗ σ_β.
inline Matrix r_matrix_pauli(double eta, cplx lambda, cplx mu) {
  const cplx y = mu - lambda;
  const cplx s = std::sinh(y);
  if (std::abs(s) < kPoleTolerance) throw PoleError("R-matrix pole at lambda = mu");
  const cplx id = std::cos(eta) * std::sinh(y + kI * eta) / s;
  const cplx zz = kI * std::sin(eta) * std::cosh(y + kI * eta) / s;
  const cplx flip = kI * std::sin(2.0 * eta) / s;
  Matrix r(4, 4);
  r(0, 0) = id + zz;
  r(1, 1) = id - zz;
  r(2, 2) = id - zz;
  r(3, 3) = id + zz;
  r(1, 2) = flip;
  r(2, 1) = flip;
  return r;
}

enum class RForm { weights, pauli };

/// max |R(T(λ)⊗I)(I⊗T(μ)) − (I⊗T(μ))(T(λ)⊗I)R| over all entries.
inline double verify_rtt(const ChainSpec& chain, cplx lambda, cplx mu, RForm form = RForm::weights) {
  const Matrix r = form == RForm::weights ? r_matrix(chain.model, lambda, mu)
                                           : r_matrix_pauli(chain.model.eta(), lambda, mu);
  const auto tl = build_monodromy(chain, lambda);
  const auto tm = build_monodromy(chain, mu);
  const std::array<Entry, 4> entries{Entry::A, Entry::B, Entry::C, Entry::D};
  const auto t_of = [&](const MonodromyOperators& t, int a, int b) -> const Matrix& {
    return t[entries[static_cast<std::size_t>(2 * a + b)]];
  };

  // Operator blocks of the two products, indexed [2·a1+a2][2·b1+b2].
  std::array<std::array<Matrix, 4>, 4> left, right;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          left[2 * a1 + a2][2 * b1 + b2] = t_of(tl, a1, b1) * t_of(tm, a2, b2);
          right[2 * a1 + a2][2 * b1 + b2] = t_of(tm, a2, b2) * t_of(tl, a1, b1);
        }

  double worst = 0.0;
  const std::size_t dim = tl.a.rows();
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 4; ++col) {
      Matrix lhs(dim, dim), rhs(dim, dim);
      for (int c = 0; c < 4; ++c) {
        if (r(row, c) != cplx{}) lhs = lhs + r(row, c) * left[c][col];
        if (r(c, col) != cplx{}) rhs = rhs + r(c, col) * right[row][c];
      }
      worst = std::max(worst, (lhs - rhs).max_abs());
    }
  return worst;
}

struct CommutationResiduals {
  double bb;        ///< [B(λ), B(μ)]
  double cc;        ///< [C(λ), C(μ)]
  double transfer;  ///< [A(λ)+D(λ), A(μ)+D(μ)]
  double ab;        ///< A(μ)B(λ) − f(μ,λ)B(λ)A(μ) − g(λ,μ)B(μ)A(λ)
  double db;        ///< D(μ)B(λ) − f(λ,μ)B(λ)D(μ) − g(μ,λ)B(μ)D(λ)
  double cb;        ///< [C(λ),B(μ)] − g(λ,μ){A(λ)D(μ) − A(μ)D(λ)}

  double max() const { return std::max({bb, cc, transfer, ab, db, cb}); }
};

inline CommutationResiduals verify_commutation(const ChainSpec& chain, cplx lambda, cplx mu) {
  const Model& m = chain.model;
  const cplx f_ml = weight_f(m, mu, lambda);
  const cplx f_lm = weight_f(m, lambda, mu);
  const cplx g_lm = weight_g(m, lambda, mu);
  const cplx g_ml = weight_g(m, mu, lambda);
  const auto tl = build_monodromy(chain, lambda);
  const auto tm = build_monodromy(chain, mu);
  const Matrix t_l = tl.a + tl.d;
  const Matrix t_m = tm.a + tm.d;

  CommutationResiduals r{};
  r.bb = (tl.b * tm.b - tm.b * tl.b).max_abs();
  r.cc = (tl.c * tm.c - tm.c * tl.c).max_abs();
  r.transfer = (t_l * t_m - t_m * t_l).max_abs();
  r.ab = (tm.a * tl.b - f_ml * (tl.b * tm.a) - g_lm * (tm.b * tl.a)).max_abs();
  r.db = (tm.d * tl.b - f_lm * (tl.b * tm.d) - g_ml * (tm.b * tl.d)).max_abs();
  r.cb = ((tl.c * tm.b - tm.b * tl.c) - g_lm * (tl.a * tm.d - tm.a * tl.d)).max_abs();
  return r;
}

struct EigenvalueCheck {
  double residual;  ///< ‖(A(μ)+D(μ))ψ − θ(μ)ψ‖ / ‖ψ‖
  cplx theta;
};

/// θ(μ) = a(μ) ∏ f(μ,λ_j) + d(μ) ∏ f(λ_j,μ).
inline cplx transfer_eigenvalue(const ChainSpec& chain, std::span<const cplx> lambdas, cplx mu) {
  const VacuumSpec vac = ChainVacuum{chain};
  cplx pa = vacuum_a(vac, mu);
  cplx pd = vacuum_d(vac, mu);
  for (const auto& l : lambdas) {
    pa *= weight_f(chain.model, mu, l);
    pd *= weight_f(chain.model, l, mu);
  }
  return pa + pd;
}

/// Eigenvector test of ψ = ∏B(λ_j)|0⟩ under the transfer matrix.
///
/// With `require_on_shell`, throws OffShellError when the multiplicative
/// Bethe residual exceeds 1e-6. An empty rapidity list checks the vacuum.
inline EigenvalueCheck transfer_eigenvalue_check(const ChainSpec& chain, std::span<const cplx> lambdas,
                                                 cplx mu, bool require_on_shell = true,
                                                 int cap = kDefaultCap) {
  if (require_on_shell && !lambdas.empty()) {
    for (double r : multiplicative_residual(ChainVacuum{chain}, chain.model, lambdas))
      if (r > 1e-6) throw OffShellError("rapidities do not satisfy the Bethe equations");
  }
  const cplx theta = transfer_eigenvalue(chain, lambdas, mu);
  const auto psi = apply_b_product(chain, lambdas, OracleState::vacuum(chain.sites()), cap);
  const auto a_psi = apply(chain, mu, Entry::A, psi, cap);
  const auto d_psi = apply(chain, mu, Entry::D, psi, cap);
  double diff = 0.0;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
    diff += std::norm(a_psi.amplitudes[i] + d_psi.amplitudes[i] - theta * psi.amplitudes[i]);
  const double n = psi.norm();
  if (n == 0.0) throw InvalidArgument("Bethe vector vanishes identically");
  return {std::sqrt(diff) / n, theta};
}

// ---------------------------------------------------------------------------
// Continuum check for the Bose gas (external-literature oracle)
//
// This is not an operator oracle: it integrates the standard coordinate
// Bethe wavefunction of the delta-interacting Bose gas,
//
//   ψ(x_1<…<x_N) = Σ_P sgn(P) ∏_{j<k} (λ_{Pj} − λ_{Pk} + iκ) exp(i Σ_j λ_{Pj} x_j),
//
// extended symmetrically to [0, L]^N. With this normalization
// ∫|ψ|² = N! ∏_{j<k}((λ_j−λ_k)²+κ²) · det G, which relates to the
// algebraic scalar product by the factor N! ∏_{j<k}(λ_j−λ_k)² / κ^N.

inline double nls_norm_oracle(double length, double kappa, const RapiditySet& lambdas) {
  const std::size_t n = lambdas.size();
  if (n > 2) throw UnsupportedN("continuum oracle supports N = 1 or 2");
  for (const auto& l : lambdas.values())
    if (std::abs(l.imag()) > 1e-12) throw InvalidArgument("continuum oracle requires real rapidities");
  const VacuumSpec vac = NlsVacuum{length, kappa};
  for (double r : multiplicative_residual(vac, Model::xxx(kappa), lambdas.values()))
    if (r > kOnShellTolerance) throw NotOnShell("rapidities are not on-shell for the periodic box");
  if (n == 1) return length;

  const double l1 = lambdas[0].real();
  const double l2 = lambdas[1].real();
  const cplx amp_id = l1 - l2 + kI * kappa;
  const cplx amp_swap = -(l2 - l1 + kI * kappa);
  const auto density = [&](double x1, double x2) {
    const cplx psi = amp_id * std::exp(kI * (l1 * x1 + l2 * x2)) + amp_swap * std::exp(kI * (l2 * x1 + l1 * x2));
    return std::norm(psi);
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto inner = [&](double x2) {
    if (x2 == 0.0) return 0.0;
    return Quad::integrate([&](double x1) { return density(x1, x2); }, 0.0, x2, 15, 1e-13);
  };
  const double sector = Quad::integrate(inner, 0.0, length, 15, 1e-12);
  return 2.0 * sector;
}

/// The same quantity from the determinant formula: N! ∏(λ_j−λ_k)²/κ^N × predicted scalar product.
inline double nls_norm_from_determinant(double length, double kappa, const RapiditySet& lambdas) {
  const VacuumSpec vac = NlsVacuum{length, kappa};
  const auto predicted = predicted_scalar_product(vac, Model::xxx(kappa), lambdas);
  const auto& l = lambdas.values();
  cplx factor = std::pow(cplx{kappa}, -static_cast<int>(l.size()));
  double factorial = 1.0;
  for (std::size_t j = 0; j < l.size(); ++j) {
    factorial *= static_cast<double>(j + 1);
    for (std::size_t k = j + 1; k < l.size(); ++k) factor *= (l[j] - l[k]) * (l[j] - l[k]);
  }
  return (factorial * factor * predicted.scalar_product).real();
}

}  // namespace gaudin::oracle

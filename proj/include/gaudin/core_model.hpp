#pragma once

// Scattering weights, vacuum eigenvalues and parameter validation for
// XXX- and XXZ-type models solvable by the algebraic Bethe ansatz.
//
// Conventions used throughout the library:
//
//   XXZ:  f(λ,μ) = sinh(λ−μ+2iη)/sinh(λ−μ)      g(λ,μ) = i sin2η/sinh(λ−μ)
//   XXX:  f(λ,μ) = (λ−μ+iκ)/(λ−μ)               g(λ,μ) = iκ/(λ−μ)
//
// The XXX pair is the scaling limit of the XXZ pair (λ → ελ, 2η → εκ), which
// is also the normalization under which the Gaudin kernel is 2κ/(x²+κ²).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "gaudin/errors.hpp"

namespace gaudin {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// |denominator| below this is treated as a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Minimum separation for rapidities to count as distinct.
inline constexpr double kDistinctTolerance = 1e-10;

/// A log argument whose phase is within this of ±π is flagged as near the cut.
inline constexpr double kBranchTolerance = 1e-8;

enum class ModelFamily { xxx, xxz };

/// XXX with coupling κ or XXZ with anisotropy η.
class Model {
 public:
  static Model xxx(double kappa) {
    if (!std::isfinite(kappa) || kappa == 0.0)
      throw InvalidArgument("XXX coupling kappa must be finite and nonzero");
    return Model(ModelFamily::xxx, kappa);
  }

  static Model xxz(double eta) {
    if (!std::isfinite(eta) || !(eta > 0.0) || !(eta < std::numbers::pi / 2))
      throw InvalidArgument("XXZ anisotropy eta must lie in (0, pi/2)");
    return Model(ModelFamily::xxz, eta);
  }

  ModelFamily family() const noexcept { return family_; }
  bool is_xxx() const noexcept { return family_ == ModelFamily::xxx; }
  bool is_xxz() const noexcept { return family_ == ModelFamily::xxz; }

  /// κ for XXX, η for XXZ.
  double coupling() const noexcept { return coupling_; }

  double kappa() const {
    if (!is_xxx()) throw InvalidArgument("kappa requested from an XXZ model");
    return coupling_;
  }

  double eta() const {
    if (!is_xxz()) throw InvalidArgument("eta requested from an XXX model");
    return coupling_;
  }

  /// κ (XXX) or sin 2η (XXZ): the residue of g, and the per-particle norm factor.
  double c_weight_magnitude() const noexcept {
    return is_xxx() ? coupling_ : std::sin(2.0 * coupling_);
  }

  std::string name() const { return is_xxx() ? "xxx" : "xxz"; }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Model(ModelFamily family, double coupling) : family_(family), coupling_(coupling) {}

  ModelFamily family_;
  double coupling_;
};

namespace detail {

inline void require_nonpole(cplx denominator, const char* what) {
  if (std::abs(denominator) < kPoleTolerance) throw PoleError(std::string("pole in ") + what);
}

/// Phase of i·Log(z) with z rotated by −1, plus a flag for proximity to the cut.
struct PhaseTerm {
  cplx value;
  bool near_cut;
};

inline PhaseTerm shifted_log_phase(cplx ratio) {
  const cplx z = -ratio;
  if (std::abs(z) == 0.0 || !std::isfinite(std::abs(z)))
    throw PoleError("logarithm of zero or infinite ratio");
  const cplx log_z = std::log(z);
  const bool near = std::numbers::pi - std::abs(log_z.imag()) < kBranchTolerance;
  const cplx value = kI * log_z;
  return {value, near};
}

}  // namespace detail

/// f(λ, μ) for the given model.
inline cplx weight_f(const Model& model, cplx lambda, cplx mu) {
  const cplx x = lambda - mu;
  if (model.is_xxx()) {
    detail::require_nonpole(x, "weight_f (XXX)");
    return (x + kI * model.kappa()) / x;
  }
  const double eta = model.eta();
  const cplx s = std::sinh(x);
  detail::require_nonpole(s, "weight_f (XXZ)");
  return std::sinh(x + 2.0 * kI * eta) / s;
}

/// g(λ, μ) for the given model.
inline cplx weight_g(const Model& model, cplx lambda, cplx mu) {
  const cplx x = lambda - mu;
  if (model.is_xxx()) {
    detail::require_nonpole(x, "weight_g (XXX)");
    return kI * model.kappa() / x;
  }
  const cplx s = std::sinh(x);
  detail::require_nonpole(s, "weight_g (XXZ)");
  return kI * std::sin(2.0 * model.eta()) / s;
}

/// χ(λ, η) = sin 2η / (sinh(λ−iη) sinh(λ+iη)).
inline cplx chi(cplx lambda, double eta) {
  const cplx lo = std::sinh(lambda - kI * eta);
  const cplx hi = std::sinh(lambda + kI * eta);
  detail::require_nonpole(lo, "chi");
  detail::require_nonpole(hi, "chi");
  return std::sin(2.0 * eta) / (lo * hi);
}

/// Derivative of the scattering phase: 2κ/(x²+κ²) for XXX, χ(x, 2η) for XXZ.
inline cplx gaudin_kernel(const Model& model, cplx x) {
  if (model.is_xxx()) {
    const double k = model.kappa();
    const cplx den = x * x + k * k;
    detail::require_nonpole(den, "Gaudin kernel (XXX)");
    return 2.0 * k / den;
  }
  const double eta = model.eta();
  const cplx lo = std::sinh(x - 2.0 * kI * eta);
  const cplx hi = std::sinh(x + 2.0 * kI * eta);
  detail::require_nonpole(lo, "Gaudin kernel (XXZ)");
  detail::require_nonpole(hi, "Gaudin kernel (XXZ)");
  return std::sin(4.0 * eta) / (lo * hi);
}

/// i·Log(−f(x,0)/f(0,x)): the scattering phase, odd and continuous on the real axis.
///
/// Congruent to i·ln f(λ_k,λ_j)/f(λ_j,λ_k) modulo π; callers restore the
/// missing ±π.
inline detail::PhaseTerm scattering_phase(const Model& model, cplx x) {
  cplx ratio;
  if (model.is_xxx()) {
    const double k = model.kappa();
    detail::require_nonpole(x - kI * k, "scattering phase (XXX)");
    ratio = (x + kI * k) / (x - kI * k);
  } else {
    const double eta = model.eta();
    const cplx den = std::sinh(x - 2.0 * kI * eta);
    detail::require_nonpole(den, "scattering phase (XXZ)");
    ratio = std::sinh(x + 2.0 * kI * eta) / den;
  }
  return detail::shifted_log_phase(ratio);
}

// ---------------------------------------------------------------------------
// Chains and vacua

/// Spin-1/2 chain of M sites with inhomogeneities ν_k, built on a given R-matrix.
struct ChainSpec {
  std::vector<cplx> nu;
  Model model;

  ChainSpec(std::vector<cplx> inhomogeneities, Model m) : nu(std::move(inhomogeneities)), model(m) {
    if (nu.empty()) throw InvalidArgument("chain must have at least one site");
  }

  static ChainSpec homogeneous(int sites, Model m) {
    if (sites < 1) throw InvalidArgument("chain must have at least one site");
    return ChainSpec(std::vector<cplx>(static_cast<std::size_t>(sites), cplx{}), m);
  }

  int sites() const noexcept { return static_cast<int>(nu.size()); }

  bool is_homogeneous() const noexcept {
    for (const auto& v : nu)
      if (v != cplx{}) return false;
    return true;
  }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

/// a(λ) = ∏ sinh(λ−ν_j−iη), d(λ) = ∏ sinh(λ−ν_j+iη) (XXZ); λ−ν_j∓iκ/2 (XXX).
struct ChainVacuum {
  ChainSpec chain;
};

/// a(λ) = sinh^M(λ−iη), d(λ) = sinh^M(λ+iη).
struct HomogeneousXXZ {
  int sites;
  double eta;
};

/// Bose gas with delta interaction: a(λ) = exp(−iLλ/2), d(λ) = exp(iLλ/2).
struct NlsVacuum {
  double length;
  double kappa;
};

/// Only the drive terms X_p are given; a and d are not defined.
struct FreeX {
  std::vector<cplx> x;
};

using VacuumSpec = std::variant<ChainVacuum, HomogeneousXXZ, NlsVacuum, FreeX>;

/// The model whose R-matrix the vacuum was built with; throws for FreeX.
inline Model native_model(const VacuumSpec& spec) {
  struct Visitor {
    Model operator()(const ChainVacuum& v) const { return v.chain.model; }
    Model operator()(const HomogeneousXXZ& v) const { return Model::xxz(v.eta); }
    Model operator()(const NlsVacuum& v) const { return Model::xxx(v.kappa); }
    Model operator()(const FreeX&) const {
      throw UnsupportedVariant("FreeX vacuum carries no model");
    }
  };
  return std::visit(Visitor{}, spec);
}

/// Throws InvalidArgument unless `model` is the vacuum's own model (FreeX accepts any).
inline void require_compatible(const VacuumSpec& spec, const Model& model) {
  if (std::holds_alternative<FreeX>(spec)) return;
  if (!(native_model(spec) == model))
    throw InvalidArgument("vacuum spec and model disagree on the R-matrix");
}

namespace detail {

struct SiteFactors {
  cplx a;
  cplx d;
};

/// Per-site vacuum factors at spectral parameter λ relative to inhomogeneity ν.
inline SiteFactors site_factors(const Model& model, cplx lambda, cplx nu) {
  const cplx x = lambda - nu;
  if (model.is_xxx()) {
    const double half = 0.5 * model.kappa();
    return {x - kI * half, x + kI * half};
  }
  const double eta = model.eta();
  return {std::sinh(x - kI * eta), std::sinh(x + kI * eta)};
}

/// i d/dλ ln(a_j/d_j) for one site.
inline cplx site_drive(const Model& model, cplx lambda, cplx nu) {
  const cplx x = lambda - nu;
  if (model.is_xxx()) {
    const double half = 0.5 * model.kappa();
    const cplx lo = x - kI * half;
    const cplx hi = x + kI * half;
    require_nonpole(lo, "vacuum drive X (XXX)");
    if (std::abs(hi) < kPoleTolerance) throw ZeroDenominator("d(lambda) = 0");
    return kI * (1.0 / lo - 1.0 / hi);
  }
  const double eta = model.eta();
  const cplx lo = std::sinh(x - kI * eta);
  const cplx hi = std::sinh(x + kI * eta);
  require_nonpole(lo, "vacuum drive X (XXZ)");
  if (std::abs(hi) < kPoleTolerance) throw ZeroDenominator("d(lambda) = 0");
  return kI * (std::cosh(x - kI * eta) / lo - std::cosh(x + kI * eta) / hi);
}

inline ChainSpec as_chain(const HomogeneousXXZ& h) {
  return ChainSpec::homogeneous(h.sites, Model::xxz(h.eta));
}

}  // namespace detail

/// a(λ) for the vacuum; throws UnsupportedVariant for FreeX.
inline cplx vacuum_a(const VacuumSpec& spec, cplx lambda) {
  struct Visitor {
    cplx lambda;
    cplx operator()(const ChainVacuum& v) const {
      cplx p{1.0};
      for (const auto& nu : v.chain.nu) p *= detail::site_factors(v.chain.model, lambda, nu).a;
      return p;
    }
    cplx operator()(const HomogeneousXXZ& v) const {
      return std::pow(std::sinh(lambda - kI * v.eta), v.sites);
    }
    cplx operator()(const NlsVacuum& v) const { return std::exp(-0.5 * kI * v.length * lambda); }
    cplx operator()(const FreeX&) const { throw UnsupportedVariant("a(lambda) undefined for FreeX"); }
  };
  return std::visit(Visitor{lambda}, spec);
}

/// d(λ) for the vacuum; throws UnsupportedVariant for FreeX.
inline cplx vacuum_d(const VacuumSpec& spec, cplx lambda) {
  struct Visitor {
    cplx lambda;
    cplx operator()(const ChainVacuum& v) const {
      cplx p{1.0};
      for (const auto& nu : v.chain.nu) p *= detail::site_factors(v.chain.model, lambda, nu).d;
      return p;
    }
    cplx operator()(const HomogeneousXXZ& v) const {
      return std::pow(std::sinh(lambda + kI * v.eta), v.sites);
    }
    cplx operator()(const NlsVacuum& v) const { return std::exp(0.5 * kI * v.length * lambda); }
    cplx operator()(const FreeX&) const { throw UnsupportedVariant("d(lambda) undefined for FreeX"); }
  };
  return std::visit(Visitor{lambda}, spec);
}

struct VacuumValues {
  cplx ratio;  ///< a(λ)/d(λ)
  cplx x;      ///< X(λ) = i d/dλ ln(a/d), closed form
};

inline VacuumValues vacuum_ratio_and_X(const VacuumSpec& spec, cplx lambda) {
  struct Visitor {
    cplx lambda;
    VacuumValues chain(const ChainSpec& c) const {
      cplx ratio{1.0};
      cplx x{};
      for (const auto& nu : c.nu) {
        const auto f = detail::site_factors(c.model, lambda, nu);
        if (std::abs(f.d) < kPoleTolerance) throw ZeroDenominator("d(lambda) = 0");
        ratio *= f.a / f.d;
        x += detail::site_drive(c.model, lambda, nu);
      }
      return {ratio, x};
    }
    VacuumValues operator()(const ChainVacuum& v) const { return chain(v.chain); }
    VacuumValues operator()(const HomogeneousXXZ& v) const { return chain(detail::as_chain(v)); }
    VacuumValues operator()(const NlsVacuum& v) const {
      return {std::exp(-kI * v.length * lambda), cplx{v.length}};
    }
    VacuumValues operator()(const FreeX&) const {
      throw UnsupportedVariant("vacuum ratio undefined for FreeX");
    }
  };
  return std::visit(Visitor{lambda}, spec);
}

/// i·ln(a(λ)/d(λ)) on the library's branch: Σ_j i·Log(−a_j/d_j) − π·(M mod 2).
///
/// Congruent to i·Log(a/d) modulo 2π, continuous on the real axis, and equal
/// to it at λ = 0 for the homogeneous chain. The NLS vacuum returns Lλ exactly.
inline detail::PhaseTerm vacuum_phase(const VacuumSpec& spec, cplx lambda) {
  struct Visitor {
    cplx lambda;
    detail::PhaseTerm chain(const ChainSpec& c) const {
      detail::PhaseTerm total{cplx{}, false};
      for (const auto& nu : c.nu) {
        const auto f = detail::site_factors(c.model, lambda, nu);
        if (std::abs(f.d) < kPoleTolerance) throw ZeroDenominator("d(lambda) = 0");
        const auto t = detail::shifted_log_phase(f.a / f.d);
        total.value += t.value;
        total.near_cut = total.near_cut || t.near_cut;
      }
      if (c.sites() % 2 != 0) total.value -= std::numbers::pi;
      return total;
    }
    detail::PhaseTerm operator()(const ChainVacuum& v) const { return chain(v.chain); }
    detail::PhaseTerm operator()(const HomogeneousXXZ& v) const {
      return chain(detail::as_chain(v));
    }
    detail::PhaseTerm operator()(const NlsVacuum& v) const {
      const cplx value = v.length * lambda;
      return {value, false};
    }
    detail::PhaseTerm operator()(const FreeX&) const {
      throw UnsupportedVariant("vacuum phase undefined for FreeX");
    }
  };
  return std::visit(Visitor{lambda}, spec);
}

// ---------------------------------------------------------------------------
// Rapidities

/// Ordered, pairwise-distinct rapidities with optional integer branch labels.
class RapiditySet {
 public:
  RapiditySet() = default;

  explicit RapiditySet(std::vector<cplx> lambdas, std::vector<long> quantum_numbers = {})
      : lambda_(std::move(lambdas)), quantum_numbers_(std::move(quantum_numbers)) {
    if (lambda_.empty()) throw InvalidArgument("rapidity set must not be empty");
    if (!quantum_numbers_.empty() && quantum_numbers_.size() != lambda_.size())
      throw InvalidArgument("quantum numbers must match the number of rapidities");
    for (const auto& l : lambda_)
      if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
        throw InvalidArgument("rapidities must be finite");
    if (min_separation() <= kDistinctTolerance)
      throw CollisionError("rapidities must be pairwise distinct");
  }

  std::size_t size() const noexcept { return lambda_.size(); }
  const std::vector<cplx>& values() const noexcept { return lambda_; }
  cplx operator[](std::size_t i) const { return lambda_[i]; }
  const std::vector<long>& quantum_numbers() const noexcept { return quantum_numbers_; }
  bool has_quantum_numbers() const noexcept { return !quantum_numbers_.empty(); }

  double min_separation() const noexcept { return min_separation(lambda_); }

  static double min_separation(const std::vector<cplx>& v) noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j)
      for (std::size_t k = j + 1; k < v.size(); ++k) best = std::min(best, std::abs(v[j] - v[k]));
    return best;
  }

 private:
  std::vector<cplx> lambda_;
  std::vector<long> quantum_numbers_;
};

}  // namespace gaudin

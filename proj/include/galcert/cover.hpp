#pragma once

// Galois cover descriptors and the divisor calculus they induce on the base:
// branching divisor B_f = sum (1 - 1/d_i) B_i, K_M = f^*(K_N + B_f), the
// mean scalar curvature of [f^* w], and the primary decomposition used to
// split abelian covers into cyclic steps.

#include "galcert/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galcert {

enum class GroupKind { Cyclic, Abelian, Dihedral };

struct GaloisGroup {
  GroupKind kind = GroupKind::Cyclic;
  std::vector<int> invariant_factors;  // Abelian only
  int p = 0;                           // Dihedral only: D_p of order 2p

  static GaloisGroup cyclic() { return {GroupKind::Cyclic, {}, 0}; }
  static GaloisGroup abelian(std::vector<int> factors) {
    return {GroupKind::Abelian, std::move(factors), 0};
  }
  static GaloisGroup dihedral(int p) { return {GroupKind::Dihedral, {}, p}; }

  friend bool operator==(const GaloisGroup&, const GaloisGroup&) = default;
};

struct BranchComponent {
  DivisorClass cls;
  int inertia = 2;
  bool smooth = true;
  bool irreducible = true;

  /// 1 - 1/d_i, the coefficient of this component in B_f.
  Rational weight() const { return Rational(1) - Rational(Integer(1), Integer(inertia)); }

  friend bool operator==(const BranchComponent&, const BranchComponent&) = default;
};

/// User assertions about the base; echoed into certificates, never verified.
struct HypothesisLedger {
  bool base_kenergy_bounded_below = true;
  bool base_cscK = true;

  void validate() const {
    if (base_cscK && !base_kenergy_bounded_below)
      throw std::invalid_argument(
          "inconsistent hypotheses: a cscK base has K-energy bounded below");
  }

  friend bool operator==(const HypothesisLedger&, const HypothesisLedger&) = default;
};

class InvalidCover : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CoverDescriptor {
  int degree = 2;
  GaloisGroup group = GaloisGroup::cyclic();
  std::vector<BranchComponent> branches;  // empty: unramified

  /// Checks the descriptor invariants. A degree-1 cyclic descriptor is the
  /// identity map; its components are formal (inertia 1, weight 0).
  void validate() const {
    if (degree < 1) throw InvalidCover("cover degree must be >= 1");
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto& b = branches[i];
      const std::string where = "branch " + std::to_string(i) + ": ";
      if (!(b.cls.geometry() == branches.front().cls.geometry()))
        throw GeometryMismatch(where + "branch classes live on different geometries");
      if (degree == 1) {
        if (b.inertia != 1) throw InvalidCover(where + "a degree-1 cover has inertia 1");
      } else if (b.inertia < 2) {
        throw InvalidCover(where + "inertia must be >= 2");
      } else if (degree % b.inertia != 0) {
        throw InvalidCover(where + "inertia " + std::to_string(b.inertia) +
                           " does not divide the degree " + std::to_string(degree));
      }
    }
    switch (group.kind) {
      case GroupKind::Cyclic: break;
      case GroupKind::Abelian: {
        if (group.invariant_factors.empty())
          throw InvalidCover("abelian group needs invariant factors");
        long long order = 1;
        long long exponent = 1;
        for (int f : group.invariant_factors) {
          if (f < 2) throw InvalidCover("invariant factors must be >= 2");
          order *= f;
          exponent = std::lcm(exponent, static_cast<long long>(f));
        }
        if (order != degree)
          throw InvalidCover("group order " + std::to_string(order) +
                             " differs from the degree " + std::to_string(degree));
        // inertia groups are cyclic subgroups
        for (const auto& b : branches)
          if (exponent % b.inertia != 0)
            throw InvalidCover("inertia " + std::to_string(b.inertia) +
                               " is not an element order of the group");
        break;
      }
      case GroupKind::Dihedral:
        if (group.p < 3) throw InvalidCover("dihedral D_p needs p >= 3");
        if (degree != 2 * group.p)
          throw InvalidCover("dihedral D_p cover has degree 2p");
        for (const auto& b : branches)
          if (b.inertia != 2) throw InvalidCover("dihedral branch components have inertia 2");
        break;
    }
  }

  friend bool operator==(const CoverDescriptor&, const CoverDescriptor&) = default;
};

namespace detail {
inline void require_on(const GeometryModel& g, const CoverDescriptor& cover) {
  for (const auto& b : cover.branches)
    if (!(b.cls.geometry() == g))
      throw GeometryMismatch("branch class on " + b.cls.geometry().name() + ", expected " +
                             g.name());
}
}  // namespace detail

/// B_delta = delta * sum (1 - 1/d_i) B_i.
inline DivisorClass branch_class(const GeometryModel& g, const CoverDescriptor& cover,
                                 const Rational& delta) {
  if (delta < 0) throw std::invalid_argument("delta must be >= 0");
  detail::require_on(g, cover);
  auto b = DivisorClass::zero(g);
  for (const auto& c : cover.branches) b += c.weight() * c.cls;
  return delta * b;
}

/// min d_i/(d_i - 1) over ramified components; nullopt when nothing ramifies.
inline std::optional<Rational> delta_sup(const CoverDescriptor& cover) {
  std::optional<Rational> sup;
  for (const auto& c : cover.branches) {
    if (c.inertia < 2) continue;
    Rational v(Integer(c.inertia), Integer(c.inertia - 1));
    if (!sup || v < *sup) sup = v;
  }
  return sup;
}

/// K_N + B_f; the canonical class of the cover is its pullback.
inline DivisorClass canonical_upstairs(const GeometryModel& g, const CoverDescriptor& cover) {
  return canonical_class(g) + branch_class(g, cover, Rational(1));
}

/// Mean scalar curvature of [f^* w] in 2*pi = 1 units (Riemannian
/// convention): 2n (-K_N - B_f) . w^{n-1} / w^n.
inline Rational mean_scalar(const GeometryModel& g, const CoverDescriptor& cover,
                            const DivisorClass& omega) {
  if (!(omega.geometry() == g)) throw GeometryMismatch("omega is not on " + g.name());
  const Rational volume = top_power(omega);
  if (volume == 0) throw std::invalid_argument("omega^n = 0");
  const int n = g.dim();
  return Rational(2 * n) * against_power(-canonical_upstairs(g, cover), omega) / volume;
}

/// Primary decomposition of Z_{f_1} + ... + Z_{f_m}: the prime-power orders
/// of the cyclic summands, sorted descending.
inline std::vector<int> decompose_abelian(const std::vector<int>& invariant_factors) {
  std::vector<int> out;
  for (int f : invariant_factors) {
    if (f < 2) throw std::invalid_argument("invariant factors must be >= 2");
    int rest = f;
    for (int p = 2; p * p <= rest; ++p) {
      if (rest % p) continue;
      int q = 1;
      while (rest % p == 0) {
        rest /= p;
        q *= p;
      }
      out.push_back(q);
    }
    if (rest > 1) out.push_back(rest);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

enum class ChernSign { Fano, CalabiYau, GeneralType, Indefinite };

inline const char* to_string(ChernSign s) {
  switch (s) {
    case ChernSign::Fano: return "Fano";
    case ChernSign::CalabiYau: return "CalabiYau";
    case ChernSign::GeneralType: return "GeneralType";
    case ChernSign::Indefinite: return "Indefinite";
  }
  return "";
}

/// Sign of c_1(M) read off K_N + B_f, whose pullback is K_M.
inline ChernSign c1_sign_upstairs(const GeometryModel& g, const CoverDescriptor& cover) {
  const auto k = canonical_upstairs(g, cover);
  if (k.is_zero()) return ChernSign::CalabiYau;
  if (is_ample(-k)) return ChernSign::Fano;
  if (is_ample(k)) return ChernSign::GeneralType;
  return ChernSign::Indefinite;
}

}  // namespace galcert

#pragma once

// Sufficient-condition certifiers for cscK metrics on Galois covers.
//
// Every condition reduces to finitely many inequalities a + b*delta >= 0
// (one per Mori-cone generator and per class that must be nef), so the
// feasible delta-set is an interval computed exactly.

#include "galcert/cover.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galcert {

enum class Theorem { Main, CyclicCorollary, CyclicProportional, LogLSY, ChenChengDelta1 };
enum class Verdict { ProvenCscK, Inconclusive };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::Main: return "Main";
    case Theorem::CyclicCorollary: return "CyclicCorollary";
    case Theorem::CyclicProportional: return "CyclicProportional";
    case Theorem::LogLSY: return "LogLSY";
    case Theorem::ChenChengDelta1: return "ChenChengDelta1";
  }
  return "";
}

inline const char* to_string(Verdict v) {
  return v == Verdict::ProvenCscK ? "ProvenCscK" : "Inconclusive";
}

/// constant + slope * delta >= 0 (or > 0 when strict), evaluated against
/// one generator of the Mori cone.
struct Constraint {
  std::string label;
  std::string generator;
  Rational constant;
  Rational slope;
  bool strict = false;
  bool satisfied = false;

  Rational at(const Rational& delta) const { return constant + slope * delta; }
  bool holds_at(const Rational& delta) const {
    auto v = at(delta);
    return strict ? v > 0 : v >= 0;
  }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// [lower, upper) or [lower, upper]; no upper end means unbounded.
struct DeltaInterval {
  Rational lower;
  bool lower_closed = true;
  std::optional<Rational> upper;
  bool upper_closed = false;

  bool contains(const Rational& x) const {
    if (lower_closed ? x < lower : x <= lower) return false;
    if (upper && (upper_closed ? x > *upper : x >= *upper)) return false;
    return true;
  }

  friend bool operator==(const DeltaInterval&, const DeltaInterval&) = default;
};

struct Certificate {
  Theorem theorem = Theorem::Main;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Rational> delta_witness;
  std::optional<DeltaInterval> feasible_delta_interval;
  std::optional<Rational> evaluated_at;  // delta used for the satisfied flags
  std::vector<Constraint> constraints;
  std::optional<std::string> blocking_constraint;
  HypothesisLedger hypotheses;
  std::vector<std::string> hypothesis_failures;
  std::optional<bool> ke_flag;
  std::optional<Rational> scalar_mean;
  std::vector<std::pair<std::string, Rational>> parameters;

  bool proven() const { return verdict == Verdict::ProvenCscK; }

  /// Structural invariants every emitted certificate satisfies.
  void check_invariants(const std::optional<Rational>& sup) const {
    auto fail = [](const std::string& what) {
      throw std::logic_error("certificate invariant violated: " + what);
    };
    const bool has_delta =
        theorem != Theorem::CyclicProportional && theorem != Theorem::LogLSY;
    if (proven()) {
      if (has_delta && !delta_witness) fail("proven without a delta witness");
      if (!hypothesis_failures.empty()) fail("proven with failed hypotheses");
      for (const auto& c : constraints)
        if (!c.satisfied) fail("proven with unsatisfied constraint " + c.label);
    } else if (!blocking_constraint && hypothesis_failures.empty()) {
      fail("inconclusive without a blocking constraint or hypothesis failure");
    }
    if (delta_witness) {
      if (*delta_witness < 1) fail("delta witness below 1");
      if (sup && *delta_witness >= *sup) fail("delta witness at or above delta_sup");
      if (feasible_delta_interval && !feasible_delta_interval->contains(*delta_witness))
        fail("delta witness outside the feasible interval");
    }
    if (feasible_delta_interval) {
      const auto& iv = *feasible_delta_interval;
      if (iv.upper && (iv.lower > *iv.upper ||
                       (iv.lower == *iv.upper && !(iv.lower_closed && iv.upper_closed))))
        fail("empty feasible interval reported");
    }
  }
};

namespace detail {

struct Feasibility {
  std::optional<DeltaInterval> interval;  // nullopt: empty
  Rational candidate;                     // least delta meeting every lower bound
  std::optional<std::size_t> blocking;
};

// Intersects the half-lines of `constraints` with the domain
// [lower, upper) (upper closed when upper_closed).
inline Feasibility solve_affine(const std::vector<Constraint>& constraints, const Rational& lower,
                                const std::optional<Rational>& upper, bool upper_closed) {
  Rational lo = lower;
  std::optional<std::size_t> lo_src;
  std::optional<Rational> hi = upper;
  bool hi_closed = upper_closed;
  std::optional<std::size_t> hi_src;
  std::optional<std::size_t> dead;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.slope == 0) {
      if (!c.holds_at(Rational(0)) && !dead) dead = i;
      continue;
    }
    Rational bound = -c.constant / c.slope;
    // strict constraints only arise with zero slope (LogLSY), so bounds are closed
    if (c.slope > 0) {
      if (bound > lo) {
        lo = bound;
        lo_src = i;
      }
    } else if (!hi || bound < *hi) {
      hi = bound;
      hi_closed = true;
      hi_src = i;
    }
  }
  Feasibility f{std::nullopt, lo, std::nullopt};
  if (dead) {
    f.blocking = dead;
    return f;
  }
  const bool empty = hi && (lo > *hi || (lo == *hi && !hi_closed));
  if (empty) {
    f.blocking = lo_src ? lo_src : hi_src;
    return f;
  }
  f.interval = DeltaInterval{lo, true, hi, hi_closed};
  return f;
}

inline void require_kahler_like(const GeometryModel& g, const DivisorClass& omega) {
  if (!(omega.geometry() == g)) throw GeometryMismatch("omega is not on " + g.name());
  if (top_power(omega) <= 0) throw std::invalid_argument("omega^n must be positive");
  if (!is_nef(omega).nef) throw std::invalid_argument("omega must be nef");
}

inline std::string constraint_name(const Constraint& c) { return c.label + " . " + c.generator; }

// Nef conditions on A(delta) = K + delta*B1 and on the twisted class
//   T(delta) = [n A.w^{n-1} / w^n] w - (n-1) A.
inline std::vector<Constraint> twisted_pair_constraints(const DivisorClass& k,
                                                        const DivisorClass& b1,
                                                        const DivisorClass& omega,
                                                        const std::string& a_label,
                                                        const std::string& t_label) {
  const auto& g = omega.geometry();
  const int n = g.dim();
  const Rational volume = top_power(omega);
  const Rational s0 = Rational(n) * against_power(k, omega) / volume;
  const Rational s1 = Rational(n) * against_power(b1, omega) / volume;
  std::vector<Constraint> out;
  const auto gens = nef_cone_generators(g).generators;
  for (const auto& c : gens) out.push_back({a_label, c.label, c(k), c(b1)});
  for (const auto& c : gens) {
    const Rational wc = c(omega);
    out.push_back({t_label, c.label, s0 * wc - Rational(n - 1) * c(k),
                   s1 * wc - Rational(n - 1) * c(b1)});
  }
  return out;
}

inline void finish(Certificate& cert, const Feasibility& f, const Rational& eval_delta) {
  cert.evaluated_at = eval_delta;
  for (auto& c : cert.constraints) c.satisfied = c.holds_at(eval_delta);
  if (f.interval) {
    cert.feasible_delta_interval = f.interval;
    cert.delta_witness = f.interval->lower;
  } else if (f.blocking) {
    cert.blocking_constraint = constraint_name(cert.constraints[*f.blocking]);
  }
  cert.verdict = f.interval && cert.hypothesis_failures.empty() ? Verdict::ProvenCscK
                                                                : Verdict::Inconclusive;
}

inline std::optional<Rational> proportionality(const DivisorClass& v, const DivisorClass& w) {
  // v = lambda * w ?
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) {
      lambda = v[i] / w[i];
      break;
    }
  if (!lambda) return std::nullopt;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (v[i] != *lambda * w[i]) return std::nullopt;
  return lambda;
}

inline void check_kenergy_hypothesis(Certificate& cert, const HypothesisLedger& hyp) {
  hyp.validate();
  cert.hypotheses = hyp;
  if (!hyp.base_kenergy_bounded_below)
    cert.hypothesis_failures.push_back("base_kenergy_bounded_below");
}

}  // namespace detail

struct KeResult {
  bool ke = false;
  std::optional<Rational> lambda;  // K_N + B_f = lambda * w
};

/// Whether K_N + B_f is a rational multiple of w (pullback metric KE).
inline KeResult ke_check(const GeometryModel& g, const CoverDescriptor& cover,
                         const DivisorClass& omega) {
  if (!(omega.geometry() == g)) throw GeometryMismatch("omega is not on " + g.name());
  if (omega.is_zero()) throw std::invalid_argument("omega must be nonzero");
  auto lambda = detail::proportionality(canonical_upstairs(g, cover), omega);
  return {lambda.has_value(), lambda};
}

namespace detail {

inline Certificate delta_family(Theorem theorem, const GeometryModel& g,
                                const CoverDescriptor& cover, const DivisorClass& omega,
                                const HypothesisLedger& hyp, const Rational& lower,
                                const std::optional<Rational>& upper, bool upper_closed) {
  cover.validate();
  require_kahler_like(g, omega);
  detail::require_on(g, cover);
  if (cover.branches.empty())
    throw std::invalid_argument("the delta conditions need a branched cover");
  Certificate cert;
  cert.theorem = theorem;
  check_kenergy_hypothesis(cert, hyp);
  const auto k = canonical_class(g);
  const auto b1 = branch_class(g, cover, Rational(1));
  cert.constraints = twisted_pair_constraints(k, b1, omega, "K+B_delta", "twisted(K+B_delta)");
  auto f = solve_affine(cert.constraints, lower, upper, upper_closed);
  Rational at = f.interval ? f.interval->lower : f.candidate;
  if (upper && *upper == lower) at = lower;
  finish(cert, f, at);
  cert.scalar_mean = mean_scalar(g, cover, omega);
  cert.ke_flag = ke_check(g, cover, omega).ke;
  return cert;
}

}  // namespace detail

/// Main criterion: least delta in [1, delta_sup) with K_N + B_delta and the
/// twisted class both nef.
inline Certificate find_delta_witness(const GeometryModel& g, const CoverDescriptor& cover,
                                      const DivisorClass& omega, const HypothesisLedger& hyp) {
  const auto sup = delta_sup(cover);
  auto cert = detail::delta_family(Theorem::Main, g, cover, omega, hyp, Rational(1), sup, false);
  cert.check_invariants(sup);
  return cert;
}

/// The same conditions with delta frozen at 1 (direct Chen-Cheng route).
inline Certificate check_cc_delta1(const GeometryModel& g, const CoverDescriptor& cover,
                                   const DivisorClass& omega, const HypothesisLedger& hyp) {
  auto cert = detail::delta_family(Theorem::ChenChengDelta1, g, cover, omega, hyp, Rational(1),
                                   Rational(1), true);
  cert.check_invariants(delta_sup(cover));
  return cert;
}

/// Cyclic cover of order d branched along one divisor B, checked at a given
/// cone angle beta0 in (0, 1/d]; this is the main check at
/// delta = (1 - beta0) d / (d - 1).
inline Certificate check_corollary_cyclic(const GeometryModel& g, const CoverDescriptor& cover,
                                          const DivisorClass& omega, const HypothesisLedger& hyp,
                                          const Rational& beta0) {
  if (cover.group.kind != GroupKind::Cyclic)
    throw std::invalid_argument("the cyclic corollary needs a cyclic cover");
  if (cover.branches.size() != 1)
    throw std::invalid_argument("the cyclic corollary needs exactly one branch component");
  const int d = cover.degree;
  if (d < 2 || cover.branches.front().inertia != d)
    throw std::invalid_argument("the cyclic corollary needs a totally ramified cover of order >= 2");
  if (beta0 <= 0 || beta0 > Rational(Integer(1), Integer(d)))
    throw std::invalid_argument("beta0 must lie in (0, 1/d]");
  const Rational delta = (1 - beta0) * Rational(Integer(d), Integer(d - 1));
  auto cert = detail::delta_family(Theorem::CyclicCorollary, g, cover, omega, hyp, delta, delta,
                                   true);
  cert.parameters = {{"beta0", beta0}, {"delta", delta}};
  cert.check_invariants(delta_sup(cover));
  return cert;
}

/// Cyclic cover along a smooth irreducible B with [w] proportional to B:
/// K_N + B and (n K.B^{n-1}/B^n + 1) B - (n-1) K_N nef.
inline Certificate check_theorem_cyclic(const GeometryModel& g, const CoverDescriptor& cover,
                                        const DivisorClass& omega, const HypothesisLedger& hyp) {
  cover.validate();
  detail::require_kahler_like(g, omega);
  detail::require_on(g, cover);
  if (cover.group.kind != GroupKind::Cyclic)
    throw std::invalid_argument("the proportional criterion needs a cyclic cover");
  if (cover.branches.size() != 1)
    throw std::invalid_argument("the proportional criterion needs exactly one branch component");
  const auto& branch = cover.branches.front();
  if (!branch.smooth || !branch.irreducible)
    throw std::invalid_argument("the branch divisor must be smooth and irreducible");
  const auto lambda = detail::proportionality(omega, branch.cls);
  if (!lambda || *lambda <= 0)
    throw std::invalid_argument("omega must be a positive multiple of the branch class");
  const Rational b_top = top_power(branch.cls);
  if (b_top == 0) throw std::invalid_argument("B^n = 0");

  Certificate cert;
  cert.theorem = Theorem::CyclicProportional;
  hyp.validate();
  cert.hypotheses = hyp;
  if (!hyp.base_cscK) cert.hypothesis_failures.push_back("base_cscK");

  const int n = g.dim();
  const auto k = canonical_class(g);
  const auto a = k + branch.cls;
  const Rational coeff = Rational(n) * against_power(k, branch.cls) / b_top + 1;
  const auto twisted = coeff * branch.cls - Rational(n - 1) * k;
  for (const auto& c : nef_cone_generators(g).generators)
    cert.constraints.push_back({"K+B", c.label, c(a), Rational(0)});
  for (const auto& c : nef_cone_generators(g).generators)
    cert.constraints.push_back({"twisted(K,B)", c.label, c(twisted), Rational(0)});
  auto f = detail::solve_affine(cert.constraints, Rational(1), Rational(1), true);
  detail::finish(cert, f, Rational(1));
  cert.delta_witness.reset();
  cert.feasible_delta_interval.reset();
  cert.evaluated_at.reset();
  cert.parameters = {{"lambda", *lambda}};
  cert.scalar_mean = mean_scalar(g, cover, omega);
  cert.ke_flag = ke_check(g, cover, omega).ke;
  cert.check_invariants(std::nullopt);
  return cert;
}

struct LogDivisorComponent {
  DivisorClass cls;
  Rational beta;  // cone angle 2*pi*beta, coefficient 1 - beta
};

/// Properness criterion for the log K-energy of D = sum (1 - beta_i) D_i:
///   alpha > n eps/(n+1),  K+D + eps w ample,
///   [n (K+D).w^{n-1}/w^n + eps] w - (n-1)(K+D) ample.
/// A ProvenCscK verdict here means the criterion holds (log K-energy proper).
inline Certificate check_log_lsy(const GeometryModel& g,
                                 const std::vector<LogDivisorComponent>& divisor,
                                 const DivisorClass& omega, const Rational& epsilon,
                                 const Rational& alpha_lower_bound) {
  if (!(omega.geometry() == g)) throw GeometryMismatch("omega is not on " + g.name());
  if (!is_ample(omega)) throw std::invalid_argument("omega must be ample");
  if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  if (alpha_lower_bound <= 0) throw std::invalid_argument("alpha lower bound must be > 0");
  auto d = DivisorClass::zero(g);
  for (const auto& c : divisor) {
    if (!(c.cls.geometry() == g)) throw GeometryMismatch("divisor component not on " + g.name());
    if (c.beta <= 0 || c.beta > 1) throw std::invalid_argument("beta must lie in (0, 1]");
    d += (1 - c.beta) * c.cls;
  }
  const int n = g.dim();
  const auto kd = canonical_class(g) + d;
  const Rational slope = Rational(n) * against_power(kd, omega) / top_power(omega) + epsilon;
  const auto first = kd + epsilon * omega;
  const auto second = slope * omega - Rational(n - 1) * kd;

  Certificate cert;
  cert.theorem = Theorem::LogLSY;
  cert.constraints.push_back({"alpha > n eps/(n+1)", "alpha",
                              alpha_lower_bound - Rational(n) * epsilon / Rational(n + 1),
                              Rational(0), true});
  for (const auto& c : nef_cone_generators(g).generators)
    cert.constraints.push_back({"K+D+eps w", c.label, c(first), Rational(0), true});
  for (const auto& c : nef_cone_generators(g).generators)
    cert.constraints.push_back({"twisted(K+D)", c.label, c(second), Rational(0), true});
  auto f = detail::solve_affine(cert.constraints, Rational(0), Rational(0), true);
  detail::finish(cert, f, Rational(0));
  cert.delta_witness.reset();
  cert.feasible_delta_interval.reset();
  cert.evaluated_at.reset();
  cert.parameters = {{"epsilon", epsilon}, {"alpha_lower_bound", alpha_lower_bound}};
  cert.check_invariants(std::nullopt);
  return cert;
}

}  // namespace galcert

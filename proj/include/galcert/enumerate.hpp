#pragma once

// Parameter sweeps over the worked families: one row per integer tuple, in
// lexicographic order of the family's parameters.

#include "galcert/certify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

namespace galcert {

enum class Family {
  ProjectiveSpaceCyclic,     // n, d, lambda:          P^n, B = lambda H, inertia d, w = H
  ProductCyclic,             // d, b1, b2, a1, a2:     P1xP1, B = d(b1 C1 + b2 C2), w = a1 C1 + a2 C2
  ProjectiveSpaceDihedral,   // n, p, lambda:          P^n, D_p, L = lambda H, B_f = p L
  ProductDihedral,           // p, b1, b2, a1, a2:     P1xP1, D_p, L = b1 C1 + b2 C2
  BlowupDihedral,            // p, r, k, a1, a2, a3:   Bl3P2, D_p, L = kH - sum a_i E_i, w = rH - sum E_i
};

enum class CheckKind { Main, CyclicCorollary, CyclicProportional, CcDelta1, Ke, Scalar, C1Sign };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::ProjectiveSpaceCyclic: return "projective_space_cyclic";
    case Family::ProductCyclic: return "product_cyclic";
    case Family::ProjectiveSpaceDihedral: return "projective_space_dihedral";
    case Family::ProductDihedral: return "product_dihedral";
    case Family::BlowupDihedral: return "blowup_dihedral";
  }
  return "";
}

inline const char* to_string(CheckKind c) {
  switch (c) {
    case CheckKind::Main: return "main";
    case CheckKind::CyclicCorollary: return "cyclic_corollary";
    case CheckKind::CyclicProportional: return "cyclic_proportional";
    case CheckKind::CcDelta1: return "cc_delta1";
    case CheckKind::Ke: return "ke";
    case CheckKind::Scalar: return "scalar";
    case CheckKind::C1Sign: return "c1_sign";
  }
  return "";
}

inline std::vector<std::string> family_parameters(Family f) {
  switch (f) {
    case Family::ProjectiveSpaceCyclic: return {"n", "d", "lambda"};
    case Family::ProductCyclic: return {"d", "b1", "b2", "a1", "a2"};
    case Family::ProjectiveSpaceDihedral: return {"n", "p", "lambda"};
    case Family::ProductDihedral: return {"p", "b1", "b2", "a1", "a2"};
    case Family::BlowupDihedral: return {"p", "r", "k", "a1", "a2", "a3"};
  }
  return {};
}

struct ParamRange {
  std::string name;
  long long lo = 0;
  long long hi = 0;
  friend bool operator==(const ParamRange&, const ParamRange&) = default;
};

struct FamilySpec {
  Family family = Family::ProjectiveSpaceCyclic;
  CheckKind check = CheckKind::Main;
  std::vector<ParamRange> ranges;  // one per family parameter, in family order
  HypothesisLedger hypotheses;
  std::optional<Rational> beta0;   // cyclic_corollary only
  int threads = 1;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Geometry, cover and Kahler class of one family member.
struct Instance {
  GeometryModel geometry;
  CoverDescriptor cover;
  DivisorClass omega;
};

using Params = std::vector<std::pair<std::string, long long>>;

struct EnumerationRow {
  Params parameters;
  std::optional<std::string> skipped;  // reason, when the tuple is outside the family
  std::optional<Certificate> certificate;
  std::optional<KeResult> ke;
  std::optional<Rational> scalar;
  std::optional<ChernSign> c1;

  /// Short outcome tag used for the summary counts.
  std::string outcome() const {
    if (skipped) return "skipped";
    if (certificate) return to_string(certificate->verdict);
    if (ke) return ke->ke ? "KE" : "not_KE";
    if (scalar) return *scalar > 0 ? "positive" : (*scalar == 0 ? "zero" : "negative");
    if (c1) return to_string(*c1);
    return "none";
  }
};

class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline DivisorClass vec(const GeometryModel& g, std::vector<long long> c) {
  RationalVector v;
  for (auto x : c) v.emplace_back(x);
  return DivisorClass(g, std::move(v));
}

// Dihedral covers branch along 2pL with inertia 2: one component for odd p,
// two components of class pL for even p.
inline CoverDescriptor dihedral_cover(int p, const DivisorClass& l) {
  CoverDescriptor c;
  c.degree = 2 * p;
  c.group = GaloisGroup::dihedral(p);
  if (p % 2) {
    c.branches = {{Rational(2 * p) * l, 2}};
  } else {
    c.branches = {{Rational(p) * l, 2}, {Rational(p) * l, 2}};
  }
  return c;
}

inline CoverDescriptor cyclic_cover(int d, const DivisorClass& b) {
  CoverDescriptor c;
  c.degree = d;
  c.branches = {{b, d}};
  return c;
}

}  // namespace detail

/// Builds the family member at `v` (values in family parameter order), or
/// returns a reason the tuple is excluded.
inline std::variant<Instance, std::string> make_instance(Family f, const std::vector<long long>& v) {
  using detail::vec;
  switch (f) {
    case Family::ProjectiveSpaceCyclic: {
      const long long n = v[0], d = v[1], lambda = v[2];
      if (n < 1 || d < 1) return "n and d must be >= 1";
      if (lambda < 1) return "lambda must be >= 1";
      auto g = GeometryModel::projective_space(static_cast<int>(n));
      return Instance{g, detail::cyclic_cover(static_cast<int>(d), vec(g, {lambda})), vec(g, {1})};
    }
    case Family::ProductCyclic: {
      const long long d = v[0], b1 = v[1], b2 = v[2], a1 = v[3], a2 = v[4];
      if (d < 1) return "d must be >= 1";
      if (b1 < 1 || b2 < 1) return "b must be positive";
      if (a1 < 1 || a2 < 1) return "omega must be ample";
      auto g = GeometryModel::product({1, 1});
      return Instance{g, detail::cyclic_cover(static_cast<int>(d), vec(g, {d * b1, d * b2})),
                      vec(g, {a1, a2})};
    }
    case Family::ProjectiveSpaceDihedral: {
      const long long n = v[0], p = v[1], lambda = v[2];
      if (n < 1) return "n must be >= 1";
      if (p < 3) return "p must be >= 3";
      if (lambda < 1) return "L must be ample";
      auto g = GeometryModel::projective_space(static_cast<int>(n));
      return Instance{g, detail::dihedral_cover(static_cast<int>(p), vec(g, {lambda})),
                      vec(g, {1})};
    }
    case Family::ProductDihedral: {
      const long long p = v[0], b1 = v[1], b2 = v[2], a1 = v[3], a2 = v[4];
      if (p < 3) return "p must be >= 3";
      if (b1 < 1 || b2 < 1) return "L must be ample";
      if (a1 < 1 || a2 < 1) return "omega must be ample";
      auto g = GeometryModel::product({1, 1});
      return Instance{g, detail::dihedral_cover(static_cast<int>(p), vec(g, {b1, b2})),
                      vec(g, {a1, a2})};
    }
    case Family::BlowupDihedral: {
      const long long p = v[0], r = v[1], k = v[2];
      if (p < 3) return "p must be >= 3";
      auto g = GeometryModel::blowup_p2(3);
      auto l = vec(g, {k, -v[3], -v[4], -v[5]});
      if (!is_ample(l)) return "L not ample";
      auto omega = vec(g, {r, -1, -1, -1});
      if (!is_ample(omega)) return "omega not ample";
      return Instance{g, detail::dihedral_cover(static_cast<int>(p), l), omega};
    }
  }
  return "unknown family";
}

/// Runs `check` on one instance.
inline EnumerationRow evaluate_row(const Instance& inst, CheckKind check,
                                   const HypothesisLedger& hyp,
                                   const std::optional<Rational>& beta0) {
  EnumerationRow row;
  try {
    switch (check) {
      case CheckKind::Main:
        row.certificate = find_delta_witness(inst.geometry, inst.cover, inst.omega, hyp);
        break;
      case CheckKind::CcDelta1:
        row.certificate = check_cc_delta1(inst.geometry, inst.cover, inst.omega, hyp);
        break;
      case CheckKind::CyclicCorollary:
        if (!beta0) throw std::invalid_argument("cyclic_corollary needs beta0");
        row.certificate =
            check_corollary_cyclic(inst.geometry, inst.cover, inst.omega, hyp, *beta0);
        break;
      case CheckKind::CyclicProportional:
        row.certificate = check_theorem_cyclic(inst.geometry, inst.cover, inst.omega, hyp);
        break;
      case CheckKind::Ke:
        inst.cover.validate();
        row.ke = ke_check(inst.geometry, inst.cover, inst.omega);
        break;
      case CheckKind::Scalar:
        inst.cover.validate();
        row.scalar = mean_scalar(inst.geometry, inst.cover, inst.omega);
        break;
      case CheckKind::C1Sign:
        inst.cover.validate();
        row.c1 = c1_sign_upstairs(inst.geometry, inst.cover);
        break;
    }
  } catch (const std::invalid_argument& e) {
    // precondition of the check not met by this member (e.g. w not proportional to B)
    row.certificate.reset();
    row.skipped = e.what();
  }
  return row;
}

inline void validate_ranges(const FamilySpec& spec) {
  const auto names = family_parameters(spec.family);
  if (spec.ranges.size() != names.size())
    throw RangeError(std::string(to_string(spec.family)) + " takes " +
                     std::to_string(names.size()) + " parameter ranges");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& r = spec.ranges[i];
    if (r.name != names[i])
      throw RangeError("range " + std::to_string(i) + " should be '" + names[i] + "', got '" +
                       r.name + "'");
    if (r.lo > r.hi) throw RangeError("empty range for '" + r.name + "'");
    if (r.hi - r.lo > 100000) throw RangeError("range for '" + r.name + "' is too large");
  }
}

/// All rows of the family, lexicographic in the parameters. Rows are
/// independent; with threads > 1 they are evaluated concurrently into
/// fixed slots, so the output order never depends on scheduling.
inline std::vector<EnumerationRow> enumerate(const FamilySpec& spec) {
  validate_ranges(spec);
  spec.hypotheses.validate();
  if (spec.check == CheckKind::CyclicCorollary && !spec.beta0)
    throw RangeError("cyclic_corollary needs beta0");

  std::vector<std::vector<long long>> tuples;
  std::vector<long long> cur;
  for (const auto& r : spec.ranges) cur.push_back(r.lo);
  for (bool done = false; !done;) {
    tuples.push_back(cur);
    done = true;
    for (std::size_t i = cur.size(); i-- > 0;) {
      if (cur[i] < spec.ranges[i].hi) {
        ++cur[i];
        done = false;
        break;
      }
      cur[i] = spec.ranges[i].lo;
    }
  }

  std::vector<EnumerationRow> rows(tuples.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t j = begin; j < tuples.size(); j += step) {
      auto inst = make_instance(spec.family, tuples[j]);
      EnumerationRow row;
      if (auto* reason = std::get_if<std::string>(&inst)) {
        row.skipped = *reason;
      } else {
        row = evaluate_row(std::get<Instance>(inst), spec.check, spec.hypotheses, spec.beta0);
      }
      for (std::size_t i = 0; i < tuples[j].size(); ++i)
        row.parameters.emplace_back(spec.ranges[i].name, tuples[j][i]);
      rows[j] = std::move(row);
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, spec.threads));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& t : pool) t.join();
  }
  return rows;
}

/// Outcome tag -> count.
inline std::map<std::string, std::size_t> summarize(const std::vector<EnumerationRow>& rows) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : rows) ++counts[r.outcome()];
  return counts;
}

}  // namespace galcert

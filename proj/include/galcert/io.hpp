#pragma once

// JSON documents for the command line: problem specs, family specs,
// certificates and enumeration rows. Rationals are always "p/q" strings.

#include "galcert/enumerate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galcert::io {

using nlohmann::json;

inline constexpr const char* kToolName = "galcert";
inline constexpr const char* kToolVersion = "0.1.0";

/// Schema or value error, carrying the JSON path of the offending field.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class CheckName { Main, CyclicCorollary, CyclicProportional, LogLsy, CcDelta1, Ke, Scalar, C1Sign };

inline const char* to_string(CheckName c) {
  switch (c) {
    case CheckName::Main: return "main";
    case CheckName::CyclicCorollary: return "cyclic_corollary";
    case CheckName::CyclicProportional: return "cyclic_proportional";
    case CheckName::LogLsy: return "log_lsy";
    case CheckName::CcDelta1: return "cc_delta1";
    case CheckName::Ke: return "ke";
    case CheckName::Scalar: return "scalar";
    case CheckName::C1Sign: return "c1_sign";
  }
  return "";
}

struct ProblemSpec {
  GeometryModel geometry = GeometryModel::projective_space(1);
  std::optional<DivisorClass> omega;
  std::optional<CoverDescriptor> cover;
  HypothesisLedger hypotheses;
  CheckName check = CheckName::Main;
  std::optional<Rational> beta0;
  std::optional<Rational> epsilon;
  std::optional<Rational> alpha_lower_bound;
  std::vector<LogDivisorComponent> log_divisor;

  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    if (a.log_divisor.size() != b.log_divisor.size()) return false;
    for (std::size_t i = 0; i < a.log_divisor.size(); ++i)
      if (!(a.log_divisor[i].cls == b.log_divisor[i].cls) ||
          a.log_divisor[i].beta != b.log_divisor[i].beta)
        return false;
    return a.geometry == b.geometry && a.omega == b.omega && a.cover == b.cover &&
           a.hypotheses == b.hypotheses && a.check == b.check && a.beta0 == b.beta0 &&
           a.epsilon == b.epsilon && a.alpha_lower_bound == b.alpha_lower_bound;
  }
};

namespace detail {

inline std::string join(const std::string& path, const std::string& key) {
  return path + "." + key;
}
inline std::string join(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(join(path, key), "missing field");
  return *it;
}

inline const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw InputError(join(path, it.key()), "unknown field");
  }
}

inline Rational rational(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "rationals are strings \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw InputError(path, e.what());
  }
}

inline long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<long long>();
}

inline int small_int(const json& j, const std::string& path) {
  const auto v = integer(j, path);
  if (v < -1000000 || v > 1000000) throw InputError(path, "integer out of range");
  return static_cast<int>(v);
}

inline bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw InputError(path, "expected true or false");
  return j.get<bool>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------- parsing

inline GeometryModel parse_geometry(const json& j, const std::string& path) {
  using namespace detail;
  const auto& kind = field(j, path, "kind");
  if (!kind.is_string()) throw InputError(join(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == "projective_space") {
      reject_unknown(j, path, {"kind", "n"});
      return GeometryModel::projective_space(small_int(field(j, path, "n"), join(path, "n")));
    }
    if (k == "product") {
      reject_unknown(j, path, {"kind", "dims"});
      const auto& dims = array(field(j, path, "dims"), join(path, "dims"));
      std::vector<int> v;
      for (std::size_t i = 0; i < dims.size(); ++i)
        v.push_back(small_int(dims[i], join(join(path, "dims"), i)));
      return GeometryModel::product(v);
    }
    if (k == "blowup_p2") {
      reject_unknown(j, path, {"kind", "points"});
      return GeometryModel::blowup_p2(small_int(field(j, path, "points"), join(path, "points")));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(path, e.what());
  }
  throw InputError(join(path, "kind"),
                   "unknown geometry '" + k + "' (projective_space, product, blowup_p2)");
}

inline DivisorClass parse_class(const json& j, const GeometryModel& g, const std::string& path) {
  const auto& a = detail::array(j, path);
  if (static_cast<int>(a.size()) != g.picard_rank())
    throw InputError(path, "expected " + std::to_string(g.picard_rank()) + " coefficients");
  RationalVector v;
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(detail::rational(a[i], detail::join(path, i)));
  return DivisorClass(g, std::move(v));
}

inline GaloisGroup parse_group(const json& j, const std::string& path) {
  using namespace detail;
  const auto& kind = field(j, path, "kind");
  if (!kind.is_string()) throw InputError(join(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "cyclic") {
    reject_unknown(j, path, {"kind"});
    return GaloisGroup::cyclic();
  }
  if (k == "abelian") {
    reject_unknown(j, path, {"kind", "invariant_factors"});
    const auto& f = array(field(j, path, "invariant_factors"), join(path, "invariant_factors"));
    std::vector<int> v;
    for (std::size_t i = 0; i < f.size(); ++i)
      v.push_back(small_int(f[i], join(join(path, "invariant_factors"), i)));
    return GaloisGroup::abelian(v);
  }
  if (k == "dihedral") {
    reject_unknown(j, path, {"kind", "p"});
    return GaloisGroup::dihedral(small_int(field(j, path, "p"), join(path, "p")));
  }
  throw InputError(join(path, "kind"), "unknown group '" + k + "' (cyclic, abelian, dihedral)");
}

inline CoverDescriptor parse_cover(const json& j, const GeometryModel& g, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"degree", "group", "branches"});
  CoverDescriptor c;
  c.degree = small_int(field(j, path, "degree"), join(path, "degree"));
  if (auto* grp = optional_field(j, "group")) c.group = parse_group(*grp, join(path, "group"));
  const auto bpath = join(path, "branches");
  const auto& bs = array(field(j, path, "branches"), bpath);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const auto p = join(bpath, i);
    reject_unknown(bs[i], p, {"class", "inertia", "smooth", "irreducible"});
    BranchComponent b{parse_class(field(bs[i], p, "class"), g, join(p, "class")),
                      small_int(field(bs[i], p, "inertia"), join(p, "inertia"))};
    if (auto* s = optional_field(bs[i], "smooth")) b.smooth = boolean(*s, join(p, "smooth"));
    if (auto* s = optional_field(bs[i], "irreducible"))
      b.irreducible = boolean(*s, join(p, "irreducible"));
    c.branches.push_back(std::move(b));
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(path, e.what());
  }
  return c;
}

inline HypothesisLedger parse_hypotheses(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"base_kenergy_bounded_below", "base_cscK"});
  HypothesisLedger h;
  if (auto* v = optional_field(j, "base_kenergy_bounded_below"))
    h.base_kenergy_bounded_below = boolean(*v, join(path, "base_kenergy_bounded_below"));
  if (auto* v = optional_field(j, "base_cscK")) h.base_cscK = boolean(*v, join(path, "base_cscK"));
  try {
    h.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(path, e.what());
  }
  return h;
}

inline CheckName parse_check_name(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  const auto s = j.get<std::string>();
  for (auto c : {CheckName::Main, CheckName::CyclicCorollary, CheckName::CyclicProportional,
                 CheckName::LogLsy, CheckName::CcDelta1, CheckName::Ke, CheckName::Scalar,
                 CheckName::C1Sign})
    if (s == to_string(c)) return c;
  throw InputError(path, "unknown check '" + s + "'");
}

/// Parses and validates a problem document. Paths start at "$".
inline ProblemSpec parse_problem(const json& j) {
  using namespace detail;
  const std::string root = "$";
  if (!j.is_object()) throw InputError(root, "expected an object");
  reject_unknown(j, root, {"geometry", "omega", "cover", "hypotheses", "check", "parameters"});
  ProblemSpec s;
  s.geometry = parse_geometry(field(j, root, "geometry"), "$.geometry");
  s.check = parse_check_name(field(j, root, "check"), "$.check");
  if (auto* h = optional_field(j, "hypotheses")) s.hypotheses = parse_hypotheses(*h, "$.hypotheses");
  if (auto* w = optional_field(j, "omega")) s.omega = parse_class(*w, s.geometry, "$.omega");
  if (auto* c = optional_field(j, "cover")) s.cover = parse_cover(*c, s.geometry, "$.cover");

  const json empty = json::object();
  const json& params = optional_field(j, "parameters") ? j["parameters"] : empty;
  if (!params.is_object()) throw InputError("$.parameters", "expected an object");
  reject_unknown(params, "$.parameters", {"beta0", "epsilon", "alpha_lower_bound", "log_divisor"});
  if (auto* v = optional_field(params, "beta0")) s.beta0 = rational(*v, "$.parameters.beta0");
  if (auto* v = optional_field(params, "epsilon")) s.epsilon = rational(*v, "$.parameters.epsilon");
  if (auto* v = optional_field(params, "alpha_lower_bound"))
    s.alpha_lower_bound = rational(*v, "$.parameters.alpha_lower_bound");
  if (auto* v = optional_field(params, "log_divisor")) {
    const std::string p = "$.parameters.log_divisor";
    const auto& a = array(*v, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto pi = join(p, i);
      reject_unknown(a[i], pi, {"class", "beta"});
      s.log_divisor.push_back({parse_class(field(a[i], pi, "class"), s.geometry, join(pi, "class")),
                               rational(field(a[i], pi, "beta"), join(pi, "beta"))});
    }
  }

  const bool needs_omega = s.check != CheckName::C1Sign;
  const bool needs_cover = s.check != CheckName::LogLsy;
  if (needs_omega && !s.omega) throw InputError("$.omega", "missing field");
  if (needs_cover && !s.cover) throw InputError("$.cover", "missing field");
  if (s.check == CheckName::CyclicCorollary && !s.beta0)
    throw InputError("$.parameters.beta0", "missing field");
  if (s.check == CheckName::LogLsy) {
    if (!s.epsilon) throw InputError("$.parameters.epsilon", "missing field");
    if (!s.alpha_lower_bound) throw InputError("$.parameters.alpha_lower_bound", "missing field");
  }
  return s;
}

// ------------------------------------------------------------ serializing

inline json rational_json(const Rational& q) { return galcert::to_string(q); }

inline json optional_rational(const std::optional<Rational>& q) {
  return q ? rational_json(*q) : json(nullptr);
}

inline json class_json(const DivisorClass& d) {
  json a = json::array();
  for (const auto& c : d.coeffs()) a.push_back(rational_json(c));
  return a;
}

inline json geometry_json(const GeometryModel& g) {
  switch (g.kind()) {
    case GeometryKind::ProjectiveSpace: return {{"kind", "projective_space"}, {"n", g.dim()}};
    case GeometryKind::ProductOfProjectiveSpaces: return {{"kind", "product"}, {"dims", g.factor_dims()}};
    case GeometryKind::BlowUpP2: return {{"kind", "blowup_p2"}, {"points", g.blown_up_points()}};
  }
  return nullptr;
}

inline json group_json(const GaloisGroup& grp) {
  switch (grp.kind) {
    case GroupKind::Cyclic: return {{"kind", "cyclic"}};
    case GroupKind::Abelian: return {{"kind", "abelian"}, {"invariant_factors", grp.invariant_factors}};
    case GroupKind::Dihedral: return {{"kind", "dihedral"}, {"p", grp.p}};
  }
  return nullptr;
}

inline json cover_json(const CoverDescriptor& c) {
  json branches = json::array();
  for (const auto& b : c.branches)
    branches.push_back({{"class", class_json(b.cls)},
                        {"inertia", b.inertia},
                        {"smooth", b.smooth},
                        {"irreducible", b.irreducible}});
  return {{"degree", c.degree}, {"group", group_json(c.group)}, {"branches", branches}};
}

inline json hypotheses_json(const HypothesisLedger& h) {
  return {{"base_kenergy_bounded_below", h.base_kenergy_bounded_below}, {"base_cscK", h.base_cscK}};
}

/// Canonical form of a problem; parse_problem(problem_json(s)) == s.
inline json problem_json(const ProblemSpec& s) {
  json j = {{"geometry", geometry_json(s.geometry)},
            {"check", to_string(s.check)},
            {"hypotheses", hypotheses_json(s.hypotheses)}};
  if (s.omega) j["omega"] = class_json(*s.omega);
  if (s.cover) j["cover"] = cover_json(*s.cover);
  json params = json::object();
  if (s.beta0) params["beta0"] = rational_json(*s.beta0);
  if (s.epsilon) params["epsilon"] = rational_json(*s.epsilon);
  if (s.alpha_lower_bound) params["alpha_lower_bound"] = rational_json(*s.alpha_lower_bound);
  if (!s.log_divisor.empty()) {
    json a = json::array();
    for (const auto& c : s.log_divisor)
      a.push_back({{"class", class_json(c.cls)}, {"beta", rational_json(c.beta)}});
    params["log_divisor"] = a;
  }
  j["parameters"] = params;
  return j;
}

inline json interval_json(const DeltaInterval& iv) {
  return {{"lower", rational_json(iv.lower)},
          {"lower_closed", iv.lower_closed},
          {"upper", optional_rational(iv.upper)},
          {"upper_closed", iv.upper_closed}};
}

inline json certificate_json(const Certificate& c) {
  json constraints = json::array();
  for (const auto& k : c.constraints)
    constraints.push_back({{"label", k.label},
                           {"generator", k.generator},
                           {"constant", rational_json(k.constant)},
                           {"slope", rational_json(k.slope)},
                           {"strict", k.strict},
                           {"satisfied", k.satisfied}});
  json params = json::object();
  for (const auto& [name, v] : c.parameters) params[name] = rational_json(v);
  return {{"theorem", to_string(c.theorem)},
          {"verdict", to_string(c.verdict)},
          {"delta_witness", optional_rational(c.delta_witness)},
          {"feasible_delta_interval",
           c.feasible_delta_interval ? interval_json(*c.feasible_delta_interval) : json(nullptr)},
          {"evaluated_at", optional_rational(c.evaluated_at)},
          {"constraints", constraints},
          {"blocking_constraint",
           c.blocking_constraint ? json(*c.blocking_constraint) : json(nullptr)},
          {"hypotheses", hypotheses_json(c.hypotheses)},
          {"hypothesis_failures", c.hypothesis_failures},
          {"ke_flag", c.ke_flag ? json(*c.ke_flag) : json(nullptr)},
          {"scalar_mean", optional_rational(c.scalar_mean)},
          {"parameters", params}};
}

inline json ke_json(const KeResult& k) {
  return {{"ke", k.ke}, {"lambda", optional_rational(k.lambda)}};
}

// --------------------------------------------------------------- running

struct RunResult {
  json result;
  int exit_code = 0;  // 0 proven / pass, 10 inconclusive
};

/// Dispatches a validated problem to the certifiers.
inline RunResult run_problem(const ProblemSpec& s) {
  auto cert_result = [](const Certificate& c) {
    return RunResult{{{"certificate", certificate_json(c)}}, c.proven() ? 0 : 10};
  };
  try {
    switch (s.check) {
      case CheckName::Main:
        return cert_result(find_delta_witness(s.geometry, *s.cover, *s.omega, s.hypotheses));
      case CheckName::CcDelta1:
        return cert_result(check_cc_delta1(s.geometry, *s.cover, *s.omega, s.hypotheses));
      case CheckName::CyclicCorollary:
        return cert_result(
            check_corollary_cyclic(s.geometry, *s.cover, *s.omega, s.hypotheses, *s.beta0));
      case CheckName::CyclicProportional:
        return cert_result(check_theorem_cyclic(s.geometry, *s.cover, *s.omega, s.hypotheses));
      case CheckName::LogLsy:
        return cert_result(
            check_log_lsy(s.geometry, s.log_divisor, *s.omega, *s.epsilon, *s.alpha_lower_bound));
      case CheckName::Ke: {
        const auto k = ke_check(s.geometry, *s.cover, *s.omega);
        return {{{"ke", ke_json(k)}}, k.ke ? 0 : 10};
      }
      case CheckName::Scalar:
        return {{{"mean_scalar", rational_json(mean_scalar(s.geometry, *s.cover, *s.omega))}}, 0};
      case CheckName::C1Sign:
        return {{{"c1_sign", to_string(c1_sign_upstairs(s.geometry, *s.cover))}}, 0};
    }
  } catch (const std::invalid_argument& e) {
    throw InputError("$", e.what());
  }
  throw InputError("$.check", "unhandled check");
}

/// Certificate document: tool, input echo, result, timing.
inline json certificate_document(const ProblemSpec& s, const RunResult& r, double elapsed_ms) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"input", problem_json(s)},
          {"result", r.result},
          {"timing_ms", elapsed_ms}};
}

// ------------------------------------------------------------ families

inline FamilySpec parse_family(const json& j) {
  using namespace detail;
  const std::string root = "$";
  if (!j.is_object()) throw InputError(root, "expected an object");
  reject_unknown(j, root, {"family", "check", "ranges", "hypotheses", "beta0", "threads"});
  FamilySpec f;
  const auto& fam = field(j, root, "family");
  if (!fam.is_string()) throw InputError("$.family", "expected a string");
  bool found = false;
  for (auto k : {Family::ProjectiveSpaceCyclic, Family::ProductCyclic,
                 Family::ProjectiveSpaceDihedral, Family::ProductDihedral, Family::BlowupDihedral})
    if (fam.get<std::string>() == to_string(k)) {
      f.family = k;
      found = true;
    }
  if (!found) throw InputError("$.family", "unknown family '" + fam.get<std::string>() + "'");

  const auto& chk = field(j, root, "check");
  if (!chk.is_string()) throw InputError("$.check", "expected a string");
  found = false;
  for (auto k : {CheckKind::Main, CheckKind::CyclicCorollary, CheckKind::CyclicProportional,
                 CheckKind::CcDelta1, CheckKind::Ke, CheckKind::Scalar, CheckKind::C1Sign})
    if (chk.get<std::string>() == to_string(k)) {
      f.check = k;
      found = true;
    }
  if (!found) throw InputError("$.check", "unknown check '" + chk.get<std::string>() + "'");

  const auto& ranges = field(j, root, "ranges");
  if (!ranges.is_object()) throw InputError("$.ranges", "expected an object");
  const auto names = family_parameters(f.family);
  for (auto it = ranges.begin(); it != ranges.end(); ++it)
    if (std::find(names.begin(), names.end(), it.key()) == names.end())
      throw InputError("$.ranges." + it.key(), "not a parameter of " + std::string(to_string(f.family)));
  for (const auto& name : names) {
    const auto p = "$.ranges." + name;
    const auto& r = field(ranges, "$.ranges", name);
    long long lo, hi;
    if (r.is_number_integer()) {
      lo = hi = r.get<long long>();
    } else {
      if (!r.is_array() || r.size() != 2) throw InputError(p, "expected [lo, hi] or an integer");
      lo = integer(r[0], p + "[0]");
      hi = integer(r[1], p + "[1]");
    }
    if (lo > hi) throw InputError(p, "empty range");
    f.ranges.push_back({name, lo, hi});
  }
  if (auto* h = optional_field(j, "hypotheses")) f.hypotheses = parse_hypotheses(*h, "$.hypotheses");
  if (auto* b = optional_field(j, "beta0")) f.beta0 = rational(*b, "$.beta0");
  if (f.check == CheckKind::CyclicCorollary && !f.beta0) throw InputError("$.beta0", "missing field");
  if (auto* t = optional_field(j, "threads")) {
    f.threads = small_int(*t, "$.threads");
    if (f.threads < 1 || f.threads > 256) throw InputError("$.threads", "expected 1..256");
  }
  try {
    validate_ranges(f);
  } catch (const RangeError& e) {
    throw InputError("$.ranges", e.what());
  }
  return f;
}

inline json row_json(const EnumerationRow& r) {
  json params = json::object();
  for (const auto& [name, v] : r.parameters) params[name] = v;
  json j = {{"parameters", params}, {"outcome", r.outcome()}};
  if (r.skipped) j["skipped"] = *r.skipped;
  if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
  if (r.ke) j["ke"] = ke_json(*r.ke);
  if (r.scalar) j["mean_scalar"] = rational_json(*r.scalar);
  if (r.c1) j["c1_sign"] = to_string(*r.c1);
  return j;
}

inline json summary_json(const FamilySpec& f, const std::vector<EnumerationRow>& rows) {
  json counts = json::object();
  for (const auto& [k, v] : summarize(rows)) counts[k] = v;
  return {{"summary",
           {{"family", to_string(f.family)},
            {"check", to_string(f.check)},
            {"rows", rows.size()},
            {"counts", counts}}}};
}

}  // namespace galcert::io

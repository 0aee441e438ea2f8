#pragma once

// Picard lattices of the catalog geometries: intersection form, canonical
// class and nef/ample tests against fixed Mori-cone generators.
//
// Basis conventions
//   P^n                : H
//   P^{n_1} x ... x P^{n_m} : H_1, ..., H_m   (pullbacks of hyperplanes)
//   Bl_k P^2, k <= 3   : H, E_1, ..., E_k     (points in general position)

#include "galcert/rational.hpp"

#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galcert {

enum class GeometryKind { ProjectiveSpace, ProductOfProjectiveSpaces, BlowUpP2 };

class GeometryModel {
 public:
  static GeometryModel projective_space(int n) {
    if (n < 1) throw std::invalid_argument("projective space dimension must be >= 1");
    return GeometryModel(GeometryKind::ProjectiveSpace, {n});
  }

  static GeometryModel product(std::vector<int> dims) {
    if (dims.empty()) throw std::invalid_argument("product needs at least one factor");
    for (int n : dims)
      if (n < 1) throw std::invalid_argument("factor dimensions must be >= 1");
    return GeometryModel(GeometryKind::ProductOfProjectiveSpaces, std::move(dims));
  }

  static GeometryModel blowup_p2(int points) {
    if (points < 0 || points > 3)
      throw std::invalid_argument("blow-ups of P2 are supported at 0..3 points");
    return GeometryModel(GeometryKind::BlowUpP2, {points});
  }

  GeometryKind kind() const { return kind_; }

  int dim() const {
    switch (kind_) {
      case GeometryKind::ProjectiveSpace: return params_[0];
      case GeometryKind::ProductOfProjectiveSpaces:
        return std::accumulate(params_.begin(), params_.end(), 0);
      case GeometryKind::BlowUpP2: return 2;
    }
    return 0;
  }

  int picard_rank() const {
    switch (kind_) {
      case GeometryKind::ProjectiveSpace: return 1;
      case GeometryKind::ProductOfProjectiveSpaces: return static_cast<int>(params_.size());
      case GeometryKind::BlowUpP2: return 1 + params_[0];
    }
    return 0;
  }

  /// Factor dimensions of a product (a single entry n for P^n).
  const std::vector<int>& factor_dims() const { return params_; }

  int blown_up_points() const {
    return kind_ == GeometryKind::BlowUpP2 ? params_[0] : 0;
  }

  std::vector<std::string> basis_labels() const {
    std::vector<std::string> labels;
    switch (kind_) {
      case GeometryKind::ProjectiveSpace: labels.push_back("H"); break;
      case GeometryKind::ProductOfProjectiveSpaces:
        for (std::size_t i = 0; i < params_.size(); ++i)
          labels.push_back("H" + std::to_string(i + 1));
        break;
      case GeometryKind::BlowUpP2:
        labels.push_back("H");
        for (int i = 1; i <= params_[0]; ++i) labels.push_back("E" + std::to_string(i));
        break;
    }
    return labels;
  }

  std::string name() const {
    switch (kind_) {
      case GeometryKind::ProjectiveSpace: return "P" + std::to_string(params_[0]);
      case GeometryKind::ProductOfProjectiveSpaces: {
        std::string s;
        for (std::size_t i = 0; i < params_.size(); ++i)
          s += (i ? "xP" : "P") + std::to_string(params_[i]);
        return s;
      }
      case GeometryKind::BlowUpP2: return "Bl" + std::to_string(params_[0]) + "P2";
    }
    return {};
  }

  friend bool operator==(const GeometryModel&, const GeometryModel&) = default;

 private:
  GeometryModel(GeometryKind kind, std::vector<int> params)
      : kind_(kind), params_(std::move(params)) {}

  GeometryKind kind_;
  std::vector<int> params_;
};

class GeometryMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rational divisor class in the fixed basis of its geometry.
class DivisorClass {
 public:
  DivisorClass(GeometryModel geometry, RationalVector coeffs)
      : geometry_(std::move(geometry)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != geometry_.picard_rank())
      throw std::invalid_argument("divisor class on " + geometry_.name() + " needs " +
                                  std::to_string(geometry_.picard_rank()) +
                                  " coefficients, got " + std::to_string(coeffs_.size()));
  }

  static DivisorClass zero(const GeometryModel& geometry) {
    return DivisorClass(geometry, RationalVector(geometry.picard_rank()));
  }

  /// The i-th basis element.
  static DivisorClass basis(const GeometryModel& geometry, int i) {
    auto d = zero(geometry);
    d.coeffs_.at(i) = 1;
    return d;
  }

  const GeometryModel& geometry() const { return geometry_; }
  const RationalVector& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  DivisorClass& operator+=(const DivisorClass& other) {
    check_same(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& other) {
    check_same(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  DivisorClass& operator*=(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
  }

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
  friend DivisorClass operator*(const Rational& q, DivisorClass a) { return a *= q; }
  friend DivisorClass operator*(DivisorClass a, const Rational& q) { return a *= q; }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  std::string to_string() const {
    auto labels = geometry_.basis_labels();
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += " + ";
      s += "(" + galcert::to_string(coeffs_[i]) + ")" + labels[i];
    }
    return s;
  }

 private:
  void check_same(const DivisorClass& other) const {
    if (!(geometry_ == other.geometry_))
      throw GeometryMismatch("divisor classes live on " + geometry_.name() + " and " +
                             other.geometry_.name());
  }

  GeometryModel geometry_;
  RationalVector coeffs_;
};

namespace detail {

inline void require_same_geometry(std::span<const DivisorClass> classes) {
  for (const auto& c : classes)
    if (!(c.geometry() == classes.front().geometry()))
      throw GeometryMismatch("intersection of classes on " + classes.front().geometry().name() +
                             " and " + c.geometry().name());
}

// Coefficient of H_1^{n_1} ... H_m^{n_m} in the product of the linear forms.
inline Rational product_top_degree(std::span<const DivisorClass> classes,
                                   const std::vector<int>& dims) {
  std::map<std::vector<int>, Rational> terms{{std::vector<int>(dims.size(), 0), Rational(1)}};
  for (const auto& cls : classes) {
    std::map<std::vector<int>, Rational> next;
    for (const auto& [expo, coef] : terms) {
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (cls[i] == 0 || expo[i] == dims[i]) continue;
        auto e = expo;
        ++e[i];
        next[e] += coef * cls[i];
      }
    }
    terms = std::move(next);
  }
  auto it = terms.find(dims);
  return it == terms.end() ? Rational(0) : it->second;
}

inline Rational surface_pairing(const DivisorClass& a, const DivisorClass& b) {
  Rational v = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) v -= a[i] * b[i];
  return v;
}

}  // namespace detail

/// Symmetric multilinear intersection form on exactly dim() classes.
inline Rational intersection_number(std::span<const DivisorClass> classes) {
  if (classes.empty()) throw std::invalid_argument("intersection of no classes");
  detail::require_same_geometry(classes);
  const auto& g = classes.front().geometry();
  if (static_cast<int>(classes.size()) != g.dim())
    throw std::invalid_argument("intersection on " + g.name() + " takes " +
                                std::to_string(g.dim()) + " classes, got " +
                                std::to_string(classes.size()));
  switch (g.kind()) {
    case GeometryKind::ProjectiveSpace: {
      Rational v = 1;
      for (const auto& c : classes) v *= c[0];
      return v;
    }
    case GeometryKind::ProductOfProjectiveSpaces:
      return detail::product_top_degree(classes, g.factor_dims());
    case GeometryKind::BlowUpP2:
      return detail::surface_pairing(classes[0], classes[1]);
  }
  return 0;
}

inline Rational intersection_number(std::initializer_list<DivisorClass> classes) {
  return intersection_number(std::span<const DivisorClass>(classes.begin(), classes.size()));
}

/// D^{dim}.
inline Rational top_power(const DivisorClass& d) {
  std::vector<DivisorClass> v(d.geometry().dim(), d);
  return intersection_number(v);
}

/// D . w^{dim-1}.
inline Rational against_power(const DivisorClass& d, const DivisorClass& w) {
  std::vector<DivisorClass> v(w.geometry().dim(), w);
  v.front() = d;
  return intersection_number(v);
}

inline DivisorClass canonical_class(const GeometryModel& g) {
  RationalVector c(g.picard_rank());
  switch (g.kind()) {
    case GeometryKind::ProjectiveSpace:
    case GeometryKind::ProductOfProjectiveSpaces:
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = -(g.factor_dims()[i] + 1);
      break;
    case GeometryKind::BlowUpP2:
      c[0] = -3;
      for (std::size_t i = 1; i < c.size(); ++i) c[i] = 1;
      break;
  }
  return DivisorClass(g, std::move(c));
}

/// A curve class seen as the linear functional D -> D.C.
struct CurveClass {
  std::string label;
  RationalVector pairing;

  Rational operator()(const DivisorClass& d) const {
    Rational v = 0;
    for (std::size_t i = 0; i < pairing.size(); ++i) v += pairing[i] * d[i];
    return v;
  }
};

struct CurveClassSet {
  GeometryModel geometry;
  std::vector<CurveClass> generators;
};

/// Fixed Mori-cone generators per catalog geometry.
inline CurveClassSet nef_cone_generators(const GeometryModel& g) {
  CurveClassSet set{g, {}};
  const int rank = g.picard_rank();
  auto unit = [rank](int i) {
    RationalVector v(rank);
    v[i] = 1;
    return v;
  };
  switch (g.kind()) {
    case GeometryKind::ProjectiveSpace:
      set.generators.push_back({"line", unit(0)});
      break;
    case GeometryKind::ProductOfProjectiveSpaces:
      for (int i = 0; i < rank; ++i)
        set.generators.push_back({"line_" + std::to_string(i + 1), unit(i)});
      break;
    case GeometryKind::BlowUpP2: {
      // Curves written as divisors xH + sum y_i E_i pair via diag(1,-1,...,-1).
      const int k = g.blown_up_points();
      if (k == 0) {
        set.generators.push_back({"H", unit(0)});
        break;
      }
      for (int i = 1; i <= k; ++i) {
        RationalVector p(rank);
        p[i] = -1;
        set.generators.push_back({"E" + std::to_string(i), p});
      }
      if (k == 1) {
        RationalVector p(rank);
        p[0] = 1;
        p[1] = 1;
        set.generators.push_back({"H-E1", p});
      }
      for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
          RationalVector p(rank);
          p[0] = 1;
          p[i] = 1;
          p[j] = 1;
          set.generators.push_back(
              {"H-E" + std::to_string(i) + "-E" + std::to_string(j), p});
        }
      break;
    }
  }
  return set;
}

struct NefResult {
  bool nef = false;
  RationalVector margins;  // D.C per generator, in generator order
};

inline NefResult is_nef(const DivisorClass& d) {
  NefResult r{true, {}};
  for (const auto& c : nef_cone_generators(d.geometry()).generators) {
    r.margins.push_back(c(d));
    if (r.margins.back() < 0) r.nef = false;
  }
  return r;
}

inline bool is_ample(const DivisorClass& d) {
  for (const auto& m : is_nef(d).margins)
    if (m <= 0) return false;
  return true;
}

}  // namespace galcert

#pragma once

#include "galcert/galcert.hpp"

#include <vector>

namespace galcert::testing {

inline Rational q(long long p, long long r = 1) { return make_rational(p, r); }

inline DivisorClass cls(const GeometryModel& g, std::vector<Rational> v) {
  return DivisorClass(g, std::move(v));
}

inline HypothesisLedger all_hyp() { return {true, true}; }

inline CoverDescriptor cyclic(int d, const DivisorClass& b) {
  return {d, GaloisGroup::cyclic(), {{b, d}}};
}

/// P^n, B = lambda H with inertia d, w = H.
struct PnCase {
  GeometryModel g;
  CoverDescriptor cover;
  DivisorClass omega;
};

inline PnCase pn_cyclic(int n, int d, const Rational& lambda) {
  auto g = GeometryModel::projective_space(n);
  return {g, cyclic(d, cls(g, {lambda})), cls(g, {q(1)})};
}

}  // namespace galcert::testing

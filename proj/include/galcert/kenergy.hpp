#pragma once

// Numerical K-energies on P^1 for rotation-invariant potentials, used to
// check the pullback identity K^M_{f^* w}(f^* phi) = d K^N_{B_f, w}(phi)
// for the cyclic cover f(z) = z^d.
//
// Normalisations (t = log|w|^2, everything integrated against dt dtheta):
//   w_N = i ddbar log(1 + |w|^2)         density g0(t) = 1 / (4 cosh^2(t/2)), area 2 pi
//   Ric(w_N) = 2 w_N                     int Ric = 4 pi
//   |s_0|^2 = |w|^2 / (1 + |w|^2),  |s_inf|^2 = 1 / (1 + |w|^2),  Theta = w_N
//   J-hat_chi(phi) = int_0^1 ds int phi (chi - cbar_chi w_{s phi}),  cbar = int chi / int w
// Scalar curvature is the Kahler trace, s w = Ric, so s-bar(P^1) = 2.

#include "galcert/cover.hpp"
#include "galcert/quadrature.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galcert::kenergy {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerances and mesh used by the numerical checks.
struct Config {
  quadrature::MeshConfig mesh;
  double convergence_tolerance = 1e-9;  // self-estimated error, relative to 1 + |value|
  double lemma31_tolerance = 1e-6;
  double linearity_tolerance = 1e-12;
  double cocycle_tolerance = 1e-6;
  double gauss_bonnet_tolerance = 1e-10;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// phi(t) with t = log|w|^2, its first two t-derivatives and its limits at
/// t -> -inf (the point 0) and t -> +inf (the point at infinity).
struct RadialPotential {
  std::string family;
  std::vector<double> params;
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  double limit_minus = 0.0;
  double limit_plus = 0.0;

  std::string describe() const {
    std::string s = family;
    for (double p : params) s += ":" + std::to_string(p);
    return s;
  }
};

inline double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// Density of w_N in dt dtheta.
inline double base_density(double t) {
  const double c = std::cosh(0.5 * t);
  return 0.25 / (c * c);
}

inline double log_base_density(double t) {
  const double a = std::abs(0.5 * t);
  const double log_cosh = a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
  return -std::log(4.0) - 2.0 * log_cosh;
}

namespace potentials {

inline RadialPotential zero() {
  auto z = [](double) { return 0.0; };
  return {"zero", {}, z, z, z, 0.0, 0.0};
}

inline RadialPotential constant(double c) {
  auto z = [](double) { return 0.0; };
  return {"constant", {c}, [c](double) { return c; }, z, z, c, c};
}

/// phi_l(t) = log(1 + l e^t) - log(1 + e^t): w_{phi_l} is the pullback of
/// w_N by w -> sqrt(l) w.
inline RadialPotential moebius(double l) {
  if (!(l > 0)) throw std::invalid_argument("Moebius scaling needs l > 0");
  const double s = std::log(l);
  auto sigma = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  return {"moebius",
          {l},
          [s](double t) { return softplus(t + s) - softplus(t); },
          [s, sigma](double t) { return sigma(t + s) - sigma(t); },
          [s](double t) { return base_density(t + s) - base_density(t); },
          0.0,
          s};
}

/// h exp(-(t-c)^2 / (2 w^2)).
inline RadialPotential bump(double center, double height, double width) {
  if (!(width > 0)) throw std::invalid_argument("bump width must be positive");
  auto shape = [=](double t) {
    const double u = (t - center) / width;
    return height * std::exp(-0.5 * u * u);
  };
  return {"bump",
          {center, height, width},
          shape,
          [=](double t) { return -shape(t) * (t - center) / (width * width); },
          [=](double t) {
            const double u = (t - center) / width;
            return shape(t) * (u * u - 1.0) / (width * width);
          },
          0.0,
          0.0};
}

inline RadialPotential sum(const RadialPotential& a, const RadialPotential& b) {
  return {"sum(" + a.describe() + "," + b.describe() + ")",
          {},
          [a, b](double t) { return a.value(t) + b.value(t); },
          [a, b](double t) { return a.d1(t) + b.d1(t); },
          [a, b](double t) { return a.d2(t) + b.d2(t); },
          a.limit_minus + b.limit_minus,
          a.limit_plus + b.limit_plus};
}

/// f^* phi for f(z) = z^d, as a function of tau = log|z|^2 = t/d.
inline RadialPotential pullback(const RadialPotential& phi, int d) {
  if (d < 1) throw std::invalid_argument("cover degree must be >= 1");
  const double dd = d;
  return {"pullback(" + phi.describe() + ")",
          {dd},
          [phi, dd](double tau) { return phi.value(dd * tau); },
          [phi, dd](double tau) { return dd * phi.d1(dd * tau); },
          [phi, dd](double tau) { return dd * dd * phi.d2(dd * tau); },
          phi.limit_minus,
          phi.limit_plus};
}

/// phi_0 with f^* w_N + i ddbar phi_0 = d w_FS on the cover: a smooth
/// reference metric in [f^* w_N].
inline RadialPotential cover_reference(int d) {
  const double dd = d;
  auto sigma = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  return {"cover_reference",
          {dd},
          [dd](double tau) { return dd * softplus(tau) - softplus(dd * tau); },
          [dd, sigma](double tau) { return dd * (sigma(tau) - sigma(dd * tau)); },
          [dd](double tau) { return dd * base_density(tau) - dd * dd * base_density(dd * tau); },
          0.0,
          0.0};
}

/// Named potentials accepted by the command line: zero, moebius[:l],
/// bump[:center:height:width].
inline RadialPotential by_name(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = spec.find(':', start);
    parts.push_back(spec.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  auto num = [&](std::size_t i, double fallback) {
    return i < parts.size() ? std::stod(parts[i]) : fallback;
  };
  if (parts[0] == "zero") return zero();
  if (parts[0] == "moebius") return moebius(num(1, 2.0));
  if (parts[0] == "bump") return bump(num(1, 0.5), num(2, 0.3), num(3, 1.5));
  throw std::invalid_argument("unknown potential '" + spec + "'");
}

}  // namespace potentials

struct KEnergyResult {
  double value = 0.0;
  double entropy_term = 0.0;
  double jhat_term = 0.0;
  std::vector<double> divisor_terms;
  double quadrature_error_estimate = 0.0;
};

namespace detail {

// log(1 + x) with x = ratio - 1 given as (numerator, reference); stable
// whether the perturbation is small or dominant.
inline double log_ratio(double perturbation, double reference, double log_reference,
                        double density) {
  if (std::abs(perturbation) < reference) return std::log1p(perturbation / reference);
  return std::log(density) - log_reference;
}

struct Terms {
  double entropy = 0, div0 = 0, divinf = 0, jhat = 0;
  double total() const { return entropy + div0 + divinf + jhat; }
};

// Log K-energy of (P^1, scale * w_N) with D = (1-beta)([0] + [inf]) on one mesh.
inline Terms log_kenergy_on(const quadrature::Mesh& mesh, const RadialPotential& phi, double beta,
                            double scale) {
  const double c = 1.0 - beta;
  const double log_scale = std::log(scale);
  auto r = quadrature::integrate<4>(mesh, [&](double t) -> std::array<double, 4> {
    const double g0 = scale * base_density(t);
    const double pp = phi.d2(t);
    const double g = g0 + pp;
    if (!(g > 0))
      throw std::domain_error("w_phi is not positive at t = " + std::to_string(t) +
                              " for potential " + phi.describe());
    const double lr = log_ratio(pp, g0, log_scale + log_base_density(t), g);
    return {lr * g, -softplus(-t) * pp, -softplus(t) * pp, phi.value(t) * pp};
  });
  return {kTwoPi * r[0], c * kTwoPi * r[1], c * kTwoPi * r[2], kTwoPi * beta / scale * r[3]};
}

// Expanded K-energy of psi against the degenerate reference f^* w_N on the
// cover z -> z^d, in tau = log|z|^2.
inline Terms cover_kenergy_on(const quadrature::Mesh& mesh, const RadialPotential& psi, int d,
                              double mean_scalar) {
  const double dd = d;
  const double log_d2 = 2.0 * std::log(dd);
  auto r = quadrature::integrate<3>(mesh, [&](double tau) -> std::array<double, 3> {
    const double g0 = dd * dd * base_density(dd * tau);
    const double pp = psi.d2(tau);
    const double g = g0 + pp;
    if (!(g > 0))
      throw std::domain_error("w_psi is not positive at tau = " + std::to_string(tau) +
                              " for potential " + psi.describe());
    const double lr = log_ratio(pp, g0, log_d2 + log_base_density(dd * tau), g);
    const double v = psi.value(tau);
    return {lr * g, v * g0, v * pp};
  });
  Terms t;
  t.entropy = kTwoPi * r[0];
  // int_0^1 ds int psi (sbar w_{s psi} - f^* Ric(w_N)),  Ric(w_N) = 2 w_N
  t.jhat = kTwoPi * ((mean_scalar - 2.0) * r[1] + 0.5 * mean_scalar * r[2]);
  // ramification points 0 and inf, each of index d - 1
  t.div0 = kTwoPi * (dd - 1.0) * psi.limit_minus;
  t.divinf = kTwoPi * (dd - 1.0) * psi.limit_plus;
  return t;
}

inline quadrature::MeshConfig doubled(quadrature::MeshConfig cfg) {
  cfg.panels *= 2;
  return cfg;
}

template <class Eval>
KEnergyResult converge(const Config& cfg, Eval&& eval) {
  const Terms coarse = eval(quadrature::Mesh(cfg.mesh));
  const Terms fine = eval(quadrature::Mesh(doubled(cfg.mesh)));
  KEnergyResult res;
  res.entropy_term = fine.entropy;
  res.jhat_term = fine.jhat;
  res.divisor_terms = {fine.div0, fine.divinf};
  res.value = fine.total();
  res.quadrature_error_estimate =
      std::abs(fine.total() - coarse.total()) + quadrature::tail_bound(cfg.mesh.half_width);
  if (res.quadrature_error_estimate > cfg.convergence_tolerance * (1.0 + std::abs(res.value)))
    throw QuadratureError("quadrature did not converge: error estimate " +
                          std::to_string(res.quadrature_error_estimate));
  return res;
}

}  // namespace detail

/// K_{D, w_N}(phi) on (P^1, w_N) with D = (1 - beta)([0] + [inf]).
inline KEnergyResult eval_log_kenergy(const RadialPotential& phi, double beta,
                                      const Config& cfg = {}) {
  if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("beta must lie in (0, 1]");
  return detail::converge(
      cfg, [&](const quadrature::Mesh& m) { return detail::log_kenergy_on(m, phi, beta, 1.0); });
}

/// Smooth Mabuchi K-energy on (P^1, scale * w_N); scale = d gives the smooth
/// reference d w_FS in the class [f^* w_N] upstairs.
inline KEnergyResult eval_smooth_kenergy(const RadialPotential& phi, double scale,
                                         const Config& cfg = {}) {
  if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
  return detail::converge(
      cfg, [&](const quadrature::Mesh& m) { return detail::log_kenergy_on(m, phi, 1.0, scale); });
}

/// Kahler-trace mean scalar curvature of [f^* w_N] for z -> z^d, taken from
/// the lattice calculus (which uses the Riemannian convention, twice this).
inline double cover_mean_scalar(int d) {
  const auto p1 = GeometryModel::projective_space(1);
  CoverDescriptor cover;
  cover.degree = d;
  const auto point = DivisorClass::basis(p1, 0);
  cover.branches = {{point, d}, {point, d}};
  cover.validate();
  return to_double(mean_scalar(p1, cover, point)) / 2.0;
}

/// K^M_{f^* w_N}(psi) for an arbitrary rotation-invariant potential psi on
/// the cover (a function of tau = log|z|^2).
inline KEnergyResult eval_cover_kenergy_upstairs(const RadialPotential& psi, int d,
                                                 const Config& cfg = {}) {
  if (d < 1) throw std::invalid_argument("cover degree must be >= 1");
  const double sbar = cover_mean_scalar(d);
  return detail::converge(
      cfg, [&](const quadrature::Mesh& m) { return detail::cover_kenergy_on(m, psi, d, sbar); });
}

/// K^M_{f^* w_N}(f^* phi) for a base potential phi.
inline KEnergyResult eval_cover_kenergy(const RadialPotential& phi, int d,
                                        const Config& cfg = {}) {
  return eval_cover_kenergy_upstairs(potentials::pullback(phi, d), d, cfg);
}

/// |K^M - d K^N_{B_f}| / (1 + |K^M|), each side from its own quadrature.
inline double verify_lemma31(const RadialPotential& phi, int d, const Config& cfg = {}) {
  const double upstairs = eval_cover_kenergy(phi, d, cfg).value;
  const double downstairs = eval_log_kenergy(phi, 1.0 / d, cfg).value;
  return std::abs(upstairs - d * downstairs) / (1.0 + std::abs(upstairs));
}

/// |K_{B_delta} - (delta/delta0) K_{B_delta0} - (1 - delta/delta0) K_N| on
/// shared nodes, relative to 1 + |K_{B_delta}|. Cone coefficients are
/// delta (1 - 1/d).
inline double verify_delta_linearity(const RadialPotential& phi, double delta0, double delta,
                                     int d, const Config& cfg = {}) {
  if (d < 2) throw std::invalid_argument("cover degree must be >= 2");
  if (!(delta > 0 && delta <= delta0)) throw std::invalid_argument("need 0 < delta <= delta0");
  const double w = 1.0 - 1.0 / d;
  if (!(delta0 * w < 1.0)) throw std::invalid_argument("cone coefficient must stay below 1");
  const quadrature::Mesh mesh(cfg.mesh);
  const double k_delta = detail::log_kenergy_on(mesh, phi, 1.0 - delta * w, 1.0).total();
  const double k_delta0 = detail::log_kenergy_on(mesh, phi, 1.0 - delta0 * w, 1.0).total();
  const double k_smooth = detail::log_kenergy_on(mesh, phi, 1.0, 1.0).total();
  const double r = delta / delta0;
  return std::abs(k_delta - r * k_delta0 - (1.0 - r) * k_smooth) / (1.0 + std::abs(k_delta));
}

/// Generalised cocycle on the cover with smooth reference w_0 = d w_FS:
///   K_{w_0}(phi) - K_{w_0}(phi') = K_{f^* w_N}(phi + phi_0) - K_{f^* w_N}(phi' + phi_0).
/// Returns |lhs - rhs| / (1 + |lhs|).
inline double verify_cocycle(const RadialPotential& phi, const RadialPotential& phi_prime, int d,
                             const Config& cfg = {}) {
  const auto phi0 = potentials::cover_reference(d);
  const double lhs =
      eval_smooth_kenergy(phi, d, cfg).value - eval_smooth_kenergy(phi_prime, d, cfg).value;
  const double rhs = eval_cover_kenergy_upstairs(potentials::sum(phi, phi0), d, cfg).value -
                     eval_cover_kenergy_upstairs(potentials::sum(phi_prime, phi0), d, cfg).value;
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

/// int_{P^1} Ric(w_N) on the configured mesh.
inline double integrate_ricci(const quadrature::MeshConfig& mesh) {
  auto r = quadrature::integrate<1>(quadrature::Mesh(mesh), [](double t) {
    return std::array<double, 1>{2.0 * base_density(t)};
  });
  return kTwoPi * r[0];
}

/// |int Ric(w_N) - 4 pi|.
inline double gauss_bonnet_check(const quadrature::MeshConfig& mesh = {}) {
  return std::abs(integrate_ricci(mesh) - 2.0 * kTwoPi);
}

/// Total area of the degenerate form f^* w_N for z -> z^d (= 2 pi d).
inline double cover_area(int d, const quadrature::MeshConfig& mesh = {}) {
  const double dd = d;
  auto r = quadrature::integrate<1>(quadrature::Mesh(mesh), [dd](double tau) {
    return std::array<double, 1>{dd * dd * base_density(dd * tau)};
  });
  return kTwoPi * r[0];
}

}  // namespace galcert::kenergy

#pragma once

// Composite Gauss-Legendre quadrature on a sinh-graded mesh of [-T, T],
// for smooth integrands on the real line that decay like |t| e^{-|t|}.

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace galcert::quadrature {

struct Node {
  double x;
  double w;
};

/// Gauss-Legendre rule on [-1, 1] for the supported orders.
inline std::vector<Node> gauss_legendre(int order) {
  auto expand = [](const auto& abscissa, const auto& weights, bool odd) {
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      nodes.push_back({abscissa[i], weights[i]});
      if (!(odd && i == 0)) nodes.push_back({-abscissa[i], weights[i]});
    }
    return nodes;
  };
  using boost::math::quadrature::gauss;
  switch (order) {
    case 7: return expand(gauss<double, 7>::abscissa(), gauss<double, 7>::weights(), true);
    case 10: return expand(gauss<double, 10>::abscissa(), gauss<double, 10>::weights(), false);
    case 15: return expand(gauss<double, 15>::abscissa(), gauss<double, 15>::weights(), true);
    case 20: return expand(gauss<double, 20>::abscissa(), gauss<double, 20>::weights(), false);
    default: throw std::invalid_argument("supported Gauss-Legendre orders: 7, 10, 15, 20");
  }
}

struct MeshConfig {
  double half_width = 60.0;  // T
  int panels = 128;          // panels in the graded variable
  int order = 20;            // Gauss-Legendre points per panel
  double grading = 3.0;      // t = T sinh(k u)/sinh(k), u in [-1, 1]
};

/// Quadrature points (t_i, w_i) with sum w_i f(t_i) ~ int_{-T}^{T} f(t) dt.
class Mesh {
 public:
  explicit Mesh(const MeshConfig& cfg) {
    if (cfg.panels < 1) throw std::invalid_argument("panel count must be positive");
    if (cfg.half_width <= 0) throw std::invalid_argument("half width must be positive");
    const auto rule = gauss_legendre(cfg.order);
    const double k = cfg.grading;
    const double scale = k > 0 ? cfg.half_width / std::sinh(k) : cfg.half_width;
    const double h = 2.0 / cfg.panels;
    points_.reserve(static_cast<std::size_t>(cfg.panels) * rule.size());
    for (int p = 0; p < cfg.panels; ++p) {
      const double mid = -1.0 + (p + 0.5) * h;
      for (const auto& n : rule) {
        const double u = mid + 0.5 * h * n.x;
        const double du = 0.5 * h * n.w;
        if (k > 0)
          points_.push_back({scale * std::sinh(k * u), du * scale * k * std::cosh(k * u)});
        else
          points_.push_back({scale * u, du * scale});
      }
    }
  }

  const std::vector<Node>& points() const { return points_; }

 private:
  std::vector<Node> points_;
};

/// Integrates a vector-valued integrand f(t) -> std::array<double, K>.
template <std::size_t K, class F>
std::array<double, K> integrate(const Mesh& mesh, F&& f) {
  std::array<double, K> acc{};
  for (const auto& p : mesh.points()) {
    const std::array<double, K> v = f(p.x);
    for (std::size_t i = 0; i < K; ++i) acc[i] += p.w * v[i];
  }
  return acc;
}

/// Bound on int_{|t|>T} (1 + |t|) e^{-|t|} dt, the decay class of every
/// integrand used here.
inline double tail_bound(double half_width) {
  return 2.0 * (half_width + 2.0) * std::exp(-half_width);
}

}  // namespace galcert::quadrature

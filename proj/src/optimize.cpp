#include "fueter/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace fueter {

NelderMeadResult nelder_mead_2d(const std::function<double(const Eigen::Vector2d&)>& f,
                                const Eigen::Vector2d& start, double initial_step,
                                double tolerance, int max_iterations) {
  std::array<Eigen::Vector2d, 3> x = {start, start + Eigen::Vector2d(initial_step, 0),
                                      start + Eigen::Vector2d(0, initial_step)};
  std::array<double, 3> fx = {f(x[0]), f(x[1]), f(x[2])};

  auto diameter = [&]() {
    return std::max({(x[0] - x[1]).norm(), (x[0] - x[2]).norm(), (x[1] - x[2]).norm()});
  };

  int it = 0;
  for (; it < max_iterations; ++it) {
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    if (diameter() < tolerance) break;

    const Eigen::Vector2d centroid = 0.5 * (x[best] + x[mid]);
    const Eigen::Vector2d reflected = centroid + (centroid - x[worst]);
    const double fr = f(reflected);
    if (fr < fx[best]) {
      const Eigen::Vector2d expanded = centroid + 2.0 * (centroid - x[worst]);
      const double fe = f(expanded);
      if (fe < fr) {
        x[worst] = expanded;
        fx[worst] = fe;
      } else {
        x[worst] = reflected;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[mid]) {
      x[worst] = reflected;
      fx[worst] = fr;
      continue;
    }
    const bool outside = fr < fx[worst];
    const Eigen::Vector2d contracted =
        outside ? Eigen::Vector2d(centroid + 0.5 * (reflected - centroid))
                : Eigen::Vector2d(centroid + 0.5 * (x[worst] - centroid));
    const double fc = f(contracted);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = contracted;
      fx[worst] = fc;
      continue;
    }
    // shrink towards the best vertex
    for (int v : {mid, worst}) {
      x[v] = x[best] + 0.5 * (x[v] - x[best]);
      fx[v] = f(x[v]);
    }
  }
  const int best = static_cast<int>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  return {x[best], fx[best], diameter(), it};
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

void ImUnitSphereSampler::validate() const {
  if (count < 12) throw std::invalid_argument("sphere sampler needs at least 12 nodes");
  if (starts < 1) throw std::invalid_argument("sphere sampler needs at least one start");
}

double ImUnitSphereSampler::covering_radius() const {
  static std::mutex mutex;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(count); it != cache.end()) return it->second;

  // Estimated from a much denser probe lattice, with 10% margin.
  const auto nodes = fibonacci_sphere(count);
  const auto probe = fibonacci_sphere(std::max(4000, 16 * count));
  double worst = 0.0;
  for (const auto& p : probe) {
    double best = 4.0;
    for (const auto& q : nodes) best = std::min(best, (p - q).squaredNorm());
    worst = std::max(worst, best);
  }
  const double chord = 1.1 * std::sqrt(worst);
  return cache[count] = chord;
}

namespace {

// Orthonormal tangent basis at a unit vector.
std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_basis(const Eigen::Vector3d& u) {
  const Eigen::Vector3d seed =
      std::abs(u.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d e1 = (seed - seed.dot(u) * u).normalized();
  Eigen::Vector3d e2 = u.cross(e1);
  return {e1, e2};
}

}  // namespace

SphereMinimum minimize_on_sphere(const std::function<double(const Eigen::Vector3d&)>& f,
                                 const ImUnitSphereSampler& sampler) {
  sampler.validate();
  const auto nodes = sampler.nodes();
  std::vector<double> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = f(nodes[k]);

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(sampler.starts), nodes.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  SphereMinimum best{nodes[order[0]], values[order[0]], values[order[0]], sampler.covering_radius()};
  if (best.value <= 0.0) {
    best.resolution = 0.0;
    return best;
  }
  for (std::size_t s = 0; s < starts; ++s) {
    const Eigen::Vector3d u0 = nodes[order[s]];
    const auto [e1, e2] = tangent_basis(u0);
    auto chart = [&](const Eigen::Vector2d& st) -> Eigen::Vector3d {
      return (u0 + st[0] * e1 + st[1] * e2).normalized();
    };
    const auto run = nelder_mead_2d([&](const Eigen::Vector2d& st) { return f(chart(st)); },
                                    Eigen::Vector2d::Zero(), sampler.covering_radius(),
                                    sampler.tolerance, sampler.max_iterations);
    if (run.value <= best.value) {
      best.argmin = chart(run.argmin);
      best.value = run.value;
      best.resolution = run.simplex_diameter;
    }
    if (best.value <= 0.0) {
      best.resolution = 0.0;
      break;
    }
  }
  return best;
}

}  // namespace fueter

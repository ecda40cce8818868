#pragma once

// Grid scan plus pattern-search refinement of a function on the unit sphere
// that is even under n -> -n, so only the upper hemisphere is scanned.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace discordlab::detail {

struct SphereMinimum {
  double value = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
};

// Probe eight tangent directions at the current step, move to the best
// improvement, halve the step when nothing improves.
template <class F>
void refine_on_sphere(const F& f, Eigen::Vector3d& n, double& value, double step,
                      double tolerance) {
  constexpr double kDiag = std::numbers::sqrt2 / 2.0;
  while (step >= tolerance) {
    const Eigen::Vector3d e1 = n.unitOrthogonal();
    const Eigen::Vector3d e2 = n.cross(e1);
    const std::array<Eigen::Vector3d, 8> probes{
        e1, -e1, e2, -e2, kDiag * (e1 + e2), kDiag * (e1 - e2), kDiag * (-e1 + e2),
        kDiag * (-e1 - e2)};
    double best = value;
    Eigen::Vector3d best_n = n;
    for (const auto& probe : probes) {
      const Eigen::Vector3d candidate = (n + step * probe).normalized();
      const double v = f(candidate);
      if (v < best) {
        best = v;
        best_n = candidate;
      }
    }
    if (best < value) {
      n = best_n;
      value = best;
    } else {
      step *= 0.5;
    }
  }
}

template <class F>
SphereMinimum minimize_on_hemisphere(const F& f, int polar, int azimuth, double tolerance,
                                     int refined_candidates = 3) {
  const double polar_step = polar > 1 ? (std::numbers::pi / 2.0) / (polar - 1) : 0.0;
  const double azimuth_step = 2.0 * std::numbers::pi / azimuth;

  std::vector<double> cos_az(azimuth), sin_az(azimuth);
  for (int j = 0; j < azimuth; ++j) {
    cos_az[j] = std::cos(j * azimuth_step);
    sin_az[j] = std::sin(j * azimuth_step);
  }

  const std::size_t nodes = static_cast<std::size_t>(polar) * azimuth;
  std::vector<double> values(nodes);
  std::vector<Eigen::Vector3d> directions(nodes);
  for (int i = 0; i < polar; ++i) {
    const double st = std::sin(i * polar_step), ct = std::cos(i * polar_step);
    for (int j = 0; j < azimuth; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * azimuth + j;
      directions[idx] = {st * cos_az[j], st * sin_az[j], ct};
      values[idx] = f(directions[idx]);
    }
  }

  std::vector<std::size_t> order(nodes);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t shortlist = std::min<std::size_t>(nodes, 64);
  std::partial_sort(order.begin(), order.begin() + shortlist, order.end(),
                    [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });

  // Seeds must be separated by a few grid spacings (n and -n coincide).
  const double spacing = std::max({polar_step, azimuth_step, 1e-3});
  const double separation = std::cos(4.0 * spacing);
  std::vector<std::size_t> seeds;
  for (std::size_t k = 0; k < shortlist && static_cast<int>(seeds.size()) < refined_candidates;
       ++k) {
    const auto& dir = directions[order[k]];
    const bool distinct = std::all_of(seeds.begin(), seeds.end(), [&](std::size_t s) {
      return std::abs(directions[s].dot(dir)) < separation;
    });
    if (distinct) seeds.push_back(order[k]);
  }

  SphereMinimum best{values[order.front()], directions[order.front()]};
  for (const std::size_t seed : seeds) {
    Eigen::Vector3d n = directions[seed];
    double value = values[seed];
    refine_on_sphere(f, n, value, spacing, tolerance);
    if (value < best.value) best = {value, n};
  }
  if (best.direction.z() < 0.0) best.direction = -best.direction;
  return best;
}

}  // namespace discordlab::detail

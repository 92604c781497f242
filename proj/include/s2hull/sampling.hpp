#pragma once

// Seeded samplers: points of S2, convex combinations of them, and points of
// the outer relaxations used by the audits.
//
// The generator is std::mt19937_64 (fully specified by the standard). Doubles
// are produced as (u >> 11) * 2^-53 so streams reproduce bit-exactly on every
// platform; std::uniform_real_distribution is deliberately avoided because
// its algorithm is implementation-defined.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "s2hull/core.hpp"

namespace s2hull {

struct SampleSeed {
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  bool chance(double p) { return uniform() < p; }

  /// Standard exponential variate.
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
};

/// One point of piece P1..P4 (piece in 1..4).
inline HullPoint s2_point(int piece, double x1, double x2) {
  switch (piece) {
    case 1: return {};
    case 2: return {x1, 0, x1 * x1, 0, 0, 1, 0};
    case 3: return {0, x2, 0, 0, x2 * x2, 0, 1};
    default: return {x1, x2, x1 * x1, x1 * x2, x2 * x2, 1, 1};
  }
}

inline HullPoint sample_S2_point(Rng& rng, double xmax = 2.0) {
  const int piece = 1 + static_cast<int>(rng.index(4));
  const double x1 = rng.uniform(0.0, xmax);
  const double x2 = rng.uniform(0.0, xmax);
  return s2_point(piece, x1, x2);
}

/// Uniform piece index, then x uniform in [0, xmax]^2.
inline std::vector<HullPoint> sample_S2(const SampleSeed& s, double xmax = 2.0) {
  Rng rng(s.seed);
  std::vector<HullPoint> out;
  out.reserve(s.count);
  for (std::size_t i = 0; i < s.count; ++i) out.push_back(sample_S2_point(rng, xmax));
  return out;
}

inline HullPoint convex_combination(const std::vector<HullPoint>& pts,
                                    const std::vector<double>& weights) {
  std::array<double, HullPoint::kDim> acc{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto a = pts[i].as_array();
    for (std::size_t d = 0; d < acc.size(); ++d) acc[d] += weights[i] * a[d];
  }
  return HullPoint::from_array(acc);
}

/// Dirichlet(1,...,1) combination of k S2 points.
inline HullPoint sample_hull_point(Rng& rng, std::size_t k, double xmax = 2.0) {
  std::vector<HullPoint> pts;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    pts.push_back(sample_S2_point(rng, xmax));
    w.push_back(rng.exponential());
    total += w.back();
  }
  for (double& v : w) v /= total;
  return convex_combination(pts, w);
}

inline std::vector<HullPoint> sample_hull(const SampleSeed& s, std::size_t k, double xmax = 2.0) {
  if (k < 1) throw HullError(ErrorCode::PreconditionViolated, "sample_hull: k must be >= 1");
  Rng rng(s.seed);
  std::vector<HullPoint> out;
  out.reserve(s.count);
  for (std::size_t i = 0; i < s.count; ++i) out.push_back(sample_hull_point(rng, k, xmax));
  return out;
}

/// A point of the outer set Cbar with every coordinate except X11 drawn so
/// that all eight cells receive mass; X11 is set to x1^2/z1 + slack.
inline HullPoint sample_Cbar_point(Rng& rng, double xmax = 2.0) {
  using detail::sq;
  HullPoint p;
  p.z1 = rng.uniform(0.02, 1.0);
  p.z2 = rng.uniform(0.02, 1.0);
  p.x1 = rng.uniform(0.0, xmax);
  p.x2 = rng.uniform(0.0, xmax);
  const double e2 = rng.chance(0.25) ? rng.uniform(0.0, 0.02) : rng.uniform(0.0, 3.0);
  p.X22 = sq(p.x2) / p.z2 + e2;
  const double L = p.z1 + p.z2 - 1.0;
  const double mode = rng.uniform();
  if (mode < 0.4 && L > 0.0) {
    p.X12 = p.x1 * p.x2 * L / (p.z1 * p.z2) * rng.uniform();
  } else if (mode < 0.7) {
    p.X12 = p.x1 * p.x2 / std::max(p.z1, p.z2) * rng.uniform(0.0, 1.5);
  } else {
    p.X12 = rng.uniform(0.0, 4.0);
  }
  p.X11 = sq(p.x1) / p.z1 + rng.uniform(0.0, 3.0);
  return p;
}

inline std::vector<HullPoint> sample_Cbar(const SampleSeed& s, double xmax = 2.0) {
  Rng rng(s.seed);
  std::vector<HullPoint> out;
  out.reserve(s.count);
  for (std::size_t i = 0; i < s.count; ++i) out.push_back(sample_Cbar_point(rng, xmax));
  return out;
}

/// Smallest X11 for which the point lies in the relaxation with the 2x2
/// Schur condition; +inf when no X11 works.
inline ExtReal ctilde_x11_floor(const HullPoint& p, const Tolerances& tol = {}) {
  using detail::sq;
  ExtReal lo = persp_sq(p.x1, p.z1, tol);
  if (lo.is_infinite()) return lo;
  const double b = p.X22 - sq(p.x2);
  const double c = p.X12 - p.x1 * p.x2;
  if (b > 0.0) return std::max(lo.value(), sq(p.x1) + sq(c) / b);
  if (std::abs(c) <= tol.eq && b >= -tol.eq) return std::max(lo.value(), sq(p.x1));
  return ExtReal::infinity();
}

}  // namespace s2hull

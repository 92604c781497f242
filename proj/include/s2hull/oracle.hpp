#pragma once

// Brute-force membership through the disjunctive extended formulation.
//
// A point is in the hull iff some weight lambda for the full-support piece
// and some split (xt1, xt2) of x reach
//
//   f = xt1^2/lambda + (x1 - xt1)^2/(z1 - lambda) + cl(h^2 / g2)  <=  X11,
//   g2 = X22 - xt2^2/lambda - (x2 - xt2)^2/(z2 - lambda) >= 0,
//   h  = X12 - xt1 xt2 / lambda,
//
// with max(z1 + z2 - 1, 0) <= lambda <= min(z1, z2), 0 <= xt <= x.
// The search runs over (lambda, xt2) only: for fixed values of those two the
// objective is a one-dimensional convex quadratic-over-linear in xt1 whose
// minimiser has a closed form.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "s2hull/core.hpp"
#include "s2hull/regions.hpp"

namespace s2hull {

struct OracleWitness {
  double xt41 = 0.0;
  double xt42 = 0.0;
  double lambda4 = 0.0;
  ExtReal objective = ExtReal::infinity();
};

struct OracleOptions {
  std::size_t grid = 64;        ///< samples per axis of the coarse (lambda, xt2) grid
  std::size_t seeds = 4;        ///< best grid cells refined by pattern search
  std::size_t min_halvings = 40;
};

struct OracleResult {
  bool member = false;
  OracleWitness witness;
};

namespace detail {

inline double oracle_g2(const HullPoint& p, double xt2, double lam, const Tolerances& tol) {
  const ExtReal a = persp_sq(xt2, lam, tol);
  const ExtReal b = persp_sq(p.x2 - xt2, std::max(p.z2 - lam, 0.0), tol);
  if (a.is_infinite() || b.is_infinite()) return -std::numeric_limits<double>::infinity();
  return p.X22 - a.value() - b.value();
}

// f at a triple already known to satisfy the bound constraints; +inf if g2 < 0.
inline ExtReal oracle_f(const HullPoint& p, double xt1, double xt2, double lam, double g2,
                        const Tolerances& tol) {
  if (g2 < -tol.eq) return ExtReal::infinity();
  const ExtReal pp = persp_prod(std::max(xt1, 0.0), std::max(xt2, 0.0), lam, tol);
  if (pp.is_infinite()) return ExtReal::infinity();
  const double h = p.X12 - pp.value();
  ExtReal tail = 0.0;
  if (g2 > 0.0)
    tail = sq(h) / g2;
  else if (std::abs(h) > tol.eq)
    tail = ExtReal::infinity();
  return persp_sq(xt1, lam, tol) + persp_sq(p.x1 - xt1, std::max(p.z1 - lam, 0.0), tol) + tail;
}

class OracleSearch {
 public:
  OracleSearch(const HullPoint& p, const Tolerances& tol) : p_(p), tol_(tol) {
    lam_lo_ = std::max(p.z1 + p.z2 - 1.0, 0.0);
    lam_hi_ = std::min(p.z1, p.z2);
    if (lam_hi_ < lam_lo_) lam_hi_ = lam_lo_;
    slack2_ = p.X22 * p.z2 - sq(p.x2);
  }

  bool lambda_degenerate() const { return lam_hi_ - lam_lo_ <= tol_.eq; }

  double lambda_at(double u) const { return lam_lo_ + u * (lam_hi_ - lam_lo_); }

  // Feasible xt2 interval for g2 >= 0 at this lambda, intersected with [0, x2].
  // Empty intervals come back with lo > hi.
  std::pair<double, double> xt2_range(double lam) const {
    if (p_.z2 <= 0.0) return {0.0, 0.0};
    const double centre = lam * p_.x2 / p_.z2;
    const double r2 = slack2_ * lam * (p_.z2 - lam);
    if (r2 < 0.0) {
      if (slack2_ < -tol_.eq * std::max(1.0, p_.X22)) return {1.0, 0.0};
      return {std::clamp(centre, 0.0, p_.x2), std::clamp(centre, 0.0, p_.x2)};
    }
    const double rad = std::sqrt(r2) / p_.z2;
    return {std::max(0.0, centre - rad), std::min(p_.x2, centre + rad)};
  }

  // Minimises over xt1 for fixed (lambda, xt2).
  OracleWitness best_xt1(double lam, double xt2) const {
    OracleWitness w{0.0, xt2, lam, ExtReal::infinity()};
    double g2 = oracle_g2(p_, xt2, lam, tol_);
    if (g2 < 0.0 && g2 >= -tol_.eq * std::max(1.0, p_.X22)) g2 = 0.0;
    if (!(g2 >= 0.0)) return w;
    const double v = std::max(p_.z1 - lam, 0.0);
    const double num = lam * (lam * p_.x1 * g2 + xt2 * p_.X12 * v);
    const double den = lam * p_.z1 * g2 + sq(xt2) * v;
    double t;
    if (lam <= 0.0)
      t = 0.0;
    else if (v <= 0.0)
      t = p_.x1;
    else if (den > 0.0)
      t = num / den;
    else
      t = lam * p_.x1 / p_.z1;
    w.xt41 = std::clamp(t, 0.0, p_.x1);
    w.objective = oracle_f(p_, w.xt41, xt2, lam, g2, tol_);
    return w;
  }

  OracleWitness eval(double u, double t) const {
    const double lam = lambda_at(u);
    const auto [lo, hi] = xt2_range(lam);
    if (lo > hi) return {0.0, 0.0, lam, ExtReal::infinity()};
    return best_xt1(lam, lo + t * (hi - lo));
  }

  OracleResult run(const OracleOptions& opt) const {
    const std::size_t n = std::max<std::size_t>(opt.grid, 2);
    const std::size_t nu = lambda_degenerate() ? 1 : n;
    struct Cell {
      double u, t;
      OracleWitness w;
    };
    std::vector<Cell> cells;
    cells.reserve(nu * n);
    for (std::size_t i = 0; i < nu; ++i) {
      const double u = nu == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(nu - 1);
      for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n - 1);
        Cell c{u, t, eval(u, t)};
        if (c.w.objective.is_finite()) cells.push_back(c);
      }
    }
    OracleResult out;
    if (cells.empty()) return out;

    const std::size_t k = std::min(opt.seeds, cells.size());
    std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(k), cells.end(),
                      [](const Cell& a, const Cell& b) { return a.w.objective < b.w.objective; });
    OracleWitness best = cells.front().w;
    const double step0 = 1.0 / static_cast<double>(n - 1);
    for (std::size_t s = 0; s < k; ++s) {
      Cell cur = cells[s];
      double step = step0;
      std::size_t halvings = 0;
      while (halvings < opt.min_halvings || step > 1e-15) {
        Cell trial = cur;
        bool moved = false;
        for (int du = -1; du <= 1; ++du) {
          if (du != 0 && nu == 1) continue;
          for (int dt = -1; dt <= 1; ++dt) {
            if (du == 0 && dt == 0) continue;
            const double u = std::clamp(cur.u + du * step, 0.0, 1.0);
            const double t = std::clamp(cur.t + dt * step, 0.0, 1.0);
            OracleWitness w = eval(u, t);
            if (w.objective < trial.w.objective) {
              trial = {u, t, w};
              moved = true;
            }
          }
        }
        if (moved) {
          cur = trial;
        } else {
          step *= 0.5;
          ++halvings;
          if (halvings > 200) break;
        }
      }
      if (cur.w.objective < best.objective) best = cur.w;
    }
    out.witness = best;
    out.member = best.objective.is_finite() && best.objective.value() <= p_.X11 + tol_.oracle;
    return out;
  }

 private:
  HullPoint p_;
  Tolerances tol_;
  double lam_lo_ = 0.0, lam_hi_ = 0.0, slack2_ = 0.0;
};

}  // namespace detail

/// Objective of the extended-formulation problem at a given triple. Throws
/// InfeasibleWitness if the triple violates the weight, split or g2
/// constraints by more than eq.
inline ExtReal oracle_objective(const HullPoint& p, double xt1, double xt2, double lam,
                                const Tolerances& tol = {}) {
  const double e = tol.eq;
  const double lo = std::max(p.z1 + p.z2 - 1.0, 0.0);
  if (lam < lo - e || lam > std::min(p.z1, p.z2) + e)
    throw HullError(ErrorCode::InfeasibleWitness, "lambda outside its interval");
  if (xt1 < -e || xt1 > p.x1 + e || xt2 < -e || xt2 > p.x2 + e)
    throw HullError(ErrorCode::InfeasibleWitness, "split outside [0, x]");
  lam = std::max(lam, 0.0);
  const double g2 = detail::oracle_g2(p, xt2, lam, tol);
  if (!(g2 >= -e * std::max(1.0, p.X22)))
    throw HullError(ErrorCode::InfeasibleWitness, "g2 < 0");
  return detail::oracle_f(p, std::clamp(xt1, 0.0, p.x1), std::clamp(xt2, 0.0, p.x2), lam,
                          std::max(g2, 0.0), tol);
}

inline ExtReal oracle_objective(const HullPoint& p, const OracleWitness& w,
                                const Tolerances& tol = {}) {
  return oracle_objective(p, w.xt41, w.xt42, w.lambda4, tol);
}

/// Numeric membership: minimum of f over the feasible set against X11.
/// Total on the ambient box; lambda = 0 is admitted as a closure point so the
/// X12 = 0 face and the z = 0 edges need no special casing.
inline OracleResult oracle_member(const HullPoint& p, const Tolerances& tol = {},
                                  const OracleOptions& opt = {}) {
  validate_domain(p, tol);
  return detail::OracleSearch(p, tol).run(opt);
}

/// Closed-form minimiser of the extended-formulation problem for a point of
/// the given cell.
inline OracleWitness analytic_witness(const HullPoint& p, Region r, const Tolerances& tol = {}) {
  using detail::sq;
  validate_domain(p, tol);
  const double x1 = p.x1, x2 = p.x2, X12 = p.X12, X22 = p.X22, z1 = p.z1, z2 = p.z2;
  const double L = z1 + z2 - 1.0;
  OracleWitness w;
  auto none = [](const char* why) {
    return HullError(ErrorCode::RegionHasNoClosedWitness, why);
  };
  switch (r) {
    case Region::R1:
      if (!(X12 > tol.eq && x1 * x2 > tol.eq && z1 > tol.eq && z2 > tol.eq))
        throw none("R1 face or edge point");
      w.lambda4 = X12 * z1 * z2 / (x1 * x2);
      w.xt41 = X12 * z2 / x2;
      w.xt42 = X12 * z1 / x1;
      break;
    case Region::R2:
      w = {x1, X12 * z1 / x1, z1};
      break;
    case Region::R3:
      w = {x1, (X12 * x2 * z1 + x1 * (X22 * (z2 - z1) - sq(x2))) / (X12 * z2 - x1 * x2), z1};
      break;
    case Region::R4:
      throw none("R4 optimum is a supremum");
    case Region::R5:
      if (!(z2 < z1)) throw none("R5 with z1 <= z2");
      w = {(x1 * (X22 * z2 - sq(x2)) + X12 * x2 * (z1 - z2)) / (X22 * z1 - sq(x2)), x2, z2};
      break;
    case Region::R6:
      w = {L * x1 / z1, X12 * z1 / x1, L};
      break;
    case Region::R7:
      w = {(X12 * x2 * (1.0 - z2) + x1 * (X22 * z2 - sq(x2))) / (X22 - sq(x2)),
           (x1 * (sq(x2) - X22 * (1.0 - z1)) - X12 * x2 * z1) / (x1 * x2 - X12), L};
      break;
    case Region::R8: {
      const double s = X22 * z2 - sq(x2);
      w = {X12 * z2 / (x2 - std::sqrt(s * (1.0 - z1) / L)),
           L * x2 / z2 - std::sqrt(s * (1.0 - z1) * L) / z2, L};
      break;
    }
    case Region::NotCovered:
      throw none("point is not covered by any cell");
  }
  w.objective = oracle_objective(p, w, tol);
  return w;
}

}  // namespace s2hull

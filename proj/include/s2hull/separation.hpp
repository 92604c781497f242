#pragma once

// Separation over the hull for points of the relaxation, and supporting cuts
// of the 3x3 PSD block.
//
// For a non-member the point is moved along X11 onto the hull boundary (the
// defining function q is affine in X11, so the touching point is explicit) and
// the first-order expansion of q there is returned as the cut.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "s2hull/core.hpp"
#include "s2hull/hull.hpp"
#include "s2hull/regions.hpp"

namespace s2hull {

/// Affine inequality coeffs . p + constant >= 0 over (x1, x2, X11, X12, X22, z1, z2).
struct Cut {
  std::array<double, HullPoint::kDim> coeffs{};
  double constant = 0.0;
  HullPoint touch;
  Region region = Region::NotCovered;

  double eval(const HullPoint& p) const {
    const auto a = p.as_array();
    double s = constant;
    for (std::size_t i = 0; i < a.size(); ++i) s += coeffs[i] * a[i];
    return s;
  }
};

struct SeparationResult {
  bool inside = false;
  std::optional<Cut> cut;
  Region region = Region::NotCovered;
};

/// Boundary functions: II uses z2 as the Schur corner, III uses z1, V is the
/// W-inequality of the R8 system.
enum class QFamily { II, III, V };

inline std::string_view to_string(QFamily f) {
  switch (f) {
    case QFamily::II: return "II";
    case QFamily::III: return "III";
    case QFamily::V: return "V";
  }
  return "?";
}

inline std::optional<QFamily> family_for(Region r) {
  switch (r) {
    case Region::R3:
    case Region::R4: return QFamily::II;
    case Region::R5: return QFamily::III;
    case Region::R8: return QFamily::V;
    default: return std::nullopt;
  }
}

namespace detail {

struct VTerms {
  double L, s, Q, rootQ, W, R, A;
};

inline VTerms v_terms(const HullPoint& p) {
  VTerms t{};
  t.L = p.z1 + p.z2 - 1.0;
  t.s = p.X22 * p.z2 - sq(p.x2);
  t.Q = t.s * (1.0 - p.z1) * t.L;
  t.rootQ = std::sqrt(std::max(t.Q, 0.0));
  t.W = t.L - t.rootQ / p.x2;
  t.R = p.X12 * p.z1 * p.z2 / t.W - p.x1 * p.x2;
  t.A = p.X11 - sq(p.x1) / p.z1;
  return t;
}

using Grad = std::array<double, HullPoint::kDim>;

inline Grad schur_gradient(const HullPoint& p, double s, std::size_t s_index) {
  const double a = p.X11 - sq(p.x1) / s;
  const double b = p.X22 - sq(p.x2) / s;
  const double c = p.X12 - p.x1 * p.x2 / s;
  Grad g{};
  g[0] = (-2.0 * p.x1 * b + 2.0 * c * p.x2) / s;
  g[1] = (-2.0 * p.x2 * a + 2.0 * c * p.x1) / s;
  g[2] = b;
  g[3] = -2.0 * c;
  g[4] = a;
  g[s_index] = (a * sq(p.x2) + b * sq(p.x1) - 2.0 * c * p.x1 * p.x2) / sq(s);
  return g;
}

inline Grad v_gradient(const HullPoint& p) {
  const VTerms t = v_terms(p);
  const double x1 = p.x1, x2 = p.x2, X11 = p.X11, X12 = p.X12, X22 = p.X22, z1 = p.z1,
               z2 = p.z2;
  const double den = 2.0 * t.rootQ * x2;
  // dW/d(.)
  const double dQ_x2 = -2.0 * x2 * (1.0 - z1) * t.L;
  const double dQ_X22 = z2 * (1.0 - z1) * t.L;
  const double dQ_z1 = t.s * (1.0 - z1 - t.L);
  const double dQ_z2 = X22 * (1.0 - z1) * t.L + t.s * (1.0 - z1);
  const double dW_x2 = t.rootQ / sq(x2) - dQ_x2 / den;
  const double dW_X22 = -dQ_X22 / den;
  const double dW_z1 = 1.0 - dQ_z1 / den;
  const double dW_z2 = 1.0 - dQ_z2 / den;
  // dR/d(.)
  const double m = X12 * z1 * z2 / sq(t.W);
  const double dR_x1 = -x2;
  const double dR_x2 = -x1 - m * dW_x2;
  const double dR_X12 = z1 * z2 / t.W;
  const double dR_X22 = -m * dW_X22;
  const double dR_z1 = X12 * z2 / t.W - m * dW_z1;
  const double dR_z2 = X12 * z1 / t.W - m * dW_z2;
  // q = (1 - z2) x2^2 (z1 X11 - x1^2) - L R^2
  const double K = z1 * X11 - sq(x1);
  const double twoLR = 2.0 * t.L * t.R;
  const double R2 = sq(t.R);
  Grad g{};
  g[0] = -2.0 * x1 * (1.0 - z2) * sq(x2) - twoLR * dR_x1;
  g[1] = 2.0 * x2 * (1.0 - z2) * K - twoLR * dR_x2;
  g[2] = (1.0 - z2) * sq(x2) * z1;
  g[3] = -twoLR * dR_X12;
  g[4] = -twoLR * dR_X22;
  g[5] = (1.0 - z2) * sq(x2) * X11 - R2 - twoLR * dR_z1;
  g[6] = -sq(x2) * K - R2 - twoLR * dR_z2;
  return g;
}

// X11 at which q vanishes, all other coordinates fixed.
inline double q_root_x11(QFamily f, const HullPoint& p) {
  switch (f) {
    case QFamily::II:
    case QFamily::III: {
      const double s = f == QFamily::II ? p.z2 : p.z1;
      const double b = p.X22 - sq(p.x2) / s;
      const double c = p.X12 - p.x1 * p.x2 / s;
      return sq(p.x1) / s + sq(c) / b;
    }
    case QFamily::V: {
      const VTerms t = v_terms(p);
      return sq(p.x1) / p.z1 + t.L * sq(t.R) / (p.z1 * (1.0 - p.z2) * sq(p.x2));
    }
  }
  return 0.0;
}

// Whether the X22 direction of the touching point is degenerate for q.
inline bool needs_x22_bump(QFamily f, const HullPoint& p, double eq) {
  switch (f) {
    case QFamily::II: return p.X22 - sq(p.x2) / p.z2 <= eq;
    case QFamily::III: return p.X22 - sq(p.x2) / p.z1 <= eq;
    case QFamily::V: return v_terms(p).Q <= eq * eq;
  }
  return false;
}

}  // namespace detail

/// Value of the boundary function of a family.
inline double q_value(QFamily f, const HullPoint& p) {
  using detail::sq;
  switch (f) {
    case QFamily::II: return detail::schur_product_slack(p, p.z2);
    case QFamily::III: return detail::schur_product_slack(p, p.z1);
    case QFamily::V: {
      const auto t = detail::v_terms(p);
      return p.z1 * (1.0 - p.z2) * t.A * sq(p.x2) - t.L * sq(t.R);
    }
  }
  return 0.0;
}

/// Analytic gradient of q in coordinate order (x1, x2, X11, X12, X22, z1, z2).
inline std::array<double, HullPoint::kDim> q_gradient(QFamily f, const HullPoint& p) {
  switch (f) {
    case QFamily::II: return detail::schur_gradient(p, p.z2, 6);
    case QFamily::III: return detail::schur_gradient(p, p.z1, 5);
    case QFamily::V: return detail::v_gradient(p);
  }
  return {};
}

/// First-order expansion of the region's q at a point where q vanishes,
/// scaled to unit max-norm.
inline Cut taylor_cut(Region k, const HullPoint& touch, const Tolerances& tol = {}) {
  const auto fam = family_for(k);
  if (!fam) throw HullError(ErrorCode::UnexpectedRegion, "no boundary function for this region");
  const auto g = q_gradient(*fam, touch);
  double norm = 0.0;
  for (double v : g) norm = std::max(norm, std::abs(v));
  if (!(norm > tol.eq) || !std::isfinite(norm))
    throw HullError(ErrorCode::DegenerateGradient, "gradient of q vanishes at the touching point");
  const double qv = q_value(*fam, touch);
  if (!(std::abs(qv) <= tol.eq * norm * std::max(1.0, std::abs(touch.X11))))
    throw HullError(ErrorCode::PreconditionViolated, "q does not vanish at the touching point");
  Cut cut;
  cut.touch = touch;
  cut.region = k;
  const auto a = touch.as_array();
  long double c = 0.0L;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cut.coeffs[i] = g[i] / norm;
    c -= static_cast<long double>(cut.coeffs[i]) * a[i];
  }
  cut.constant = static_cast<double>(c);
  return cut;
}

/// Separation for a point of the relaxation: either inside, or a cut that the
/// point violates and every point of the hull satisfies.
inline SeparationResult separate(const HullPoint& p, const Tolerances& tol = {}) {
  if (!in_relaxation_Ctilde(p, tol))
    throw HullError(ErrorCode::InputOutsideCtilde, "separate expects a point of the relaxation");
  const MembershipReport rep = member_hull(p, tol);
  SeparationResult res;
  res.region = rep.region;
  if (rep.member) {
    res.inside = true;
    return res;
  }
  const auto fam = family_for(rep.region);
  if (!fam || rep.system == HullSystem::Face || rep.system == HullSystem::Edge)
    throw HullError(ErrorCode::UnexpectedRegion,
                    "relaxation point outside the hull in a cell without a boundary function");
  const char* named = *fam == QFamily::II    ? "II.product"
                      : *fam == QFamily::III ? "III.product"
                                             : "V.W-ineq";
  if (rep.violated.size() != 1 || rep.violated.front() != named)
    throw HullError(ErrorCode::UnexpectedRegion,
                    "relaxation point violates an inequality other than the boundary function");
  if (rep.oracle_fallback)
    throw HullError(ErrorCode::DegenerateGradient, "R8 point with a degenerate W formula");

  HullPoint touch = p;
  if (detail::needs_x22_bump(*fam, touch, tol.eq)) {
    double eps = std::max(1e-6, 1e-6 * std::abs(p.X22));
    bool ok = false;
    for (int i = 0; i <= 40 && !ok; ++i, eps *= 0.5) {
      HullPoint t = p;
      t.X22 += eps;
      if (in_region(t, rep.region, tol) && !detail::needs_x22_bump(*fam, t, tol.eq)) {
        touch = t;
        ok = true;
      }
    }
    if (!ok) throw HullError(ErrorCode::DegenerateGradient, "no admissible X22 perturbation");
  }
  touch.X11 = detail::q_root_x11(*fam, touch);
  res.cut = taylor_cut(rep.region, touch, tol);
  return res;
}

/// Six coordinates (xi, xj, Xii, Xij, Xjj, zi) of one pair in the n-variable set.
struct PsdBlock {
  double xi = 0, xj = 0, Xii = 0, Xij = 0, Xjj = 0, zi = 0;

  Sym3 matrix() const { return {zi, xi, xj, Xii, Xij, Xjj}; }
};

namespace detail {

// Column of the adjugate with the largest norm, normalised; spans the kernel
// of a rank-2 symmetric matrix.
inline std::array<double, 3> null_vector(const Sym3& m) {
  const std::array<std::array<double, 3>, 3> adj = {{
      {m.a22 * m.a33 - m.a23 * m.a23, m.a13 * m.a23 - m.a12 * m.a33, m.a12 * m.a23 - m.a13 * m.a22},
      {m.a13 * m.a23 - m.a12 * m.a33, m.a11 * m.a33 - m.a13 * m.a13, m.a12 * m.a13 - m.a11 * m.a23},
      {m.a12 * m.a23 - m.a13 * m.a22, m.a12 * m.a13 - m.a11 * m.a23, m.a11 * m.a22 - m.a12 * m.a12},
  }};
  std::size_t best = 0;
  double best_n = -1.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double n = std::hypot(adj[0][j], adj[1][j], adj[2][j]);
    if (n > best_n) {
      best_n = n;
      best = j;
    }
  }
  if (!(best_n > 0.0)) return {0.0, 0.0, 0.0};
  return {adj[0][best] / best_n, adj[1][best] / best_n, adj[2][best] / best_n};
}

inline double quad_form(const Sym3& m, const std::array<double, 3>& v) {
  return m.a11 * v[0] * v[0] + m.a22 * v[1] * v[1] + m.a33 * v[2] * v[2] +
         2.0 * (m.a12 * v[0] * v[1] + m.a13 * v[0] * v[2] + m.a23 * v[1] * v[2]);
}

}  // namespace detail

/// Supporting inequality v^T M v >= 0 of the PSD block at a singular point
/// with Xij zi > xi xj, Xjj xi > Xij xj, xi, xj > 0 and 0 < zi < 1. The cut is
/// written for the pair (1, 2): coordinates x1, x2, X11, X12, X22, z1, with a
/// zero coefficient on z2.
inline Cut psd_support_cut(const PsdBlock& b, const Tolerances& tol = {}) {
  const detail::Band band{tol.eq};
  if (!(band.gt(b.Xij * b.zi, b.xi * b.xj) && band.gt(b.Xjj * b.xi, b.Xij * b.xj) &&
        band.gt(b.xi, 0.0) && band.gt(b.xj, 0.0) && band.gt(b.zi, 0.0) && band.lt(b.zi, 1.0)))
    throw HullError(ErrorCode::StrictDomainViolated, "block outside the strict domain");
  const Sym3 m = b.matrix();
  const double scale = std::max({1.0, std::abs(b.zi), std::abs(b.Xii), std::abs(b.Xjj)});
  const auto v = detail::null_vector(m);
  if (!psd3_by_minors(m, tol.eq * scale) || v == std::array<double, 3>{0.0, 0.0, 0.0} ||
      std::abs(detail::quad_form(m, v)) > tol.eq * scale)
    throw HullError(ErrorCode::NotOnBoundary, "block is not a singular PSD matrix");

  Cut cut;
  cut.coeffs = {2.0 * v[0] * v[1], 2.0 * v[0] * v[2], v[1] * v[1], 2.0 * v[1] * v[2],
                v[2] * v[2],       v[0] * v[0],       0.0};
  cut.constant = 0.0;
  // Any zj with Xjj zj > xj^2 completes the block to a boundary point of the
  // hull; take the midpoint of the admissible interval.
  const double zj = 0.5 * (std::min(detail::sq(b.xj) / b.Xjj, 1.0) + 1.0);
  cut.touch = {b.xi, b.xj, b.Xii, b.Xij, b.Xjj, b.zi, zj};
  cut.region = classify(cut.touch, tol);
  return cut;
}

}  // namespace s2hull

#pragma once

// Closed-form membership in the closed convex hull of S2.
//
// Each cell of the partition carries its own inequality system. Points with
// X12 = 0 use the face system and points with z1 = 0 or z2 = 0 use the edge
// system; both are exact descriptions of the hull on those sets.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "s2hull/core.hpp"
#include "s2hull/oracle.hpp"
#include "s2hull/regions.hpp"

namespace s2hull {

/// Which inequality system decided a point.
enum class HullSystem { PartI, PartII, PartIII, PartIV, PartV, Face, Edge, Outside };

inline std::string_view to_string(HullSystem s) {
  switch (s) {
    case HullSystem::PartI: return "I";
    case HullSystem::PartII: return "II";
    case HullSystem::PartIII: return "III";
    case HullSystem::PartIV: return "IV";
    case HullSystem::PartV: return "V";
    case HullSystem::Face: return "F";
    case HullSystem::Edge: return "E";
    case HullSystem::Outside: return "C";
  }
  return "C";
}

struct MembershipReport {
  bool member = false;
  Region region = Region::NotCovered;
  HullSystem system = HullSystem::Outside;
  std::vector<std::string> violated;
  std::optional<ExtReal> W;       ///< only for the R8 system
  double worst_slack = std::numeric_limits<double>::infinity();
  bool oracle_fallback = false;   ///< R8 with a degenerate W formula
};

/// n = 1 hull: X11 z1 >= x1^2 with the box.
inline bool member_hull_n1(double x1, double X11, double z1, const Tolerances& tol = {}) {
  const double m = tol.mem;
  return X11 * z1 >= x1 * x1 - m && x1 >= -m && X11 >= -m && z1 >= -m && z1 <= 1.0 + m;
}

/// Symmetric 3x3 matrix stored by its upper triangle.
struct Sym3 {
  double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
};

/// PSD test through the leading entry and the Schur complement of a11,
/// written without division:
///   a11 a22 >= a12^2,  a11 a33 >= a13^2,
///   (a11 a22 - a12^2)(a11 a33 - a13^2) >= (a11 a23 - a12 a13)^2.
/// With a11 = 1 these are X11 >= x1^2, X22 >= x2^2 and the 2x2 Schur
/// determinant. A zero a11 requires a zero first row and a PSD trailing block.
inline bool psd3_by_minors(const Sym3& m, double tol = 0.0) {
  using detail::sq;
  if (m.a11 < -tol) return false;
  if (m.a11 <= tol) {
    if (std::abs(m.a12) > tol || std::abs(m.a13) > tol) return false;
    return m.a22 >= -tol && m.a33 >= -tol && m.a22 * m.a33 >= sq(m.a23) - tol;
  }
  const double s22 = m.a11 * m.a22 - sq(m.a12);
  const double s33 = m.a11 * m.a33 - sq(m.a13);
  const double s23 = m.a11 * m.a23 - m.a12 * m.a13;
  return s22 >= -tol && s33 >= -tol && s22 * s33 >= sq(s23) - tol;
}

namespace detail {

class Checker {
 public:
  explicit Checker(const Tolerances& tol) : tol_(tol) {}

  void ge(const std::string& name, double lhs, const ExtReal& rhs) {
    record(name, rhs.is_infinite() ? -std::numeric_limits<double>::infinity()
                                   : lhs - rhs.value());
  }

  void record(const std::string& name, double slack, bool ok) {
    worst_ = std::min(worst_, slack);
    if (!ok) violated_.push_back(name);
  }
  void record(const std::string& name, double slack) { record(name, slack, slack >= -tol_.mem); }

  void fill(MembershipReport& r) const {
    r.violated = violated_;
    r.member = violated_.empty();
    r.worst_slack = worst_;
  }

 private:
  Tolerances tol_;
  std::vector<std::string> violated_;
  double worst_ = std::numeric_limits<double>::infinity();
};

// Product inequality (X11 - x1^2/s)(X22 - x2^2/s) >= (X12 - x1 x2/s)^2.
inline double schur_product_slack(const HullPoint& p, double s) {
  const double a = p.X11 - sq(p.x1) / s;
  const double b = p.X22 - sq(p.x2) / s;
  const double c = p.X12 - p.x1 * p.x2 / s;
  return a * b - sq(c);
}

inline double compute_W(const HullPoint& p) {
  const double L = p.z1 + p.z2 - 1.0;
  const double Q = std::max((p.X22 * p.z2 - sq(p.x2)) * (1.0 - p.z1) * L, 0.0);
  return L - std::sqrt(Q) / p.x2;
}

// Sub-cell of the X12 = 0 face inherited from the adjacent positive-X12 cells.
enum class FaceCell { Simple, PsdBlock, WBranch };

inline FaceCell face_cell(const HullPoint& p, const Tolerances& tol) {
  const Band b{tol.eq};
  const double L = p.z1 + p.z2 - 1.0;
  if (!(b.gt(L, 0.0) && b.gt(p.x1, 0.0) && b.gt(p.x2, 0.0))) return FaceCell::Simple;
  const double s2 = p.X22 * p.z2 - sq(p.x2);
  if (b.ge((1.0 - p.z1) * s2, sq(p.x2) * L)) return FaceCell::Simple;
  if (b.gt(sq(p.x2), p.X22 * (1.0 - p.z1)) && b.gt(s2, 0.0)) return FaceCell::PsdBlock;
  return FaceCell::WBranch;
}

inline bool on_edge(const HullPoint& p, const Tolerances& tol) {
  return p.z1 <= tol.eq || p.z2 <= tol.eq;
}

inline bool on_face(const HullPoint& p, const Tolerances& tol) { return p.X12 <= tol.eq; }

}  // namespace detail

/// Hull system used for a classified point (before any check is run).
inline HullSystem hull_system_for(const HullPoint& p, Region r, const Tolerances& tol = {}) {
  if (detail::on_edge(p, tol)) return HullSystem::Edge;
  if (detail::on_face(p, tol)) return HullSystem::Face;
  switch (r) {
    case Region::R1:
    case Region::R2:
    case Region::R6: return HullSystem::PartI;
    case Region::R3:
    case Region::R4: return HullSystem::PartII;
    case Region::R5: return HullSystem::PartIII;
    case Region::R7: return HullSystem::PartIV;
    case Region::R8: return HullSystem::PartV;
    case Region::NotCovered: return HullSystem::Outside;
  }
  return HullSystem::Outside;
}

/// Runs one inequality system on a point regardless of its cell. The
/// report's region is left as NotCovered.
inline MembershipReport evaluate_system(const HullPoint& p, HullSystem system,
                                        const Tolerances& tol = {},
                                        const OracleOptions& fallback = {}) {
  using detail::sq;
  MembershipReport rep;
  rep.system = system;
  detail::Checker chk(tol);
  const double x1 = p.x1, x2 = p.x2, X11 = p.X11, X12 = p.X12, X22 = p.X22, z1 = p.z1,
               z2 = p.z2;
  const double L = z1 + z2 - 1.0;

  switch (rep.system) {
    case HullSystem::Edge: {
      const ExtReal p1 = persp_sq(x1, std::max(z1, 0.0), tol);
      const ExtReal p2 = persp_sq(x2, std::max(z2, 0.0), tol);
      chk.ge("E.persp1", X11, p1);
      chk.ge("E.persp2", X22, p2);
      // Recession directions of the zero-weight pieces contribute a rank-one
      // PSD block on top of the remaining perspective terms.
      if (p1.is_finite() && p2.is_finite())
        chk.ge("E.product", (X11 - p1.value()) * (X22 - p2.value()), sq(X12));
      break;
    }
    case HullSystem::Face: {
      chk.ge("F.persp1", X11, sq(x1) / z1);
      chk.ge("F.persp2", X22, sq(x2) / z2);
      switch (detail::face_cell(p, tol)) {
        case detail::FaceCell::Simple: break;
        case detail::FaceCell::PsdBlock:
          chk.ge("F.psd", (X11 - sq(x1)) * (X22 - sq(x2)), sq(x1 * x2));
          break;
        case detail::FaceCell::WBranch:
          chk.ge("F.W-ineq", (1.0 - z2) * (z1 * X11 - sq(x1)), L * sq(x1));
          break;
      }
      break;
    }
    case HullSystem::PartI:
      chk.ge("I.persp1", X11, sq(x1) / z1);
      chk.ge("I.persp2", X22, sq(x2) / z2);
      break;
    case HullSystem::PartII:
      chk.ge("II.persp2", X22, sq(x2) / z2);
      chk.ge("II.product", detail::schur_product_slack(p, z2), 0.0);
      break;
    case HullSystem::PartIII:
      chk.ge("III.persp2", X22, sq(x2) / z2);
      chk.ge("III.product", detail::schur_product_slack(p, z1), 0.0);
      break;
    case HullSystem::PartIV:
      chk.ge("IV.diag1", X11, sq(x1));
      chk.ge("IV.persp2", X22, sq(x2) / z2);
      chk.ge("IV.psd", (X11 - sq(x1)) * (X22 - sq(x2)), sq(X12 - x1 * x2));
      break;
    case HullSystem::PartV: {
      chk.ge("V.persp1", X11, sq(x1) / z1);
      chk.ge("V.persp2", X22, sq(x2) / z2);
      const bool degenerate = x2 <= tol.eq || z2 >= 1.0 - tol.eq;
      const double W = degenerate ? 0.0 : detail::compute_W(p);
      rep.W = W;
      if (degenerate || W <= tol.eq) {
        rep.oracle_fallback = true;
        const OracleResult o = oracle_member(p, tol, fallback);
        const double gap = o.witness.objective.is_finite()
                               ? X11 - o.witness.objective.value()
                               : -std::numeric_limits<double>::infinity();
        chk.record("V.W-ineq", gap, o.member);
        break;
      }
      chk.ge("V.W-ineq", z1 * (1.0 - z2) * (X11 - sq(x1) / z1) * sq(x2),
             L * sq(X12 * z1 * z2 / W - x1 * x2));
      break;
    }
    case HullSystem::Outside:
      chk.ge("C.persp1", X11, persp_sq(x1, z1, tol));
      chk.ge("C.persp2", X22, persp_sq(x2, z2, tol));
      chk.ge("C.covered", 0.0, ExtReal::infinity());
      break;
  }
  chk.fill(rep);
  return rep;
}

/// Closed-form membership with the named inequalities that fail.
inline MembershipReport member_hull(const HullPoint& p, const Tolerances& tol = {},
                                    const OracleOptions& fallback = {}) {
  const Region r = classify(p, tol);
  MembershipReport rep = evaluate_system(p, hull_system_for(p, r, tol), tol, fallback);
  rep.region = r;
  return rep;
}

/// Smallest X11 accepted by one inequality system, the other six
/// coordinates fixed; +inf if none is.
inline ExtReal x11_threshold_for(const HullPoint& p, HullSystem sys, const Tolerances& tol = {}) {
  using detail::sq;
  const double x1 = p.x1, x2 = p.x2, X12 = p.X12, X22 = p.X22, z1 = p.z1, z2 = p.z2;
  const double L = z1 + z2 - 1.0;
  const double m = tol.mem;
  auto need_persp2 = [&](double s) { return X22 >= sq(x2) / s - m; };
  // X11 bound from (X11 - a0) * b >= c^2 with b the X22 factor.
  auto schur = [&](double a0, double b, double c) -> ExtReal {
    if (b > 0.0) return a0 + sq(c) / b;
    if (sq(c) <= m && b >= -m) return a0;
    return ExtReal::infinity();
  };
  switch (sys) {
    case HullSystem::Edge: {
      const ExtReal p1 = persp_sq(x1, std::max(z1, 0.0), tol);
      const ExtReal p2 = persp_sq(x2, std::max(z2, 0.0), tol);
      if (p1.is_infinite() || !detail::at_least(X22, p2, m)) return ExtReal::infinity();
      const ExtReal s = schur(p1.value(), X22 - p2.value(), X12);
      return s.is_finite() ? ExtReal(std::max(s.value(), p1.value())) : s;
    }
    case HullSystem::Face: {
      if (!need_persp2(z2)) return ExtReal::infinity();
      const double base = sq(x1) / z1;
      switch (detail::face_cell(p, tol)) {
        case detail::FaceCell::Simple: return base;
        case detail::FaceCell::PsdBlock: {
          const ExtReal s = schur(sq(x1), X22 - sq(x2), x1 * x2);
          return s.is_finite() ? ExtReal(std::max(base, s.value())) : s;
        }
        case detail::FaceCell::WBranch:
          if (1.0 - z2 <= 0.0) return ExtReal::infinity();
          return std::max(base, sq(x1) / (1.0 - z2));
      }
      return base;
    }
    case HullSystem::PartI:
      if (!need_persp2(z2)) return ExtReal::infinity();
      return sq(x1) / z1;
    case HullSystem::PartII:
      if (!need_persp2(z2)) return ExtReal::infinity();
      return schur(sq(x1) / z2, X22 - sq(x2) / z2, X12 - x1 * x2 / z2);
    case HullSystem::PartIII:
      if (!need_persp2(z2)) return ExtReal::infinity();
      return schur(sq(x1) / z1, X22 - sq(x2) / z1, X12 - x1 * x2 / z1);
    case HullSystem::PartIV: {
      if (!need_persp2(z2)) return ExtReal::infinity();
      const ExtReal s = schur(sq(x1), X22 - sq(x2), X12 - x1 * x2);
      return s.is_finite() ? ExtReal(std::max(sq(x1), s.value())) : s;
    }
    case HullSystem::PartV: {
      if (!need_persp2(z2)) return ExtReal::infinity();
      if (x2 <= tol.eq || z2 >= 1.0 - tol.eq) break;
      const double W = detail::compute_W(p);
      if (W <= tol.eq) break;
      return sq(x1) / z1 + L * sq(X12 * z1 * z2 / W - x1 * x2) / (z1 * (1.0 - z2) * sq(x2));
    }
    case HullSystem::Outside: return ExtReal::infinity();
  }
  throw HullError(ErrorCode::PreconditionViolated, "x11_threshold: degenerate R8 formula");
}

/// Smallest X11 at which the point enters the hull; +inf if no X11 does.
inline ExtReal x11_threshold(const HullPoint& p, const Tolerances& tol = {}) {
  return x11_threshold_for(p, hull_system_for(p, classify(p, tol), tol), tol);
}

/// Perspective relaxation: perspective inequalities plus X - x x^T PSD.
inline bool persp_relaxation_member(const HullPoint& p, const Tolerances& tol = {}) {
  using detail::sq;
  validate_domain(p, tol);
  const double m = tol.mem;
  if (!detail::at_least(p.X11, persp_sq(p.x1, p.z1, tol), m)) return false;
  if (!detail::at_least(p.X22, persp_sq(p.x2, p.z2, tol), m)) return false;
  const double a = p.X11 - sq(p.x1), b = p.X22 - sq(p.x2);
  return a >= -m && b >= -m && a * b >= sq(p.X12 - p.x1 * p.x2) - m;
}

/// PSD condition on [[z1 + z2, x1, x2], [x1, X11, X12], [x2, X12, X22]].
inline bool rankone_member(const HullPoint& p, const Tolerances& tol = {}) {
  validate_domain(p, tol);
  return psd3_by_minors({p.z1 + p.z2, p.x1, p.x2, p.X11, p.X12, p.X22}, tol.mem);
}

}  // namespace s2hull

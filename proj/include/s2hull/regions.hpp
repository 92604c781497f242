#pragma once

// Partition of the outer relaxation into eight cells, each carrying its own
// closed-form hull description.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "s2hull/core.hpp"

namespace s2hull {

enum class Region { R1 = 1, R2, R3, R4, R5, R6, R7, R8, NotCovered };

inline constexpr std::array<Region, 8> kRegions = {Region::R1, Region::R2, Region::R3,
                                                   Region::R4, Region::R5, Region::R6,
                                                   Region::R7, Region::R8};

inline std::string_view to_string(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::R4: return "R4";
    case Region::R5: return "R5";
    case Region::R6: return "R6";
    case Region::R7: return "R7";
    case Region::R8: return "R8";
    case Region::NotCovered: return "NotCovered";
  }
  return "NotCovered";
}

inline std::optional<Region> region_from_string(std::string_view s) {
  for (Region r : kRegions)
    if (to_string(r) == s) return r;
  if (s == "NotCovered") return Region::NotCovered;
  return std::nullopt;
}

inline std::size_t index_of(Region r) { return static_cast<std::size_t>(r) - 1; }

namespace detail {

// Left and right sides of the quadratic/quartic inequalities cutting U2.
// r6_* : (1-z1)(z1+z2-1) x1^2 (X22 z2 - x2^2)  >=  (X12 z1 z2 - x1 x2 (z1+z2-1))^2
inline double r6_lhs(const HullPoint& p) {
  const double L = p.z1 + p.z2 - 1.0;
  return (1.0 - p.z1) * L * sq(p.x1) * (p.X22 * p.z2 - sq(p.x2));
}
inline double r6_rhs(const HullPoint& p) {
  const double L = p.z1 + p.z2 - 1.0;
  return sq(p.X12 * p.z1 * p.z2 - p.x1 * p.x2 * L);
}

// r7_* : x1^2 (x2^2 - X22(1-z1)) (X22 z2 - x2^2)
//          >  2 x1 x2 X12 z1 (X22 z2 - x2^2) - X12^2 (X22 (z1+z2-1) + x2^2 (1 - 2 z1 - z2 (1-z1)))
inline double r7_lhs(const HullPoint& p) {
  return sq(p.x1) * (sq(p.x2) - p.X22 * (1.0 - p.z1)) * (p.X22 * p.z2 - sq(p.x2));
}
inline double r7_rhs(const HullPoint& p) {
  const double L = p.z1 + p.z2 - 1.0;
  return 2.0 * p.x1 * p.x2 * p.X12 * p.z1 * (p.X22 * p.z2 - sq(p.x2)) -
         sq(p.X12) * (p.X22 * L + sq(p.x2) * (1.0 - 2.0 * p.z1 - p.z2 * (1.0 - p.z1)));
}

// r23_* : x1^2 (z2 - z1)(X22 z2 - x2^2)  vs  z1 (X12 z2 - x1 x2)^2
inline double r23_lhs(const HullPoint& p) {
  return sq(p.x1) * (p.z2 - p.z1) * (p.X22 * p.z2 - sq(p.x2));
}
inline double r23_rhs(const HullPoint& p) { return p.z1 * sq(p.X12 * p.z2 - p.x1 * p.x2); }

inline bool positive_z(const HullPoint& p, const Band& b) {
  return b.gt(p.z1, 0.0) && b.gt(p.z2, 0.0);
}

}  // namespace detail

/// Region U2: X12 z1 z2 < x1 x2 (z1 + z2 - 1), X12 > 0, z > 0.
inline bool in_U2(const HullPoint& p, const Tolerances& tol = {}) {
  const detail::Band b{tol.eq};
  return b.lt(p.X12 * p.z1 * p.z2, p.x1 * p.x2 * (p.z1 + p.z2 - 1.0)) && b.gt(p.X12, 0.0) &&
         detail::positive_z(p, b);
}

/// Membership in a single cell, evaluated on its own (no short-circuit
/// against lower-indexed cells except R8, which is a set difference).
///
/// Points with z1 = 0 or z2 = 0 are assigned to R1 together with the
/// X12 = 0 face; all other cells additionally require z1, z2 > 0.
inline bool in_region(const HullPoint& p, Region r, const Tolerances& tol = {}) {
  using detail::sq;
  const detail::Band b{tol.eq};
  const double x1x2 = p.x1 * p.x2;
  const double L = p.z1 + p.z2 - 1.0;
  const bool X12pos = b.gt(p.X12, 0.0);
  const bool zpos = detail::positive_z(p, b);
  switch (r) {
    case Region::R1: {
      if (!X12pos || !zpos) return true;
      return b.le(x1x2 * L, p.X12 * p.z1 * p.z2) &&
             b.le(p.X12 * std::max(p.z1, p.z2), x1x2);
    }
    case Region::R2:
      return X12pos && zpos && b.le(p.z1, p.z2) && b.gt(p.X12 * p.z2, x1x2) &&
             b.le(p.X12 * p.z1, x1x2) && b.ge(detail::r23_lhs(p), detail::r23_rhs(p));
    case Region::R3:
      return X12pos && zpos && b.lt(p.z1, p.z2) && b.gt(p.X12 * p.x2, p.X22 * p.x1) &&
             b.gt(detail::r23_rhs(p), detail::r23_lhs(p)) && b.ge(p.x1, 0.0);
    case Region::R4:
      return X12pos && zpos && b.le(p.z2, p.z1) && b.gt(p.X12 * p.x2, p.X22 * p.x1) &&
             b.ge(p.x1, 0.0);
    case Region::R5:
      return X12pos && zpos && b.gt(p.X12 * p.z1, x1x2) && b.ge(p.X22 * p.x1, p.X12 * p.x2) &&
             b.ge(p.x2, 0.0);
    case Region::R6:
      return in_U2(p, tol) && b.ge(detail::r6_lhs(p), detail::r6_rhs(p));
    case Region::R7:
      return in_U2(p, tol) && b.gt(detail::r7_lhs(p), detail::r7_rhs(p));
    case Region::R8:
      return in_U2(p, tol) && !in_region(p, Region::R6, tol) && !in_region(p, Region::R7, tol);
    case Region::NotCovered:
      return false;
  }
  return false;
}

/// First matching cell in index order, NotCovered if none.
inline Region classify(const HullPoint& p, const Tolerances& tol = {}) {
  validate_domain(p, tol);
  for (Region r : kRegions)
    if (in_region(p, r, tol)) return r;
  return Region::NotCovered;
}

struct AuditViolation {
  std::size_t index;             ///< position in the input sample list
  std::vector<Region> matched;   ///< empty for a coverage failure
};

struct AuditReport {
  std::array<std::size_t, 9> counts{};  ///< per R1..R8 then NotCovered, by classify()
  std::size_t outside_cbar = 0;         ///< samples skipped because they are not in the outer set
  std::vector<AuditViolation> violations;

  std::size_t total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }
};

/// Evaluates all eight cell predicates independently on every sample that
/// lies in the outer relaxation and flags zero or multiple matches.
inline AuditReport region_partition_audit(std::span<const HullPoint> samples,
                                          const Tolerances& tol = {}) {
  AuditReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const HullPoint& p = samples[i];
    validate_domain(p, tol);
    if (!in_relaxation_Cbar(p, tol)) {
      ++report.outside_cbar;
      continue;
    }
    std::vector<Region> matched;
    for (Region r : kRegions)
      if (in_region(p, r, tol)) matched.push_back(r);
    report.counts[matched.empty() ? 8 : index_of(matched.front())]++;
    if (matched.size() != 1) report.violations.push_back({i, std::move(matched)});
  }
  return report;
}

}  // namespace s2hull

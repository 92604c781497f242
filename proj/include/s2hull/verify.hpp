#pragma once

// Randomised property suites shared by the command-line tool and the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "s2hull/hull.hpp"
#include "s2hull/oracle.hpp"
#include "s2hull/regions.hpp"
#include "s2hull/sampling.hpp"
#include "s2hull/separation.hpp"

namespace s2hull {

/// A point of the relaxation strictly outside the hull, in one of the cells
/// that carry a boundary function: X11 is placed inside the gap between the
/// relaxation floor and the hull threshold, away from both ends.
inline std::optional<HullPoint> try_make_nonmember(Rng& rng, const Tolerances& tol = {}) {
  HullPoint p = sample_Cbar_point(rng);
  const Region r = classify(p, tol);
  if (!family_for(r)) return std::nullopt;
  if (r == Region::R8 && (p.z2 >= 1.0 - tol.eq || detail::compute_W(p) <= tol.eq))
    return std::nullopt;
  const ExtReal T = x11_threshold(p, tol);
  const ExtReal F = ctilde_x11_floor(p, tol);
  if (T.is_infinite() || F.is_infinite()) return std::nullopt;
  const double t = T.value(), f = F.value();
  if (t - f < 1e-3 * (1.0 + t)) return std::nullopt;
  p.X11 = f + (t - f) * rng.uniform(0.05, 0.95);
  return p;
}

inline HullPoint make_nonmember(Rng& rng, const Tolerances& tol = {}) {
  for (;;)
    if (auto p = try_make_nonmember(rng, tol)) return *p;
}

/// A point of the relaxation whose X11 sits at relative distance at least
/// `margin` from the hull threshold, on a random side.
inline std::optional<HullPoint> try_make_margin_point(Rng& rng, double margin,
                                                      const Tolerances& tol = {}) {
  HullPoint p = sample_Cbar_point(rng);
  const Region r = classify(p, tol);
  if (r == Region::R8 && (p.z2 >= 1.0 - tol.eq || detail::compute_W(p) <= tol.eq))
    return std::nullopt;
  const ExtReal T = x11_threshold(p, tol);
  const ExtReal F = ctilde_x11_floor(p, tol);
  if (T.is_infinite() || F.is_infinite()) return std::nullopt;
  const double t = T.value();
  // log-uniform offset in [margin, 1] relative to (1 + t)
  const double rel = margin * std::pow(1.0 / margin, rng.uniform());
  const bool above = rng.chance(0.5);
  p.X11 = above ? t + rel * (1.0 + t) : t - rel * (1.0 + t);
  if (!(p.X11 >= F.value() + margin * (1.0 + t))) return std::nullopt;
  return p;
}

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<HullPoint> offending;
  std::string detail;

  SuiteReport(std::string suite, std::size_t n) : name(std::move(suite)), trials(n) {}

  bool passed() const { return failures == 0; }

  void fail(const HullPoint& p, std::string why) {
    if (failures++ == 0) {
      offending = p;
      detail = std::move(why);
    }
  }
};

/// Every sample of the outer set matches exactly one cell.
inline SuiteReport verify_partition(std::size_t trials, std::uint64_t seed,
                                    const Tolerances& tol = {}) {
  SuiteReport rep{"partition", trials};
  const auto samples = sample_Cbar({seed, trials});
  const AuditReport audit = region_partition_audit(samples, tol);
  for (const auto& v : audit.violations)
    rep.fail(samples[v.index], v.matched.empty() ? "no cell matched" : "several cells matched");
  if (audit.outside_cbar) rep.fail(samples.front(), "sampler left the outer set");
  return rep;
}

/// Random convex combinations of S2 points are members.
inline SuiteReport verify_hull(std::size_t trials, std::uint64_t seed,
                               const Tolerances& tol = {}) {
  SuiteReport rep{"hull", trials};
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const HullPoint p = sample_hull_point(rng, 1 + rng.index(8));
    const MembershipReport m = member_hull(p, tol);
    rep.worst_slack = std::min(rep.worst_slack, m.worst_slack);
    if (!m.member) rep.fail(p, "convex combination rejected: " + m.violated.front());
  }
  return rep;
}

/// Cuts for constructed non-members: violated at the query, tight at the
/// touching point, valid on S2 samples and on convex combinations.
inline SuiteReport verify_cuts(std::size_t trials, std::uint64_t seed,
                               const Tolerances& tol = {}, std::size_t audit_points = 10000) {
  SuiteReport rep{"cuts", trials};
  Rng rng(seed);
  const auto s2 = sample_S2({seed ^ 0x9e3779b97f4a7c15ULL, audit_points});
  const auto hull = sample_hull({seed ^ 0x3c6ef372fe94f82bULL, audit_points}, 8);
  for (std::size_t i = 0; i < trials; ++i) {
    const HullPoint q = make_nonmember(rng, tol);
    SeparationResult res;
    try {
      res = separate(q, tol);
    } catch (const HullError& e) {
      rep.fail(q, e.what());
      continue;
    }
    if (res.inside || !res.cut) {
      rep.fail(q, "non-member reported inside");
      continue;
    }
    const Cut& c = *res.cut;
    if (!(c.eval(q) < -tol.eq)) rep.fail(q, "cut not violated at the query point");
    if (!(std::abs(c.eval(c.touch)) <= tol.eq)) rep.fail(q, "cut not tight at the touching point");
    if (!member_hull(c.touch, tol).member) rep.fail(q, "touching point outside the hull");
    for (const auto& s : s2) {
      const double h = c.eval(s);
      rep.worst_slack = std::min(rep.worst_slack, h);
      if (h < -tol.mem) {
        rep.fail(q, "cut cuts off a point of S2");
        break;
      }
    }
    for (const auto& s : hull) {
      const double h = c.eval(s);
      rep.worst_slack = std::min(rep.worst_slack, h);
      if (h < -tol.mem) {
        rep.fail(q, "cut cuts off a convex combination");
        break;
      }
    }
  }
  return rep;
}

/// Oracle and closed form agree away from the boundary.
inline SuiteReport verify_oracle(std::size_t trials, std::uint64_t seed,
                                 const Tolerances& tol = {}, double margin = 1e-4) {
  SuiteReport rep{"oracle", trials};
  Rng rng(seed);
  for (std::size_t i = 0; i < trials;) {
    const auto p = try_make_margin_point(rng, margin, tol);
    if (!p) continue;
    ++i;
    const MembershipReport m = member_hull(*p, tol);
    const OracleResult o = oracle_member(*p, tol);
    const double gap = o.witness.objective.is_finite()
                           ? p->X11 - o.witness.objective.value()
                           : -std::numeric_limits<double>::infinity();
    rep.worst_slack = std::min(rep.worst_slack, std::abs(gap));
    if (m.member != o.member)
      rep.fail(*p, std::string("closed form says ") + (m.member ? "member" : "non-member") +
                       ", oracle objective " + o.witness.objective.to_string());
  }
  return rep;
}

}  // namespace s2hull

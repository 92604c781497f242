// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "s2hull/s2hull.hpp"
#include "test_oracles.hpp"

using namespace s2hull;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.ok = false;
    o.detail += " (over time budget " + std::to_string(budget_s) + " s)";
  }
  if (!o.ok) ++failures;
  std::printf("%s [%d] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string point_str(const HullPoint& p) {
  return fmt("x=(%.17g, %.17g) ", p.x1, p.x2) + fmt("X=(%.17g, %.17g, %.17g) ", p.X11, p.X12, p.X22) +
         fmt("z=(%.17g, %.17g)", p.z1, p.z2);
}

}  // namespace

int main() {
  const Tolerances tol;

  criterion(1, "convex combinations of S2 are members", 5.0, [&] {
    const auto pts = sample_hull({20240101, 10000}, 8);
    std::size_t bad = 0;
    double worst = INFINITY;
    for (const auto& p : pts) {
      const MembershipReport m = member_hull(p, tol);
      worst = std::min(worst, m.worst_slack);
      if (!m.member) ++bad;
    }
    return Outcome{bad == 0 && worst >= -1e-8,
                   fmt("%.0f rejected of 10000, worst slack %.3g", double(bad), worst)};
  });

  criterion(2, "partition audit", 2.0, [&] {
    const auto pts = sample_Cbar({20240102, 10000});
    const AuditReport a = region_partition_audit(pts, tol);
    std::size_t multi = 0, none = 0;
    for (const auto& v : a.violations) (v.matched.empty() ? none : multi)++;
    std::string counts;
    for (std::size_t i = 0; i < 8; ++i) counts += " R" + std::to_string(i + 1) + "=" + std::to_string(a.counts[i]);
    return Outcome{multi == 0 && none == 0 && a.outside_cbar == 0 && a.total() == pts.size(),
                   fmt("%.0f multi, %.0f none, %.0f outside;", double(multi), double(none),
                       double(a.outside_cbar)) +
                       counts};
  });

  criterion(3, "closed form agrees with oracle at margin 1e-4", 60.0, [&] {
    Rng rng(20240103);
    std::size_t n = 0, bad = 0;
    std::string first;
    while (n < 1000) {
      const auto p = try_make_margin_point(rng, 1e-4, tol);
      if (!p) continue;
      ++n;
      const MembershipReport m = member_hull(*p, tol);
      const OracleResult o = oracle_member(*p, tol);
      if (m.member != o.member) {
        if (bad++ == 0)
          first = " first: " + point_str(*p) + " threshold " + x11_threshold(*p, tol).to_string() +
                  " oracle " + o.witness.objective.to_string() +
                  fmt(" worst slack %.3g", m.worst_slack);
      }
    }
    return Outcome{bad == 0, fmt("%.0f disagreements of 1000", double(bad)) + first};
  });

  criterion(4, "separation soundness", 60.0, [&] {
    Rng rng(20240104);
    const auto s2 = sample_S2({20240105, 10000});
    double worst_q = -INFINITY, worst_s = INFINITY, worst_t = 0;
    std::size_t bad_member = 0, bad_oracle = 0, errors = 0;
    std::array<std::size_t, 3> fam{};
    for (int i = 0; i < 1000; ++i) {
      const HullPoint q = make_nonmember(rng, tol);
      SeparationResult r;
      try {
        r = separate(q, tol);
      } catch (const HullError&) {
        ++errors;
        continue;
      }
      if (!r.cut) {
        ++errors;
        continue;
      }
      ++fam[static_cast<int>(*family_for(r.region))];
      const Cut& c = *r.cut;
      worst_q = std::max(worst_q, c.eval(q));
      worst_t = std::max(worst_t, std::abs(c.eval(c.touch)));
      for (const auto& s : s2) worst_s = std::min(worst_s, c.eval(s));
      if (!member_hull(c.touch, tol).member) ++bad_member;
      if (!oracle_member(c.touch, tol).member) ++bad_oracle;
    }
    const bool ok = errors == 0 && worst_q < -1e-9 && worst_s >= -1e-8 && worst_t <= 1e-9 &&
                    bad_member == 0 && bad_oracle == 0;
    return Outcome{ok, fmt("max h(query) %.3g, min h(S2) %.3g, max |h(touch)| %.3g", worst_q,
                           worst_s, worst_t) +
                           fmt("; touch rejected %.0f (closed form) %.0f (oracle)",
                               double(bad_member), double(bad_oracle)) +
                           fmt("; errors %.0f", double(errors)) +
                           fmt("; families II=%.0f III=%.0f V=%.0f", double(fam[0]),
                               double(fam[1]), double(fam[2]))};
  });

  criterion(5, "worked non-member", 0.0, [&] {
    const HullPoint p{0.1, 1, 1, 1.2, 2.5, 0.5, 0.5};
    const Region r = classify(p, tol);
    const bool persp = persp_relaxation_member(p, tol), r1 = rankone_member(p, tol);
    const bool hull = member_hull(p, tol).member;
    const auto sep = separate(p, tol);
    const double touch = sep.cut ? sep.cut->touch.X11 : NAN;
    const OracleResult o = oracle_member(p, tol);
    const double f = o.witness.objective.value();
    const bool ok = r == Region::R4 && persp && r1 && !hull && std::abs(touch - 2.02) <= 1e-9 &&
                    std::abs(f - 2.02) <= 1e-3 && !o.member;
    return Outcome{ok, std::string("region ") + std::string(to_string(r)) +
                           fmt(", persp %.0f rank-one %.0f hull %.0f", persp, r1, hull) +
                           fmt(", touch X11 %.12f, oracle %.9f", touch, f)};
  });

  criterion(6, "analytic gradients vs central differences", 0.0, [&] {
    std::array<double, 3> worst{};
    std::array<std::size_t, 3> count{};
    Rng rng(20240106);
    std::size_t guard = 0;
    while ((count[0] < 1000 || count[1] < 1000 || count[2] < 1000) && ++guard < 2000000) {
      const HullPoint q = make_nonmember(rng, tol);
      const QFamily fam = *family_for(classify(q, tol));
      const int k = static_cast<int>(fam);
      if (count[k] >= 1000) continue;
      const auto res = separate(q, tol);
      const HullPoint t = res.cut->touch;
      // stay clear of the square-root singularity of the W-form
      if (t.X22 * t.z2 - t.x2 * t.x2 < 1e-3 * std::max(1.0, t.X22) || 1.0 - t.z1 < 1e-3)
        continue;
      ++count[k];
      const auto g = q_gradient(fam, t);
      const auto a = t.as_array();
      double err = 0;
      for (std::size_t i = 0; i < 7; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(a[i]));
        auto up = a, dn = a;
        up[i] += h;
        dn[i] -= h;
        const double fd =
            (q_value(fam, HullPoint::from_array(up)) - q_value(fam, HullPoint::from_array(dn))) /
            (2 * h);
        err = std::max(err, std::abs(fd - g[i]));
      }
      worst[k] = std::max(worst[k], err / reference::max_abs(g));
    }
    const bool ok = count[0] == 1000 && count[1] == 1000 && count[2] == 1000 &&
                    worst[0] <= 1e-5 && worst[1] <= 1e-5 && worst[2] <= 1e-5;
    return Outcome{ok, fmt("max relative error II %.3g, III %.3g, V %.3g", worst[0], worst[1],
                           worst[2])};
  });

  criterion(7, "PSD minors vs spectrum", 0.0, [&] {
    Rng rng(20240107);
    std::size_t compared = 0, bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const Sym3 m{1.0, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0, 4),
                   rng.uniform(-3, 3), rng.uniform(0, 4)};
      const auto ev = reference::eigenvalues(m);
      if (std::abs(ev[0]) <= tol.eq) continue;
      ++compared;
      if (psd3_by_minors(m) != (ev[0] > 0)) ++bad;
    }
    return Outcome{bad == 0, fmt("%.0f disagreements of %.0f compared", double(bad),
                                 double(compared))};
  });

  criterion(8, "PSD support cuts", 0.0, [&] {
    Rng rng(20240108);
    const auto s2 = sample_S2({20240109, 10000});
    double worst = INFINITY, tight = 0;
    int made = 0;
    while (made < 100) {
      const auto b = reference::random_gram_block(rng);
      if (!b) continue;
      ++made;
      const Cut c = psd_support_cut(*b, tol);
      tight = std::max(tight, std::abs(c.eval(c.touch)));
      for (const auto& s : s2) worst = std::min(worst, c.eval(s));
    }
    return Outcome{worst >= -1e-8 && tight <= 1e-9,
                   fmt("min h(S2) %.3g, max |v'Mv| %.3g over 100 blocks", worst, tight)};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

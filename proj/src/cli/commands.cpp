#include "cli/commands.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "s2hull/s2hull.hpp"

namespace s2hull::cli {
namespace {

using io::json;
using PointFn = std::function<void(const HullPoint&, std::size_t)>;

struct Context {
  Tolerances tol;
  bool pretty = false;
  std::string input = "-";
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  void emit(const json& j) const { *out << (pretty ? j.dump(2) : j.dump()) << '\n'; }
};

// Streams non-blank lines through `fn`. Malformed records stop the run with
// exit code 2; HullErrors escaping `fn` are reported the same way.
int for_each_point(const Context& c, const PointFn& fn) {
  std::ifstream file;
  std::istream* in = c.in;
  if (c.input != "-") {
    file.open(c.input);
    if (!file) {
      *c.err << "error: cannot open " << c.input << '\n';
      return kExitUsage;
    }
    in = &file;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    HullPoint p;
    try {
      p = io::point_from_string(line, c.tol);
      fn(p, line_no);
    } catch (const io::ParseError& e) {
      *c.err << "error: line " << line_no << ": " << e.what() << '\n';
      return kExitUsage;
    } catch (const HullError& e) {
      *c.err << "error: line " << line_no << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return kExitOk;
}

int run_classify(const Context& c) {
  return for_each_point(c, [&](const HullPoint& p, std::size_t) {
    *c.out << to_string(classify(p, c.tol)) << '\n';
  });
}

int run_member(const Context& c, bool use_oracle, bool report) {
  return for_each_point(c, [&](const HullPoint& p, std::size_t) {
    if (!use_oracle) {
      c.emit(io::to_json(member_hull(p, c.tol), report));
      return;
    }
    const OracleResult o = oracle_member(p, c.tol);
    c.emit({{"member", o.member},
            {"region", std::string(to_string(classify(p, c.tol)))},
            {"violated", o.member ? json::array() : json::array({"oracle.objective"})},
            {"objective", io::to_json(o.witness.objective)},
            {"witness", io::to_json(o.witness)}});
  });
}

int run_separate(const Context& c) {
  return for_each_point(c, [&](const HullPoint& p, std::size_t line_no) {
    try {
      c.emit(io::to_json(separate(p, c.tol)));
    } catch (const HullError& e) {
      c.emit({{"error", std::string(to_string(e.code()))},
              {"line", line_no},
              {"message", e.what()}});
    }
  });
}

int run_verify(const Context& c, std::size_t trials, std::uint64_t seed,
               const std::string& suite) {
  if (trials < 1) {
    *c.err << "error: --trials must be at least 1\n";
    return kExitUsage;
  }
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  std::vector<SuiteReport> reports;
  if (want("partition")) reports.push_back(verify_partition(trials, seed, c.tol));
  if (want("hull")) reports.push_back(verify_hull(trials, seed, c.tol));
  if (want("cuts")) reports.push_back(verify_cuts(trials, seed, c.tol));
  if (want("oracle")) reports.push_back(verify_oracle(trials, seed, c.tol));
  bool ok = true;
  for (const auto& r : reports) {
    json j = {{"suite", r.name},
              {"trials", r.trials},
              {"failures", r.failures},
              {"worst_slack", io::slack_json(r.worst_slack)},
              {"passed", r.passed()}};
    if (r.offending) {
      j["offending"] = io::to_json(*r.offending);
      j["detail"] = r.detail;
    }
    c.emit(j);
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Membership and separation for the convex hull of S2"};
  app.name("s2hull");
  app.require_subcommand(1);
  Context c;
  c.in = &in;
  c.out = &out;
  c.err = &err;
  app.add_option("--eq-tol", c.tol.eq, "Equality band")->capture_default_str();
  app.add_option("--mem-tol", c.tol.mem, "Membership slack")->capture_default_str();
  app.add_option("--oracle-tol", c.tol.oracle, "Oracle objective slack")->capture_default_str();
  app.add_flag("--pretty", c.pretty, "Indent JSON output");
  app.add_option("-i,--input", c.input, "Input file, '-' for stdin")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Print the cell of each point");
  auto* member_cmd = app.add_subcommand("member", "Closed-form membership per point");
  bool use_oracle = false, report = false;
  member_cmd->add_flag("--oracle", use_oracle, "Decide with the numeric oracle instead");
  member_cmd->add_flag("--report", report, "Include system, slack and W");
  auto* separate_cmd = app.add_subcommand("separate", "Cut or inside flag per point");
  auto* verify_cmd = app.add_subcommand("verify", "Randomised property suites");
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string suite = "all";
  verify_cmd->add_option("--trials", trials, "Trials per suite")->capture_default_str();
  verify_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify_cmd->add_option("--suite", suite, "partition, hull, cuts, oracle or all")
      ->check(CLI::IsMember({"partition", "hull", "cuts", "oracle", "all"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    c.tol.validate();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const HullError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*classify_cmd) return run_classify(c);
  if (*member_cmd) return run_member(c, use_oracle, report);
  if (*separate_cmd) return run_separate(c);
  if (*verify_cmd) return run_verify(c, trials, seed, suite);
  return kExitUsage;
}

}  // namespace s2hull::cli

// Runs each acceptance criterion at its stated scale and tolerance and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "entrokit/cli.hpp"
#include "entrokit/verify.hpp"

using namespace entrokit;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Group {
  std::vector<std::string> properties;
  std::size_t trials;
};

Outcome sweep(const std::vector<Group>& groups, SweepConfig base, double budget_seconds) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string failed;
  for (const auto& g : groups) {
    SweepConfig c = base;
    c.properties = g.properties;
    c.trials = g.trials;
    const auto report = run_suite(c);
    for (const auto& s : report.properties) {
      checks += s.pass + s.fail;
      failures += s.fail;
      if (s.fail > 0) {
        failed += " " + s.info.name + "(" + std::to_string(s.fail) + ")";
        if (!s.failures.empty()) failed += "[" + s.failures.front().instance_digest + "]";
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu checks, %zu violations, %.1f s (budget %.0f s)", checks,
                failures, secs, budget_seconds);
  std::string detail = buf;
  if (!failed.empty()) detail += "; failing:" + failed;
  const bool in_budget = secs <= budget_seconds;
  if (!in_budget) detail += "; over time budget";
  return {failures == 0 && in_budget, detail};
}

SweepConfig base_config(std::uint64_t seed) {
  SweepConfig c;
  c.seed = RngSeed{seed};
  c.sizes = {1, 16};
  return c;
}

Outcome identities() {
  auto c = base_config(1001);
  c.tol = 1e-12;
  return sweep({{{"product_rule_1", "product_rule_2", "inversion", "quotient", "power_rule",
                  "legacy_product_rule"},
                 100000},
                {{"divergence_definitional_equivalence", "chain_rule", "chain_rule_three",
                  "chain_rule_conditional", "pseudo_additivity_entropy",
                  "pseudo_additivity_divergence", "independence_rule"},
                 1000}},
               c, 30.0);
}

Outcome inequalities() {
  auto c = base_config(1002);
  c.tol = 1e-9;
  return sweep({{{"log_sum_inequality", "subadditivity", "conditional_reduces_entropy",
                  "conditional_comparison", "strong_subadditivity", "divergence_nonnegativity",
                  "joint_convexity", "information_monotonicity"},
                 10000}},
               c, 120.0);
}

Outcome reductions() {
  auto c = base_config(1003);
  return sweep({{{"tsallis_entropy_reduction", "tsallis_divergence_reduction"}, 1200},
                {{"shannon_limit", "kl_limit"}, 100}},
               c, 60.0);
}

Outcome r_independence() {
  auto c = base_config(1004);
  c.tol = 1e-12;
  return sweep({{{"entropy_r_independence", "divergence_r_independence"}, 1000}}, c, 60.0);
}

Outcome geometry() {
  auto c = base_config(1005);
  c.k_range = {0.05, 0.45};
  return sweep({{{"hessian_separability", "metric_oracle_agreement", "taylor_quadratic_form",
                  "hessian_potential_structure"},
                 100}},
               c, 60.0);
}

Outcome legacy() {
  auto c = base_config(1006);
  c.tol = 1e-9;
  return sweep({{{"legacy_monotone_convex"}, 20}}, c, 60.0);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "entrokit_acceptance_a.json";
  const auto b = dir / "entrokit_acceptance_b.json";
  const auto c = dir / "entrokit_acceptance_c.json";
  std::ostringstream out;
  std::ostringstream err;
  const std::vector<std::string> args{"verify", "--trials", "300", "--seed", "2024"};
  auto with_output = [&](const std::filesystem::path& p, std::vector<std::string> extra) {
    auto v = args;
    v.insert(v.end(), extra.begin(), extra.end());
    v.push_back("--output");
    v.push_back(p.string());
    return run_cli(v, out, err);
  };
  const int ca = with_output(a, {});
  const int cb = with_output(b, {});
  const int cc = with_output(c, {"--threads", "4"});
  const auto ta = slurp(a);
  const bool same = !ta.empty() && ta == slurp(b) && ta == slurp(c);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  std::filesystem::remove(c);
  std::string detail = std::to_string(ta.size()) + " byte report; exit codes " +
                       std::to_string(ca) + "," + std::to_string(cb) + "," + std::to_string(cc) +
                       (same ? "; identical across runs and thread counts" : "; reports differ");
  return {same && ca == 0 && cb == 0 && cc == 0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 identity suite (tol 1e-12)", identities},
      {"2 inequality suite (tol 1e-9)", inequalities},
      {"3 reduction suite", reductions},
      {"4 r-independence suite (tol 1e-12)", r_independence},
      {"5 geometry suite", geometry},
      {"6 legacy suite (tol 1e-9)", legacy},
      {"7 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto o = run();
    std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

// Acceptance criteria: one line per criterion, tolerances pinned here.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "triboltz/errors.hpp"
#include "triboltz/harness.hpp"

using namespace triboltz;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  int id;
  const char* title;
  std::function<SuiteResult()> run;
  // Short summary of the numbers that matter for the line.
  std::function<std::string(SuiteResult)> summary;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

KernelConfig default_kernel() { return KernelConfig{}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expectFail;
  std::vector<int> only;
  std::string report = "acceptance_report.json";
  app.add_option("--expect-fail", expectFail, "criteria whose failure is documented and expected");
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--report", report, "JSON report path");
  CLI11_PARSE(app, argc, argv);
  const std::string cache = cache_directory();
  const KernelConfig k = default_kernel();
  const CoerciveSearch search;

  const std::vector<Criterion> criteria = {
      {1, "conservation, involution, micro-reversibility (1e6 collisions, tol 1e-12)",
       [] { return kinematics_suite(1000000, kSeed, 1e-12); },
       [](SuiteResult r) { return fmt("worst residual %.2e", r.worst); }},
      {2, "energy fractions: sum = 1 (1e-12), mu_i E3 = <v_i*>^2 (1e-10)",
       [] { return energy_fraction_suite(10000, kSeed); },
       [](SuiteResult r) { return fmt("worst %.2e", r.worst); }},
      {3, "cutoff closed forms (1e-8), lambda_1/alpha_1 = norms (1e-4), strict decrease k=2..20, k=40 below half",
       [&] { return cutoff_suite(k, search, cache); },
       [](SuiteResult r) {
         const json& t = r.details["coercive_tables"]["details"];
         return fmt("lambda(k=40)/lambda(k=2) = %.4f", t["lambda"]["40"].get<double>() / t["lambda"]["2"].get<double>()) +
                fmt(", alpha ratio %.4f", t["alpha"]["40"].get<double>() / t["alpha"]["2"].get<double>());
       }},
      {4, "moment inequalities: interpolation, products, gaps, dilation, psi_n, potentials (1e4 each)",
       [] { return lemma_suite(10000, kSeed); },
       [](SuiteResult r) {
         const json& g = r.details["polynomial_gap"]["details"];
         return fmt("worst relative gap %.2e", r.worst) +
                fmt("; printed 2^(p-4) trinomial constant fails in %.0f cases", g["printed_trinomial_violations"].get<double>()) +
                fmt(" (worst ratio %.3f)", g["printed_trinomial_worst_ratio"].get<double>());
       }},
      {5, "modified decompositions k in {3,4,6}, binary and ternary (1e5 configurations, slack 1e-3)",
       [&] { return decomposition_suite(k, 100000, {3.0, 4.0, 6.0}, search, cache, kSeed); },
       [](SuiteResult r) { return fmt("worst normalized %.3e", r.worst); }},
      {6, "ODI: weak-form LHS <= RHS (shifted, power, sp-form) at 3 sigma, Gaussian and bimodal, N = 1e5",
       [&] {
         OdiSuiteOptions o;
         o.N = 100000;
         return odi_suite(k, o, search, cache, kSeed);
       },
       [](SuiteResult r) {
         const json& b = r.details["bimodal"]["details"];
         return fmt("bimodal q=4 LHS %.1f", b["q=4"]["lhs"].get<double>()) +
                fmt(" vs sp=4 RHS %.1f", b["sp=4"]["rhs"].get<double>());
       }},
      {7, "Maxwellian stationarity: |weak form| <= 3 stderr; DSMC m4 within 2% over [0,5] (N = 1e5)",
       [&] { return stationarity_suite(k, StationarityOptions{}, kSeed); },
       [](SuiteResult r) {
         const json& w = r.details["weak_form"]["details"];
         const json& d = r.details["dsmc"]["details"];
         return fmt("weak form %.3f", w["value"].get<double>()) + fmt(" +- %.3f", w["stderr"].get<double>()) +
                fmt(", max m4 deviation %.4f", d["max_relative_deviation"].get<double>());
       }},
      {8, "generator: central difference of m4 vs weak form, 3 combined sigma at 5 checkpoints",
       [&] { return generator_suite(k, GeneratorOptions{}, kSeed); },
       [](SuiteResult r) { return fmt("max |z| %.2f", r.worst); }},
      {9, "envelopes: m4(t) <= K4 max{1,t^(-2/g_i)}, sup m4 <= M4 (3 sigma); combined tighter than each single",
       [&] {
         KernelConfig kc = k;
         kc.gamma2 = 1.0;
         kc.gamma3 = 0.5;
         return envelope_suite(kc, EnvelopeOptions{}, search, cache, kSeed);
       },
       [](SuiteResult r) {
         const json& c = r.details["combined_vs_single"];
         std::string s = std::string("generation ") + (r.details["generation"]["pass"].get<bool>() ? "ok" : "VIOLATED") +
                         ", propagation " + (r.details["propagation"]["pass"].get<bool>() ? "ok" : "VIOLATED");
         s += ", combined vs single: " + std::to_string(c["violations"].get<long>()) + "/" +
              std::to_string(c["cases"].get<long>()) + " comparisons fail";
         const json& t = c["details"]["comparisons"][0];
         s += fmt(" (t=0.1: log gap to gamma2 single %+.3f", t["combined_minus_single2"].get<double>()) +
              fmt(", to gamma3 single %+.3f)", t["combined_minus_single3"].get<double>());
         return s;
       }},
      {10, "exponential generation: a > 0 with E^8(t, a min{1,t}) <= 4 m0, gamma2 = gamma3 = 1 and gamma2 = 0",
       [&] {
         KernelConfig hard = k, mixed = k;
         mixed.gamma2 = 0.0;
         return exp_generation_suite({hard, mixed}, ExpGenerationOptions{}, kSeed);
       },
       [](SuiteResult r) {
         std::string s;
         for (const auto& [name, v] : r.details.items()) s += name + fmt(": a = %.3f; ", v["details"]["a"].get<double>());
         return s;
       }},
      {11, "partial-sum inequalities over 1e3 random nonnegative sequences, n <= 12",
       [] { return series_suite(1000, 12, kSeed); },
       [](SuiteResult r) { return fmt("worst relative gap %.3f", r.worst); }},
      {12, "convolution lower bound: min over |v| <= 10 of int f|v-v1|^g / <v>^g > 0 (Gaussian, N = 1e5)",
       [&] { return convolution_suite(k, 100000, 10.0, 21, kSeed); },
       [](SuiteResult r) { return fmt("min ratio %.6f", r.details["min_ratio"].get<double>()); }},
      {13, "well-posedness: L(x*) = 0 (1e-10 rel), max L = L* (1e-6 rel), A substitution oracle",
       [&] { return wellposed_suite(k, search, cache); },
       [](SuiteResult r) {
         return fmt("A = %.6e", r.details["A"].get<double>()) + fmt(", root residual %.1e", r.details["root_residual"].get<double>());
       }},
  };

  const std::set<int> expected(expectFail.begin(), expectFail.end());
  const std::set<int> selected(only.begin(), only.end());
  json out = json::array();
  int unexpected = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t1 = std::chrono::steady_clock::now();
    SuiteResult r;
    std::string summary;
    try {
      r = c.run();
      summary = c.summary(r);
    } catch (const std::exception& e) {
      r = SuiteResult(c.title);
      r.check(false, 0.0, [&] { return json{{"exception", e.what()}}; });
      summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    const bool exp = expected.count(c.id) > 0;
    const char* tag = r.pass() ? (exp ? "PASS (expected fail)" : "PASS") : (exp ? "FAIL (expected)" : "FAIL");
    if (r.pass() == exp) ++unexpected;
    std::printf("[%s] %2d %s | cases=%ld violations=%ld | %s | %.1fs\n", tag, c.id, c.title, r.cases, r.violations,
                summary.c_str(), secs);
    if (!r.pass()) std::printf("      first counterexample: %s\n", r.counterexample.dump().c_str());
    std::fflush(stdout);
    json j = to_json(r);
    j["criterion"] = c.id;
    j["title"] = c.title;
    j["seconds"] = secs;
    j["expected_fail"] = exp;
    out.push_back(j);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("total %.1fs, %d unexpected outcome(s)\n", total, unexpected);
  std::ofstream(report) << out.dump(2) << "\n";
  return unexpected == 0 ? 0 : 1;
}

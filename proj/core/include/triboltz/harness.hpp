#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "triboltz/bounds.hpp"
#include "triboltz/config.hpp"
#include "triboltz/dsmc.hpp"
#include "triboltz/weakform.hpp"

namespace triboltz {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  long cases = 0;
  long violations = 0;
  double worst = 0.0;  // largest normalized residual seen
  json counterexample;  // first violation, null when none
  json details = json::object();

  bool pass() const { return violations == 0; }
  // Counts one case; the witness is built only for the first violation.
  void check(bool ok, double residual, const std::function<json()>& witness);
  void merge(const SuiteResult& other);
};

json to_json(const SuiteResult& r);

// Ensemble factories shared by suites, commands and tests.
Ensemble gaussian_ensemble(int d, int N, double T, std::uint64_t seed);
// Two Gaussians at +-offset e1 with temperature T each.
Ensemble bimodal_ensemble(int d, int N, double offset, double T, std::uint64_t seed);

// 1. Conservation, involution and micro-reversibility of binary, central and adjacent ternary laws.
SuiteResult kinematics_suite(long collisions, std::uint64_t seed, double tol = 1e-12);
// 2. Ternary and binary energy fractions against the collision laws.
SuiteResult energy_fraction_suite(long configs, std::uint64_t seed);
// 3. Cutoff-norm closed forms and coercive-table structure.
SuiteResult cutoff_suite(const KernelConfig& cfg, const CoerciveSearch& search, const std::string& cacheDir);
// 4. Interpolation, product, polynomial-gap, dilation, psi_n and potential-envelope properties.
SuiteResult lemma_suite(long casesPerFamily, std::uint64_t seed);
// 5. Modified gain/loss decompositions for k in orders.
SuiteResult decomposition_suite(const KernelConfig& cfg, long configs, const std::vector<double>& orders,
                                const CoerciveSearch& search, const std::string& cacheDir, std::uint64_t seed);

struct OdiSuiteOptions {
  int N = 100000;
  std::vector<double> q{3.0, 4.0, 6.0};
  double expS = 2.0;
  std::vector<double> sp{4.0, 6.0};
  double sigmas = 3.0;
  bool corruptCq = false;
  Budget budget;
};

// 6. Weak-form ODI checks on Gaussian and bimodal ensembles.
SuiteResult odi_suite(const KernelConfig& cfg, const OdiSuiteOptions& opt, const CoerciveSearch& search,
                      const std::string& cacheDir, std::uint64_t seed);

struct StationarityOptions {
  int wfN = 100000;
  int N = 100000;
  double tEnd = 5.0;
  double dt = 0.05;
  double tolerance = 0.02;
  double sigmas = 3.0;
  Budget budget;
};

// 7. Maxwellian: weak form of <v>^4 within sigmas stderr of zero; DSMC keeps m4 within tolerance.
SuiteResult stationarity_suite(const KernelConfig& cfg, const StationarityOptions& opt, std::uint64_t seed);

struct GeneratorOptions {
  int N = 50000;
  double h = 0.01;
  std::vector<double> checkpoints{0.02, 0.04, 0.06, 0.1, 0.2};
  double sigmas = 3.0;
  Budget budget;
};

// 8. Central difference of m4 along a DSMC run against the weak-form oracle.
SuiteResult generator_suite(const KernelConfig& cfg, const GeneratorOptions& opt, std::uint64_t seed);

struct EnvelopeOptions {
  double q = 4.0;
  int N = 20000;
  double R = 2.0;  // compact support <v> <= R
  double tEnd = 1.0;
  double dt = 0.01;
  double sigmas = 3.0;
  std::vector<double> smallTimes{1e-1, 1e-2, 1e-3};
};

struct EnvelopeRow {
  double t = 0.0;
  double mq = 0.0, sd = 0.0;
  double logCombined = 0.0, logSingle2 = 0.0, logSingle3 = 0.0;  // -inf at t = 0 or for an inactive branch
};

struct EnvelopeRun {
  MomentTrajectory traj;
  OdiConstants odi;
  EnvelopeSet env;
  std::vector<EnvelopeRow> rows;
  std::vector<std::string> tableKeys;
  SuiteResult result;
};

// Runs sc (orders q and 2q are added) and checks every recorded m_q against the envelopes in log
// space, with m_q lowered by sigmas sampling standard deviations.
EnvelopeRun envelope_run(SimConfig sc, double q, double sigmas, const std::vector<double>& smallTimes,
                         const CoerciveSearch& search, const std::string& cacheDir);

// 9. Generation and propagation envelopes on a compact-support DSMC run; with both gammas positive
// the combined envelope is compared against each single envelope at small t.
SuiteResult envelope_suite(const KernelConfig& cfg, const EnvelopeOptions& opt, const CoerciveSearch& search,
                           const std::string& cacheDir, std::uint64_t seed, MomentTrajectory* trajectory = nullptr);

struct ExpGenerationOptions {
  int N = 20000;
  double R = 2.0;
  double tEnd = 1.0;
  double dt = 0.01;
  int terms = 8;
  double threshold = 4.0;  // multiple of m0
  double tolerance = 1e-3;
};

struct ExpGenerationResult {
  double a = 0.0;  // largest a found, 0 when none
  double tightestThreshold = 0.0;  // smallest multiple of m0 passing at a
  std::vector<double> times, bound;
};

// Largest a in (0, 1] with E^n_gamma(t, a min{1, t}) <= threshold m0 on every recorded row.
ExpGenerationResult exp_generation_search(const MomentTrajectory& traj, double gamma, int terms, double threshold,
                                          double tolerance);

// 10. Exponential generation along compact-support runs for each kernel.
SuiteResult exp_generation_suite(const std::vector<KernelConfig>& kernels, const ExpGenerationOptions& opt,
                                 std::uint64_t seed);
// 11. Partial-sum inequalities over random nonnegative moment sequences.
SuiteResult series_suite(long sequences, int maxTerms, std::uint64_t seed);
// 12. Convolution lower bound for a Gaussian ensemble.
SuiteResult convolution_suite(const KernelConfig& cfg, int N, double radius, int gridPerAxis, std::uint64_t seed);
// 13. L(x*) = 0, numerical maximum of L against L*, substitution oracle for A.
SuiteResult wellposed_suite(const KernelConfig& cfg, const CoerciveSearch& search, const std::string& cacheDir);

// BoundReport for the moments of e at orders q (q > 2); coercive table keys are appended to tableKeys.
json bound_report(const RunConfig& rc, const Ensemble& e, const std::vector<double>& qs, const std::string& cacheDir,
                  std::vector<std::string>* tableKeys = nullptr);

std::string fnv1a_hex(const std::string& bytes);

// Command entry points; return the process exit code. Output directory is created on demand.
int cmd_constants(const RunConfig& rc, const std::string& outDir, std::ostream& out);
int cmd_verify(const RunConfig& rc, const std::string& outDir, std::ostream& out);
int cmd_simulate(const RunConfig& rc, const std::string& outDir, std::ostream& out);
int cmd_envelope_check(const RunConfig& rc, const std::string& outDir, std::ostream& out);

// Runs the suites selected by rc.verify.suite with the configured sample counts.
std::vector<SuiteResult> verify_suites(const RunConfig& rc, const std::string& cacheDir);

// Trajectory rows as CSV: t, m0, p_1..p_d, m2, m_q..., E_partial, events_binary, events_ternary, dt.
std::string trajectory_csv(const MomentTrajectory& traj, int d);

}  // namespace triboltz

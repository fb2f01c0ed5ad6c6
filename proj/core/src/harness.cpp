#include "triboltz/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "triboltz/errors.hpp"

namespace triboltz {

namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string order_label(double k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", k);
  return buf;
}

// Finite doubles pass through; infinities become strings so the JSON stays valid.
json jnum(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

struct Outputs {
  fs::path dir;
  json files = json::array();

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) fail(ErrorKind::Usage, "cannot write output file: " + p.string());
    os << content;
    if (!os) fail(ErrorKind::Usage, "failed writing output file: " + p.string());
    files.push_back({{"path", p.string()}, {"fnv1a", fnv1a_hex(content)}, {"bytes", content.size()}});
  }
};

json config_json(const RunConfig& rc) {
  json entries = json::object();
  for (const auto& [k, v] : rc.entries) entries[k] = v;
  const std::string text = render_config(rc);
  return {{"source", rc.source}, {"entries", entries}, {"effective", text}, {"fnv1a", fnv1a_hex(text)}};
}

void write_manifest(Outputs& o, const std::string& command, const RunConfig& rc,
                    const std::vector<std::string>& tableKeys, double seconds) {
  json manifest{{"tool", "triboltz"},
                {"version", kVersion},
                {"command", command},
                {"seed", rc.sim.seed},
                {"config", config_json(rc)},
                {"coercive_tables", tableKeys},
                {"outputs", o.files},
                {"wall_clock_seconds", seconds}};
  const std::string text = manifest.dump(2) + "\n";
  fs::create_directories(o.dir);
  std::ofstream os(o.dir / "manifest.json", std::ios::binary);
  if (!os) fail(ErrorKind::Usage, "cannot write output file: " + (o.dir / "manifest.json").string());
  os << text;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string trajectory_csv(const MomentTrajectory& traj, int d) {
  static const char* axes[] = {"px", "py", "pz"};
  std::ostringstream os;
  os << "t,m0";
  for (int i = 0; i < d; ++i) os << ',' << axes[i];
  os << ",m2";
  for (double k : traj.orders) os << ",m_" << order_label(k);
  os << ",E_partial,events_binary,events_ternary,dt\n";
  for (const auto& r : traj.rows) {
    os << num(r.t) << ',' << num(r.m0);
    for (int i = 0; i < d; ++i) os << ',' << num(i < r.momentum.size() ? r.momentum[i] : 0.0);
    os << ',' << num(r.m2);
    for (double m : r.moments) os << ',' << num(m);
    os << ',' << num(r.expPartial) << ',' << r.eventsBinary << ',' << r.eventsTernary << ',' << num(r.dt) << '\n';
  }
  return os.str();
}

json bound_report(const RunConfig& rc, const Ensemble& e, const std::vector<double>& qs, const std::string& cacheDir,
                  std::vector<std::string>* tableKeys) {
  const KernelConfig& cfg = rc.sim.kernel;
  for (double q : qs)
    if (!(q > 2.0)) fail(ErrorKind::Config, "constants: moment order q > 2 is required");
  const double qWell = 2.0 + 2.0 * cfg.gamma();
  std::vector<double> orders = qs;
  orders.push_back(qWell);
  orders.insert(orders.end(), rc.coerciveOrders.begin(), rc.coerciveOrders.end());
  const CoerciveTables t = coercive_tables(cfg, orders, rc.search, cacheDir);
  if (tableKeys) {
    tableKeys->push_back(t.binary.key);
    tableKeys->push_back(t.ternary.key);
  }
  const double m0 = moment(e, 0.0), m2 = moment(e, 2.0);
  json rows = json::array();
  for (double q : qs) {
    const OdiConstants o = odi_constants(q, m0, m2, cfg, t);
    const EnvelopeSet env = generation_envelope(o, moment(e, q));
    const ExpLemmaConstants k = exp_lemma_constants(q, m0, m2, cfg, t);
    rows.push_back({{"q", q},
                    {"alpha", o.in.alpha},
                    {"lambda", o.in.lambda},
                    {"Cq", jnum(o.Cq)},
                    {"CqPrime", jnum(o.CqPrime)},
                    {"CqTilde", jnum(o.CqTilde)},
                    {"Eq", jnum(o.Eq)},
                    {"Dq", jnum(o.Dq)},
                    {"Kq2", jnum(env.Kq2)},
                    {"Kq3", jnum(env.Kq3)},
                    {"Kq", jnum(env.Kq)},
                    {"Mq", jnum(env.Mq)},
                    {"log_Kq2", jnum(env.logKq2)},
                    {"log_Kq3", jnum(env.logKq3)},
                    {"log_Kq", jnum(env.logKq)},
                    {"log_Mq", jnum(env.logMq)},
                    {"mq0", moment(e, q)},
                    {"K1", k.K1},
                    {"K2", k.K2},
                    {"K3", k.K3}});
  }
  const WellPosedConstants w = wellposed_constants(odi_constants(qWell, m0, m2, cfg, t));
  json tables = json::object();
  for (const CoerciveTable* tb : {&t.binary, &t.ternary}) {
    json vals = json::object();
    for (size_t i = 0; i < tb->orders.size(); ++i) vals[order_label(tb->orders[i])] = tb->values[i];
    tables[tb->arity == Arity::Binary ? "alpha" : "lambda"] = {{"key", tb->key}, {"values", vals}};
  }
  return {{"inputs",
           {{"m0", m0}, {"m2", m2}, {"d", cfg.d}, {"gamma2", cfg.gamma2}, {"gamma3", cfg.gamma3},
            {"theta3", cfg.theta3}, {"config_fnv1a", fnv1a_hex(render_config(rc))}}},
          {"norms", {{"b2", t.norms.b2}, {"b3", t.norms.b3}}},
          {"coercive", tables},
          {"orders", rows},
          {"wellposed",
           {{"q", qWell}, {"C", jnum(w.C)}, {"CTilde", jnum(w.Ct)}, {"xStar", jnum(w.xStar)}, {"LStar", jnum(w.LStar)},
            {"A", jnum(w.A)}}},
          {"collision_frequency_constant", collision_frequency_constant(m0, m2, cfg, t.norms)}};
}

int cmd_constants(const RunConfig& rc, const std::string& outDir, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  rc.validate();
  const Ensemble e = init_ensemble(rc.sim);
  std::vector<std::string> keys;
  const json report = bound_report(rc, e, rc.constantsQ, cache_directory(), &keys);
  Outputs o{outDir};
  o.write("bound_report.json", report.dump(2) + "\n");

  out << "m0 = " << report["inputs"]["m0"] << "  m2 = " << report["inputs"]["m2"] << "\n";
  out << "||b2|| = " << report["norms"]["b2"] << "  ||b3|| = " << report["norms"]["b3"] << "\n";
  out << std::left << std::setw(6) << "q" << std::setw(14) << "alpha" << std::setw(14) << "lambda" << std::setw(14)
      << "C_q" << std::setw(14) << "C'_q" << std::setw(14) << "C~_q" << std::setw(14) << "log K_q" << std::setw(14)
      << "log M_q" << std::setw(14) << "K1" << std::setw(14) << "K2" << "K3\n";
  auto cell = [](const json& v) {
    std::ostringstream s;
    if (v.is_number()) {
      s << std::setprecision(6) << v.get<double>();
    } else {
      s << v.get<std::string>();
    }
    return s.str();
  };
  for (const auto& r : report["orders"]) {
    out << std::setw(6) << cell(r["q"]) << std::setw(14) << cell(r["alpha"]) << std::setw(14) << cell(r["lambda"])
        << std::setw(14) << cell(r["Cq"]) << std::setw(14) << cell(r["CqPrime"]) << std::setw(14) << cell(r["CqTilde"])
        << std::setw(14) << cell(r["log_Kq"]) << std::setw(14) << cell(r["log_Mq"]) << std::setw(14) << cell(r["K1"])
        << std::setw(14) << cell(r["K2"]) << cell(r["K3"]) << "\n";
  }
  const json& w = report["wellposed"];
  out << "A_{2+2gamma} = " << cell(w["A"]) << "  (x* = " << cell(w["xStar"]) << ", L* = " << cell(w["LStar"]) << ")\n";
  write_manifest(o, "constants", rc, keys, seconds_since(t0));
  return 0;
}

std::vector<SuiteResult> verify_suites(const RunConfig& rc, const std::string& cacheDir) {
  const VerifyConfig& v = rc.verify;
  const KernelConfig& cfg = rc.sim.kernel;
  const std::uint64_t seed = rc.sim.seed;
  auto on = [&](const char* name) { return v.suite == "all" || v.suite == name; };
  std::vector<SuiteResult> out;
  if (on("kinematics")) {
    out.push_back(kinematics_suite(v.samples, seed));
    out.push_back(energy_fraction_suite(v.samples, seed));
  }
  if (on("lemmas")) out.push_back(lemma_suite(v.samples, seed));
  if (on("series") || on("lemmas")) out.push_back(series_suite(std::max(1L, v.samples / 10), 12, seed));
  if (on("cutoff")) out.push_back(cutoff_suite(cfg, rc.search, cacheDir));
  if (on("decomposition")) out.push_back(decomposition_suite(cfg, v.samples, {3.0, 4.0, 6.0}, rc.search, cacheDir, seed));
  if (on("odi")) {
    OdiSuiteOptions o;
    o.N = v.N;
    o.q = v.q;
    o.expS = v.expS;
    o.sp = v.sp;
    o.sigmas = v.sigmas;
    o.corruptCq = v.corrupt == "cq_zero";
    o.budget = rc.budget;
    out.push_back(odi_suite(cfg, o, rc.search, cacheDir, seed));
  }
  if (on("stationarity")) {
    StationarityOptions o;
    o.wfN = o.N = v.N;
    o.tEnd = rc.sim.tEnd;
    o.dt = rc.sim.dt;
    o.sigmas = v.sigmas;
    o.budget = rc.budget;
    out.push_back(stationarity_suite(cfg, o, seed));
  }
  if (on("generator")) {
    GeneratorOptions o;
    o.N = v.N;
    o.sigmas = v.sigmas;
    o.budget = rc.budget;
    out.push_back(generator_suite(cfg, o, seed));
  }
  if (on("envelope")) {
    EnvelopeOptions o;
    o.q = rc.envelope.q;
    o.N = v.N;
    o.sigmas = rc.envelope.sigmas;
    out.push_back(envelope_suite(cfg, o, rc.search, cacheDir, seed));
  }
  if (on("exp_generation")) {
    ExpGenerationOptions o;
    o.N = v.N;
    o.terms = rc.envelope.expTerms;
    o.threshold = rc.envelope.expThreshold;
    o.tolerance = rc.envelope.bisectionTolerance;
    out.push_back(exp_generation_suite({cfg}, o, seed));
  }
  if (on("convolution")) out.push_back(convolution_suite(cfg, v.N, 10.0, 21, seed));
  if (on("wellposed")) out.push_back(wellposed_suite(cfg, rc.search, cacheDir));
  return out;
}

int cmd_verify(const RunConfig& rc, const std::string& outDir, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  rc.validate();
  const std::vector<SuiteResult> results = verify_suites(rc, cache_directory());
  json report = json::array();
  const SuiteResult* firstFail = nullptr;
  for (const auto& r : results) {
    report.push_back(to_json(r));
    out << (r.pass() ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases << "  violations=" << r.violations
        << "  worst=" << r.worst << "\n";
    if (!r.pass() && !firstFail) firstFail = &r;
  }
  Outputs o{outDir};
  o.write("verify_report.json", json{{"suite", rc.verify.suite}, {"results", report}}.dump(2) + "\n");
  write_manifest(o, "verify", rc, {}, seconds_since(t0));
  if (firstFail) {
    out << "first counterexample (" << firstFail->name << "): " << firstFail->counterexample.dump() << "\n";
    return 1;
  }
  return 0;
}

int cmd_simulate(const RunConfig& rc, const std::string& outDir, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  rc.validate();
  Simulator sim(rc.sim);
  const MomentTrajectory tr = run(sim);
  Outputs o{outDir};
  o.write("trajectory.csv", trajectory_csv(tr, rc.sim.kernel.d));
  write_manifest(o, "simulate", rc, {}, seconds_since(t0));
  const auto& last = tr.rows.back();
  out << "t = " << last.t << "  steps = " << tr.steps << "  events binary = " << last.eventsBinary
      << "  ternary = " << last.eventsTernary << "\n";
  out << "relative drift: mass " << tr.massDrift << "  momentum " << tr.momentumDrift << "  energy " << tr.energyDrift
      << "\n";
  out << "wrote " << (o.dir / "trajectory.csv").string() << "\n";
  return 0;
}

int cmd_envelope_check(const RunConfig& rc, const std::string& outDir, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  rc.validate();
  const EnvelopeConfig& ec = rc.envelope;
  SimConfig sc = rc.sim;
  const double g = sc.kernel.gamma();
  for (int p = 0; p <= ec.expTerms; ++p) sc.outputOrders.push_back(g * p);
  std::sort(sc.outputOrders.begin(), sc.outputOrders.end());
  sc.outputOrders.erase(std::unique(sc.outputOrders.begin(), sc.outputOrders.end()), sc.outputOrders.end());
  const EnvelopeRun er = envelope_run(sc, ec.q, ec.sigmas, {1e-1, 1e-2, 1e-3}, rc.search, cache_directory());
  const ExpGenerationResult eg = exp_generation_search(er.traj, g, ec.expTerms, ec.expThreshold, ec.bisectionTolerance);

  std::ostringstream csv;
  csv << "t,m_q,sd,log_m_q,log_envelope_combined,log_envelope_gamma2,log_envelope_gamma3,log_Mq,exp_partial_bound\n";
  for (size_t i = 0; i < er.rows.size(); ++i) {
    const EnvelopeRow& r = er.rows[i];
    csv << num(r.t) << ',' << num(r.mq) << ',' << num(r.sd) << ',' << num(std::log(r.mq)) << ',' << num(r.logCombined)
        << ',' << num(r.logSingle2) << ',' << num(r.logSingle3) << ',' << num(er.env.logMq) << ','
        << num(eg.bound[i]) << '\n';
  }
  Outputs o{outDir};
  o.write("envelope.csv", csv.str());
  o.write("trajectory.csv", trajectory_csv(er.traj, sc.kernel.d));
  json report = to_json(er.result);
  report["exp_generation"] = {{"a", eg.a},
                              {"threshold", ec.expThreshold},
                              {"tightest_threshold", eg.tightestThreshold},
                              {"terms", ec.expTerms}};
  o.write("envelope_report.json", report.dump(2) + "\n");
  write_manifest(o, "envelope-check", rc, er.tableKeys, seconds_since(t0));

  // The small-t comparison between envelopes is reported, not gated: it is a property of the constants.
  const bool envOk = er.result.details.at("generation").at("pass").get<bool>() &&
                     er.result.details.at("propagation").at("pass").get<bool>();
  const bool expOk = eg.a >= ec.bisectionTolerance;
  out << (envOk ? "PASS" : "FAIL") << " envelopes: " << er.rows.size() << " rows, log M_q = " << er.env.logMq << "\n";
  if (er.result.details.contains("combined_vs_single")) {
    const json& c = er.result.details["combined_vs_single"];
    out << (c["pass"].get<bool>() ? "PASS" : "FAIL") << " combined envelope below both single envelopes at small t ("
        << c["violations"] << " of " << c["cases"] << " comparisons fail)\n";
  }
  out << (expOk ? "PASS" : "FAIL") << " exponential generation: a = " << eg.a << " (E^" << ec.expTerms
      << " <= " << ec.expThreshold << " m0; tightest passing multiple " << eg.tightestThreshold << ")\n";
  if (!envOk) {
    for (const char* part : {"generation", "propagation"})
      if (er.result.details[part].contains("counterexample"))
        out << "counterexample: " << er.result.details[part]["counterexample"].dump() << "\n";
  }
  return envOk && expOk ? 0 : 1;
}

}  // namespace triboltz

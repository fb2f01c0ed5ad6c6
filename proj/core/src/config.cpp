#include "triboltz/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "triboltz/errors.hpp"

namespace triboltz {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e) throw std::invalid_argument("expected a number, got '" + s + "'");
  return x;
}

long to_long(const std::string& s) {
  const double x = to_double(s);
  if (x != std::floor(x) || std::abs(x) > 9e15) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return static_cast<long>(x);
}

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("expected an unsigned integer, got '" + s + "'");
  return x;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (const auto& t : split(s, ',')) out.push_back(to_double(t));
  return out;
}

Vec to_vec(const std::string& s) {
  const auto xs = to_list(s);
  if (xs.size() > static_cast<std::size_t>(kMaxDim)) throw std::invalid_argument("vector has more than 3 components");
  Vec v(static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
  return v;
}

Profile to_profile(const std::string& s) {
  const auto xs = to_list(s);
  if (xs.empty() || xs.size() > 3) throw std::invalid_argument("profile takes 1 to 3 coefficients c0, c1, c2");
  Profile p;
  p.c0 = xs[0];
  p.c1 = xs.size() > 1 ? xs[1] : 0.0;
  p.c2 = xs.size() > 2 ? xs[2] : 0.0;
  return p;
}

// "weight, T, m1, m2[, m3]; ..."
std::vector<MixtureComponent> to_mixture(const std::string& s) {
  std::vector<MixtureComponent> out;
  for (const auto& part : split(s, ';')) {
    if (part.empty()) continue;
    const auto xs = to_list(part);
    if (xs.size() < 3 || xs.size() > 2 + static_cast<std::size_t>(kMaxDim))
      throw std::invalid_argument("mixture component is 'weight, T, mean...'");
    MixtureComponent c;
    c.weight = xs[0];
    c.T = xs[1];
    c.mean = Vec(static_cast<int>(xs.size() - 2));
    for (std::size_t i = 2; i < xs.size(); ++i) c.mean[static_cast<int>(i - 2)] = xs[i];
    out.push_back(c);
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i]);
  return s;
}

std::string fmt_vec(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

std::string fmt_profile(const Profile& p) { return fmt(p.c0) + ", " + fmt(p.c1) + ", " + fmt(p.c2); }

std::string fmt_mixture(const std::vector<MixtureComponent>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += (i ? "; " : "") + fmt(m[i].weight) + ", " + fmt(m[i].T);
    for (int c = 0; c < m[i].mean.size(); ++c) s += ", " + fmt(m[i].mean[c]);
  }
  return s;
}

std::string law_name(InitialData::Law l) {
  switch (l) {
    case InitialData::Law::Maxwellian:
      return "maxwellian";
    case InitialData::Law::GaussianMixture:
      return "mixture";
    case InitialData::Law::Ball:
      return "ball";
  }
  return "maxwellian";
}

InitialData::Law to_law(const std::string& s) {
  if (s == "maxwellian") return InitialData::Law::Maxwellian;
  if (s == "mixture") return InitialData::Law::GaussianMixture;
  if (s == "ball") return InitialData::Law::Ball;
  throw std::invalid_argument("init must be maxwellian, mixture or ball");
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define TB_NUM(key, field) \
  Key { key, [](RunConfig& c, const std::string& v) { c.field = to_double(v); }, [](const RunConfig& c) { return fmt(c.field); } }
#define TB_INT(key, field)                                                                 \
  Key {                                                                                    \
    key, [](RunConfig& c, const std::string& v) { c.field = static_cast<decltype(c.field)>(to_long(v)); }, \
        [](const RunConfig& c) { return std::to_string(c.field); }                         \
  }
#define TB_BOOL(key, field) \
  Key { key, [](RunConfig& c, const std::string& v) { c.field = to_bool(v); }, [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); } }
#define TB_LIST(key, field) \
  Key { key, [](RunConfig& c, const std::string& v) { c.field = to_list(v); }, [](const RunConfig& c) { return fmt_list(c.field); } }

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = {
      TB_INT("d", sim.kernel.d),
      TB_NUM("gamma2", sim.kernel.gamma2),
      TB_NUM("gamma3", sim.kernel.gamma3),
      TB_NUM("theta3", sim.kernel.theta3),
      Key{"b2", [](RunConfig& c, const std::string& v) { c.sim.kernel.b2 = to_profile(v); },
          [](const RunConfig& c) { return fmt_profile(c.sim.kernel.b2); }},
      Key{"phi", [](RunConfig& c, const std::string& v) { c.sim.kernel.phi = to_profile(v); },
          [](const RunConfig& c) { return fmt_profile(c.sim.kernel.phi); }},
      TB_BOOL("binary", sim.binary),
      TB_BOOL("ternary", sim.ternary),
      TB_INT("N", sim.N),
      TB_NUM("dt", sim.dt),
      TB_NUM("t_end", sim.tEnd),
      Key{"seed", [](RunConfig& c, const std::string& v) { c.sim.seed = to_u64(v); },
          [](const RunConfig& c) { return std::to_string(c.sim.seed); }},
      TB_NUM("mass", sim.mass),
      Key{"init", [](RunConfig& c, const std::string& v) { c.sim.init.law = to_law(v); },
          [](const RunConfig& c) { return law_name(c.sim.init.law); }},
      TB_NUM("init_T", sim.init.T),
      Key{"init_u", [](RunConfig& c, const std::string& v) { c.sim.init.u = to_vec(v); },
          [](const RunConfig& c) { return fmt_vec(c.sim.init.u); }},
      TB_NUM("init_R", sim.init.R),
      Key{"mixture", [](RunConfig& c, const std::string& v) { c.sim.init.mixture = to_mixture(v); },
          [](const RunConfig& c) { return fmt_mixture(c.sim.init.mixture); }},
      Key{"truncation_R",
          [](RunConfig& c, const std::string& v) {
            if (v == "none" || v.empty())
              c.sim.truncationR.reset();
            else
              c.sim.truncationR = to_double(v);
          },
          [](const RunConfig& c) { return c.sim.truncationR ? fmt(*c.sim.truncationR) : std::string("none"); }},
      TB_LIST("output_orders", sim.outputOrders),
      TB_INT("output_every", sim.outputEvery),
      TB_NUM("safety", sim.safety),
      TB_NUM("max_event_fraction", sim.maxEventFraction),
      TB_NUM("track_order", sim.trackOrder),
      TB_NUM("exp_s", sim.expS),
      TB_NUM("exp_z", sim.expZ),
      TB_INT("exp_terms", sim.expTerms),
      TB_LIST("coercive_orders", coerciveOrders),
      TB_INT("coercive_grid", search.gridPerAxis),
      TB_INT("coercive_starts", search.starts),
      TB_INT("coercive_max_iterations", search.maxIterations),
      TB_NUM("coercive_tolerance", search.tolerance),
      TB_INT("coercive_ternary_theta", search.ternaryTheta),
      TB_INT("coercive_ternary_sphere", search.ternarySphere),
      TB_INT("coercive_ternary_theta_fine", search.ternaryThetaFine),
      TB_INT("coercive_ternary_sphere_fine", search.ternarySphereFine),
      TB_INT("coercive_binary_nodes", search.binaryNodes),
      TB_INT("coercive_binary_nodes_fine", search.binaryNodesFine),
      TB_INT("wf_pairs", budget.pairs),
      TB_INT("wf_triples", budget.triples),
      TB_INT("wf_batches", budget.batches),
      TB_INT("wf_binary_nodes", budget.binaryNodes),
      TB_INT("wf_ternary_directions", budget.ternaryDirections),
      TB_NUM("wf_target_stderr", budget.targetStderr),
      Key{"verify_suite", [](RunConfig& c, const std::string& v) { c.verify.suite = v; },
          [](const RunConfig& c) { return c.verify.suite; }},
      TB_INT("verify_samples", verify.samples),
      TB_INT("verify_N", verify.N),
      TB_LIST("verify_q", verify.q),
      TB_NUM("verify_exp_s", verify.expS),
      TB_LIST("verify_sp", verify.sp),
      Key{"verify_corrupt", [](RunConfig& c, const std::string& v) { c.verify.corrupt = v; },
          [](const RunConfig& c) { return c.verify.corrupt; }},
      TB_NUM("verify_sigmas", verify.sigmas),
      TB_NUM("envelope_q", envelope.q),
      TB_NUM("envelope_sigmas", envelope.sigmas),
      TB_NUM("envelope_exp_threshold", envelope.expThreshold),
      TB_INT("envelope_exp_terms", envelope.expTerms),
      TB_NUM("envelope_bisection_tolerance", envelope.bisectionTolerance),
      TB_LIST("constants_q", constantsQ),
  };
  return keys;
}

#undef TB_NUM
#undef TB_INT
#undef TB_BOOL
#undef TB_LIST

}  // namespace

void RunConfig::validate() const {
  sim.validate();
  if (search.gridPerAxis < 2 || search.starts < 1 || search.maxIterations < 1 || !(search.tolerance > 0.0))
    fail(ErrorKind::Config, "coercive search: grid >= 2, starts >= 1, iterations >= 1 and tolerance > 0 are required");
  if (budget.pairs < 0 || budget.triples < 0 || budget.batches < 2 || budget.binaryNodes < 2 || budget.ternaryDirections < 1)
    fail(ErrorKind::Config, "weak-form budget: counts must be nonnegative, batches >= 2, nodes >= 2, directions >= 1");
  static const std::vector<std::string> suites{"kinematics", "lemmas", "odi", "stationarity", "cutoff",
                                               "decomposition", "generator", "envelope", "exp_generation",
                                               "series", "convolution", "wellposed", "all"};
  if (std::find(suites.begin(), suites.end(), verify.suite) == suites.end()) {
    std::string names;
    for (const auto& n : suites) names += (names.empty() ? "" : ", ") + n;
    fail(ErrorKind::Config, "verify_suite must be one of " + names);
  }
  if (verify.corrupt != "none" && verify.corrupt != "cq_zero")
    fail(ErrorKind::Config, "verify_corrupt must be none or cq_zero");
  if (verify.samples < 1 || verify.N < 3) fail(ErrorKind::Config, "verify_samples >= 1 and verify_N >= 3 are required");
  for (double q : verify.q)
    if (!(q > 2.0)) fail(ErrorKind::Config, "verify_q: moment order q > 2 is required");
  if (!(verify.expS > 0.0 && verify.expS <= 2.0))
    fail(ErrorKind::Config, "verify_exp_s: exponential order s in (0, 2] is required");
  for (double sp : verify.sp) {
    const double p = sp / verify.expS;
    if (!(sp > 2.0) || std::abs(p - std::round(p)) > 1e-12)
      fail(ErrorKind::Config, "verify_sp: sp > 2 with sp / s a positive integer is required");
  }
  for (double q : constantsQ)
    if (!(q > 2.0)) fail(ErrorKind::Config, "constants_q: moment order q > 2 is required");
  if (!(envelope.q > 2.0)) fail(ErrorKind::Config, "envelope_q: moment order q > 2 is required");
  if (envelope.expTerms < 1 || !(envelope.expThreshold > 0.0) || !(envelope.bisectionTolerance > 0.0))
    fail(ErrorKind::Config, "envelope: exp_terms >= 1, positive threshold and tolerance are required");
  if (!(sim.init.u.size() == 0 || sim.init.u.size() == sim.kernel.d))
    fail(ErrorKind::Config, "init_u: dimension must equal d");
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  RunConfig rc;
  rc.source = source;
  std::istringstream is(text);
  std::string line;
  int lineNo = 0;
  std::vector<std::string> seen;
  while (std::getline(is, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineNo) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Config, where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
    if (it == table.end()) fail(ErrorKind::Config, where + "unknown key '" + key + "'");
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      fail(ErrorKind::Config, where + "duplicate key '" + key + "'");
    seen.push_back(key);
    try {
      it->set(rc, value);
    } catch (const std::invalid_argument& e) {
      fail(ErrorKind::Config, where + "key '" + key + "': " + e.what());
    }
    rc.entries.emplace_back(key, value);
  }
  rc.validate();
  return rc;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str(), path);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : key_table()) out.push_back(k.name);
  return out;
}

std::string render_config(const RunConfig& rc) {
  std::string s;
  for (const auto& k : key_table()) s += k.name + " = " + k.get(rc) + "\n";
  return s;
}

}  // namespace triboltz

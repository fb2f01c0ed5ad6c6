#include "triboltz/dsmc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "triboltz/errors.hpp"
#include "triboltz/kinematics.hpp"
#include "triboltz/quadrature.hpp"

namespace triboltz {

namespace {

double ipow(double x, double p) {
  if (p == 0.0) return 1.0;
  if (p == 1.0) return x;
  return std::pow(x, p);
}

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Vec zero_vec(int d) { return Vec(d); }

Vec resolved_mean(const Vec& m, int d) {
  if (m.size() == 0) return zero_vec(d);
  if (m.size() != d) fail(ErrorKind::Config, "initial data: mean has dimension " + num(m.size()) + ", expected " + num(d));
  return m;
}

double ratio(long a, long c) { return c > 0 ? static_cast<double>(a) / static_cast<double>(c) : 1.0; }

}  // namespace

void SimConfig::validate() const {
  kernel.validate();
  if (!binary && !ternary) fail(ErrorKind::Config, "sim: at least one of binary/ternary collisions must be enabled");
  if (binary && N < 2) fail(ErrorKind::Config, "sim: N >= 2 is required for binary events");
  if (ternary && N < 3) fail(ErrorKind::Config, "sim: N >= 3 is required for ternary events");
  if (!(dt > 0.0)) fail(ErrorKind::Config, "sim: dt must be positive");
  if (!(tEnd >= 0.0)) fail(ErrorKind::Config, "sim: tEnd must be nonnegative");
  if (!(mass > 0.0)) fail(ErrorKind::Config, "sim: mass must be positive");
  if (outputEvery < 1) fail(ErrorKind::Config, "sim: outputEvery must be at least 1");
  if (!(safety >= 1.0)) fail(ErrorKind::Config, "sim: majorant safety factor must be at least 1");
  if (!(maxEventFraction > 0.0)) fail(ErrorKind::Config, "sim: maxEventFraction must be positive");
  if (truncationR && !(*truncationR >= 1.0)) fail(ErrorKind::Config, "sim: truncation radius R must satisfy R >= 1");
  if (expTerms < 0) fail(ErrorKind::Config, "sim: expTerms must be nonnegative");
  if (expTerms > 0 && !(expS > 0.0 && expS <= 2.0)) fail(ErrorKind::Config, "sim: exponential order s must lie in (0, 2]");
  for (double k : outputOrders)
    if (!(k >= 0.0)) fail(ErrorKind::Config, "sim: moment orders must be nonnegative");
  switch (init.law) {
    case InitialData::Law::Maxwellian:
      if (!(init.T >= 0.0)) fail(ErrorKind::Config, "initial data: temperature must be nonnegative");
      resolved_mean(init.u, kernel.d);
      break;
    case InitialData::Law::GaussianMixture: {
      if (init.mixture.empty()) fail(ErrorKind::Config, "initial data: mixture has no components");
      double tot = 0.0;
      for (const auto& c : init.mixture) {
        if (!(c.weight >= 0.0) || !(c.T >= 0.0)) fail(ErrorKind::Config, "initial data: mixture weights and temperatures must be nonnegative");
        resolved_mean(c.mean, kernel.d);
        tot += c.weight;
      }
      if (!(tot > 0.0)) fail(ErrorKind::Config, "initial data: mixture weights sum to zero");
      break;
    }
    case InitialData::Law::Ball:
      if (!(init.R >= 1.0)) fail(ErrorKind::Config, "initial data: ball radius R must satisfy R >= 1");
      break;
  }
}

Ensemble init_ensemble(const SimConfig& sc) {
  sc.validate();
  const int d = sc.kernel.d, N = sc.N;
  Rng rng = substream(sc.seed, 7, 0);
  std::normal_distribution<double> g;
  std::vector<double> flat(static_cast<std::size_t>(N) * d);
  const InitialData& in = sc.init;
  switch (in.law) {
    case InitialData::Law::Maxwellian: {
      const Vec u = resolved_mean(in.u, d);
      const double s = std::sqrt(in.T);
      for (int i = 0; i < N; ++i)
        for (int c = 0; c < d; ++c) flat[i * d + c] = u[c] + s * g(rng);
      break;
    }
    case InitialData::Law::GaussianMixture: {
      std::vector<double> ws;
      for (const auto& c : in.mixture) ws.push_back(c.weight);
      std::discrete_distribution<int> pick(ws.begin(), ws.end());
      for (int i = 0; i < N; ++i) {
        const MixtureComponent& m = in.mixture[pick(rng)];
        const Vec mu = resolved_mean(m.mean, d);
        const double s = std::sqrt(m.T);
        for (int c = 0; c < d; ++c) flat[i * d + c] = mu[c] + s * g(rng);
      }
      break;
    }
    case InitialData::Law::Ball: {
      const double rho = std::sqrt(in.R * in.R - 1.0);
      for (int i = 0; i < N; ++i) {
        const Vec dir = uniform_sphere<kMaxDim>(rng, d);
        const double r = rho * std::pow(uniform01(rng), 1.0 / d);
        for (int c = 0; c < d; ++c) flat[i * d + c] = r * dir[c];
      }
      break;
    }
  }
  Ensemble e(d, std::move(flat), sc.mass / N);
  if (sc.truncationR) e = truncate_ensemble(e, *sc.truncationR);
  return e;
}

Ensemble truncate_ensemble(const Ensemble& e, double R) {
  if (!(R >= 1.0)) fail(ErrorKind::InvalidInput, "truncate_ensemble: R must satisfy R >= 1");
  const int d = e.dim();
  std::vector<double> kept;
  kept.reserve(e.flat().size());
  const double R2 = R * R;
  for (int i = 0; i < e.size(); ++i) {
    const Vec v = e.velocity(i);
    if (bracket2(v) <= R2)
      for (int c = 0; c < d; ++c) kept.push_back(v[c]);
  }
  return Ensemble(d, std::move(kept), e.weight());
}

Simulator::Simulator(const SimConfig& sc) : Simulator(sc, init_ensemble(sc)) {}

Simulator::Simulator(const SimConfig& sc, Ensemble e) : sc_(sc), e_(std::move(e)), rng_(substream(sc.seed, 11, 0)) {
  sc_.validate();
  if (e_.dim() != sc_.kernel.d) fail(ErrorKind::InvalidInput, "Simulator: ensemble dimension differs from kernel dimension");
  if (e_.size() < 1) fail(ErrorKind::InvalidInput, "Simulator: empty ensemble");
  const int d = sc_.kernel.d;
  area2_ = sphere_area(d);
  area3_ = sphere_area(2 * d);
  const Vec p = e_.momentum();
  center_ = p * (1.0 / e_.mass());
  refresh_majorants();
}

void Simulator::refresh_majorants() {
  const int d = e_.dim();
  const double* x = e_.data();
  double r2 = 0.0;
  for (int i = 0, n = e_.size(); i < n; ++i) {
    double s = 0.0;
    for (int c = 0; c < d; ++c) {
      const double y = x[i * d + c] - center_[c];
      s += y * y;
    }
    r2 = std::max(r2, s);
  }
  radius_ = std::sqrt(r2);
  const KernelConfig& k = sc_.kernel;
  const double n = e_.size(), w = e_.weight();
  // |u| <= 2R, |u~| <= 3R, |U| <= 2 sqrt2 R for velocities within R of the centre.
  pair2_ = sc_.safety * ipow(2.0 * radius_, k.gamma2) * k.b2_sup() * area2_;
  pair3_ = sc_.safety * ipow(3.0 * radius_, k.gamma3 - k.theta3) * ipow(2.0 * std::sqrt(2.0) * radius_, k.theta3) *
           k.b3_sup() * area3_;
  rate2_ = (sc_.binary && n >= 2) ? 0.5 * w * n * (n - 1.0) * pair2_ : 0.0;
  rate3_ = (sc_.ternary && n >= 3) ? w * w * n * (n - 1.0) * (n - 2.0) / 6.0 * pair3_ : 0.0;
}

double Simulator::tracked_phi(const Vec& v) const {
  const double b = bracket2(v);
  return sc_.trackOrder == 4.0 ? b * b : std::pow(b, 0.5 * sc_.trackOrder);
}

void Simulator::note_speed(const Vec& v, StepStats& st) {
  if (norm(v - center_) > radius_) {
    refresh_majorants();
    ++st.majorantRefreshes;
  }
}

bool Simulator::binary_candidate(StepStats& st) {
  ++st.binaryCandidates;
  const int d = sc_.kernel.d;
  int i, j;
  distinct_pair(rng_, e_.size(), i, j);
  const Vec om = uniform_sphere<kMaxDim>(rng_, d);
  const Vec v = e_.velocity(i), v1 = e_.velocity(j);
  const Vec u = v1 - v;
  const double un = norm(u);
  if (!(un > 0.0)) {
    uniform01(rng_);
    return false;
  }
  const double acc = ipow(un, sc_.kernel.gamma2) * sc_.kernel.b2(dot(u, om) / un) * area2_ / pair2_;
  if (acc > 1.0) fail(ErrorKind::Numerical, "dsmc: binary majorant violated (ratio " + num(acc) + ")");
  if (uniform01(rng_) >= acc) return false;
  const BinaryPost p = binary_collide(v, v1, om);
  const double w = e_.weight();
  const double dphi = tracked_phi(p.v) + tracked_phi(p.v1) - tracked_phi(v) - tracked_phi(v1);
  st.tracked += w * dphi;
  st.trackedSquares += w * w * dphi * dphi;
  st.energyDrift += w * (norm2(p.v) + norm2(p.v1) - norm2(v) - norm2(v1));
  st.momentumDrift = std::max(st.momentumDrift, w * norm(p.v + p.v1 - v - v1));
  e_.set_velocity(i, p.v);
  e_.set_velocity(j, p.v1);
  ++st.binaryAccepted;
  ++eventsBinary_;
  note_speed(p.v, st);
  note_speed(p.v1, st);
  return true;
}

bool Simulator::ternary_candidate(StepStats& st) {
  ++st.ternaryCandidates;
  const int d = sc_.kernel.d;
  int i, j, k;
  distinct_triple(rng_, e_.size(), i, j, k);
  const Vec2 om = uniform_sphere<kMaxStack>(rng_, 2 * d);
  const Vec v = e_.velocity(i), v1 = e_.velocity(j), v2 = e_.velocity(k);
  const RelativeState rs = relative_state(v, v1, v2);
  if (!rs.uBarDefined || !(norm(rs.U) > 0.0)) {
    uniform01(rng_);
    return false;
  }
  const double acc = ternary_cross_section(sc_.kernel, rs, om) * area3_ / pair3_;
  if (acc > 1.0) fail(ErrorKind::Numerical, "dsmc: ternary majorant violated (ratio " + num(acc) + ")");
  if (uniform01(rng_) >= acc) return false;
  const TernaryPost p = ternary_collide(v, v1, v2, om, TernaryMode::Central);
  const double w = e_.weight();
  const double dphi = tracked_phi(p.v) + tracked_phi(p.v1) + tracked_phi(p.v2) - tracked_phi(v) - tracked_phi(v1) -
                      tracked_phi(v2);
  st.tracked += w * dphi;
  st.trackedSquares += w * w * dphi * dphi;
  st.energyDrift += w * (norm2(p.v) + norm2(p.v1) + norm2(p.v2) - norm2(v) - norm2(v1) - norm2(v2));
  st.momentumDrift = std::max(st.momentumDrift, w * norm(p.v + p.v1 + p.v2 - v - v1 - v2));
  e_.set_velocity(i, p.v);
  e_.set_velocity(j, p.v1);
  e_.set_velocity(k, p.v2);
  ++st.ternaryAccepted;
  ++eventsTernary_;
  note_speed(p.v, st);
  note_speed(p.v1, st);
  note_speed(p.v2, st);
  return true;
}

StepStats Simulator::step(double dt) {
  if (!(dt > 0.0)) fail(ErrorKind::InvalidInput, "step: dt must be positive");
  StepStats st;
  refresh_majorants();
  double h = dt;
  const double cap = sc_.maxEventFraction * e_.size();
  while (h * (rate2_ + rate3_) > cap) {
    h *= 0.5;
    ++st.halvings;
  }
  st.dt = h;
  std::exponential_distribution<double> wait(1.0);
  double s = 0.0;
  while (true) {
    const double tot = rate2_ + rate3_;
    if (!(tot > 0.0)) break;
    s += wait(rng_) / tot;
    if (s > h) break;
    if (uniform01(rng_) * tot < rate2_)
      binary_candidate(st);
    else
      ternary_candidate(st);
  }
  t_ += h;
  st.binaryEfficiency = ratio(st.binaryAccepted, st.binaryCandidates);
  st.ternaryEfficiency = ratio(st.ternaryAccepted, st.ternaryCandidates);
  return st;
}

StepStats Simulator::step_toward(double target) {
  const double rem = target - t_;
  const StepStats st = step(std::min(sc_.dt, rem));
  if (rem - st.dt <= 1e-12 * std::max(1.0, std::abs(target))) t_ = target;
  return st;
}

StepStats Simulator::advance_to(double t) {
  StepStats agg;
  while (t_ < t) {
    const StepStats st = step_toward(t);
    agg.binaryCandidates += st.binaryCandidates;
    agg.binaryAccepted += st.binaryAccepted;
    agg.ternaryCandidates += st.ternaryCandidates;
    agg.ternaryAccepted += st.ternaryAccepted;
    agg.energyDrift += st.energyDrift;
    agg.momentumDrift = std::max(agg.momentumDrift, st.momentumDrift);
    agg.halvings += st.halvings;
    agg.majorantRefreshes += st.majorantRefreshes;
    agg.tracked += st.tracked;
    agg.trackedSquares += st.trackedSquares;
    agg.dt += st.dt;
  }
  agg.binaryEfficiency = ratio(agg.binaryAccepted, agg.binaryCandidates);
  agg.ternaryEfficiency = ratio(agg.ternaryAccepted, agg.ternaryCandidates);
  return agg;
}

TrajectoryRow Simulator::snapshot() const {
  TrajectoryRow r;
  r.t = t_;
  r.m0 = e_.mass();
  r.momentum = e_.momentum();
  r.m2 = moment(e_, 2.0);
  for (double k : sc_.outputOrders) r.moments.push_back(moment(e_, k));
  if (sc_.expTerms > 0) r.expPartial = exp_partial_sum(e_, sc_.expS, sc_.expZ, sc_.expTerms);
  r.eventsBinary = eventsBinary_;
  r.eventsTernary = eventsTernary_;
  return r;
}

MomentTrajectory run(Simulator& sim) {
  const SimConfig& sc = sim.config();
  MomentTrajectory tr;
  tr.orders = sc.outputOrders;
  tr.rows.push_back(sim.snapshot());
  const TrajectoryRow first = tr.rows.front();
  long steps = 0;
  double lastDt = 0.0;
  while (sim.time() < sc.tEnd) {
    const StepStats st = sim.step_toward(sc.tEnd);
    lastDt = st.dt;
    tr.halvings += st.halvings;
    ++steps;
    const bool last = sim.time() >= sc.tEnd;
    if (steps % sc.outputEvery == 0 || last) {
      TrajectoryRow r = sim.snapshot();
      r.dt = lastDt;
      for (double x : r.moments)
        if (!std::isfinite(x)) fail(ErrorKind::Numerical, "run: non-finite moment at t = " + num(r.t));
      tr.rows.push_back(std::move(r));
    }
  }
  tr.steps = steps;
  const TrajectoryRow& end = tr.rows.back();
  tr.massDrift = std::abs(end.m0 - first.m0) / first.m0;
  tr.momentumDrift = norm(end.momentum - first.momentum) / std::sqrt(first.m0 * first.m2);
  tr.energyDrift = std::abs(end.m2 - first.m2) / first.m2;
  return tr;
}

MomentTrajectory run(const SimConfig& sc) {
  Simulator sim(sc);
  return run(sim);
}

}  // namespace triboltz

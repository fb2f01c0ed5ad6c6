#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triboltz/kernels.hpp"
#include "triboltz/moments.hpp"
#include "triboltz/random.hpp"

namespace triboltz {

struct MixtureComponent {
  double weight = 1.0;
  Vec mean;
  double T = 1.0;
};

struct InitialData {
  enum class Law { Maxwellian, GaussianMixture, Ball };
  Law law = Law::Maxwellian;
  double T = 1.0;                          // Maxwellian temperature; zero gives a point mass
  Vec u;                                   // Maxwellian drift; empty means zero
  std::vector<MixtureComponent> mixture;
  double R = 2.0;                          // Ball: <v> <= R
};

struct SimConfig {
  KernelConfig kernel;
  int N = 10000;
  double dt = 0.01;
  double tEnd = 1.0;
  std::uint64_t seed = 1;
  double mass = 1.0;
  InitialData init;
  std::optional<double> truncationR;
  std::vector<double> outputOrders{4.0};
  int outputEvery = 10;
  bool binary = true;
  bool ternary = true;
  double safety = 1.2;
  double maxEventFraction = 0.1;
  double trackOrder = 4.0;                 // test function <v>^q whose increments are recorded
  double expS = 1.0, expZ = 0.0;           // exp partial sum recorded when expTerms > 0
  int expTerms = 0;

  void validate() const;
};

struct StepStats {
  long binaryCandidates = 0, binaryAccepted = 0;
  long ternaryCandidates = 0, ternaryAccepted = 0;
  double binaryEfficiency = 1.0, ternaryEfficiency = 1.0;
  double energyDrift = 0.0;     // sum of per-event energy changes
  double momentumDrift = 0.0;   // max per-event momentum change
  double dt = 0.0;              // effective step
  int halvings = 0;
  int majorantRefreshes = 0;
  double tracked = 0.0;         // sum of w * (change of <v>^trackOrder) over events
  double trackedSquares = 0.0;  // sum of squared increments
};

Ensemble init_ensemble(const SimConfig& sc);

// Drops particles with <v> > R; the weight is unchanged.
Ensemble truncate_ensemble(const Ensemble& e, double R);

struct TrajectoryRow {
  double t = 0.0;
  double m0 = 0.0;
  Vec momentum;
  double m2 = 0.0;
  std::vector<double> moments;
  double expPartial = 0.0;
  long eventsBinary = 0, eventsTernary = 0;
  double dt = 0.0;
};

struct MomentTrajectory {
  std::vector<double> orders;
  std::vector<TrajectoryRow> rows;
  double massDrift = 0.0;      // relative
  double momentumDrift = 0.0;  // absolute change of |momentum| relative to sqrt(m0 m2)
  double energyDrift = 0.0;    // relative change of m2
  long steps = 0;
  int halvings = 0;
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& sc);
  Simulator(const SimConfig& sc, Ensemble e);

  // Advances by at most dt, shrinking the step until the expected candidate count is at most
  // maxEventFraction * N.
  StepStats step(double dt);
  StepStats step() { return step(sc_.dt); }
  // One step of at most dt toward time target, landing on it exactly when reached.
  StepStats step_toward(double target);
  // Advances to time t exactly, aggregating statistics.
  StepStats advance_to(double t);

  double time() const { return t_; }
  const Ensemble& ensemble() const { return e_; }
  const SimConfig& config() const { return sc_; }
  long binary_events() const { return eventsBinary_; }
  long ternary_events() const { return eventsTernary_; }
  TrajectoryRow snapshot() const;

 private:
  void refresh_majorants();
  bool binary_candidate(StepStats& st);
  bool ternary_candidate(StepStats& st);
  void note_speed(const Vec& v, StepStats& st);
  double tracked_phi(const Vec& v) const;

  SimConfig sc_;
  Ensemble e_;
  Rng rng_;
  double t_ = 0.0;
  Vec center_;
  double radius_ = 0.0;
  double pair2_ = 0.0, pair3_ = 0.0;  // per-candidate majorants including safety
  double rate2_ = 0.0, rate3_ = 0.0;  // total candidate rates
  double area2_ = 0.0, area3_ = 0.0;
  long eventsBinary_ = 0, eventsTernary_ = 0;
};

MomentTrajectory run(const SimConfig& sc);
MomentTrajectory run(Simulator& sim);

}  // namespace triboltz

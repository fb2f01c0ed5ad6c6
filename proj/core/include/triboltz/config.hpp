#pragma once

#include <string>
#include <utility>
#include <vector>

#include "triboltz/dsmc.hpp"
#include "triboltz/povzner.hpp"
#include "triboltz/weakform.hpp"

namespace triboltz {

struct VerifyConfig {
  std::string suite = "all";  // kinematics | lemmas | odi | stationarity | all
  long samples = 10000;
  int N = 20000;
  std::vector<double> q{3.0, 4.0, 6.0};
  double expS = 2.0;
  std::vector<double> sp{4.0, 6.0};
  std::string corrupt = "none";  // none | cq_zero
  double sigmas = 3.0;
};

struct EnvelopeConfig {
  double q = 4.0;
  double sigmas = 3.0;
  double expThreshold = 4.0;  // multiple of m0
  int expTerms = 8;
  double bisectionTolerance = 1e-3;
};

struct RunConfig {
  SimConfig sim;
  CoerciveSearch search;
  std::vector<double> coerciveOrders;  // extra orders tabulated on top of those a command needs
  Budget budget;
  VerifyConfig verify;
  EnvelopeConfig envelope;
  std::vector<double> constantsQ{4.0};
  std::vector<std::pair<std::string, std::string>> entries;  // as read, in order
  std::string source;

  void validate() const;
};

// Flat `key = value` lines with `#` comments. Unknown keys, malformed values and violated
// hypotheses raise Config errors naming the line or the hypothesis.
RunConfig parse_config_text(const std::string& text, const std::string& source = "<text>");
RunConfig parse_config(const std::string& path);

// Accepted keys in documentation order.
std::vector<std::string> config_keys();

// Canonical `key = value` rendering of the effective configuration.
std::string render_config(const RunConfig& rc);

}  // namespace triboltz

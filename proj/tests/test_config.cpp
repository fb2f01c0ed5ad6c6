#include <gtest/gtest.h>

#include <string>

#include "triboltz/config.hpp"
#include "triboltz/errors.hpp"

using namespace triboltz;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e.kind()), 2);
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  const RunConfig rc = parse_config_text(
      "# comment\n"
      "d = 3\n"
      "gamma2 = 0.5   # trailing\n"
      "\n"
      "N = 123\n"
      "output_orders = 4, 6\n"
      "init = ball\n"
      "init_R = 3\n");
  EXPECT_EQ(rc.sim.kernel.d, 3);
  EXPECT_DOUBLE_EQ(rc.sim.kernel.gamma2, 0.5);
  EXPECT_EQ(rc.sim.N, 123);
  EXPECT_EQ(rc.sim.outputOrders, (std::vector<double>{4.0, 6.0}));
  EXPECT_EQ(rc.sim.init.law, InitialData::Law::Ball);
  EXPECT_DOUBLE_EQ(rc.sim.init.R, 3.0);
}

TEST(Config, RejectsUnknownAndDuplicateKeys) {
  EXPECT_NE(error_of("gamma = 1\n").find("unknown key 'gamma'"), std::string::npos);
  EXPECT_NE(error_of("d = 2\nd = 3\n").find("duplicate key"), std::string::npos);
  EXPECT_NE(error_of("d 2\n").find("key = value"), std::string::npos);
}

TEST(Config, ConstraintErrorsNameTheHypothesis) {
  EXPECT_NE(error_of("gamma2 = 3\n").find("gamma_2 in [0,2]"), std::string::npos);
  EXPECT_NE(error_of("gamma2 = 0\ngamma3 = 0\n").find("gamma = max{gamma_2, gamma_3} > 0"), std::string::npos);
  EXPECT_NE(error_of("verify_q = 2\n").find("q > 2"), std::string::npos);
  EXPECT_NE(error_of("verify_suite = everything\n").find("verify_suite"), std::string::npos);
}

TEST(Config, MalformedValuesRejected) {
  EXPECT_FALSE(error_of("N = many\n").empty());
  EXPECT_FALSE(error_of("output_orders = 4,,6\n").empty());
}

TEST(Config, MissingFileIsConfigError) {
  try {
    parse_config("/nonexistent/triboltz.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}

TEST(Config, RenderRoundTrips) {
  const RunConfig a = parse_config_text("d = 2\ngamma3 = 0.5\nseed = 9\nmixture = 0.5, 0.25, 2, 0; 0.5, 0.25, -2, 0\n"
                                        "init = mixture\n");
  const std::string text = render_config(a);
  const RunConfig b = parse_config_text(text);
  EXPECT_EQ(render_config(b), text);
  EXPECT_DOUBLE_EQ(b.sim.kernel.gamma3, 0.5);
  EXPECT_EQ(b.sim.init.mixture.size(), 2u);
}

TEST(Config, ShippedConfigsParse) {
  for (const char* name : {"default", "bimodal", "envelope_compact", "mixed_maxwell_hard", "verify_quick", "odi_corrupt"})
    EXPECT_NO_THROW(parse_config(std::string(TRIBOLTZ_SOURCE_DIR) + "/configs/" + name + ".cfg")) << name;
}

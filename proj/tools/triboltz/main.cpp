#include <cstdint>
#include <exception>
#include <iostream>
#include <new>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "triboltz/config.hpp"
#include "triboltz/errors.hpp"
#include "triboltz/harness.hpp"

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "triboltz_out";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "configuration file (key = value lines)")->required();
  cmd->add_option("--seed", c.seed, "override the configured seed");
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace triboltz;
  CLI::App app{"Binary and ternary Boltzmann moment bounds, DSMC and property checks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Common c;
  struct Cmd {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, const std::string&, std::ostream&);
  };
  const Cmd cmds[] = {
      {"constants", "compute coercive tables and bound constants (BoundReport JSON)", &cmd_constants},
      {"verify", "run property suites; exit 1 with the first counterexample on failure", &cmd_verify},
      {"simulate", "run DSMC and write the moment trajectory CSV", &cmd_simulate},
      {"envelope-check", "overlay DSMC moments on the generation envelopes", &cmd_envelope_check},
  };
  for (const Cmd& k : cmds) add_common(app.add_subcommand(k.name, k.help), c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code_for(ErrorKind::Usage);
  }

  try {
    RunConfig rc = parse_config(c.config);
    if (c.seed) rc.sim.seed = *c.seed;
    for (const Cmd& k : cmds)
      if (app.got_subcommand(k.name)) return k.fn(rc, c.out, std::cout);
  } catch (const Error& e) {
    std::cerr << "triboltz: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "triboltz: out of memory\n";
    return exit_code_for(ErrorKind::Numerical);
  } catch (const std::exception& e) {
    std::cerr << "triboltz: " << e.what() << "\n";
    return exit_code_for(ErrorKind::Numerical);
  }
  return exit_code_for(ErrorKind::Usage);
}

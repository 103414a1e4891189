#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lk/cli_runner.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  bool quiet = false;
  // numeric overrides, applied on top of the config file
  int n = -1;
  int depth = -1;
  double dt = -1.0;
  double T = -1.0;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out_dir, "output directory for artifacts");
  cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  cmd->add_flag("--quiet", flags.quiet, "suppress the summary line");
  cmd->add_option("--n", flags.n, "override: truncation order n");
  cmd->add_option("--depth", flags.depth, "override: generator depth");
  cmd->add_option("--dt", flags.dt, "override: integrator step");
  cmd->add_option("--T", flags.T, "override: horizon");
  cmd->add_option("--seed", flags.seed, "override: RNG seed");
}

int run(const std::string& name, const CommonFlags& flags) {
  nlohmann::json config = nlohmann::json::object();
  if (!flags.config_path.empty()) {
    std::ifstream is(flags.config_path);
    if (!is) {
      nlohmann::json doc = {{"error",
                             {{"code", lk::cli::kExitIo},
                              {"message", "cannot open config: " + flags.config_path},
                              {"details", nlohmann::json::array()}}}};
      std::cerr << doc.dump() << "\n";
      return lk::cli::kExitIo;
    }
    try {
      is >> config;
    } catch (const nlohmann::json::parse_error& e) {
      nlohmann::json doc = {{"error",
                             {{"code", lk::cli::kExitValidation},
                              {"message", std::string("config is not valid JSON: ") + e.what()},
                              {"details", nlohmann::json::array()}}}};
      std::cerr << doc.dump() << "\n";
      return lk::cli::kExitValidation;
    }
  }
  if (config.is_object() && config.contains("command")) {
    if (config["command"] != name) {
      nlohmann::json doc = {{"error",
                             {{"code", lk::cli::kExitValidation},
                              {"message", "config command \"" +
                                              config["command"].get<std::string>() +
                                              "\" does not match subcommand \"" + name + "\""},
                              {"details", nlohmann::json::array()}}}};
      std::cerr << doc.dump() << "\n";
      return lk::cli::kExitValidation;
    }
    config.erase("command");
  }
  if (flags.n >= 0) config["n"] = flags.n;
  if (flags.depth >= 0) config["depth"] = flags.depth;
  if (flags.dt > 0) config["dt"] = flags.dt;
  if (flags.T > 0) config["T"] = flags.T;
  if (flags.seed >= 0) config["seed"] = static_cast<uint64_t>(flags.seed);

  lk::cli::RunOptions opts;
  opts.out_dir = flags.out_dir;
  opts.threads = flags.threads;
  opts.quiet = flags.quiet;
  return lk::cli::run_command(name, config, opts, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner-Kufarev coefficient dynamics toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> names = {"evolve",     "conserve",       "build-lneg",
                                          "witt-check", "duality-check",  "geodesic",
                                          "geodesic-const", "sle-sim",    "sle-martingale"};
  std::vector<CommonFlags> flags(names.size());
  std::vector<CLI::App*> cmds;
  for (size_t i = 0; i < names.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(names[i]);
    add_common(cmd, flags[i]);
    cmds.push_back(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  for (size_t i = 0; i < names.size(); ++i)
    if (cmds[i]->parsed()) return run(names[i], flags[i]);
  return lk::cli::kExitValidation;
}

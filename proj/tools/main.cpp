#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mmsim/commands.hpp"
#include "mmsim/errors.hpp"
#include "mmsim/io.hpp"

namespace {

void print_error_line(const char* category, const std::string& message) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += ' ';
      continue;
    }
    escaped += c;
  }
  std::fprintf(stderr, "{\"error\":\"%s\",\"message\":\"%s\"}\n", category, escaped.c_str());
}

struct CommonRunFlags {
  std::string config_path;
  std::string manifest_path;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";
  bool serial = false;
  int threads = 0;
  bool dump_edges = false;
  std::map<std::string, std::string> overrides;
};

void add_run_flags(CLI::App* cmd, CommonRunFlags& flags, bool with_manifest) {
  cmd->add_option("--config", flags.config_path, "key=value config file");
  if (with_manifest) {
    cmd->add_option("--manifest", flags.manifest_path,
                    "re-run the config and seeds stored in a manifest.json");
  }
  cmd->add_option("--seed", flags.seeds, "simulation seed (repeatable)");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_flag("--serial", flags.serial, "disable OpenMP execution");
  cmd->add_option("--threads", flags.threads, "OpenMP thread count (0 = runtime default)");
  cmd->add_flag("--dump-edges", flags.dump_edges, "write the informative-layer edge list");
  for (const std::string& key : mmsim::config_keys()) {
    if (key == "seed") continue;  // owned by the repeatable --seed option
    cmd->add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags.overrides[key] = v; },
        "override config key " + key);
  }
}

mmsim::RunOptions resolve_options(const CommonRunFlags& flags) {
  mmsim::RunOptions opts;
  if (!flags.manifest_path.empty()) {
    auto manifest = mmsim::io::read_manifest(flags.manifest_path);
    opts.cfg = manifest.config;
    opts.seeds = manifest.seeds;
  } else if (!flags.config_path.empty()) {
    opts.cfg = mmsim::parse_config_file(flags.config_path);
  }
  for (const auto& [key, value] : flags.overrides) {
    mmsim::apply_override(opts.cfg, key, value);
  }
  if (!flags.seeds.empty()) opts.seeds = flags.seeds;
  opts.out_dir = flags.out_dir;
  opts.policy = flags.serial ? mmsim::ExecPolicy::Serial : mmsim::ExecPolicy::Parallel;
  opts.dump_edges = flags.dump_edges;
#ifdef _OPENMP
  if (flags.threads > 0) omp_set_num_threads(flags.threads);
#endif
  return opts;
}

std::vector<std::string> split_values(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmsim: two-asset multilayer market simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one or more seeds and write CSV outputs");
  CommonRunFlags run_flags;
  add_run_flags(run, run_flags, true);

  auto* analyze = app.add_subcommand("analyze", "return-distribution analysis of a run directory");
  std::string run_dir;
  analyze->add_option("--run", run_dir, "directory containing prices.csv")->required();

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep, one run tree per value");
  CommonRunFlags sweep_flags;
  std::string sweep_param;
  std::string sweep_values;
  sweep->add_option("--param", sweep_param, "config key to sweep")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  add_run_flags(sweep, sweep_flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      mmsim::RunOptions opts = resolve_options(run_flags);
      mmsim::run_command(opts);
    } else if (analyze->parsed()) {
      mmsim::analyze_command(run_dir);
    } else if (sweep->parsed()) {
      mmsim::RunOptions opts = resolve_options(sweep_flags);
      mmsim::sweep_command(sweep_param, split_values(sweep_values), opts);
    }
  } catch (const mmsim::ConfigError& e) {
    print_error_line("config", e.what());
    return 2;
  } catch (const mmsim::ParseError& e) {
    print_error_line("parse", e.what());
    return 2;
  } catch (const mmsim::InputError& e) {
    print_error_line("input", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error_line("runtime", e.what());
    return 1;
  }
  return 0;
}

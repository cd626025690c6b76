#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "criteria.hpp"
#include "json.hpp"
#include "progressftx/harness.hpp"
#include "progressftx/stopping.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
};

void add_common(CLI::App* cmd, Common& c, bool need_config) {
  auto* cfg = cmd->add_option("-c,--config", c.config, "Configuration file (key = value)");
  if (need_config) cfg->required()->check(CLI::ExistingFile);
  else cfg->check(CLI::ExistingFile);
  cmd->add_option("-s,--seed", c.seed, "Master seed (overrides the config)");
  cmd->add_option("-o,--out", c.out, "Output path (overrides the config)");
  cmd->add_option("-w,--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

pftx::ExperimentConfig resolve(const Common& c) {
  pftx::ExperimentConfig cfg = c.config.empty() ? pftx::ExperimentConfig{} : pftx::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.out) cfg.output = *c.out;
  if (c.workers) cfg.workers = *c.workers;
  cfg.validate();
  return cfg;
}

int sweep(const Common& c, bool quiet) {
  const auto cfg = resolve(c);
  pftx::ProgressFn progress;
  if (!quiet) {
    progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\rsweep: %zu/%zu grid points", done, total);
      if (done == total) std::fputc('\n', stderr);
    };
  }
  const auto result = pftx::run_sweep(cfg, progress);
  pftx::emit_csv(result, cfg.output);
  std::cout << "wrote " << cfg.output << " and " << pftx::companion_path(cfg.output) << " ("
            << result.rows.size() << " rows, config " << cfg.hash() << ")\n";
  return 0;
}

int calibrate(const Common& c, const std::vector<double>& deltas,
              const std::vector<std::size_t>& received) {
  const auto cfg = resolve(c);
  const auto table = pftx::GainTable::from_model(cfg.build_model());
  for (std::size_t n : received) {
    if (n >= table.per_dim().size()) throw std::invalid_argument("--received index out of range");
  }
  const pftx::ChannelModel channel(cfg.channel);
  const std::size_t y0 = channel.features_per_slot();

  json doc;
  doc["config_hash"] = cfg.hash();
  doc["features_per_slot"] = y0;
  doc["horizon"] = cfg.horizon;
  doc["received"] = received;
  doc["gain_grid"] = pftx::cumulative_gain_curve(table, received, y0, cfg.horizon);
  json states = json::array();
  for (double d : deltas) {
    const auto b = pftx::calibrate_for_state(d, table, received, y0, cfg.horizon, cfg.quad_tol);
    states.push_back({{"delta1", d}, {"c1", b.c1}, {"c2", b.c2}});
  }
  doc["envelopes"] = states;
  const auto os = pftx::one_shot_bound(table, y0, cfg.quad_tol);
  doc["one_shot"] = {{"c1", os.c1}, {"c2", os.c2}, {"grid", os.grid}};

  const std::string text = doc.dump(2) + "\n";
  if (c.out) {
    std::ofstream f(*c.out);
    if (!(f << text)) throw std::runtime_error("cannot write " + *c.out);
  } else {
    std::cout << text;
  }
  return 0;
}

int selftest(const Common& c, const std::vector<int>& ids) {
  const std::size_t workers = c.workers.value_or(1);
  std::ostringstream lines;
  const int failures = pftx::acceptance::run_suite(
      ids.empty() ? pftx::acceptance::criterion_ids() : ids, lines, workers);
  std::cout << lines.str();
  if (c.out) {
    std::ofstream f(*c.out);
    if (!(f << lines.str())) throw std::runtime_error("cannot write " + *c.out);
  }
  std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ProgressFTX simulator: sweeps, envelope calibration and acceptance checks"};
  app.require_subcommand(1);

  Common sweep_opts, cal_opts, self_opts;
  bool quiet = false;
  auto* sw = app.add_subcommand("sweep", "Run the configured experiment grid and write CSV files");
  add_common(sw, sweep_opts, true);
  sw->add_flag("-q,--quiet", quiet, "No progress output");

  std::vector<double> deltas{0.0};
  std::vector<std::size_t> received;
  auto* cal = app.add_subcommand("calibrate", "Print envelope constants for given states as JSON");
  add_common(cal, cal_opts, false);
  cal->add_option("--delta1", deltas, "Current differential distance (repeatable)");
  cal->add_option("--received", received, "Indices already received (repeatable)");

  std::vector<int> ids;
  auto* self = app.add_subcommand("selftest", "Run the acceptance criteria");
  add_common(self, self_opts, false);
  self->add_option("--criterion", ids, "Criterion number (repeatable); default: all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sw) return sweep(sweep_opts, quiet);
    if (*cal) return calibrate(cal_opts, deltas, received);
    return selftest(self_opts, ids);
  } catch (const std::exception& e) {
    std::cerr << "progressftx: error: " << e.what() << '\n';
    return 2;
  }
}

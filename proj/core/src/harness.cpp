#include "progressftx/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace pftx {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> list_tokens(const std::string& value) {
  std::string tmp = value;
  std::replace(tmp.begin(), tmp.end(), ',', ' ');
  std::istringstream in(tmp);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string{}; }

class LineParser {
 public:
  LineParser(std::size_t line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + key_ + ": " + msg);
  }

  double real(const std::string& tok) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(v)) fail("expected a number, got '" + tok + "'");
    return v;
  }

  std::uint64_t integer(const std::string& tok) const {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      fail("expected a non-negative integer, got '" + tok + "'");
    }
    try {
      return std::stoull(tok);
    } catch (const std::exception&) {
      fail("integer out of range '" + tok + "'");
    }
  }

  std::string single(const std::string& value) const {
    const auto toks = list_tokens(value);
    if (toks.size() != 1) fail("expected exactly one value");
    return toks.front();
  }

  Vector reals(const std::string& value) const {
    Vector out;
    for (const auto& t : list_tokens(value)) out.push_back(real(t));
    if (out.empty()) fail("expected at least one value");
    return out;
  }

 private:
  std::size_t line_;
  std::string key_;
};

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (workers < 1) throw ConfigError("workers: must be >= 1");
  if (horizon < 1) throw ConfigError("horizon: must be >= 1");
  if (schemes.empty()) throw ConfigError("schemes: must list at least one scheme");
  if (cost_grid.empty()) throw ConfigError("cost_grid: must be non-empty");
  if (target_grid.empty()) throw ConfigError("target_grid: must be non-empty");
  if (oneshot_grid.empty()) throw ConfigError("oneshot_grid: must be non-empty");
  for (double c : cost_grid)
    if (!(c > 0.0)) throw ConfigError("cost_grid: values must be > 0");
  for (const auto& t : target_grid)
    if (t && !(*t >= 0.0)) throw ConfigError("target_grid: values must be >= 0");
  for (double h : oneshot_grid)
    if (!(h > 0.0)) throw ConfigError("oneshot_grid: values must be > 0");
  if (!(quad_tol > 0.0)) throw ConfigError("quad_tol: must be > 0");
  if (!model_file) {
    if (classes < 2) throw ConfigError("classes: must be >= 2");
    if (gain_profile.size() != dimension) {
      throw ConfigError("profile: length " + std::to_string(gain_profile.size()) +
                        " does not match dimension " + std::to_string(dimension));
    }
  }
  try {
    ChannelModel ch(channel);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
}

GmModel ExperimentConfig::build_model() const {
  if (model_file) return load_model(*model_file);
  Rng rng(model_seed);
  return synth_model(classes, dimension, gain_profile, rng);
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  if (model_file) {
    kv["model_file"] = *model_file;
  } else {
    kv["classes"] = std::to_string(classes);
    kv["dimension"] = std::to_string(dimension);
    std::string p;
    for (double g : gain_profile) p += fmt(g) + ",";
    kv["profile"] = p;
    kv["model_seed"] = std::to_string(model_seed);
  }
  if (const auto* g = std::get_if<GaussianChannel>(&channel)) {
    kv["channel"] = "gaussian";
    kv["bandwidth_hz"] = fmt(g->bandwidth_hz);
    kv["slot_s"] = fmt(g->slot_s);
    kv["snr_linear"] = fmt(g->snr_linear);
    kv["bits_per_feature"] = fmt(g->bits_per_feature);
  } else {
    const auto& f = std::get<FadingChannel>(channel);
    kv["channel"] = "fading";
    kv["features_per_slot"] = std::to_string(f.features_per_slot);
    kv["outage_prob"] = fmt(f.outage_prob);
  }
  kv["horizon"] = std::to_string(horizon);
  std::string s;
  for (auto k : schemes) s += std::string(scheme_name(k)) + ",";
  kv["schemes"] = s;
  s.clear();
  for (double c : cost_grid) s += fmt(c) + ",";
  kv["cost_grid"] = s;
  s.clear();
  for (const auto& t : target_grid) s += (t ? fmt(*t) : "none") + ",";
  kv["target_grid"] = s;
  s.clear();
  for (double h : oneshot_grid) s += fmt(h) + ",";
  kv["oneshot_grid"] = s;
  kv["trials"] = std::to_string(trials);
  kv["seed"] = std::to_string(seed);
  kv["quad_tol"] = fmt(quad_tol);

  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string channel_kind = "gaussian";
  GaussianChannel gauss{20e3, 0.01, db_to_linear(4.0), 64};
  FadingChannel fading{5, 0.1};
  bool dimension_set = false, profile_set = false, classes_set = false;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const LineParser p(lineno, key);
    if (!seen.insert(key).second) p.fail("duplicate key");
    if (value.empty()) p.fail("missing value");

    if (key == "classes") {
      cfg.classes = p.integer(p.single(value));
      classes_set = true;
    } else if (key == "dimension") {
      cfg.dimension = p.integer(p.single(value));
      dimension_set = true;
    } else if (key == "profile") {
      const auto toks = list_tokens(value);
      if (toks.front() == "geometric") {
        if (toks.size() != 3) p.fail("expected 'geometric <first> <ratio>'");
        cfg.profile_spec = value;
        cfg.gain_profile.clear();  // resolved once dimension is known
        cfg.gain_profile = {p.real(toks[1]), p.real(toks[2])};
      } else if (toks.front() == "list") {
        cfg.profile_spec = value;
        cfg.gain_profile.clear();
        for (std::size_t i = 1; i < toks.size(); ++i) cfg.gain_profile.push_back(p.real(toks[i]));
        if (cfg.gain_profile.empty()) p.fail("empty gain list");
      } else {
        p.fail("expected 'geometric <first> <ratio>' or 'list <g1> <g2> ...'");
      }
      for (double g : cfg.gain_profile)
        if (g < 0.0) p.fail("gains must be >= 0");
      profile_set = true;
    } else if (key == "model_file") {
      cfg.model_file = p.single(value);
    } else if (key == "model_seed") {
      cfg.model_seed = p.integer(p.single(value));
    } else if (key == "channel") {
      channel_kind = p.single(value);
      if (channel_kind != "gaussian" && channel_kind != "fading") p.fail("expected gaussian or fading");
    } else if (key == "bandwidth_hz") {
      gauss.bandwidth_hz = p.real(p.single(value));
    } else if (key == "slot_s") {
      gauss.slot_s = p.real(p.single(value));
    } else if (key == "snr_db") {
      gauss.snr_linear = db_to_linear(p.real(p.single(value)));
    } else if (key == "bits_per_feature") {
      gauss.bits_per_feature = p.real(p.single(value));
    } else if (key == "features_per_slot") {
      fading.features_per_slot = p.integer(p.single(value));
    } else if (key == "outage_prob") {
      fading.outage_prob = p.real(p.single(value));
    } else if (key == "horizon") {
      cfg.horizon = p.integer(p.single(value));
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto& t : list_tokens(value)) {
        try {
          cfg.schemes.push_back(parse_scheme_kind(t));
        } catch (const std::invalid_argument& e) {
          p.fail(e.what());
        }
      }
    } else if (key == "cost_grid") {
      cfg.cost_grid = p.reals(value);
    } else if (key == "target_grid") {
      cfg.target_grid.clear();
      for (const auto& t : list_tokens(value)) {
        if (t == "none") {
          cfg.target_grid.push_back(std::nullopt);
        } else {
          cfg.target_grid.push_back(p.real(t));
        }
      }
    } else if (key == "oneshot_grid") {
      cfg.oneshot_grid = p.reals(value);
    } else if (key == "trials") {
      cfg.trials = p.integer(p.single(value));
    } else if (key == "seed") {
      cfg.seed = p.integer(p.single(value));
    } else if (key == "output") {
      cfg.output = p.single(value);
    } else if (key == "trial_log") {
      cfg.trial_log = p.single(value);
    } else if (key == "workers") {
      cfg.workers = p.integer(p.single(value));
    } else if (key == "quad_tol") {
      cfg.quad_tol = p.real(p.single(value));
    } else {
      p.fail("unknown key");
    }
  }

  if (cfg.model_file && (classes_set || dimension_set || profile_set)) {
    throw ConfigError("model_file: cannot be combined with classes, dimension or profile");
  }
  if (profile_set && cfg.profile_spec.rfind("geometric", 0) == 0) {
    cfg.gain_profile = geometric_profile(cfg.dimension, cfg.gain_profile[0], cfg.gain_profile[1]);
  } else if (!profile_set) {
    cfg.gain_profile = default_profile(cfg.dimension);
  }
  if (channel_kind == "gaussian") {
    cfg.channel = gauss;
  } else {
    cfg.channel = fading;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

namespace {

// Runs job(i) for i in [0, n) on up to `workers` threads; the first exception wins.
template <class Job>
void parallel_for(std::size_t n, std::size_t workers, Job&& job) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
        return;
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(workers, n));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<TrialLog> run_trials(const Protocol& protocol, std::size_t trials,
                                 std::uint64_t seed, std::size_t workers) {
  std::vector<TrialLog> logs(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    Rng sample_rng = make_stream(seed, i, StreamPurpose::Sample);
    Rng protocol_rng = make_stream(seed, i, StreamPurpose::Protocol);
    const Sample s = sample(protocol.model(), sample_rng);
    logs[i] = protocol.run_trial(s, protocol_rng);
  });
  return logs;
}

std::vector<std::vector<TrialLog>> run_trials_targets(
    const Protocol& protocol, std::span<const std::optional<double>> targets, std::size_t trials,
    std::uint64_t seed, std::size_t workers) {
  std::vector<std::vector<TrialLog>> logs(targets.size(), std::vector<TrialLog>(trials));
  parallel_for(trials, workers, [&](std::size_t i) {
    Rng sample_rng = make_stream(seed, i, StreamPurpose::Sample);
    Rng protocol_rng = make_stream(seed, i, StreamPurpose::Protocol);
    const Sample s = sample(protocol.model(), sample_rng);
    auto per_target = protocol.run_trial_targets(s, protocol_rng, targets);
    for (std::size_t t = 0; t < targets.size(); ++t) logs[t][i] = std::move(per_target[t]);
  });
  return logs;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  const GmModel model = cfg.build_model();
  const GainTable table = GainTable::from_model(model);
  const ChannelModel channel(cfg.channel);
  const std::string hash = cfg.hash();

  std::size_t total = 0;
  for (Scheme::Kind kind : cfg.schemes) {
    total += kind == Scheme::Kind::OneShot ? cfg.oneshot_grid.size()
                                           : cfg.cost_grid.size() * cfg.target_grid.size();
  }

  std::ofstream trial_out;
  if (cfg.trial_log) {
    trial_out.open(*cfg.trial_log);
    if (!trial_out) throw std::runtime_error("cannot write trial log '" + *cfg.trial_log + "'");
  }

  SweepResult result;
  result.gains = table.per_dim();
  auto add_row = [&](const Scheme& scheme, std::optional<double> c0, std::optional<double> h0,
                     std::optional<double> h_tgt, const std::vector<TrialLog>& logs) {
    const SchemeMetrics m = metrics(logs, model);
    SweepRow row;
    row.scheme = std::string(scheme_name(scheme.kind));
    row.c0 = c0;
    row.h0 = h0;
    row.h_tgt = h_tgt;
    row.trials = m.trials;
    row.latency_mean = m.latency_mean;
    row.latency_stderr = m.latency_stderr;
    row.accuracy = m.accuracy;
    row.entropy_mean = m.entropy_mean;
    row.outage_rate = m.outage_rate;
    row.seed = cfg.seed;
    row.config_hash = hash;
    row.transmission_prob = m.transmission_prob;
    if (trial_out) {
      for (const auto& log : logs) {
        trial_out << row.scheme << '\t' << fmt_opt(c0) << '\t' << fmt_opt(h0) << '\t'
                  << fmt_opt(h_tgt) << '\t' << to_record(log) << '\n';
      }
    }
    result.rows.push_back(std::move(row));
    if (progress) progress(result.rows.size(), total);
  };

  for (Scheme::Kind kind : cfg.schemes) {
    if (kind == Scheme::Kind::OneShot) {
      for (double h0 : cfg.oneshot_grid) {
        const Scheme scheme = Scheme::one_shot(h0);
        const Protocol protocol(model, table, channel,
                                StoppingPolicy{1e-3, cfg.horizon, std::nullopt}, scheme,
                                cfg.quad_tol);
        add_row(scheme, std::nullopt, h0, std::nullopt,
                run_trials(protocol, cfg.trials, cfg.seed, cfg.workers));
      }
      continue;
    }
    const Scheme scheme = kind == Scheme::Kind::ProgressFtx ? Scheme::progressftx()
                                                            : Scheme::random_stopping();
    for (double c0 : cfg.cost_grid) {
      const Protocol protocol(model, table, channel,
                              StoppingPolicy{c0, cfg.horizon, std::nullopt}, scheme,
                              cfg.quad_tol);
      const auto logs =
          run_trials_targets(protocol, cfg.target_grid, cfg.trials, cfg.seed, cfg.workers);
      for (std::size_t t = 0; t < cfg.target_grid.size(); ++t) {
        add_row(scheme, c0, std::nullopt, cfg.target_grid[t], logs[t]);
      }
    }
  }
  return result;
}

static constexpr const char* kCsvHeader =
    "scheme,c0,H0,H_tgt,trials,latency_mean,latency_stderr,accuracy,entropy_mean,outage_rate,"
    "seed,config_hash";

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << r.scheme << ',' << fmt_opt(r.c0) << ',' << fmt_opt(r.h0) << ',' << fmt_opt(r.h_tgt)
        << ',' << r.trials << ',' << fmt(r.latency_mean) << ',' << fmt(r.latency_stderr) << ','
        << fmt(r.accuracy) << ',' << fmt(r.entropy_mean) << ',' << fmt(r.outage_rate) << ','
        << r.seed << ',' << r.config_hash << '\n';
  }
}

void write_txprob_csv(std::ostream& out, const SweepResult& result) {
  out << "scheme,c0,H0,H_tgt,dimension,gain,gain_rank,probability\n";
  std::vector<std::size_t> order(result.gains.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.gains[a] > result.gains[b];
  });
  for (const auto& r : result.rows) {
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const std::size_t n = order[rank];
      const double prob = n < r.transmission_prob.size() ? r.transmission_prob[n] : 0.0;
      out << r.scheme << ',' << fmt_opt(r.c0) << ',' << fmt_opt(r.h0) << ',' << fmt_opt(r.h_tgt)
          << ',' << n << ',' << fmt(result.gains[n]) << ',' << rank << ',' << fmt(prob) << '\n';
    }
  }
}

std::string companion_path(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() >= ext.size() &&
      csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
    return csv_path.substr(0, csv_path.size() - ext.size()) + "_txprob.csv";
  }
  return csv_path + "_txprob.csv";
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
  write_csv(out, result);
  std::ofstream comp(companion_path(path));
  if (!comp) throw std::runtime_error("cannot write output file '" + companion_path(path) + "'");
  write_txprob_csv(comp, result);
  if (!out || !comp) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::optional<double> opt_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

SweepResult read_csv(std::istream& csv) {
  SweepResult result;
  std::string line;
  if (!std::getline(csv, line) || trim(line) != kCsvHeader) {
    throw std::runtime_error("sweep csv: missing or unexpected header");
  }
  while (std::getline(csv, line)) {
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw std::runtime_error("sweep csv: expected 12 columns");
    SweepRow r;
    r.scheme = f[0];
    r.c0 = opt_real(f[1]);
    r.h0 = opt_real(f[2]);
    r.h_tgt = opt_real(f[3]);
    r.trials = std::stoull(f[4]);
    r.latency_mean = std::stod(f[5]);
    r.latency_stderr = std::stod(f[6]);
    r.accuracy = std::stod(f[7]);
    r.entropy_mean = std::stod(f[8]);
    r.outage_rate = std::stod(f[9]);
    r.seed = std::stoull(f[10]);
    r.config_hash = f[11];
    result.rows.push_back(std::move(r));
  }
  return result;
}

void read_txprob_csv(std::istream& in, SweepResult& result) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("txprob csv: empty file");
  std::size_t row = 0, seen_in_row = 0;
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, double>> gains;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw std::runtime_error("txprob csv: expected 8 columns");
    const std::size_t n = std::stoull(f[4]);
    const std::size_t rank = std::stoull(f[6]);
    if (rank == 0 && seen_in_row > 0) {
      ++row;
      dim = seen_in_row;
      seen_in_row = 0;
    }
    if (row >= result.rows.size()) throw std::runtime_error("txprob csv: more grid points than rows");
    auto& probs = result.rows[row].transmission_prob;
    if (probs.size() <= n) probs.resize(n + 1, 0.0);
    probs[n] = std::stod(f[7]);
    if (row == 0) gains.emplace_back(n, std::stod(f[5]));
    ++seen_in_row;
  }
  if (dim == 0) dim = seen_in_row;
  result.gains.assign(dim, 0.0);
  for (const auto& [n, g] : gains) {
    if (n < dim) result.gains[n] = g;
  }
  for (auto& r : result.rows) r.transmission_prob.resize(dim, 0.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  auto ranks = [n](std::span<const double> v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    Vector r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const Vector rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> latency_at_accuracy(std::vector<CurvePoint> curve, double accuracy) {
  if (curve.empty()) return std::nullopt;
  std::stable_sort(curve.begin(), curve.end(),
                   [](const CurvePoint& a, const CurvePoint& b) { return a.latency < b.latency; });
  if (curve.front().accuracy >= accuracy) return curve.front().latency;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto& p = curve[i];
    const auto& q = curve[i + 1];
    if (p.accuracy < accuracy && q.accuracy >= accuracy) {
      return p.latency + (accuracy - p.accuracy) / (q.accuracy - p.accuracy) * (q.latency - p.latency);
    }
  }
  return std::nullopt;
}

}  // namespace pftx

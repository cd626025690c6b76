#include "progressftx/statmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pftx {

GmModel::GmModel(std::vector<Vector> centroids, Vector variances)
    : centroids_(std::move(centroids)), variances_(std::move(variances)) {
  if (centroids_.size() < 2) {
    throw std::invalid_argument("GmModel: need at least two classes");
  }
  if (variances_.empty()) {
    throw std::invalid_argument("GmModel: feature dimension must be >= 1");
  }
  for (const auto& mu : centroids_) {
    if (mu.size() != variances_.size()) {
      throw std::invalid_argument("GmModel: centroid length does not match dimension");
    }
    for (double v : mu) {
      if (!std::isfinite(v)) throw std::invalid_argument("GmModel: non-finite centroid");
    }
  }
  for (double v : variances_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("GmModel: variances must be finite and > 0");
    }
  }
}

Sample sample(const GmModel& model, Rng& rng, std::optional<std::size_t> forced_label) {
  Sample s;
  if (forced_label) {
    if (*forced_label >= model.num_classes()) {
      throw std::out_of_range("sample: forced label out of range");
    }
    s.label = *forced_label;
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, model.num_classes() - 1);
    s.label = pick(rng);
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  const Vector& mu = model.centroid(s.label);
  s.features.resize(model.dim());
  for (std::size_t n = 0; n < model.dim(); ++n) {
    s.features[n] = mu[n] + std::sqrt(model.variance(n)) * noise(rng);
  }
  return s;
}

GmModel synth_model(std::size_t num_classes, std::size_t dim,
                    std::span<const double> gain_profile, Rng& rng) {
  if (num_classes < 2) throw std::invalid_argument("synth_model: need >= 2 classes");
  if (gain_profile.size() != dim) {
    throw std::invalid_argument("synth_model: gain profile length must equal dimension");
  }
  for (double g : gain_profile) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("synth_model: gain profile entries must be >= 0");
    }
  }

  std::vector<Vector> centroids(num_classes, Vector(dim, 0.0));
  Vector variances(dim, 1.0);

  if (num_classes == 2) {
    for (std::size_t n = 0; n < dim; ++n) {
      const double half = std::sqrt(gain_profile[n]) / 2.0;
      centroids[0][n] = -half;
      centroids[1][n] = half;
    }
    return GmModel(std::move(centroids), std::move(variances));
  }

  // Average pairwise squared separation of a random layout, rescaled per dim.
  std::normal_distribution<double> layout(0.0, 1.0);
  const double pairs = static_cast<double>(num_classes * (num_classes - 1)) / 2.0;
  for (std::size_t n = 0; n < dim; ++n) {
    Vector u(num_classes);
    double avg = 0.0;
    do {
      for (auto& v : u) v = layout(rng);
      avg = 0.0;
      for (std::size_t a = 0; a < num_classes; ++a)
        for (std::size_t b = a + 1; b < num_classes; ++b) avg += (u[a] - u[b]) * (u[a] - u[b]);
      avg /= pairs;
    } while (avg <= 0.0);
    const double scale = std::sqrt(gain_profile[n] / avg);
    for (std::size_t c = 0; c < num_classes; ++c) centroids[c][n] = scale * u[c];
  }
  return GmModel(std::move(centroids), std::move(variances));
}

Vector geometric_profile(std::size_t dim, double first, double ratio) {
  Vector g(dim);
  double v = first;
  for (std::size_t n = 0; n < dim; ++n, v *= ratio) g[n] = v;
  return g;
}

Vector default_profile(std::size_t dim) { return geometric_profile(dim, 1.25, 0.95); }

void write_model(std::ostream& out, const GmModel& model) {
  out << "# progressftx Gaussian-mixture model\n";
  out << "L " << model.num_classes() << "\n";
  out << "N " << model.dim() << "\n";
  out << std::setprecision(17);
  out << "centroids\n";
  for (const auto& mu : model.centroids()) {
    for (std::size_t n = 0; n < mu.size(); ++n) out << (n ? " " : "") << mu[n];
    out << "\n";
  }
  out << "variances\n";
  for (std::size_t n = 0; n < model.dim(); ++n) out << (n ? " " : "") << model.variance(n);
  out << "\n";
}

namespace {

// Strips comments, then yields whitespace-separated tokens.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

double to_double(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::runtime_error("model file: expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw std::runtime_error("model file: bad number '" + tok + "'");
  return v;
}

std::size_t to_size(const std::string& tok) {
  const double v = to_double(tok);
  if (v < 0 || v != std::floor(v)) {
    throw std::runtime_error("model file: expected a non-negative integer, got '" + tok + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

GmModel read_model(std::istream& in) {
  const auto tokens = tokenize(in);
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size()) {
      throw std::runtime_error(std::string("model file: unexpected end while reading ") + what);
    }
    return tokens[pos++];
  };

  std::optional<std::size_t> classes, dim;
  std::optional<Vector> flat_centroids, variances;
  while (pos < tokens.size()) {
    const std::string key = next("key");
    if (key == "L") {
      classes = to_size(next("L"));
    } else if (key == "N") {
      dim = to_size(next("N"));
    } else if (key == "centroids") {
      if (!classes || !dim) throw std::runtime_error("model file: L and N must precede centroids");
      Vector values(*classes * *dim);
      for (auto& v : values) v = to_double(next("centroids"));
      flat_centroids = std::move(values);
    } else if (key == "variances") {
      if (!dim) throw std::runtime_error("model file: N must precede variances");
      Vector values(*dim);
      for (auto& v : values) v = to_double(next("variances"));
      variances = std::move(values);
    } else {
      throw std::runtime_error("model file: unknown key '" + key + "'");
    }
  }
  if (!classes || !dim || !flat_centroids || !variances) {
    throw std::runtime_error("model file: missing one of L, N, centroids, variances");
  }
  std::vector<Vector> centroids(*classes);
  for (std::size_t c = 0; c < *classes; ++c) {
    centroids[c].assign(flat_centroids->begin() + static_cast<std::ptrdiff_t>(c * *dim),
                        flat_centroids->begin() + static_cast<std::ptrdiff_t>((c + 1) * *dim));
  }
  return GmModel(std::move(centroids), std::move(*variances));
}

GmModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  return read_model(in);
}

void save_model(const std::string& path, const GmModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
  write_model(out, model);
}

}  // namespace pftx

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "progressftx/gains.hpp"
#include "progressftx/linclass.hpp"
#include "progressftx/statmodel.hpp"

namespace pftx {
namespace {

GmModel binary_model(double mu1, double mu2, double var) { return GmModel({{mu1}, {mu2}}, {var}); }

TEST(GmModel, RejectsInvalidConstruction) {
  EXPECT_THROW(GmModel({{0.0}}, {1.0}), std::invalid_argument);
  EXPECT_THROW(GmModel({{0.0}, {1.0, 2.0}}, {1.0}), std::invalid_argument);
  EXPECT_THROW(GmModel({{0.0}, {1.0}}, {0.0}), std::invalid_argument);
  EXPECT_THROW(GmModel({{0.0}, {1.0}}, {-1.0}), std::invalid_argument);
  EXPECT_THROW(GmModel({{0.0}, {NAN}}, {1.0}), std::invalid_argument);
  EXPECT_THROW(GmModel({{}, {}}, {}), std::invalid_argument);
}

TEST(Sample, VanishingVarianceReturnsCentroid) {
  const GmModel m({{1.0, -2.0, 3.0}, {0.0, 0.0, 0.0}}, {1e-12, 1e-12, 1e-12});
  Rng rng(11);
  const Sample s = sample(m, rng, 0);
  EXPECT_EQ(s.label, 0u);
  for (std::size_t n = 0; n < 3; ++n) EXPECT_NEAR(s.features[n], m.centroid(0)[n], 1e-4);
}

TEST(Sample, ForcedLabelOutOfRangeThrows) {
  const GmModel m = binary_model(-1, 1, 1);
  Rng rng(1);
  EXPECT_THROW(sample(m, rng, 2), std::out_of_range);
}

TEST(Sample, UniformPriorFrequency) {
  const GmModel m = binary_model(-1, 1, 1);
  Rng rng(2024);
  const int n = 100000;
  int first = 0;
  for (int i = 0; i < n; ++i) first += sample(m, rng).label == 0 ? 1 : 0;
  const double f = static_cast<double>(first) / n;
  EXPECT_GE(f, 0.494);
  EXPECT_LE(f, 0.506);
}

TEST(Sample, ClassMeanMatchesCentroid) {
  const GmModel m = binary_model(0.0, 2.0, 1.0);
  Rng rng(5);
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample(m, rng, 1).features[0];
  EXPECT_NEAR(sum / n, 2.0, 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Sample, DeterministicGivenSeed) {
  const GmModel m({{0, 1, 2}, {3, 4, 5}, {1, 1, 1}}, {1, 2, 3});
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    const Sample sa = sample(m, a), sb = sample(m, b);
    EXPECT_EQ(sa.label, sb.label);
    EXPECT_EQ(sa.features, sb.features);
  }
}

TEST(SynthModel, SingleDimensionBinary) {
  Rng rng(1);
  const Vector profile{4.0};
  const GmModel m = synth_model(2, 1, profile, rng);
  EXPECT_DOUBLE_EQ(m.centroid(0)[0], -1.0);
  EXPECT_DOUBLE_EQ(m.centroid(1)[0], 1.0);
  EXPECT_DOUBLE_EQ(m.variance(0), 1.0);
  EXPECT_DOUBLE_EQ(GainTable::from_model(m).gain(0), 4.0);
}

TEST(SynthModel, ZeroProfileGivesMaximalEntropy) {
  Rng rng(3);
  const Vector zeros(6, 0.0);
  const GmModel m = synth_model(3, 6, zeros, rng);
  PartialFeatureVector pfv(6);
  for (std::size_t n = 0; n < 6; ++n) pfv.receive(n, 0.37 * static_cast<double>(n) - 1.0);
  EXPECT_NEAR(entropy(pfv, m), std::log(3.0), 1e-12);
}

TEST(SynthModel, GeometricProfileRecoveredExactly) {
  const Vector profile = geometric_profile(40, 8.0, 0.85);
  Rng rng(4);
  const GmModel m = synth_model(2, 40, profile, rng);
  const GainTable t = GainTable::from_model(m);
  for (std::size_t n = 0; n < 40; ++n) EXPECT_NEAR(t.gain(n), profile[n], 1e-12) << n;
}

TEST(SynthModel, MultiClassProfileRecovered) {
  const Vector profile = geometric_profile(12, 2.0, 0.8);
  Rng rng(8);
  const GmModel m = synth_model(4, 12, profile, rng);
  const GainTable t = GainTable::from_model(m);
  for (std::size_t n = 0; n < 12; ++n) EXPECT_NEAR(t.gain(n), profile[n], 1e-10) << n;
}

TEST(SynthModel, RejectsBadProfiles) {
  Rng rng(1);
  const Vector neg{1.0, -0.5};
  EXPECT_THROW(synth_model(2, 2, neg, rng), std::invalid_argument);
  const Vector short_profile{1.0};
  EXPECT_THROW(synth_model(2, 2, short_profile, rng), std::invalid_argument);
}

TEST(Profiles, GeometricAndDefault) {
  const Vector g = geometric_profile(3, 2.0, 0.5);
  EXPECT_EQ(g, (Vector{2.0, 1.0, 0.5}));
  const Vector d = default_profile(40);
  ASSERT_EQ(d.size(), 40u);
  EXPECT_DOUBLE_EQ(d[0], 1.25);
  EXPECT_NEAR(d[1], 1.25 * 0.95, 1e-15);
}

TEST(ModelFile, RoundTrip) {
  const GmModel m({{0.1, -2.5, 1e-17}, {3.0, 4.0, 5.0}, {1.0 / 3.0, 1.0, 2.0}}, {1.0, 0.25, 7.5});
  std::stringstream ss;
  write_model(ss, m);
  EXPECT_EQ(read_model(ss), m);
}

TEST(ModelFile, ParsesCommentsAndRejectsUnknownKeys) {
  std::istringstream ok("# two classes\nL 2\nN 2\ncentroids 0 0\n 1 1\nvariances 1 2\n");
  const GmModel m = read_model(ok);
  EXPECT_EQ(m.num_classes(), 2u);
  EXPECT_DOUBLE_EQ(m.variance(1), 2.0);
  std::istringstream bad("L 2\nN 1\nmeans 0 1\nvariances 1\n");
  EXPECT_THROW(read_model(bad), std::runtime_error);
  std::istringstream truncated("L 2\nN 2\ncentroids 0 0 1\n");
  EXPECT_THROW(read_model(truncated), std::runtime_error);
}

}  // namespace
}  // namespace pftx

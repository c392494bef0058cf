#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "smcc/channels.hpp"

namespace {

using smcc::ChannelSchedule;
using smcc::RandomStream;
using smcc::TapWeights;

TEST(Schedule, TimeVaryingSegmentsAndBoundaries) {
  const auto s = smcc::paper_tv20_schedule();
  ASSERT_EQ(s.taps(), 20u);
  TapWeights single(20, 0.0);
  single[9] = 1.0;
  EXPECT_EQ(s.taps_at(1), single);
  EXPECT_EQ(s.taps_at(1000), single);
  EXPECT_EQ(s.taps_at(2000), single);
  const auto& half = s.taps_at(2001);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(half[i], i % 2 == 0 ? 1.0 : 0.0);
  EXPECT_EQ(s.taps_at(2500), half);
  EXPECT_EQ(s.taps_at(3000), half);
  const auto& dense = s.taps_at(3001);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(dense[i], i % 2 == 0 ? 1.0 : -1.0);
  EXPECT_EQ(s.taps_at(100000), dense);
  EXPECT_THROW(s.taps_at(0), smcc::InputError);
}

TEST(Schedule, SparsityOverRegimes) {
  const auto s = smcc::paper_tv20_schedule();
  EXPECT_EQ(smcc::sparsity_degree(s.taps_at(1500)), (smcc::SparsityDegree{1, 20}));
  EXPECT_EQ(smcc::sparsity_degree(s.taps_at(2500)), (smcc::SparsityDegree{1, 2}));
  EXPECT_EQ(smcc::sparsity_degree(s.taps_at(3500)), (smcc::SparsityDegree{1, 1}));
  EXPECT_DOUBLE_EQ(smcc::sparsity_degree(s.taps_at(2500)).value(), 0.5);
}

TEST(Schedule, ValidationRejectsMalformedSegments) {
  EXPECT_THROW(ChannelSchedule({}), smcc::InputError);
  EXPECT_THROW(ChannelSchedule(std::vector<smcc::ChannelSegment>{{5, {1.0}}}), smcc::InputError);
  EXPECT_THROW(ChannelSchedule({{0, {1.0}}, {10, {1.0, 2.0}}}), smcc::InputError);
  EXPECT_THROW(ChannelSchedule({{0, {1.0}}, {10, {1.0}}, {10, {2.0}}}), smcc::InputError);
  EXPECT_THROW(ChannelSchedule(std::vector<smcc::ChannelSegment>{{0, {}}}), smcc::InputError);
}

TEST(EchoChannel, CountNormAndPlacement) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    RandomStream rng(seed, smcc::StreamId::Channel);
    const auto w = smcc::make_sparse_echo_channel(1024, 52, rng);
    ASSERT_EQ(w.size(), 1024u);
    EXPECT_EQ(smcc::sparsity_degree(w).nonzero, 52u);
    const double energy = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
    EXPECT_NEAR(std::sqrt(energy), 1.0, 1e-12);
    std::size_t early = 0;
    for (std::size_t i = 0; i < 256; ++i) early += w[i] != 0.0;
    EXPECT_EQ(early, 39u);
  }
}

TEST(EchoChannel, DenseWhenAllTapsActive) {
  RandomStream rng(3, smcc::StreamId::Channel);
  const auto w = smcc::make_sparse_echo_channel(10, 10, rng);
  for (double v : w) EXPECT_NE(v, 0.0);
}

TEST(EchoChannel, DeterministicPerSeed) {
  RandomStream a(4, smcc::StreamId::Channel), b(4, smcc::StreamId::Channel),
      c(5, smcc::StreamId::Channel);
  const auto wa = smcc::make_sparse_echo_channel(256, 12, a);
  EXPECT_EQ(wa, smcc::make_sparse_echo_channel(256, 12, b));
  EXPECT_NE(wa, smcc::make_sparse_echo_channel(256, 12, c));
}

TEST(EchoChannel, RejectsTooManyNonzeros) {
  RandomStream rng(1);
  EXPECT_THROW(smcc::make_sparse_echo_channel(10, 11, rng), smcc::InputError);
  EXPECT_THROW(smcc::make_sparse_echo_channel(10, 0, rng), smcc::InputError);
}

TEST(EchoChannel, NormStaysUnitOnRandomShapes) {
  std::mt19937_64 gen(12);
  for (int k = 0; k < 200; ++k) {
    const std::size_t taps = 1 + gen() % 2000;
    const std::size_t nz = 1 + gen() % taps;
    RandomStream rng(k, smcc::StreamId::Channel);
    const auto w = smcc::make_sparse_echo_channel(taps, nz, rng);
    const double energy = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
    ASSERT_NEAR(std::sqrt(energy), 1.0, 1e-12);
    ASSERT_EQ(smcc::sparsity_degree(w).nonzero, nz);
  }
}

TEST(ArProcess, StabilityCheck) {
  EXPECT_TRUE(smcc::ar_is_stable(std::vector<double>{1.5, -0.7}));
  EXPECT_TRUE(smcc::ar_is_stable(std::vector<double>{}));
  EXPECT_TRUE(smcc::ar_is_stable(std::vector<double>{0.9}));
  EXPECT_FALSE(smcc::ar_is_stable(std::vector<double>{1.0}));
  EXPECT_FALSE(smcc::ar_is_stable(std::vector<double>{1.5, -0.4}));
  EXPECT_FALSE(smcc::ar_is_stable(std::vector<double>{0.5, 0.6}));
}

TEST(ArProcess, OutputVarianceClosedForms) {
  EXPECT_NEAR(smcc::ar_output_variance(std::vector<double>{0.5}, 1.0), 1.0 / 0.75, 1e-12);
  const double a1 = 1.5, a2 = -0.7;
  const double closed = (1 - a2) / ((1 + a2) * ((1 - a2) * (1 - a2) - a1 * a1));
  EXPECT_NEAR(smcc::ar_output_variance(std::vector<double>{a1, a2}, 2.0), 2.0 * closed, 1e-9);
}

// Periodogram of the generated AR(2) sequence against its analytic spectrum.
TEST(ArProcess, SpectrumMatchesModelWithinOneDecibel) {
  const smcc::ColoredArInput ar{{1.5, -0.7}, 1.0};
  smcc::RegressorStream stream(ar, 1);
  RandomStream rng(13, smcc::StreamId::Input);
  const std::size_t seg = 256, segments = 400;
  std::vector<double> psd(seg / 2 + 1, 0.0);
  std::vector<double> buf(seg);
  for (int k = 0; k < 1000; ++k) stream.next(rng);
  for (std::size_t s = 0; s < segments; ++s) {
    for (auto& v : buf) v = stream.next(rng)[0];
    for (std::size_t f = 0; f <= seg / 2; ++f) {
      double re = 0.0, im = 0.0;
      for (std::size_t n = 0; n < seg; ++n) {
        const double win = 0.5 - 0.5 * std::cos(2 * M_PI * n / (seg - 1));
        re += win * buf[n] * std::cos(2 * M_PI * f * n / seg);
        im -= win * buf[n] * std::sin(2 * M_PI * f * n / seg);
      }
      psd[f] += re * re + im * im;
    }
  }
  double win_energy = 0.0;
  for (std::size_t n = 0; n < seg; ++n) {
    const double win = 0.5 - 0.5 * std::cos(2 * M_PI * n / (seg - 1));
    win_energy += win * win;
  }
  for (std::size_t f = 4; f < seg / 2 - 4; ++f) {
    const double w = 2 * M_PI * f / seg;
    const double re = 1 - 1.5 * std::cos(w) + 0.7 * std::cos(2 * w);
    const double im = 1.5 * std::sin(w) - 0.7 * std::sin(2 * w);
    const double model = 1.0 / (re * re + im * im);
    const double est = psd[f] / (segments * win_energy);
    EXPECT_LT(std::abs(10 * std::log10(est / model)), 1.0) << "bin " << f;
  }
}

TEST(Regressor, FirstCallShiftsIntoZeroBuffer) {
  smcc::RegressorStream s(smcc::WhiteGaussianInput{1.0}, 5);
  RandomStream rng(14);
  const auto x = s.next(rng);
  EXPECT_NE(x[0], 0.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(x[i], 0.0);
}

TEST(Regressor, SlidingWindowIdentity) {
  smcc::RegressorStream s(smcc::ColoredArInput{{1.5, -0.7}, 0.1}, 8);
  RandomStream rng(15);
  const auto first = s.next(rng);
  std::vector<double> prev(first.begin(), first.end());
  for (int k = 0; k < 500; ++k) {
    const auto cur = s.next(rng);
    for (std::size_t i = 1; i < 8; ++i) ASSERT_EQ(cur[i], prev[i - 1]);
    prev.assign(cur.begin(), cur.end());
  }
}

TEST(Regressor, ConstantInput) {
  smcc::RegressorStream s(smcc::ConstantInput{2.0}, 3);
  RandomStream rng(1);
  s.next(rng);
  const auto x = s.next(rng);
  EXPECT_EQ(x[0], 2.0);
  EXPECT_EQ(x[1], 2.0);
  EXPECT_EQ(x[2], 0.0);
}

TEST(Observe, Examples) {
  std::vector<double> e1(4, 0.0);
  e1[0] = 1.0;
  const std::vector<double> x = {3.0, 1.0, 4.0, 1.0};
  EXPECT_EQ(smcc::observe(e1, x, 0.0), 3.0);
  EXPECT_EQ(smcc::observe(std::vector<double>(4, 0.0), x, -0.25), -0.25);
  EXPECT_THROW(smcc::observe(e1, std::vector<double>(3, 1.0), 0.0), smcc::InputError);

  std::mt19937_64 gen(16);
  std::normal_distribution<double> nd;
  std::vector<double> taps(64), xs(64);
  for (auto& v : taps) v = nd(gen);
  for (auto& v : xs) v = nd(gen);
  long double oracle = 0.0L;
  for (std::size_t i = 0; i < 64; ++i) oracle += static_cast<long double>(taps[i]) * xs[i];
  EXPECT_NEAR(smcc::observe(taps, xs, 0.0), static_cast<double>(oracle), 1e-12);
}

}  // namespace

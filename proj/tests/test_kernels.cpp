#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "smcc/channels.hpp"
#include "smcc/kernels.hpp"

namespace {

using smcc::KernelWidth;

// Direct evaluation in extended precision.
long double kernel_oracle(long double e, long double sigma) {
  const long double pi = 3.141592653589793238462643383279502884L;
  return std::exp(-e * e / (2.0L * sigma * sigma)) / (sigma * std::sqrt(2.0L * pi));
}

std::vector<double> segment_taps(std::size_t n) {
  return smcc::paper_tv20_schedule().taps_at(n);
}

TEST(KernelWidth, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(KernelWidth{0.0}, smcc::InputError);
  EXPECT_THROW(KernelWidth{-1.0}, smcc::InputError);
  EXPECT_THROW(KernelWidth{std::nan("")}, smcc::InputError);
  EXPECT_THROW(KernelWidth{INFINITY}, smcc::InputError);
  EXPECT_NO_THROW(KernelWidth{1e-9});
}

TEST(GaussianKernel, PeakAtZeroError) {
  EXPECT_NEAR(smcc::gaussian_kernel(0.0, KernelWidth{2.0}), 0.1994711, 5e-8);
  EXPECT_NEAR(smcc::gaussian_kernel(0.0, KernelWidth{2.0}),
              static_cast<double>(kernel_oracle(0.0L, 2.0L)), 1e-16);
}

TEST(GaussianKernel, OneSigmaAtWidthTwo) {
  const double v = smcc::gaussian_kernel(2.0, KernelWidth{2.0});
  EXPECT_NEAR(v, 0.1209854, 5e-8);
  EXPECT_NEAR(v, static_cast<double>(kernel_oracle(2.0L, 2.0L)), 1e-15);
}

TEST(GaussianKernel, MonotoneDecayToZero) {
  const KernelWidth w{1.0};
  double prev = smcc::gaussian_kernel(0.0, w);
  for (double e = 0.25; e < 60.0; e += 0.25) {
    const double v = smcc::gaussian_kernel(e, w);
    EXPECT_LE(v, prev);
    EXPECT_EQ(v, smcc::gaussian_kernel(-e, w));
    prev = v;
  }
  EXPECT_EQ(smcc::gaussian_kernel(1e6, w), 0.0);
}

TEST(GaussianKernel, BoundedByPeakWithEqualityOnlyAtZero) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> err(-20.0, 20.0);
  std::uniform_real_distribution<double> width(0.05, 10.0);
  for (int k = 0; k < 10000; ++k) {
    const double e = err(gen);
    const KernelWidth w{width(gen)};
    const double v = smcc::gaussian_kernel(e, w);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, w.peak());
    if (std::abs(e) > 1e-6 * w.value()) {
      EXPECT_LT(v, w.peak());
    }
  }
}

TEST(Correntropy, IdenticalSignalsGivePeak) {
  const std::vector<double> x = {0.3, -2.0, 7.5, 1e3};
  EXPECT_NEAR(smcc::correntropy_estimate(x, x, KernelWidth{1.0}), 0.3989423, 5e-8);
  EXPECT_EQ(smcc::correntropy_estimate(x, x, KernelWidth{1.0}), KernelWidth{1.0}.peak());
}

TEST(Correntropy, TwoPointHandSum) {
  const std::vector<double> xs = {0.0, 1.0};
  const std::vector<double> ys = {0.0, 0.0};
  const double v = smcc::correntropy_estimate(xs, ys, KernelWidth{1.0});
  const long double oracle = (kernel_oracle(0.0L, 1.0L) + kernel_oracle(1.0L, 1.0L)) / 2.0L;
  EXPECT_NEAR(v, 0.3204565, 5e-8);
  EXPECT_NEAR(v, static_cast<double>(oracle), 1e-15);
}

TEST(Correntropy, MatchesElementwiseMean) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  std::vector<double> xs(3), ys(3);
  for (auto& v : xs) v = nd(gen);
  for (auto& v : ys) v = nd(gen);
  const KernelWidth w{0.7};
  long double acc = 0.0L;
  for (int i = 0; i < 3; ++i) acc += kernel_oracle(xs[i] - ys[i], 0.7L);
  EXPECT_NEAR(smcc::correntropy_estimate(xs, ys, w), static_cast<double>(acc / 3.0L), 1e-15);
}

TEST(Correntropy, RejectsMismatchAndEmpty) {
  const std::vector<double> a = {1.0, 2.0};
  const std::vector<double> b = {1.0};
  const std::vector<double> none;
  EXPECT_THROW(smcc::correntropy_estimate(a, b, KernelWidth{1.0}), smcc::InputError);
  EXPECT_THROW(smcc::correntropy_estimate(none, none, KernelWidth{1.0}), smcc::InputError);
}

TEST(Cim, ZeroVectorHasZeroCim) {
  const std::vector<double> z(7, 0.0);
  EXPECT_EQ(smcc::cim_squared(z, KernelWidth{0.3}), 0.0);
  EXPECT_EQ(smcc::l0_approx_count(z, KernelWidth{0.3}), 0.0);
}

TEST(Cim, ScheduleSegmentsAtNarrowWidth) {
  const KernelWidth w{0.01};
  EXPECT_NEAR(w.peak(), 39.89423, 5e-5);
  const double first = smcc::cim_squared(segment_taps(1000), w);
  const double third = smcc::cim_squared(segment_taps(3500), w);
  EXPECT_NEAR(first, 1.994711, 5e-6);
  EXPECT_NEAR(first, w.peak() / 20.0, 1e-6 * first);
  EXPECT_NEAR(third, w.peak(), 1e-6 * third);
}

TEST(Cim, L0CountOnScheduleSegments) {
  const KernelWidth w{0.01};
  EXPECT_NEAR(smcc::l0_approx_count(segment_taps(1000), w), 1.0, 1e-6);
  EXPECT_NEAR(smcc::l0_approx_count(segment_taps(2500), w), 10.0, 1e-5);
  EXPECT_NEAR(smcc::l0_approx_count(segment_taps(3500), w), 20.0, 2e-5);
}

TEST(Cim, ComplementsCorrentropyAgainstZero) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> width(0.01, 5.0);
  for (int k = 0; k < 500; ++k) {
    std::vector<double> x(1 + k % 40);
    for (auto& v : x) v = nd(gen) * (k % 3 == 0 ? 0.01 : 1.0);
    const std::vector<double> zeros(x.size(), 0.0);
    const KernelWidth w{width(gen)};
    const double sum = smcc::cim_squared(x, w) + smcc::correntropy_estimate(x, zeros, w);
    EXPECT_NEAR(sum, w.peak(), 4 * std::numeric_limits<double>::epsilon() * w.peak());
  }
}

TEST(Cim, L0CountScalesCimSquared) {
  const std::vector<double> x = {0.0, 0.5, -0.02, 3.0};
  const KernelWidth w{0.1};
  EXPECT_NEAR(smcc::l0_approx_count(x, w),
              4.0 * smcc::cim_squared(x, w) / w.peak(), 1e-14);
}

TEST(Cim, NonIncreasingInWidth) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 200; ++k) {
    std::vector<double> x(16);
    for (auto& v : x) v = nd(gen);
    double prev = INFINITY;
    for (double s = 0.01; s < 20.0; s *= 1.3) {
      const double v = smcc::cim_squared(x, KernelWidth{s});
      EXPECT_LE(v, prev * (1.0 + 1e-12));
      prev = v;
    }
  }
}

TEST(Cim, L0ErrorBoundOnSparseVectors) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  std::uniform_int_distribution<int> pos(0, 63);
  for (int k = 0; k < 300; ++k) {
    std::vector<double> x(64, 0.0);
    const int nz = 1 + k % 20;
    for (int j = 0; j < nz; ++j) x[pos(gen)] = (j % 2 ? -1.0 : 1.0) * mag(gen);
    double m = INFINITY;
    std::size_t count = 0;
    for (double v : x) {
      if (v != 0.0) {
        m = std::min(m, std::abs(v));
        ++count;
      }
    }
    for (double s : {0.005, 0.02, 0.05}) {
      const double bound = 64.0 * std::exp(-m * m / (2 * s * s));
      EXPECT_LE(std::abs(smcc::l0_approx_count(x, KernelWidth{s}) - static_cast<double>(count)),
                bound + 1e-12);
    }
  }
}

TEST(Cim, RejectsEmpty) {
  const std::vector<double> none;
  EXPECT_THROW(smcc::cim_squared(none, KernelWidth{1.0}), smcc::InputError);
  EXPECT_THROW(smcc::l0_approx_count(none, KernelWidth{1.0}), smcc::InputError);
}

}  // namespace

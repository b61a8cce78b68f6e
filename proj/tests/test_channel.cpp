#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "ftqm/channel.hpp"

using namespace ftqm;

TEST_CASE("channel validation") {
  CHECK_THROWS_AS(channel::make_channel(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(channel::make_channel(1.1), std::invalid_argument);
  CHECK_THROWS_AS(channel::make_channel(0.1, 0.5, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(channel::make_channel(0.1, -0.2, 0.6, 0.6), std::invalid_argument);
  CHECK_NOTHROW(channel::make_channel(0.1, 0.25, 0.25, 0.5));
}

TEST_CASE("marginal rates") {
  const auto ch = channel::make_channel(0.01);
  CHECK(ch.marginal_x_rate() == doctest::Approx(0.01 * 2.0 / 3.0));
  CHECK(ch.marginal_z_rate() == doctest::Approx(0.01 * 2.0 / 3.0));

  const auto z_only = channel::make_channel(0.3, 0.0, 0.0, 1.0);
  CHECK(z_only.marginal_x_rate() == doctest::Approx(0.0));
  CHECK(z_only.marginal_z_rate() == doctest::Approx(0.3));

  const auto y_only = channel::make_channel(0.5, 0.0, 1.0, 0.0);
  CHECK(y_only.marginal_x_rate() == doctest::Approx(0.5));
  CHECK(y_only.marginal_z_rate() == doctest::Approx(0.5));
}

TEST_CASE("degenerate sampling") {
  rng::Stream rng(7);
  const auto clean = channel::make_channel(0.0);
  for (int i = 0; i < 50; ++i) {
    const auto pat = channel::sample_pattern(clean, 11, rng);
    CHECK(pat.x_part.is_zero());
    CHECK(pat.z_part.is_zero());
  }

  const auto all_z = channel::make_channel(1.0, 0.0, 0.0, 1.0);
  const auto pat = channel::sample_pattern(all_z, 9, rng);
  CHECK(pat.x_part.is_zero());
  CHECK(pat.z_part.weight() == 9);
}

TEST_CASE("sampling is deterministic in (seed, call sequence)") {
  const auto ch = channel::make_channel(0.2, 0.5, 0.25, 0.25);
  rng::Stream a(42), b(42), c(43);
  const auto pa = channel::sample_pattern(ch, 63, a);
  const auto pb = channel::sample_pattern(ch, 63, b);
  const auto pc = channel::sample_pattern(ch, 63, c);
  CHECK(pa.x_part == pb.x_part);
  CHECK(pa.z_part == pb.z_part);
  CHECK((pa.x_part == pc.x_part && pa.z_part == pc.z_part) == false);
}

TEST_CASE("empirical frequencies converge to the channel weights") {
  const auto ch = channel::make_channel(0.1, 0.5, 0.2, 0.3);
  const std::size_t n = 16;
  const std::uint64_t trials = 100000;
  std::uint64_t nx = 0, ny = 0, nz = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    rng::Stream rng = rng::Stream::substream(1234, i);
    const auto pat = channel::sample_pattern(ch, n, rng);
    for (std::size_t q = 0; q < n; ++q) {
      const bool x = pat.x_part.get(q), z = pat.z_part.get(q);
      nx += x && !z;
      ny += x && z;
      nz += !x && z;
    }
  }
  const double total = static_cast<double>(trials * n);
  auto within_3sigma = [&](double observed, double expected) {
    const double sigma = std::sqrt(expected * (1.0 - expected) / total);
    return std::abs(observed - expected) <= 3.0 * sigma;
  };
  CHECK(within_3sigma(nx / total, 0.1 * 0.5));
  CHECK(within_3sigma(ny / total, 0.1 * 0.2));
  CHECK(within_3sigma(nz / total, 0.1 * 0.3));
}

TEST_CASE("mean x-weight matches binomial statistics") {
  // Pure X noise at p = 0.1 on 7 qubits: mean weight 0.7.
  const auto ch = channel::make_channel(0.1, 1.0, 0.0, 0.0);
  const std::uint64_t trials = 1000000;
  std::uint64_t weight_sum = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    rng::Stream rng = rng::Stream::substream(99, i);
    weight_sum += channel::sample_pattern(ch, 7, rng).x_part.weight();
  }
  const double mean = static_cast<double>(weight_sum) / static_cast<double>(trials);
  const double sigma = std::sqrt(7.0 * 0.1 * 0.9 / static_cast<double>(trials));
  CHECK(std::abs(mean - 0.7) <= 3.0 * sigma);
}

#include "ftqm/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ftqm::channel {

PauliChannel make_channel(double p, double p_x, double p_y, double p_z) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("channel: p must be in [0, 1]");
  if (p_x < 0.0 || p_y < 0.0 || p_z < 0.0)
    throw std::invalid_argument("channel: conditional weights must be nonnegative");
  if (std::abs(p_x + p_y + p_z - 1.0) > 1e-12)
    throw std::invalid_argument("channel: conditional weights must sum to 1");
  return PauliChannel{p, p_x, p_y, p_z};
}

PauliChannel make_channel(double p) { return make_channel(p, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0); }

PauliErrorPattern sample_pattern(const PauliChannel& channel, std::size_t n, rng::Stream& rng) {
  if (n < 1) throw std::invalid_argument("sample_pattern: n must be >= 1");
  PauliErrorPattern pat;
  pat.n = n;
  pat.x_part = codes::BitVec(n);
  pat.z_part = codes::BitVec(n);

  const double px = channel.p * channel.p_x;
  const double pxy = channel.p * (channel.p_x + channel.p_y);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.next_double();
    if (u >= channel.p) continue;
    if (u < px) {
      pat.x_part.set(i, true);
    } else if (u < pxy) {
      pat.x_part.set(i, true);
      pat.z_part.set(i, true);
    } else {
      pat.z_part.set(i, true);
    }
  }
  return pat;
}

}  // namespace ftqm::channel

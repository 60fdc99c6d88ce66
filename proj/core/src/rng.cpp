#include "hpl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hpl {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Seed replication_seed(Seed master, std::uint64_t rep) {
  std::uint64_t x = master.stream ^ 0xA3EC647659359ACDULL;
  std::uint64_t mixed = splitmix64(x);
  std::uint64_t y = mixed ^ (rep + 1);
  return Seed{master.value, splitmix64(y)};
}

Rng::Rng(Seed seed) {
  std::uint64_t x = seed.value;
  state_[0] = splitmix64(x);
  state_[1] = splitmix64(x);
  x ^= seed.stream * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL;
  state_[2] = splitmix64(x);
  state_[3] = splitmix64(x);
  // A few warm-up rounds decorrelate nearby (value, stream) pairs.
  for (int i = 0; i < 8; ++i) next_u64();
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::poisson_small(double mean) {
  // Counts uniform factors until the running product drops below e^{-mean}.
  const double limit = std::exp(-mean);
  std::int64_t n = -1;
  double prod = 1.0;
  do {
    prod *= uniform();
    ++n;
  } while (prod >= limit);
  return n;
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  std::int64_t total = 0;
  while (mean > 30.0) {
    total += poisson_small(30.0);
    mean -= 30.0;
  }
  return total + poisson_small(mean);
}

}  // namespace hpl

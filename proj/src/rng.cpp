#include "dlmvdr/rng.hpp"

#include <numbers>

#include "dlmvdr/stats.hpp"

namespace dlmvdr::montecarlo {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(mix64(seed + kGolden) ^ (kStreamSalt * (stream + 1)))) {}

std::uint64_t CounterRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double CounterRng::next_unit() {
  // (k + 1/2) * 2^-53 for k in [0, 2^53): never exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_normal() { return stats::normal_quantile(next_unit()); }

std::complex<double> CounterRng::next_cgauss() {
  constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const double re = next_normal();  // real part drawn first, then imaginary
  const double im = next_normal();
  return {re * inv_sqrt2, im * inv_sqrt2};
}

}  // namespace dlmvdr::montecarlo

#pragma once

#include <complex>
#include <cstdint>

namespace dlmvdr::montecarlo {

// Splittable counter-style generator: the draws of stream r under seed s are
// a pure function of (s, r, draw index), identical on every platform and
// under any thread scheduling. One uniform feeds one normal variate, so the
// draw count per replication is fixed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();                   // strictly inside (0,1), 53-bit grid
  double next_normal();                 // standard normal via inverse CDF
  std::complex<double> next_cgauss();   // E X = E X^2 = 0, E |X|^2 = 1

 private:
  std::uint64_t state_;
};

}  // namespace dlmvdr::montecarlo

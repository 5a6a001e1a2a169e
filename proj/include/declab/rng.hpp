#ifndef DECLAB_RNG_HPP
#define DECLAB_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace declab {

// Counter-based generator. Every draw is a pure function of
// (seed, stream, counter), so replaying a seed reproduces the whole run and
// independent streams can be forked without shared state.
class Rng {
 public:
  Rng() : seed_(0), stream_(0), counter_(0) {}
  Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), counter_(0) {}

  Rng fork(std::uint64_t substream) const {
    return Rng(seed_, mix(stream_ ^ mix(substream + 0x517cc1b727220a95ULL)));
  }

  std::uint64_t next_u64() {
    std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc909ULL);
    h = mix(h ^ stream_);
    h = mix(h ^ counter_++);
    return h;
  }

  // uniform in [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  std::complex<double> next_complex_gaussian() {
    double re = next_gaussian();
    double im = next_gaussian();
    return {re * 0.7071067811865476, im * 0.7071067811865476};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace declab

#endif

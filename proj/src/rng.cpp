#include "glevy/rng.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace glevy {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h + kGamma + v);
}

}  // namespace

std::string SeedTriple::describe() const {
  std::ostringstream os;
  os << "(master=" << master << ", stream=" << stream << ", path=" << path << ")";
  return os.str();
}

CounterRng::CounterRng(const SeedTriple& seed) {
  std::uint64_t k = mix64(seed.master + kGamma);
  k = combine(k, seed.stream);
  k = combine(k, seed.path);
  key_ = k;
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform01() {
  // 53-bit mantissa, shifted into (0, 1] so log() is always finite.
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

long CounterRng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson: mean must be finite and nonnegative");
  if (mean == 0.0) return 0;
  // Knuth's product-of-uniforms method; chunked so exp() never underflows.
  long count = 0;
  double remaining = mean;
  while (remaining > 30.0) {
    double chunk = 30.0;
    const double limit = std::exp(-chunk);
    double p = 1.0;
    long k = 0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    count += k - 1;
    remaining -= chunk;
  }
  const double limit = std::exp(-remaining);
  double p = 1.0;
  long k = 0;
  do {
    ++k;
    p *= uniform01();
  } while (p > limit);
  return count + k - 1;
}

}  // namespace glevy

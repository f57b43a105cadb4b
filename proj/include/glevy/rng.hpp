#pragma once

#include <cstdint>
#include <string>

namespace glevy {

// Identifies one random substream. Batch drivers key substreams by
// (master seed, stream, path index), so results never depend on how the
// path loop is scheduled across threads.
struct SeedTriple {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
  std::uint64_t path = 0;

  std::string describe() const;
};

// Counter-based generator: the i-th output is a strong bijective mix of
// key + i * gamma (splitmix64 increment/finalizer), so streams are
// stateless functions of (SeedTriple, draw index).
class CounterRng {
 public:
  explicit CounterRng(const SeedTriple& seed);

  std::uint64_t next_u64();
  double uniform01();          // (0, 1]
  double normal();             // standard normal, Box-Muller pair cached
  long poisson(double mean);   // exact for any finite mean >= 0

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace glevy

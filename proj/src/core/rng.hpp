#ifndef HS_CORE_RNG_HPP
#define HS_CORE_RNG_HPP

#include <cstdint>
#include <random>

namespace hs {

// splitmix64; used as the counter-based sub-seed derivation so that adding
// parallelism never changes which stream a work item sees.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ (counter * 0xd1342543de82ef95ULL + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

} // namespace hs

#endif

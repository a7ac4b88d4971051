#pragma once
#include <cstdint>

namespace geores {

// splitmix64: stable across platforms, cheap to fork per subtask.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n > 0; rejection keeps the distribution exact
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = ~0ULL - (~0ULL % n);
    std::uint64_t v;
    do { v = next(); } while (v >= lim);
    return v % n;
  }

  // independent stream for a named subtask
  Rng fork(std::uint64_t label) const {
    Rng r(state ^ (label * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    r.next();
    return r;
  }
};

} // namespace geores

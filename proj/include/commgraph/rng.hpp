#ifndef COMMGRAPH_RNG_HPP
#define COMMGRAPH_RNG_HPP

#include <cstdint>

namespace commgraph {

// Deterministic seeded PRNG (splitmix64). Used instead of <random>
// distributions so that seeded runs produce identical bytes on every
// platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift reduction; bias is < 2^-64 per draw and the
        // reduction is fully deterministic, which is what matters here
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

    // uniform integer in [lo, hi] inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // derive an independent stream (for per-sample reproducibility)
    Rng fork(std::uint64_t tag) {
        Rng r(state_ ^ (0xd1342543de82ef95ULL * (tag + 1)));
        r.next();
        return r;
    }

private:
    std::uint64_t state_;
};

} // namespace commgraph

#endif // COMMGRAPH_RNG_HPP

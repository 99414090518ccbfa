#ifndef MTR_RNG_HPP
#define MTR_RNG_HPP

#include <cstdint>

#include "mtr/matrix.hpp"

namespace mtr {

// Deterministic splitmix64 generator. Portable across platforms and
// standard library versions, unlike std:: distributions, so seeded runs
// are bit-reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [lo, hi]; bias is irrelevant at test scale.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// Product of `steps` random elementary row operations applied to the
// identity: row additions with coefficient in [-3,3]\{0}, row swaps, row
// negations. Determinant is +-1 by construction.
inline IntMatrix random_unimodular(std::size_t d, long steps, Rng& rng) {
    IntMatrix m = IntMatrix::identity(d);
    if (d < 2) return m;
    for (long s = 0; s < steps; ++s) {
        std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(d) - 1));
        std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(d) - 1));
        switch (rng.range(0, 3)) {
        case 0: case 1: {
            if (i == j) j = (j + 1) % d;
            long c = rng.range(1, 3);
            if (rng.range(0, 1)) c = -c;
            m.add_row_multiple(i, j, Int(c));
            break;
        }
        case 2:
            if (i != j) m.swap_rows(i, j);
            break;
        default:
            m.negate_row(i);
        }
    }
    return m;
}

inline IntMatrix random_unimodular(std::size_t d, long steps, std::uint64_t seed) {
    Rng rng(seed);
    return random_unimodular(d, steps, rng);
}

} // namespace mtr

#endif

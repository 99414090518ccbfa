#ifndef MTR_TESTS_TESTUTIL_HPP
#define MTR_TESTS_TESTUTIL_HPP

#include <cstdint>

#include "mtr/matrix.hpp"
#include "mtr/poly.hpp"

namespace mtr::testutil {

// Deterministic splitmix64 stream; fixed across platforms so suites that
// freeze expected values stay reproducible.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi] by modulo; bias is irrelevant for test data.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t s_;
};

inline IntMatrix random_matrix(std::size_t d, long lo, long hi, TestRng& rng) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m.at(i, j) = Int(rng.range(lo, hi));
    return m;
}

// Independent determinant oracle: textbook cofactor expansion along the
// first row. Deliberately shares no code with the library path.
inline Int cofactor_det(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t mc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, mc++) = m.at(r, c);
            }
        }
        Int term = m.at(0, j) * cofactor_det(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

inline Poly random_poly(long deg, long lo, long hi, TestRng& rng) {
    std::vector<Int> c(deg + 1);
    for (long i = 0; i <= deg; ++i) c[i] = Int(rng.range(lo, hi));
    while (c.back() == 0) c.back() = Int(rng.range(lo, hi));
    return Poly(std::move(c));
}

} // namespace mtr::testutil

#endif

#ifndef MTR_BIGINT_HPP
#define MTR_BIGINT_HPP

#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace mtr {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0.
struct Xgcd {
    Int g, s, t;
};

inline Xgcd xgcd(const Int& a, const Int& b) {
    Xgcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(),
               a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Quotient of an exact division; throws nothing, asserts divisibility in
// debug builds only (GMP's divexact is undefined on non-divisors).
inline Int divexact(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Floor division quotient (rounds toward minus infinity).
inline Int fdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& a) {
    if (a < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// An index value that may be infinite (the generated subgroup has rank < d).
using IndexValue = std::optional<Int>;

inline std::string index_to_string(const IndexValue& v) {
    return v ? v->get_str() : std::string("inf");
}

} // namespace mtr

#endif

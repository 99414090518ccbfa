#ifndef MTR_POWERS_HPP
#define MTR_POWERS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/mpfloat.hpp"
#include "mtr/rank2.hpp"

namespace mtr {

// Coordinates of M^i v in the orbit basis [v | Mv | ... | M^(d-1)v]:
// u[i][k] with M^i v = sum_k u[i][k] M^k v. Each column satisfies the
// characteristic recurrence; rows below d are Kronecker deltas.
struct OrbitCoordinates {
    IntMatrix w;
    std::vector<std::vector<Int>> u;
};

OrbitCoordinates u_table(const IntMatrix& m, const CyclicWitness& witness, long i_max);

// Index of the sublattice spanned by the M^n-orbit of the witness:
// |det [v | M^n v | ... | M^((d-1)n) v]|, nullopt when singular.
// Dual-route: the determinant is checked against the SNF diagonal
// product on every call.
IndexValue delta(const IntMatrix& m, const CyclicWitness& witness, long n);

// Same matrix, signed determinant, no absolute value. Zero when
// singular. The sign carries recurrence structure that |.| destroys.
Int delta_signed(const IntMatrix& m, const CyclicWitness& witness, long n);

struct DeltaValue {
    long n = 0;
    IndexValue delta;       // nullopt = infinite index
    Int signed_det;
};

struct DeltaSequence {
    long n_max = 0;
    CyclicWitness witness;
    std::vector<DeltaValue> values;
    std::vector<long> rank2_powers;   // n with delta_n = 1
};

// Scans n = 1..n_max using one incremental matrix-vector product per
// step; the witness comes from cyclic_search within `bound`.
DeltaSequence delta_scan(const IntMatrix& m, long n_max, long bound);

// trace tau and eps = -det of a 2x2 unimodular matrix; the conjugacy
// model is [[0, eps], [1, tau]] with charpoly x^2 - tau x - eps.
struct TraceParams2x2 {
    Int tau;
    int eps;
};

struct CnPair {
    Int c, d;   // M^n = c_n M + d_n I
};

// c_0 = 0, c_1 = 1, c_{n+2} = tau c_{n+1} + eps c_n; d_{n+1} = eps c_n.
CnPair cn_2x2(const TraceParams2x2& p, long n);

struct ProductCheck {
    Int cn;
    Real product_re, product_im;
    Real rel_error;
    bool chebyshev_match;   // integer U_{n-1}(tau/2) route, eps = -1 only
};

// Numeric cross-check of the closed product form of c_n over the 2n-th
// roots of unity: prod_{k=1}^{n-1} (tau - 2 cos(k pi/n)) for eps = -1,
// the same product with 2i cos for eps = +1. Throws ToleranceExceeded
// when the product and the exact recurrence disagree (relative), or when
// the eps = +1 product keeps a nonzero imaginary part.
ProductCheck cn_product_check(const TraceParams2x2& p, long n, long precision_bits,
                              double rel_tol = 1e-9);

// s(i + order) = sum_j coeffs[j] * s(i + order - 1 - j): most recent
// term first. Fibonacci is order 2, coeffs (1, 1).
struct LinearRecurrence {
    long order = 0;
    std::vector<Rat> coeffs;
    std::vector<Rat> initial;
};

// Minimal-order recurrence fitting the whole prefix, by
// Berlekamp-Massey over exact rationals. Throws InsufficientData when
// the prefix is too short to pin the order (2*order > length).
LinearRecurrence min_recurrence(const std::vector<Rat>& prefix);

// Continues a sequence by `extra` terms under the recurrence.
std::vector<Rat> extend_sequence(const LinearRecurrence& rec, std::vector<Rat> seq,
                                 long extra);

// Arithmetic progressions (modulus m <= len/4, residue r) on which every
// observed value equals c. Entry seq[i] is the value at index
// first_index + i; nullopt entries never match. Progressions implied by
// a reported one are suppressed. Observational only.
std::vector<std::pair<long, long>> constant_progression_scan(
    const std::vector<IndexValue>& seq, const Int& c, long first_index = 1);

struct Min2GenResult {
    std::optional<Int> index;   // nullopt = no finite candidate in range
    long m_max = 0;
    long box = 0;
    long best_m = 0;
    Vec best_a;
};

// Minimum over 1 <= m <= m_max and nonzero a in the box of
// m * |det [a | M^(nm) a | ... | M^((d-1)nm) a]|: the least index of a
// subgroup generated by one lattice element together with t^m.
Min2GenResult min_2gen_index(const IntMatrix& m, long n, long m_max, long box);

} // namespace mtr

#endif

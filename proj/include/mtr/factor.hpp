#ifndef MTR_FACTOR_HPP
#define MTR_FACTOR_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/poly.hpp"

namespace mtr {

// Complete factorization over Z:
//   input = unit * content * prod factors[i].first ^ factors[i].second
// with unit = +-1, content >= 1, each factor primitive irreducible with
// positive leading coefficient, sorted by (degree, coefficients).
struct Factorization {
    int unit = 1;
    Int content = 1;
    std::vector<std::pair<Poly, int>> factors;

    Poly reconstruct() const;
};

// Zassenhaus factorization: squarefree split, Berlekamp mod a good prime,
// quadratic Hensel lift, subset recombination. Degrees above 24 are
// rejected with DegreeTooLarge; zero input with PreconditionViolated.
Factorization factor_Z(const Poly& f);

inline constexpr long kFactorDegreeCap = 24;

// n-th cyclotomic polynomial, computed by exact division of x^n - 1 by
// the proper-divisor cyclotomics; memoized.
Poly cyclotomic(long n);

// If f equals some cyclotomic polynomial, return its index n. The caller
// is expected to pass an irreducible monic polynomial; anything else just
// returns nullopt.
std::optional<long> is_cyclotomic(const Poly& f);

// Multiplicative order of an integer matrix: the least k >= 1 with
// M^k = I, or nullopt if M has infinite order. Requires det = +-1.
std::optional<Int> finite_order(const IntMatrix& m);

} // namespace mtr

#endif

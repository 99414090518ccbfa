#ifndef MTR_MODP_HPP
#define MTR_MODP_HPP

#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/poly.hpp"

namespace mtr {

// Dense polynomial over F_p for small p (fits in long; products stay in
// 64 bits). Coefficients ascending, reduced into [0, p), trailing zeros
// stripped.
using PolyP = std::vector<long>;

namespace modp {

long normalize_coeff(long c, long p);
PolyP reduce(const Poly& f, long p);
void trim(PolyP& f);
long degree(const PolyP& f);
bool is_zero(const PolyP& f);
PolyP make_monic(const PolyP& f, long p);

PolyP add(const PolyP& a, const PolyP& b, long p);
PolyP sub(const PolyP& a, const PolyP& b, long p);
PolyP mul(const PolyP& a, const PolyP& b, long p);
// a = q*b + r with deg r < deg b; b nonzero.
void divrem(const PolyP& a, const PolyP& b, long p, PolyP& q, PolyP& r);
PolyP gcd(const PolyP& a, const PolyP& b, long p);      // monic or zero
PolyP derivative(const PolyP& f, long p);
PolyP powmod(const PolyP& base, const Int& e, const PolyP& mod, long p);

long inv_mod(long a, long p);

// Extended gcd over F_p[x]: s*a + t*b = 1 for coprime a, b.
void bezout(const PolyP& a, const PolyP& b, long p, PolyP& s, PolyP& t);

// Berlekamp factorization of a squarefree monic polynomial over F_p.
// Deterministic; intended for the small primes picked by the good-prime
// scan, so the per-residue split loop over F_p stays cheap.
std::vector<PolyP> berlekamp(const PolyP& f, long p);

// Distinct monic irreducible factors of an arbitrary nonzero polynomial
// mod p (multiplicities dropped), handling derivative collapse f' = 0 by
// p-th root extraction.
std::vector<PolyP> distinct_irreducible_factors(const PolyP& f, long p);

// Integer matrix reduced mod p, row major.
struct MatP {
    std::size_t n = 0;
    std::vector<long> e;
    long& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    long at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
};

MatP reduce(const IntMatrix& m, long p);
MatP mul(const MatP& a, const MatP& b, long p);
std::size_t rank(MatP m, long p);

// Degree of the minimal polynomial of M over F_p (Krylov on vectorized
// powers). Equals dim(M) exactly when M is cyclic over F_p.
std::size_t minpoly_degree(const IntMatrix& m, long p);

// Evaluate an integer polynomial at a matrix, all arithmetic mod p.
MatP eval_poly(const PolyP& f, const MatP& m, long p);

} // namespace modp

} // namespace mtr

#endif

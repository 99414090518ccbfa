#ifndef MTR_LINALG_HPP
#define MTR_LINALG_HPP

#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/poly.hpp"

namespace mtr {

// Row-style Hermite normal form: U * M = H with U unimodular, H in row
// echelon form, pivots positive, entries above each pivot reduced into
// [0, pivot). Unique for given M. Accepts rectangular input.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
};

HnfResult hnf(const IntMatrix& m);

// Smith normal form: U * M * V = D with U, V unimodular, D diagonal,
// d_i >= 0 and d_i | d_{i+1}; zero entries come last.
struct SnfResult {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
};

SnfResult snf(const IntMatrix& m);

// Invariant factors (diagonal of the SNF), zeros included.
std::vector<Int> invariant_factors(const IntMatrix& m);

// Basis of the integer kernel {x : m x = 0}, one basis vector per row of
// the result (possibly 0 rows). The kernel of an integer matrix is
// saturated, so this basis generates every integer solution.
IntMatrix kernel_basis(const IntMatrix& m);

// Characteristic polynomial det(x I - M), monic of degree = dim, computed
// by evaluation at 0, 1, -1, 2, -2, ... and exact rational interpolation.
// A non-integer or non-monic result is an internal bug (logic_error).
Poly charpoly(const IntMatrix& m);

// Minimal polynomial: least-degree monic rational annihilator, cleared to
// primitive integer form (monic for integer input, by Gauss). Divides the
// characteristic polynomial.
Poly minpoly(const IntMatrix& m);

// p(m) by Horner evaluation.
IntMatrix eval_poly(const Poly& p, const IntMatrix& m);

} // namespace mtr

#endif

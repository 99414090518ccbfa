#ifndef MTR_SPECTRAL_HPP
#define MTR_SPECTRAL_HPP

#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/mpfloat.hpp"
#include "mtr/poly.hpp"
#include "mtr/rank2.hpp"

namespace mtr {

// One eigenvalue: approximate position with a certified error radius,
// exact multiplicity from the factorization.
struct SpectrumEntry {
    Complex value;
    long multiplicity = 1;
    Real radius;
};

// Entries sorted by modulus ascending, ties broken by argument.
struct Spectrum {
    std::vector<SpectrumEntry> entries;
    long precision_bits = 0;

    long degree() const;
    bool all_simple() const;
    std::vector<Real> moduli() const;   // with repetition, ascending
};

// Roots of p. Multiplicities are exact (squarefree split inside the
// factorization); positions come from simultaneous Newton-type iteration
// per irreducible factor, refined until every a-posteriori radius drops
// below 2^(-bits/2). Working precision doubles on demand up to 512 bits
// (or `bits` itself when larger); running out throws PrecisionExhausted.
Spectrum roots(const Poly& p, long bits);

// prod_{k<m} (mu_m^n - mu_k^n) over the sorted simple spectrum; the
// determinant of the power matrix (mu_k^(ni)) up to column order.
Complex vandermonde_Dn(const Spectrum& spec, long n);

struct RatioReport {
    long n_max = 0;
    long checked = 0;    // indices with a nonvanishing determinant
    Complex ratio;       // common value of D_n / det_n
    Real max_rel_dev;
};

// The Vandermonde product and the signed orbit determinant differ by a
// factor independent of n (the product of eigencoordinates of the
// witness). Verified over 1..n_max at relative tol.
RatioReport ratio_constancy_check(const IntMatrix& m, const CyclicWitness& witness,
                                  long n_max, double tol);

struct GrowthReport {
    Real k;                         // prod_{j>=2} m_j^(j-1), moduli ascending
    bool moduli_distinct = false;   // certified: radius intervals disjoint
    std::vector<Real> moduli;
};

GrowthReport growth_K(const Spectrum& spec);

struct GrowthComparison {
    Real k;
    bool moduli_distinct = false;
    bool skipped = true;   // no distinct-moduli growth constant to compare
    long n = 0;
    Real deviation;        // |log(delta_n)/n - log K|
};

// Compares observed index growth delta_n^(1/n) against K at a single n.
// Skips (rather than fabricating a verdict) when moduli coincide or
// K <= 1.
GrowthComparison growth_comparison(const IntMatrix& m, long n, long bits,
                                   long search_bound);

struct ConfluentReport {
    long n_max = 0;
    Real max_rel_error;
};

// 4x4 model with one triple eigenvalue l1 and a simple l4: rows
// (1,0,0,1) and (l1^(jn), jn*l1^(jn), (jn)^2*l1^(jn), l4^(jn)) for
// j = 1,2,3. The determinant equals 2 n^3 l1^(3n) (l4^n - l1^n)^3;
// checked numerically for 1 <= n <= n_max.
ConfluentReport confluent_example_check(const Complex& l1, const Complex& l4,
                                        long n_max, double tol, long bits = 96);

struct DominanceReport {
    long monomial_count = 0;
    Real diagonal_log_modulus;
    Real runner_up_log_modulus;
};

// Expands the Vandermonde product into its 2^(d(d-1)/2) signed monomials
// in the mu_k^n and verifies the diagonal monomial mu_2^n mu_3^(2n) ...
// strictly dominates every other in modulus.
DominanceReport dominance_check(const Spectrum& spec, long n);

} // namespace mtr

#endif

#ifndef MTR_NIELSEN_HPP
#define MTR_NIELSEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/rank2.hpp"

namespace mtr {

// Saturated lattice basis of {X : MX = XM}: every integer matrix
// commuting with M is an integer combination of the basis.
struct CommutantBasis {
    std::vector<IntMatrix> basis;

    long rank() const { return static_cast<long>(basis.size()); }
};

CommutantBasis commutant(const IntMatrix& m);

// All unit (det = +-1) integer combinations with coefficients in
// [-height, height], seeded with I, sorted by entries. With collapse,
// one representative per orbit under x -> -x and x -> x^(-1).
std::vector<IntMatrix> unit_search(const CommutantBasis& cb, long height,
                                   bool collapse = false);

enum class NielsenVerdict { FiniteCount, InfiniteWitness, Unknown };

std::string to_string(NielsenVerdict v);

struct NielsenReport {
    NielsenVerdict verdict = NielsenVerdict::Unknown;
    Int count = 0;                              // FiniteCount only
    std::optional<IntMatrix> witness_h;         // InfiniteWitness only
    std::optional<IntMatrix> fundamental_unit;  // d = 2 detail
    Int exponent = 0;                           // M = +-(fundamental unit)^exponent
    long height = 0;
    long range = 0;
    std::string note;
};

// Exact class count for d = 2: index of <M, -I> in the centralizer
// units. Hyperbolic case via the fundamental unit of the commutant
// order (coefficient-ascending Pell scan), parabolic case directly from
// the nilpotent part. Requires decide_rank2_d2 = Rank2 and infinite
// order.
NielsenReport nielsen_count_d2(const IntMatrix& m);

// One-sided search for a commuting unit h that is multiplicatively
// independent of M: exact power-relation scan h^a != +-M^b for
// 0 < max(|a|,|b|) <= range, then certified log-modulus interval
// independence at `bits`. Never claims finiteness.
NielsenReport infinite_nielsen_probe(const IntMatrix& m, long height = 10,
                                     long range = 12, long bits = 96);

struct PairClassReport {
    long height = 0;
    long range = 0;
    std::vector<IntMatrix> reps;           // one commuting unit per class
    std::vector<Vec> second_generators;    // rep applied to the witness
    bool infinite = false;                 // independence witness found
    std::optional<Int> exact_d2_count;     // cross-check when d = 2
};

// Enumerates generating-pair classes at the given height: units modulo
// h ~ +-M^k h, each class represented by its image of the witness.
// v is the first-generator vector the second generators are measured against;
// it need not be cyclic (derogatory matrices have no cyclic vector at all).
PairClassReport generating_pair_classes(const IntMatrix& m, const Vec& v,
                                        long height = 10, long range = 12,
                                        long bits = 96);

} // namespace mtr

#endif

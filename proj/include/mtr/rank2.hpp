#ifndef MTR_RANK2_HPP
#define MTR_RANK2_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtr/matrix.hpp"
#include "mtr/poly.hpp"

namespace mtr {

// A vector whose orbit under M spans Z^d: the orbit matrix
// [v | Mv | ... | M^(d-1)v] is unimodular.
struct CyclicWitness {
    Vec v;
    IntMatrix w;
    Int det_w;          // +1 or -1
};

// Validates |det| = 1 and packages the witness; throws InvalidWitness.
CyclicWitness make_cyclic_witness(const IntMatrix& m, const Vec& v);

// Companion matrix of a monic polynomial: ones on the subdiagonal, last
// column from the negated coefficients.
IntMatrix companion_of(const Poly& p);

IntMatrix orbit_matrix(const IntMatrix& m, const Vec& v);

// True iff the orbit matrix of v is unimodular. Requires det M = +-1 so
// the two-sided orbit collapses to the first d powers.
bool is_cyclic(const IntMatrix& m, const Vec& v);

// Canonical vector enumeration used by every search in the library:
// sup-norm shells ascending; within a shell, coordinates compare through
// the scalar order 0 < 1 < -1 < 2 < -2 < ..., most significant at the
// LAST coordinate. Fixes search results bit-exactly.
std::vector<Vec> shell_vectors(std::size_t d, long norm);
std::vector<Vec> box_vectors(std::size_t d, long bound);

// Cheap disproofs of cyclicity: a matrix conjugate to its companion has
// minpoly = charpoly over Q and stays cyclic modulo every prime.
struct FilterReport {
    bool minpoly_equals_charpoly = false;
    std::vector<std::pair<long, bool>> prime_verdicts;
    bool pass = false;
    std::string reason;     // set when pass = false
};

const std::vector<long>& default_filter_primes();

FilterReport necessary_filters(const IntMatrix& m,
                               const std::vector<long>& primes = default_filter_primes());

// First witness in canonical order with sup-norm <= bound, or nullopt.
std::optional<CyclicWitness> cyclic_search(const IntMatrix& m, long bound);

// a x^2 + b x y + c y^2
struct BinaryQuadraticForm {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    Int eval(const Int& x, const Int& y) const {
        return a * x * x + b * x * y + c * y * y;
    }
};

// The form Q_M(x,y) = det[(x,y) | M(x,y)]; v is cyclic iff Q_M(v) = +-1.
BinaryQuadraticForm orbit_form(const IntMatrix& m);

enum class RankVerdict { Rank2, Rank3, RankAtLeast3, Unknown };

std::string to_string(RankVerdict v);

struct Rank2Decision {
    RankVerdict verdict;    // Rank2 or Rank3
    std::optional<CyclicWitness> witness;
};

// Exact decision for d = 2 via representation of +-1 by Q_M: definite
// forms by bounded enumeration, degenerate by linear Diophantine, square
// discriminant by integer linear forms, nonsquare indefinite by the cycle
// of reduced forms. Throws WrongDimension.
Rank2Decision decide_rank2_d2(const IntMatrix& m);

// 1 + number of invariant factors of the rational canonical form; the
// block count is max over irreducible charpoly factors f of
// dim ker f(M) / deg f.
long vrank(const IntMatrix& m);

struct RankReport {
    std::size_t d = 0;
    RankVerdict verdict = RankVerdict::Unknown;
    std::optional<CyclicWitness> witness;
    long lower_bound = 2;
    long upper_bound = 0;
    long vrank = 0;
    long search_bound = 0;
    FilterReport filters;
};

// Verdict: exact for d = 2; otherwise Rank2 on a found witness,
// RankAtLeast3 on a filter disproof, Unknown past the search bound.
// lower bound from rational and mod-p block counts, upper bound from a
// greedy orbit cover.
RankReport rank_report(const IntMatrix& m, long bound = 8,
                       const std::vector<long>& primes = default_filter_primes());

// Rank of the corresponding free-fiber mapping torus: equals the abelian
// answer, 2 or 3. Throws WrongDimension unless d = 2.
long f2_mapping_torus_rank(const IntMatrix& m);

} // namespace mtr

#endif

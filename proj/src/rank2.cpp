#include "mtr/rank2.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mtr/errors.hpp"
#include "mtr/factor.hpp"
#include "mtr/linalg.hpp"
#include "mtr/modp.hpp"

namespace mtr {

namespace {

// Scalar enumeration order 0 < 1 < -1 < 2 < -2 < ...
Int scalar_rank(const Int& x) {
    if (x == 0) return 0;
    if (x > 0) return 2 * x - 1;
    return -2 * x;
}

Int sup_norm(const Vec& v) {
    Int s = 0;
    for (const Int& x : v) {
        Int a = abs(x);
        if (a > s) s = a;
    }
    return s;
}

// Canonical order: sup-norm shell, then scalar ranks with the last
// coordinate most significant.
bool canon_less(const Vec& u, const Vec& v) {
    Int su = sup_norm(u), sv = sup_norm(v);
    if (su != sv) return su < sv;
    for (std::size_t i = u.size(); i-- > 0;) {
        Int ru = scalar_rank(u[i]), rv = scalar_rank(v[i]);
        if (ru != rv) return ru < rv;
    }
    return false;
}

} // namespace

CyclicWitness make_cyclic_witness(const IntMatrix& m, const Vec& v) {
    IntMatrix w = orbit_matrix(m, v);
    Int dw = det(w);
    if (dw != 1 && dw != -1)
        throw InvalidWitness("orbit determinant " + dw.get_str() + " is not a unit");
    return CyclicWitness{v, std::move(w), std::move(dw)};
}

IntMatrix companion_of(const Poly& p) {
    if (!p.is_monic()) throw PreconditionViolated("companion_of: monic polynomial required");
    long d = p.degree();
    if (d < 1) throw PreconditionViolated("companion_of: degree >= 1 required");
    std::size_t n = static_cast<std::size_t>(d);
    IntMatrix c(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
    for (std::size_t i = 0; i < n; ++i) c.at(i, n - 1) = -p[i];
    return c;
}

IntMatrix orbit_matrix(const IntMatrix& m, const Vec& v) {
    if (!m.is_square()) throw NonSquare("orbit_matrix: square matrix required");
    std::size_t d = m.rows();
    if (v.size() != d) throw WrongDimension("orbit_matrix: vector length mismatch");
    IntMatrix w(d, d);
    Vec cur = v;
    for (std::size_t k = 0; k < d; ++k) {
        w.set_col(k, cur);
        if (k + 1 < d) cur = m.apply(cur);
    }
    return w;
}

bool is_cyclic(const IntMatrix& m, const Vec& v) {
    Int dm = det(m);
    if (dm != 1 && dm != -1) throw NotUnimodular("is_cyclic: det must be a unit");
    Int dw = det(orbit_matrix(m, v));
    return dw == 1 || dw == -1;
}

std::vector<Vec> shell_vectors(std::size_t d, long norm) {
    std::vector<Vec> out;
    if (d == 0 || norm < 0) return out;
    if (norm == 0) {
        out.emplace_back(d, Int(0));
        return out;
    }
    std::vector<long> cur(d, -norm);
    for (;;) {
        long mx = 0;
        for (long c : cur)
            if (std::abs(c) > mx) mx = std::abs(c);
        if (mx == norm) {
            Vec v(d);
            for (std::size_t i = 0; i < d; ++i) v[i] = cur[i];
            out.push_back(std::move(v));
        }
        std::size_t pos = 0;
        while (pos < d && cur[pos] == norm) cur[pos++] = -norm;
        if (pos == d) break;
        ++cur[pos];
    }
    std::sort(out.begin(), out.end(), canon_less);
    return out;
}

std::vector<Vec> box_vectors(std::size_t d, long bound) {
    std::vector<Vec> out;
    for (long r = 0; r <= bound; ++r) {
        std::vector<Vec> shell = shell_vectors(d, r);
        out.insert(out.end(), std::make_move_iterator(shell.begin()),
                   std::make_move_iterator(shell.end()));
    }
    return out;
}

const std::vector<long>& default_filter_primes() {
    static const std::vector<long> primes{2, 3, 5, 7, 11, 13};
    return primes;
}

FilterReport necessary_filters(const IntMatrix& m, const std::vector<long>& primes) {
    if (!m.is_square()) throw NonSquare("necessary_filters: square matrix required");
    std::size_t d = m.rows();
    FilterReport rep;
    Poly mp = minpoly(m);
    rep.minpoly_equals_charpoly = mp.degree() == static_cast<long>(d);
    bool ok = rep.minpoly_equals_charpoly;
    if (!ok)
        rep.reason = "minimal polynomial has degree " + std::to_string(mp.degree()) +
                     " < " + std::to_string(d) + " over Q";
    for (long p : primes) {
        bool good = modp::minpoly_degree(m, p) == d;
        rep.prime_verdicts.emplace_back(p, good);
        if (!good && ok) {
            ok = false;
            rep.reason = "not cyclic modulo " + std::to_string(p);
        }
    }
    rep.pass = ok;
    return rep;
}

std::optional<CyclicWitness> cyclic_search(const IntMatrix& m, long bound) {
    if (!m.is_square()) throw NonSquare("cyclic_search: square matrix required");
    std::size_t d = m.rows();
    for (long r = 1; r <= bound; ++r) {
        for (const Vec& v : shell_vectors(d, r)) {
            Int dw = det(orbit_matrix(m, v));
            if (dw == 1 || dw == -1) return make_cyclic_witness(m, v);
        }
    }
    return std::nullopt;
}

BinaryQuadraticForm orbit_form(const IntMatrix& m) {
    if (!m.is_square() || m.rows() != 2)
        throw WrongDimension("orbit_form: 2x2 matrix required");
    // det[(x,y) | M(x,y)] expanded in x, y.
    return BinaryQuadraticForm{m.at(1, 0), m.at(1, 1) - m.at(0, 0), -m.at(0, 1)};
}

std::string to_string(RankVerdict v) {
    switch (v) {
        case RankVerdict::Rank2: return "Rank2";
        case RankVerdict::Rank3: return "Rank3";
        case RankVerdict::RankAtLeast3: return "RankAtLeast3";
        case RankVerdict::Unknown: return "Unknown";
    }
    throw std::logic_error("unreachable verdict");
}

namespace {

BinaryQuadraticForm transform_form(const BinaryQuadraticForm& q, const IntMatrix& t) {
    // Q'(X,Y) = Q(t00 X + t01 Y, t10 X + t11 Y)
    const Int &t00 = t.at(0, 0), &t01 = t.at(0, 1), &t10 = t.at(1, 0), &t11 = t.at(1, 1);
    BinaryQuadraticForm r;
    r.a = q.eval(t00, t10);
    r.c = q.eval(t01, t11);
    r.b = 2 * q.a * t00 * t01 + q.b * (t00 * t11 + t01 * t10) + 2 * q.c * t10 * t11;
    return r;
}

Rank2Decision witness_from(const IntMatrix& m, const BinaryQuadraticForm& q, Int x, Int y) {
    Vec v{std::move(x), std::move(y)};
    Int val = q.eval(v[0], v[1]);
    if (val != 1 && val != -1)
        throw std::logic_error("form solver produced a non-unit value");
    return Rank2Decision{RankVerdict::Rank2, make_cyclic_witness(m, v)};
}

// Definite forms attain their minimum |a| after Gaussian reduction
// (|b| <= a <= c), so a unit value exists iff the reduced form starts
// with 1. The accumulated transform turns (1,0) back into a witness.
Rank2Decision decide_definite(const IntMatrix& m, const BinaryQuadraticForm& q0) {
    bool flip = q0.a < 0;
    BinaryQuadraticForm q = flip ? BinaryQuadraticForm{-q0.a, -q0.b, -q0.c} : q0;
    IntMatrix t = IntMatrix::identity(2);
    for (;;) {
        if (q.b <= -q.a || q.b > q.a) {
            // x -> x + k y puts b into (-a, a]
            Int k = fdiv_q(q.a - q.b, 2 * q.a);
            IntMatrix shift(2, 2);
            shift.at(0, 0) = 1;
            shift.at(0, 1) = k;
            shift.at(1, 1) = 1;
            q = transform_form(q, shift);
            t = t * shift;
        }
        if (q.a > q.c) {
            IntMatrix swap(2, 2);
            swap.at(0, 1) = -1;
            swap.at(1, 0) = 1;
            q = transform_form(q, swap);
            t = t * swap;
            continue;
        }
        break;
    }
    if (q.a != 1) return Rank2Decision{RankVerdict::Rank3, std::nullopt};
    return witness_from(m, q0, t.at(0, 0), t.at(1, 0));
}

// Zero discriminant, a != 0: 4aQ is a perfect square of a linear form,
// so Q = e reduces to one linear Diophantine equation.
Rank2Decision decide_degenerate(const IntMatrix& m, const BinaryQuadraticForm& q) {
    if (q.a == 0) {
        // b = 0 forced; Q = c y^2 and |c| >= 2 past the shell scan.
        return Rank2Decision{RankVerdict::Rank3, std::nullopt};
    }
    for (int e : {1, -1}) {
        Int n = 4 * q.a * e;
        if (n < 0) continue;
        Int tt = isqrt(n);
        if (tt * tt != n) continue;
        Int two_a = 2 * q.a;
        Xgcd x = xgcd(two_a, q.b);
        if (mod_floor(tt, x.g) != 0) continue;
        Int scale = divexact(tt, x.g);
        return witness_from(m, q, x.s * scale, x.t * scale);
    }
    return Rank2Decision{RankVerdict::Rank3, std::nullopt};
}

// a = 0, b != 0: Q = y (b x + c y); a unit value forces y = +-1.
Rank2Decision decide_split_lead(const IntMatrix& m, const BinaryQuadraticForm& orig,
                                const BinaryQuadraticForm& q, const IntMatrix& t) {
    for (int y : {1, -1})
        for (int e : {1, -1}) {
            Int rhs = Int(y) * (Int(e) - q.c);
            if (mod_floor(rhs, q.b) != 0) continue;
            Int x = divexact(rhs, q.b);
            Vec img{t.at(0, 0) * x + t.at(0, 1) * y, t.at(1, 0) * x + t.at(1, 1) * y};
            return witness_from(m, orig, img[0], img[1]);
        }
    return Rank2Decision{RankVerdict::Rank3, std::nullopt};
}

// Square positive discriminant: move a null vector of Q to (1,0); the
// transformed form has zero leading coefficient and splits.
Rank2Decision decide_square_disc(const IntMatrix& m, const BinaryQuadraticForm& q,
                                 const Int& s) {
    if (q.a == 0)
        return decide_split_lead(m, q, q, IntMatrix::identity(2));
    Int x0 = s - q.b;
    Int y0 = 2 * q.a;
    Int g = gcd(x0, y0);
    Int p = divexact(x0, g), r = divexact(y0, g);
    Xgcd bz = xgcd(p, r);
    IntMatrix t(2, 2);
    t.at(0, 0) = p;
    t.at(0, 1) = -bz.t;
    t.at(1, 0) = r;
    t.at(1, 1) = bz.s;
    BinaryQuadraticForm q2 = transform_form(q, t);
    if (q2.a != 0 || q2.b == 0)
        throw std::logic_error("null-vector transform failed");
    return decide_split_lead(m, q, q2, t);
}

// Nonsquare positive discriminant: walk the cycle of reduced forms. A
// unit is represented iff +-1 shows up as a leading coefficient, and the
// accumulated transform recovers the representing vector.
Rank2Decision decide_indefinite(const IntMatrix& m, const BinaryQuadraticForm& q0,
                                const Int& disc, const Int& s) {
    BinaryQuadraticForm q = q0;
    IntMatrix t = IntMatrix::identity(2);
    std::set<std::array<Int, 3>> seen;
    for (long iter = 0; iter < 200000; ++iter) {
        if (!seen.insert({q.a, q.b, q.c}).second)
            return Rank2Decision{RankVerdict::Rank3, std::nullopt};
        if (q.a == 1 || q.a == -1) return witness_from(m, q0, t.at(0, 0), t.at(1, 0));
        Int ac = abs(q.c);
        Int lo = (ac > s) ? Int(1 - ac) : Int(s - 2 * ac + 1);
        Int r = lo + mod_floor(-q.b - lo, 2 * ac);
        Int step = divexact(r + q.b, 2 * q.c);
        BinaryQuadraticForm next{q.c, r, divexact(r * r - disc, 4 * q.c)};
        IntMatrix sm(2, 2);
        sm.at(0, 1) = -1;
        sm.at(1, 0) = 1;
        sm.at(1, 1) = step;
        t = t * sm;
        q = next;
    }
    throw std::logic_error("reduction walk failed to close a cycle");
}

} // namespace

Rank2Decision decide_rank2_d2(const IntMatrix& m) {
    if (!m.is_square() || m.rows() != 2)
        throw WrongDimension("decide_rank2_d2: 2x2 matrix required");
    BinaryQuadraticForm q = orbit_form(m);
    if (q.a == 0 && q.b == 0 && q.c == 0)
        return Rank2Decision{RankVerdict::Rank3, std::nullopt};
    // Small shells first: keeps witnesses canonical for the common case.
    for (long r = 1; r <= 3; ++r)
        for (const Vec& v : shell_vectors(2, r)) {
            Int val = q.eval(v[0], v[1]);
            if (val == 1 || val == -1)
                return Rank2Decision{RankVerdict::Rank2, make_cyclic_witness(m, v)};
        }
    Int disc = q.disc();
    if (disc < 0) return decide_definite(m, q);
    if (disc == 0) return decide_degenerate(m, q);
    Int s = isqrt(disc);
    if (s * s == disc) return decide_square_disc(m, q, s);
    return decide_indefinite(m, q, disc, s);
}

long vrank(const IntMatrix& m) {
    if (!m.is_square()) throw NonSquare("vrank: square matrix required");
    Poly cp = charpoly(m);
    Factorization fac = factor_Z(cp);
    long blocks = 0;
    for (const auto& [f, mult] : fac.factors) {
        (void)mult;
        std::size_t kd = kernel_dim_Q(eval_poly(f, m));
        std::size_t df = static_cast<std::size_t>(f.degree());
        if (kd % df != 0)
            throw std::logic_error("kernel of an irreducible factor has fractional block count");
        blocks = std::max(blocks, static_cast<long>(kd / df));
    }
    return 1 + blocks;
}

namespace {

// Largest number of companion blocks mod p over irreducible charpoly
// factors, the nilpotent factor x excluded.
long blocks_mod_p(const IntMatrix& m, long p) {
    std::size_t d = m.rows();
    PolyP cp = modp::reduce(charpoly(m), p);
    modp::MatP mp = modp::reduce(m, p);
    long best = 0;
    for (const PolyP& g : modp::distinct_irreducible_factors(cp, p)) {
        long dg = modp::degree(g);
        if (dg == 1 && g[0] == 0) continue;
        modp::MatP gm = modp::eval_poly(g, mp, p);
        std::size_t kd = d - modp::rank(gm, p);
        best = std::max(best, static_cast<long>(kd) / dg);
    }
    return best;
}

// Greedy orbit cover: repeatedly add the box vector whose orbit best
// improves (rank deficiency, lattice index); candidates include the unit
// vectors, so every step strictly improves and the loop terminates.
long greedy_cover(const IntMatrix& m) {
    const std::size_t d = m.rows();
    const std::vector<Vec> box = box_vectors(d, 2);
    std::vector<Vec> cols;
    long picks = 0;
    for (;;) {
        bool have_best = false;
        std::size_t best_defc = 0;
        Int best_idx = 0;
        std::vector<Vec> best_cols;
        for (const Vec& v : box) {
            if (sup_norm(v) == 0) continue;
            std::vector<Vec> trial = cols;
            Vec cur = v;
            for (std::size_t k = 0; k < d; ++k) {
                trial.push_back(cur);
                if (k + 1 < d) cur = m.apply(cur);
            }
            IntMatrix w(d, trial.size());
            for (std::size_t j = 0; j < trial.size(); ++j) w.set_col(j, trial[j]);
            std::size_t defc = d - rank_Q(w);
            Int idx = 0;
            if (defc == 0) {
                IndexValue iv = lattice_index(w);
                if (!iv) throw std::logic_error("full rank span with no finite index");
                idx = *iv;
            }
            bool better = !have_best || defc < best_defc ||
                          (defc == best_defc && defc == 0 && idx < best_idx);
            if (better) {
                have_best = true;
                best_defc = defc;
                best_idx = idx;
                best_cols = std::move(trial);
            }
        }
        cols = std::move(best_cols);
        ++picks;
        if (best_defc == 0 && best_idx == 1) return picks;
        if (picks > 200) throw std::logic_error("orbit cover failed to reach the full lattice");
    }
}

} // namespace

RankReport rank_report(const IntMatrix& m, long bound, const std::vector<long>& primes) {
    if (!m.is_square()) throw NonSquare("rank_report: square matrix required");
    std::size_t d = m.rows();
    if (d == 0) throw WrongDimension("rank_report: empty matrix");
    RankReport rep;
    rep.d = d;
    rep.search_bound = bound;
    rep.vrank = vrank(m);
    rep.filters = necessary_filters(m, primes);
    if (d == 2) {
        Rank2Decision dec = decide_rank2_d2(m);
        rep.verdict = dec.verdict;
        rep.witness = std::move(dec.witness);
        rep.lower_bound = rep.upper_bound = (rep.verdict == RankVerdict::Rank2) ? 2 : 3;
        return rep;
    }
    if (auto w = cyclic_search(m, bound)) {
        rep.verdict = RankVerdict::Rank2;
        rep.witness = std::move(w);
        rep.lower_bound = rep.upper_bound = 2;
        return rep;
    }
    long pb = 0;
    for (long p : primes) pb = std::max(pb, blocks_mod_p(m, p));
    rep.lower_bound = std::max({2L, rep.vrank, 1 + pb});
    rep.upper_bound = 1 + greedy_cover(m);
    if (!rep.filters.pass) {
        rep.verdict = RankVerdict::RankAtLeast3;
        rep.lower_bound = std::max(rep.lower_bound, 3L);
    } else {
        rep.verdict = RankVerdict::Unknown;
    }
    if (rep.upper_bound < rep.lower_bound)
        throw std::logic_error("rank bounds crossed");
    return rep;
}

long f2_mapping_torus_rank(const IntMatrix& m) {
    if (!m.is_square() || m.rows() != 2)
        throw WrongDimension("f2_mapping_torus_rank: 2x2 matrix required");
    return decide_rank2_d2(m).verdict == RankVerdict::Rank2 ? 2 : 3;
}

} // namespace mtr

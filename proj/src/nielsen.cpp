#include "mtr/nielsen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "mtr/errors.hpp"
#include "mtr/factor.hpp"
#include "mtr/linalg.hpp"
#include "mtr/spectral.hpp"

namespace mtr {

namespace {

std::vector<Int> flatten(const IntMatrix& x) {
    std::vector<Int> v;
    v.reserve(x.rows() * x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) v.push_back(x.at(i, j));
    return v;
}

IntMatrix unimodular_inverse(const IntMatrix& x) {
    Int dx = det(x);
    if (dx != 1 && dx != -1) throw NotUnimodular("inverse of a non-unit");
    return adjugate(x) * dx;
}

// Membership of t in the row lattice spanned by `rows` (assumed a basis in
// arbitrary form): reduce against the HNF.
bool in_row_lattice(const IntMatrix& rows, const std::vector<Int>& t) {
    IntMatrix h = hnf(rows).h;
    std::vector<Int> r = t;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t p = 0;
        while (p < h.cols() && h.at(i, p) == 0) ++p;
        if (p == h.cols()) continue;
        if (r[p] % h.at(i, p) != 0) return false;
        Int q = r[p] / h.at(i, p);
        for (std::size_t j = p; j < h.cols(); ++j) r[j] -= q * h.at(i, j);
    }
    for (const Int& x : r)
        if (x != 0) return false;
    return true;
}

// Exact coordinates of t in the plane spanned by b0, b1, or nothing.
std::optional<std::pair<Rat, Rat>> solve_pair(const IntMatrix& b0, const IntMatrix& b1,
                                              const IntMatrix& t) {
    auto v0 = flatten(b0), v1 = flatten(b1), vt = flatten(t);
    const std::size_t n = v0.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int d2 = v0[i] * v1[j] - v0[j] * v1[i];
            if (d2 == 0) continue;
            Int na = vt[i] * v1[j] - vt[j] * v1[i];
            Int nb = v0[i] * vt[j] - v0[j] * vt[i];
            Rat a(na);
            a /= Rat(d2);
            Rat b(nb);
            b /= Rat(d2);
            for (std::size_t k = 0; k < n; ++k)
                if (a * Rat(v0[k]) + b * Rat(v1[k]) != Rat(vt[k])) return std::nullopt;
            return std::make_pair(a, b);
        }
    return std::nullopt;
}

Int int_coord(const Rat& q) {
    if (q.get_den() != 1) throw std::logic_error("coordinate is not integral");
    return Int(q.get_num());
}

// Closed interval with outward-rounded endpoints; wide enough for the
// one-shot certificates below.
struct RInt {
    Real lo, hi;

    RInt operator+(const RInt& o) const { return {lo + o.lo, hi + o.hi}; }
    RInt operator-(const RInt& o) const { return {lo - o.hi, hi - o.lo}; }
    RInt operator*(const RInt& o) const {
        Real a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
    RInt operator-() const { return {-hi, -lo}; }
    bool excludes_zero() const { return lo > 0 || hi < 0; }
};

RInt abs_int(const RInt& x) {
    if (x.lo > 0) return x;
    if (x.hi < 0) return {-x.hi, -x.lo};
    return {Real(0), std::max(Real(-x.lo), x.hi)};
}

// (max, min, sum of absolute values) of the log-moduli, as certified
// intervals; these are symmetric in the eigenvalues, so no pairing
// between two spectra is needed.
struct LogStats {
    RInt alpha, beta, s;
};

std::optional<LogStats> log_stats(const Spectrum& spec) {
    bool first = true;
    LogStats st{};
    for (const auto& e : spec.entries) {
        Real mod = e.value.abs_val();
        Real lo = mod - e.radius, hi = mod + e.radius;
        if (!(lo > 0)) return std::nullopt;
        RInt lg{log(lo), log(hi)};
        for (long r = 0; r < e.multiplicity; ++r) {
            if (first) {
                st.alpha = lg;
                st.beta = lg;
                st.s = abs_int(lg);
                first = false;
            } else {
                st.alpha = {std::max(st.alpha.lo, lg.lo), std::max(st.alpha.hi, lg.hi)};
                st.beta = {std::min(st.beta.lo, lg.lo), std::min(st.beta.hi, lg.hi)};
                st.s = st.s + abs_int(lg);
            }
        }
    }
    if (first) return std::nullopt;
    return st;
}

// Certified non-parallelism of (alpha, beta, s) vectors: some 2x2 minor
// bounded away from zero.
bool certified_independent(const LogStats& w, const RInt (&t)[3]) {
    const RInt v[3] = {w.alpha, w.beta, w.s};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if ((v[i] * t[j] - v[j] * t[i]).excludes_zero()) return true;
    return false;
}

// No h^a = +-M^b with 0 < max(|a|,|b|) <= range, checked exactly.
bool relation_free(const IntMatrix& m, const IntMatrix& h, long range) {
    std::set<std::vector<Int>> powers;
    for (long b = -range; b <= range; ++b) {
        IntMatrix p = matpow(m, b);
        powers.insert(flatten(p));
        powers.insert(flatten(-p));
    }
    IntMatrix hp = IntMatrix::identity(h.rows());
    IntMatrix hn = hp;
    IntMatrix hinv = unimodular_inverse(h);
    for (long a = 1; a <= range; ++a) {
        hp = hp * h;
        hn = hn * hinv;
        if (powers.count(flatten(hp)) || powers.count(flatten(hn))) return false;
    }
    return true;
}

long capped_height(long height, long rank, double budget) {
    long h = height;
    while (h > 1) {
        double combos = 1;
        bool fits = true;
        for (long i = 0; i < rank; ++i) {
            combos *= 2 * h + 1;
            if (combos > budget) {
                fits = false;
                break;
            }
        }
        if (fits) break;
        --h;
    }
    return h;
}

} // namespace

std::string to_string(NielsenVerdict v) {
    switch (v) {
        case NielsenVerdict::FiniteCount: return "FiniteCount";
        case NielsenVerdict::InfiniteWitness: return "InfiniteWitness";
        case NielsenVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

CommutantBasis commutant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw NonSquare("commutant of a nonsquare matrix");
    const std::size_t d = m.rows();
    IntMatrix l(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t row = i * d + j;
            for (std::size_t k = 0; k < d; ++k) {
                l.at(row, k * d + j) += m.at(i, k);
                l.at(row, i * d + k) -= m.at(k, j);
            }
        }
    IntMatrix ker = kernel_basis(l);
    CommutantBasis cb;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        IntMatrix x(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) x.at(i, j) = ker.at(r, i * d + j);
        if (m * x != x * m) throw std::logic_error("commutant basis fails to commute");
        cb.basis.push_back(std::move(x));
    }
    return cb;
}

std::vector<IntMatrix> unit_search(const CommutantBasis& cb, long height, bool collapse) {
    if (height < 0) throw PreconditionViolated("negative height");
    if (cb.rank() == 0) return {};
    const std::size_t d = cb.basis[0].rows();
    const long rank = cb.rank();
    {
        double combos = 1;
        for (long i = 0; i < rank; ++i) {
            combos *= 2 * height + 1;
            if (combos > 16777216.0)
                throw PreconditionViolated("height too large for commutant rank "
                                           + std::to_string(rank));
        }
    }

    std::map<std::vector<Int>, IntMatrix> found;
    auto admit = [&](const IntMatrix& x) {
        Int dx = det(x);
        if (dx != 1 && dx != -1) return;
        found.emplace(flatten(x), x);
    };

    if (height > 0) {
        std::vector<long> c(static_cast<std::size_t>(rank), -height);
        IntMatrix x(d, d);
        for (const auto& b : cb.basis) x = x - b * Int(height);
        for (;;) {
            admit(x);
            long j = 0;
            while (j < rank && c[static_cast<std::size_t>(j)] == height) ++j;
            if (j == rank) break;
            c[static_cast<std::size_t>(j)] += 1;
            x = x + cb.basis[static_cast<std::size_t>(j)];
            for (long i = 0; i < j; ++i) {
                c[static_cast<std::size_t>(i)] = -height;
                x = x - cb.basis[static_cast<std::size_t>(i)] * Int(2 * height);
            }
        }
    }

    // the identity is a unit of the ring whenever the lattice holds it,
    // even when its coordinates exceed the height box
    {
        IntMatrix stacked(static_cast<std::size_t>(rank), d * d);
        for (long r = 0; r < rank; ++r) {
            auto f = flatten(cb.basis[static_cast<std::size_t>(r)]);
            for (std::size_t cidx = 0; cidx < d * d; ++cidx)
                stacked.at(static_cast<std::size_t>(r), cidx) = f[cidx];
        }
        if (in_row_lattice(stacked, flatten(IntMatrix::identity(d))))
            admit(IntMatrix::identity(d));
    }

    if (collapse) {
        // one representative per orbit under negation and inversion:
        // the lexicographically least member
        std::map<std::vector<Int>, IntMatrix> canon;
        for (const auto& [key, x] : found) {
            IntMatrix inv = unimodular_inverse(x);
            std::vector<Int> bk = key;
            IntMatrix bx = x;
            for (const IntMatrix& cand : {-x, inv, -inv}) {
                auto k = flatten(cand);
                if (k < bk) {
                    bk = std::move(k);
                    bx = cand;
                }
            }
            canon.emplace(std::move(bk), std::move(bx));
        }
        std::vector<IntMatrix> out;
        out.reserve(canon.size());
        for (auto& [key, x] : canon) out.push_back(std::move(x));
        return out;
    }

    std::vector<IntMatrix> out;
    out.reserve(found.size());
    for (auto& [key, x] : found) out.push_back(std::move(x));
    return out;
}

NielsenReport nielsen_count_d2(const IntMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw WrongDimension("class count needs d = 2");
    if (decide_rank2_d2(m).verdict != RankVerdict::Rank2)
        throw PreconditionViolated("mapping torus is not rank 2");
    if (finite_order(m)) throw PreconditionViolated("finite-order monodromy");

    CommutantBasis cb = commutant(m);
    if (cb.rank() != 2) throw std::logic_error("2x2 commutant rank is not 2");

    // rebase to {I, gamma}
    auto ic = solve_pair(cb.basis[0], cb.basis[1], IntMatrix::identity(2));
    if (!ic) throw std::logic_error("identity escapes the commutant");
    Int c0 = int_coord(ic->first), c1 = int_coord(ic->second);
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), c0.get_mpz_t(),
               c1.get_mpz_t());
    if (g != 1) throw std::logic_error("identity is imprimitive in the commutant");
    IntMatrix gamma = cb.basis[1] * u - cb.basis[0] * v;

    Int t = gamma.at(0, 0) + gamma.at(1, 1);
    Int w = -det(gamma);   // gamma^2 = t gamma + w I

    auto mc = solve_pair(IntMatrix::identity(2), gamma, m);
    if (!mc) throw std::logic_error("monodromy escapes its commutant");
    Int xm = int_coord(mc->first), ym = int_coord(mc->second);

    NielsenReport rep;
    rep.verdict = NielsenVerdict::FiniteCount;

    Int disc = t * t + 4 * w;
    if (disc == 0) {
        // parabolic: units are +-(I + k N), N = gamma - (t/2) I
        if (t % 2 != 0) throw std::logic_error("odd trace with vanishing discriminant");
        IntMatrix nil = gamma - IntMatrix::identity(2) * (t / 2);
        rep.fundamental_unit = IntMatrix::identity(2) + nil;
        Int s = xm + ym * (t / 2);   // +-1, the scalar part of M
        rep.exponent = s * ym;
        rep.count = abs(ym);
        rep.note = "parabolic commutant";
        return rep;
    }
    if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()))
        throw PreconditionViolated("discriminant incompatible with infinite order");

    // fundamental unit by ascending Pell scan: z^2 - disc y^2 = -+4,
    // z = 2x + t y
    Int x0, y0;
    bool have = false;
    for (Int y = 1; y <= 2000000; ++y) {
        for (int sgn : {-1, 1}) {
            Int target = disc * y * y + 4 * sgn;
            if (target < 0 || !mpz_perfect_square_p(target.get_mpz_t())) continue;
            Int z = sqrt(target);
            if ((z - t * y) % 2 != 0) continue;
            x0 = (z - t * y) / 2;
            y0 = y;
            have = true;
            break;
        }
        if (have) break;
    }
    if (!have) throw std::logic_error("fundamental unit search exceeded its bound");
    IntMatrix eps = IntMatrix::identity(2) * x0 + gamma * y0;
    Int neps = det(eps);
    if (neps != 1 && neps != -1) throw std::logic_error("Pell solution is not a unit");
    rep.fundamental_unit = eps;

    // exact power decomposition M = +-eps^k in (x, y) coordinates
    auto mul = [&](std::pair<Int, Int> a, std::pair<Int, Int> b) {
        return std::pair<Int, Int>(
            a.first * b.first + w * a.second * b.second,
            a.first * b.second + a.second * b.first + t * a.second * b.second);
    };
    std::pair<Int, Int> target(xm, ym), ntarget(-xm, -ym);
    std::pair<Int, Int> e(x0, y0);
    std::pair<Int, Int> einv((x0 + t * y0) * neps, -y0 * neps);
    for (const auto& [dir, base] : {std::pair<int, std::pair<Int, Int>>{1, e},
                                    {-1, einv}}) {
        std::pair<Int, Int> p(1, 0);
        for (long k = 1; k <= 256; ++k) {
            p = mul(p, base);
            if (p == target || p == ntarget) {
                rep.exponent = Int(dir) * k;
                rep.count = k;
                return rep;
            }
        }
    }
    throw std::logic_error("monodromy is not a power of the fundamental unit");
}

NielsenReport infinite_nielsen_probe(const IntMatrix& m, long height, long range,
                                     long bits) {
    if (m.rows() != m.cols()) throw NonSquare("probe needs a square matrix");
    if (height < 1 || range < 1) throw PreconditionViolated("bounds must be positive");

    NielsenReport rep;
    rep.height = height;
    rep.range = range;
    if (finite_order(m)) {
        rep.note = "finite-order monodromy, no independent unit exists";
        return rep;
    }

    CommutantBasis cb = commutant(m);
    rep.height = capped_height(height, cb.rank(), 4000000.0);

    Spectrum sm = roots(charpoly(m), bits);
    auto wm = log_stats(sm);
    if (!wm) {
        rep.note = "monodromy spectrum not certified at this precision";
        return rep;
    }
    const RInt tplus[3] = {wm->alpha, wm->beta, wm->s};
    const RInt tminus[3] = {-wm->beta, -wm->alpha, wm->s};

    const auto id_key = flatten(IntMatrix::identity(m.rows()));
    for (const IntMatrix& h : unit_search(cb, rep.height, true)) {
        if (flatten(h) == id_key) continue;
        if (finite_order(h)) continue;
        if (!relation_free(m, h, range)) continue;
        auto wh = log_stats(roots(charpoly(h), bits));
        if (!wh) continue;
        if (certified_independent(*wh, tplus) && certified_independent(*wh, tminus)) {
            rep.verdict = NielsenVerdict::InfiniteWitness;
            rep.witness_h = h;
            rep.note = "exact relation scan plus certified log-modulus independence";
            return rep;
        }
    }
    rep.note = "no certified independent unit within the bounds";
    return rep;
}

PairClassReport generating_pair_classes(const IntMatrix& m, const Vec& v,
                                        long height, long range, long bits) {
    if (m.rows() != m.cols()) throw NonSquare("square matrix required");
    if (v.size() != m.rows()) throw WrongDimension("vector length must match matrix size");
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }))
        throw PreconditionViolated("zero vector cannot generate");
    Int dm = det(m);
    if (dm != 1 && dm != -1) throw NotUnimodular("matrix must have determinant +-1");

    PairClassReport rep;
    rep.height = height;
    rep.range = range;

    CommutantBasis cb = commutant(m);
    auto units = unit_search(cb, height, false);
    // Claim small units first; otherwise the +-M^k window around a far-out
    // first representative misses units on the other side of the box.
    auto entry_height = [](const IntMatrix& x) {
        Int h = 0;
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) {
                Int a = abs(x.at(i, j));
                if (a > h) h = a;
            }
        return h;
    };
    std::stable_sort(units.begin(), units.end(),
                     [&](const IntMatrix& a, const IntMatrix& b) {
                         Int ha = entry_height(a), hb = entry_height(b);
                         if (ha != hb) return ha < hb;
                         return flatten(a) < flatten(b);
                     });

    std::vector<IntMatrix> mpow;
    for (long k = -range; k <= range; ++k) mpow.push_back(matpow(m, k));

    std::set<std::vector<Int>> claimed;
    for (const IntMatrix& h : units) {
        if (claimed.count(flatten(h))) continue;
        rep.reps.push_back(h);
        rep.second_generators.push_back(h.apply(v));
        for (const IntMatrix& p : mpow) {
            IntMatrix q = p * h;
            claimed.insert(flatten(q));
            claimed.insert(flatten(-q));
        }
    }

    rep.infinite =
        infinite_nielsen_probe(m, height, range, bits).verdict
        == NielsenVerdict::InfiniteWitness;
    if (m.rows() == 2) {
        try {
            rep.exact_d2_count = nielsen_count_d2(m).count;
        } catch (const Error&) {
        }
    }
    return rep;
}

} // namespace mtr

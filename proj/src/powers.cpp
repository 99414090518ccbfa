#include "mtr/powers.hpp"

#include <algorithm>
#include <stdexcept>

#include "mtr/errors.hpp"
#include "mtr/linalg.hpp"

namespace mtr {

namespace {

void check_witness(const IntMatrix& m, const CyclicWitness& w) {
    if (w.det_w != 1 && w.det_w != -1)
        throw InvalidWitness("witness determinant is not a unit");
    IntMatrix o = orbit_matrix(m, w.v);
    if (o != w.w || det(o) != w.det_w)
        throw InvalidWitness("witness does not match its matrix");
}

Int snf_index(const IntMatrix& o) {
    SnfResult s = snf(o);
    Int prod = 1;
    for (std::size_t i = 0; i < s.d.rows(); ++i) prod *= s.d.at(i, i);
    return prod;
}

// det and SNF must agree up to sign on every evaluation; a mismatch is a
// library bug, not bad input.
Int checked_det(const IntMatrix& o) {
    Int dd = det(o);
    Int idx = snf_index(o);
    if (abs(dd) != idx) throw std::logic_error("determinant route disagrees with SNF route");
    return dd;
}

} // namespace

OrbitCoordinates u_table(const IntMatrix& m, const CyclicWitness& witness, long i_max) {
    check_witness(m, witness);
    if (i_max < 0) throw PreconditionViolated("u_table: i_max must be nonnegative");
    const std::size_t d = m.rows();
    Poly cp = charpoly(m);
    OrbitCoordinates oc;
    oc.w = witness.w;
    oc.u.reserve(static_cast<std::size_t>(i_max) + 1);
    std::vector<Int> row(d, Int(0));
    row[0] = 1;
    oc.u.push_back(row);
    for (long i = 1; i <= i_max; ++i) {
        const std::vector<Int>& prev = oc.u.back();
        std::vector<Int> next(d);
        const Int& top = prev[d - 1];
        next[0] = -cp[0] * top;
        for (std::size_t k = 1; k < d; ++k) next[k] = prev[k - 1] - cp[k] * top;
        oc.u.push_back(std::move(next));
    }
    return oc;
}

IndexValue delta(const IntMatrix& m, const CyclicWitness& witness, long n) {
    check_witness(m, witness);
    if (n < 1) throw PreconditionViolated("delta: n must be positive");
    IntMatrix o = orbit_matrix(matpow(m, n), witness.v);
    Int dd = checked_det(o);
    if (dd == 0) return std::nullopt;
    return abs(dd);
}

Int delta_signed(const IntMatrix& m, const CyclicWitness& witness, long n) {
    check_witness(m, witness);
    if (n < 1) throw PreconditionViolated("delta_signed: n must be positive");
    return checked_det(orbit_matrix(matpow(m, n), witness.v));
}

DeltaSequence delta_scan(const IntMatrix& m, long n_max, long bound) {
    if (n_max < 1) throw PreconditionViolated("delta_scan: n_max must be positive");
    auto w = cyclic_search(m, bound);
    if (!w) throw NoWitnessFound("no cyclic vector within bound " + std::to_string(bound));
    const std::size_t d = m.rows();
    DeltaSequence seq;
    seq.n_max = n_max;
    seq.witness = *w;
    // all powers M^i v for i <= (d-1) n_max, one product per step
    std::vector<Vec> pow_v;
    pow_v.push_back(w->v);
    long top = (static_cast<long>(d) - 1) * n_max;
    for (long i = 1; i <= top; ++i) pow_v.push_back(m.apply(pow_v.back()));
    for (long n = 1; n <= n_max; ++n) {
        IntMatrix o(d, d);
        for (std::size_t k = 0; k < d; ++k)
            o.set_col(k, pow_v[static_cast<std::size_t>(n) * k]);
        Int dd = checked_det(o);
        DeltaValue val;
        val.n = n;
        val.signed_det = dd;
        if (dd != 0) {
            val.delta = abs(dd);
            if (val.delta == Int(1)) seq.rank2_powers.push_back(n);
        }
        seq.values.push_back(std::move(val));
    }
    return seq;
}

CnPair cn_2x2(const TraceParams2x2& p, long n) {
    if (p.eps != 1 && p.eps != -1)
        throw PreconditionViolated("cn_2x2: eps must be +-1");
    if (n < 0) throw PreconditionViolated("cn_2x2: n must be nonnegative");
    Int c_prev = 0, c_cur = 1;              // c_0, c_1
    if (n == 0) return {Int(0), Int(1)};    // d_0 = 1
    for (long i = 1; i < n; ++i) {
        Int c_next = p.tau * c_cur + Int(p.eps) * c_prev;
        c_prev = std::move(c_cur);
        c_cur = std::move(c_next);
    }
    // d_n = eps * c_{n-1}
    return {c_cur, Int(p.eps) * c_prev};
}

ProductCheck cn_product_check(const TraceParams2x2& p, long n, long precision_bits,
                              double rel_tol) {
    if (p.eps != 1 && p.eps != -1)
        throw PreconditionViolated("cn_product_check: eps must be +-1");
    if (n < 2) throw PreconditionViolated("cn_product_check: n must be >= 2");
    set_precision_bits(precision_bits);
    ProductCheck rep;
    rep.cn = cn_2x2(p, n).c;
    rep.chebyshev_match = true;
    Real tau = to_real(p.tau);
    Real pi = real_pi();
    Real denom = to_real(Int(abs(rep.cn)));
    if (denom < 1) denom = 1;
    if (p.eps == -1) {
        Real prod = 1;
        for (long k = 1; k < n; ++k)
            prod *= tau - 2 * cos(Real(k) * pi / Real(n));
        rep.product_re = prod;
        rep.product_im = 0;
        rep.rel_error = abs(prod - to_real(rep.cn)) / denom;
        // same recurrence, same seeds: U_{n-1}(tau/2) in exact integers
        Int u_prev = 1, u_cur = p.tau;
        for (long k = 2; k < n; ++k) {
            Int u_next = p.tau * u_cur - u_prev;
            u_prev = std::move(u_cur);
            u_cur = std::move(u_next);
        }
        rep.chebyshev_match = (u_cur == rep.cn);
        if (!rep.chebyshev_match)
            throw ToleranceExceeded("Chebyshev value differs from the recurrence");
    } else {
        Complex prod{Real(1), Real(0)};
        for (long k = 1; k < n; ++k)
            prod *= Complex{tau, -2 * cos(Real(k) * pi / Real(n))};
        rep.product_re = prod.re;
        rep.product_im = prod.im;
        Real err_re = abs(prod.re - to_real(rep.cn)) / denom;
        Real err_im = abs(prod.im) / denom;
        rep.rel_error = (err_re > err_im) ? err_re : err_im;
        if (err_im > rel_tol)
            throw ToleranceExceeded("imaginary part of the product did not cancel");
    }
    if (rep.rel_error > rel_tol)
        throw ToleranceExceeded("product value strays from the exact recurrence");
    return rep;
}

LinearRecurrence min_recurrence(const std::vector<Rat>& prefix) {
    const long len = static_cast<long>(prefix.size());
    if (len == 0) throw InsufficientData("empty prefix");
    // Berlekamp-Massey over Q: connection polynomial C, previous B.
    std::vector<Rat> c{Rat(1)}, b{Rat(1)};
    long l = 0, shift = 1;
    Rat b_disc = 1;
    for (long i = 0; i < len; ++i) {
        Rat d = prefix[static_cast<std::size_t>(i)];
        for (long j = 1; j <= l; ++j)
            d += c[static_cast<std::size_t>(j)] * prefix[static_cast<std::size_t>(i - j)];
        if (d == 0) {
            ++shift;
            continue;
        }
        Rat coef = d / b_disc;
        if (2 * l <= i) {
            std::vector<Rat> keep = c;
            if (c.size() < b.size() + static_cast<std::size_t>(shift))
                c.resize(b.size() + static_cast<std::size_t>(shift), Rat(0));
            for (std::size_t j = 0; j < b.size(); ++j)
                c[j + static_cast<std::size_t>(shift)] -= coef * b[j];
            l = i + 1 - l;
            b = std::move(keep);
            b_disc = d;
            shift = 1;
        } else {
            if (c.size() < b.size() + static_cast<std::size_t>(shift))
                c.resize(b.size() + static_cast<std::size_t>(shift), Rat(0));
            for (std::size_t j = 0; j < b.size(); ++j)
                c[j + static_cast<std::size_t>(shift)] -= coef * b[j];
            ++shift;
        }
    }
    if (2 * l > len)
        throw InsufficientData("prefix shorter than twice the recurrence order");
    LinearRecurrence rec;
    rec.order = l;
    rec.coeffs.reserve(static_cast<std::size_t>(l));
    for (long j = 1; j <= l; ++j) {
        Rat q = (static_cast<std::size_t>(j) < c.size()) ? -c[static_cast<std::size_t>(j)]
                                                         : Rat(0);
        q.canonicalize();
        rec.coeffs.push_back(std::move(q));
    }
    rec.initial.assign(prefix.begin(), prefix.begin() + l);
    return rec;
}

std::vector<Rat> extend_sequence(const LinearRecurrence& rec, std::vector<Rat> seq,
                                 long extra) {
    if (static_cast<long>(seq.size()) < rec.order)
        throw InsufficientData("seed shorter than the recurrence order");
    for (long t = 0; t < extra; ++t) {
        Rat next = 0;
        for (long j = 0; j < rec.order; ++j)
            next += rec.coeffs[static_cast<std::size_t>(j)] *
                    seq[seq.size() - 1 - static_cast<std::size_t>(j)];
        next.canonicalize();
        seq.push_back(std::move(next));
    }
    return seq;
}

std::vector<std::pair<long, long>> constant_progression_scan(
    const std::vector<IndexValue>& seq, const Int& c, long first_index) {
    const long len = static_cast<long>(seq.size());
    if (len < 20) throw PreconditionViolated("progression scan needs at least 20 terms");
    std::vector<std::pair<long, long>> out;
    for (long m = 1; m <= len / 4; ++m) {
        for (long r = 0; r < m; ++r) {
            bool all = true;
            bool any = false;
            for (long i = 0; i < len; ++i) {
                long idx = first_index + i;
                if (mod_floor(Int(idx), Int(m)) != Int(r)) continue;
                any = true;
                const IndexValue& v = seq[static_cast<std::size_t>(i)];
                if (!v || *v != c) {
                    all = false;
                    break;
                }
            }
            if (!(all && any)) continue;
            bool implied = false;
            for (const auto& [pm, pr] : out)
                if (m % pm == 0 && mod_floor(Int(r - pr), Int(pm)) == 0) {
                    implied = true;
                    break;
                }
            if (!implied) out.emplace_back(m, r);
        }
    }
    return out;
}

Min2GenResult min_2gen_index(const IntMatrix& m, long n, long m_max, long box) {
    if (!m.is_square()) throw NonSquare("min_2gen_index: square matrix required");
    if (n < 1 || m_max < 1 || box < 1)
        throw PreconditionViolated("min_2gen_index: positive n, m_max, box required");
    const std::size_t d = m.rows();
    Min2GenResult res;
    res.m_max = m_max;
    res.box = box;
    const std::vector<Vec> cand = box_vectors(d, box);
    for (long mm = 1; mm <= m_max; ++mm) {
        IntMatrix p = matpow(m, n * mm);
        for (const Vec& a : cand) {
            bool zero = true;
            for (const Int& x : a)
                if (x != 0) zero = false;
            if (zero) continue;
            Int dd = det(orbit_matrix(p, a));
            if (dd == 0) continue;
            Int val = Int(mm) * abs(dd);
            if (!res.index || val < *res.index) {
                res.index = val;
                res.best_m = mm;
                res.best_a = a;
            }
        }
    }
    return res;
}

} // namespace mtr

#include "mtr/modp.hpp"

#include <algorithm>
#include <stdexcept>

#include "mtr/errors.hpp"

namespace mtr {
namespace modp {

long normalize_coeff(long c, long p) {
    long r = c % p;
    return r < 0 ? r + p : r;
}

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP reduce(const Poly& f, long p) {
    PolyP out;
    out.reserve(f.coeffs().size());
    for (const Int& c : f.coeffs())
        out.push_back(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
    trim(out);
    return out;
}

long degree(const PolyP& f) { return static_cast<long>(f.size()) - 1; }

bool is_zero(const PolyP& f) { return f.empty(); }

long inv_mod(long a, long p) {
    a = normalize_coeff(a, p);
    if (a == 0) throw std::logic_error("inv_mod: zero");
    long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    return normalize_coeff(t, p);
}

PolyP make_monic(const PolyP& f, long p) {
    if (f.empty() || f.back() == 1) return f;
    long s = inv_mod(f.back(), p);
    PolyP out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = (f[i] * s) % p;
    return out;
}

PolyP add(const PolyP& a, const PolyP& b, long p) {
    PolyP out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        long s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        out[i] = s >= p ? s - p : s;
    }
    trim(out);
    return out;
}

PolyP sub(const PolyP& a, const PolyP& b, long p) {
    PolyP out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        long s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        out[i] = s < 0 ? s + p : s;
    }
    trim(out);
    return out;
}

PolyP mul(const PolyP& a, const PolyP& b, long p) {
    if (a.empty() || b.empty()) return {};
    PolyP out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    trim(out);
    return out;
}

void divrem(const PolyP& a, const PolyP& b, long p, PolyP& q, PolyP& r) {
    if (b.empty()) throw std::logic_error("modp::divrem: zero divisor");
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    long binv = inv_mod(b.back(), p);
    while (r.size() >= b.size()) {
        long c = (r.back() * binv) % p;
        std::size_t shift = r.size() - b.size();
        if (c != 0) {
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i) {
                long v = r[shift + i] - c * b[i] % p;
                r[shift + i] = v < 0 ? v + p : v;
            }
        }
        // Leading coefficient cancels by construction.
        r.pop_back();
        trim(r);
        if (r.size() < b.size()) break;
    }
    trim(q);
    trim(r);
}

PolyP gcd(const PolyP& a, const PolyP& b, long p) {
    PolyP x = a, y = b, q, r;
    trim(x);
    trim(y);
    while (!y.empty()) {
        divrem(x, y, p, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x, p);
}

PolyP derivative(const PolyP& f, long p) {
    if (f.size() <= 1) return {};
    PolyP out(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i - 1] = (f[i] * static_cast<long>(i % static_cast<std::size_t>(p))) % p;
    trim(out);
    return out;
}

PolyP powmod(const PolyP& base, const Int& e, const PolyP& mod, long p) {
    PolyP result{1};
    PolyP b = base, q, r;
    divrem(b, mod, p, q, r);
    b = r;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) {
            result = mul(result, b, p);
            divrem(result, mod, p, q, r);
            result = r;
        }
        b = mul(b, b, p);
        divrem(b, mod, p, q, r);
        b = r;
        k >>= 1;
    }
    return result;
}

void bezout(const PolyP& a, const PolyP& b, long p, PolyP& s, PolyP& t) {
    PolyP r0 = a, r1 = b;
    PolyP s0{1}, s1{}, t0{}, t1{1};
    PolyP q, r;
    while (!r1.empty()) {
        divrem(r0, r1, p, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        PolyP ns = sub(s0, mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(ns);
        PolyP nt = sub(t0, mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (degree(r0) != 0)
        throw std::logic_error("modp::bezout: inputs not coprime");
    long s_scale = inv_mod(r0[0], p);
    s.clear();
    s.reserve(s0.size());
    for (long c : s0) s.push_back((c * s_scale) % p);
    trim(s);
    t.clear();
    t.reserve(t0.size());
    for (long c : t0) t.push_back((c * s_scale) % p);
    trim(t);
}

namespace {

// Nullspace basis of an n x n matrix over F_p, rows as vectors.
std::vector<std::vector<long>> nullspace(std::vector<std::vector<long>> m, long p) {
    std::size_t n = m.size();
    std::vector<long> pivot_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t sel = row;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(m[sel], m[row]);
        long s = inv_mod(m[row][col], p);
        for (std::size_t j = 0; j < n; ++j) m[row][j] = (m[row][j] * s) % p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            long c = m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                long v = m[i][j] - c * m[row][j] % p;
                m[i][j] = v < 0 ? v + p : v;
            }
        }
        pivot_col[row] = static_cast<long>(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < row; ++i) is_pivot[static_cast<std::size_t>(pivot_col[i])] = true;
    std::vector<std::vector<long>> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<long> v(n, 0);
        v[free_col] = 1;
        for (std::size_t i = 0; i < row; ++i) {
            long c = m[i][free_col];
            if (c != 0) v[static_cast<std::size_t>(pivot_col[i])] = p - c;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

std::vector<PolyP> berlekamp(const PolyP& f_in, long p) {
    PolyP f = make_monic(f_in, p);
    std::size_t n = static_cast<std::size_t>(degree(f));
    if (n <= 1) return {f};

    // Column i of the Frobenius matrix holds x^(p*i) mod f; nullspace()
    // solves Mv = 0 for column vectors, so fill columns directly.
    PolyP xp = powmod(PolyP{0, 1}, Int(p), f, p);
    std::vector<std::vector<long>> q(n, std::vector<long>(n, 0));
    PolyP cur{1};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cur.size(); ++j) q[j][i] = cur[j];
        if (i + 1 < n) {
            cur = mul(cur, xp, p);
            PolyP qq, rr;
            divrem(cur, f, p, qq, rr);
            cur = rr;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        q[i][i] = q[i][i] == 0 ? p - 1 : q[i][i] - 1;

    std::vector<std::vector<long>> basis = nullspace(std::move(q), p);
    std::size_t r = basis.size();
    if (r == 1) return {f};

    std::vector<PolyP> factors{f};
    for (const auto& vrow : basis) {
        if (factors.size() >= r) break;
        PolyP v(vrow.begin(), vrow.end());
        trim(v);
        if (degree(v) < 1) continue;
        std::vector<PolyP> next;
        for (const PolyP& u : factors) {
            if (degree(u) == 1) {
                next.push_back(u);
                continue;
            }
            PolyP qq, vu;
            divrem(v, u, p, qq, vu);
            std::vector<PolyP> pieces;
            PolyP rest = u;
            for (long s = 0; s < p && degree(rest) > 0; ++s) {
                PolyP shifted = vu;
                if (shifted.empty()) shifted.push_back(0);
                shifted[0] = normalize_coeff(shifted[0] - s, p);
                trim(shifted);
                PolyP g = gcd(rest, shifted, p);
                if (degree(g) > 0 && degree(g) < degree(rest)) {
                    pieces.push_back(g);
                    PolyP q2, r2;
                    divrem(rest, g, p, q2, r2);
                    rest = make_monic(q2, p);
                }
            }
            if (degree(rest) > 0) pieces.push_back(rest);
            for (auto& piece : pieces) next.push_back(std::move(piece));
        }
        factors = std::move(next);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

namespace {

PolyP pth_root(const PolyP& f, long p) {
    // Over F_p, f with f' = 0 satisfies f(x) = g(x^p) and g has the same
    // coefficients (Frobenius fixes F_p), so read off every p-th one.
    PolyP g;
    for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p))
        g.push_back(f[i]);
    trim(g);
    return g;
}

void collect_distinct(const PolyP& f_in, long p, std::vector<PolyP>& out) {
    PolyP f = make_monic(f_in, p);
    if (degree(f) < 1) return;
    PolyP d = derivative(f, p);
    if (is_zero(d)) {
        collect_distinct(pth_root(f, p), p, out);
        return;
    }
    PolyP g = gcd(f, d, p);
    if (degree(g) > 0) {
        PolyP q, r;
        divrem(f, g, p, q, r);
        collect_distinct(q, p, out);
        collect_distinct(g, p, out);
        return;
    }
    std::vector<PolyP> irr = berlekamp(f, p);
    for (auto& h : irr) out.push_back(std::move(h));
}

} // namespace

std::vector<PolyP> distinct_irreducible_factors(const PolyP& f, long p) {
    std::vector<PolyP> out;
    collect_distinct(f, p, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MatP reduce(const IntMatrix& m, long p) {
    if (m.rows() != m.cols()) throw NonSquare("modp::reduce");
    MatP out;
    out.n = m.rows();
    out.e.resize(out.n * out.n);
    for (std::size_t i = 0; i < out.n; ++i)
        for (std::size_t j = 0; j < out.n; ++j)
            out.at(i, j) = static_cast<long>(
                mpz_fdiv_ui(m.at(i, j).get_mpz_t(), static_cast<unsigned long>(p)));
    return out;
}

MatP mul(const MatP& a, const MatP& b, long p) {
    MatP out;
    out.n = a.n;
    out.e.assign(a.n * a.n, 0);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            long aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < a.n; ++j)
                out.at(i, j) = (out.at(i, j) + aik * b.at(k, j)) % p;
        }
    return out;
}

std::size_t rank(MatP m, long p) {
    std::size_t n = m.n, row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t sel = row;
        while (sel < n && m.at(sel, col) == 0) ++sel;
        if (sel == n) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(m.e[sel * n + j], m.e[row * n + j]);
        long s = inv_mod(m.at(row, col), p);
        for (std::size_t j = 0; j < n; ++j) m.at(row, j) = (m.at(row, j) * s) % p;
        for (std::size_t i = row + 1; i < n; ++i) {
            long c = m.at(i, col);
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                long v = m.at(i, j) - c * m.at(row, j) % p;
                m.at(i, j) = v < 0 ? v + p : v;
            }
        }
        ++row;
    }
    return row;
}

std::size_t minpoly_degree(const IntMatrix& m, long p) {
    MatP a = reduce(m, p);
    std::size_t n = a.n;
    std::size_t dim = n * n;
    // Krylov sequence I, A, A^2, ... as vectors; first linear dependence
    // gives the minimal polynomial degree.
    std::vector<std::vector<long>> reduced;   // row echelon, pivot-normalized
    std::vector<std::size_t> pivots;
    MatP pow;
    pow.n = n;
    pow.e.assign(dim, 0);
    for (std::size_t i = 0; i < n; ++i) pow.at(i, i) = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<long> v = pow.e;
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            long c = v[pivots[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                long w = v[j] - c * reduced[i][j] % p;
                v[j] = w < 0 ? w + p : w;
            }
        }
        std::size_t piv = dim;
        for (std::size_t j = 0; j < dim; ++j)
            if (v[j] != 0) { piv = j; break; }
        if (piv == dim) return k;
        long s = inv_mod(v[piv], p);
        for (std::size_t j = 0; j < dim; ++j) v[j] = (v[j] * s) % p;
        reduced.push_back(std::move(v));
        pivots.push_back(piv);
        pow = mul(pow, a, p);
    }
    throw std::logic_error("modp::minpoly_degree: no dependence up to dimension");
}

MatP eval_poly(const PolyP& f, const MatP& m, long p) {
    std::size_t n = m.n;
    MatP acc;
    acc.n = n;
    acc.e.assign(n * n, 0);
    for (std::size_t k = f.size(); k-- > 0;) {
        acc = mul(acc, m, p);
        long c = f[k];
        if (c != 0)
            for (std::size_t i = 0; i < n; ++i)
                acc.at(i, i) = (acc.at(i, i) + c) % p;
    }
    return acc;
}

} // namespace modp
} // namespace mtr

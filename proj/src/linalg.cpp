#include "mtr/linalg.hpp"

namespace mtr {

namespace {

// Combine rows r and i so that column j holds gcd at row r and 0 at row i,
// using a unimodular 2x2 transform; mirror the transform onto u.
void gcd_rows(IntMatrix& a, IntMatrix& u, std::size_t r, std::size_t i,
              std::size_t j) {
    const Int& x = a.at(r, j);
    const Int& y = a.at(i, j);
    if (y == 0) return;
    if (x == 0) {
        a.swap_rows(r, i);
        u.swap_rows(r, i);
        a.negate_row(i);
        u.negate_row(i);
        return;
    }
    if (mod_floor(y, x) == 0) {
        // Plain elimination keeps the pivot row untouched; without this the
        // general transform below may swap roles even on exact divisors and
        // the SNF clearing loop would churn forever at a stable pivot.
        Int q = divexact(y, x);
        a.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        return;
    }
    Xgcd e = xgcd(x, y);
    Int xg = divexact(x, e.g), yg = divexact(y, e.g);
    std::size_t n = a.cols(), un = u.cols();
    for (std::size_t c = 0; c < n; ++c) {
        Int ar = a.at(r, c), ai = a.at(i, c);
        a.at(r, c) = e.s * ar + e.t * ai;
        a.at(i, c) = xg * ai - yg * ar;     // det of the 2x2 transform is +1
    }
    for (std::size_t c = 0; c < un; ++c) {
        Int ur = u.at(r, c), ui = u.at(i, c);
        u.at(r, c) = e.s * ur + e.t * ui;
        u.at(i, c) = xg * ui - yg * ur;
    }
}

} // namespace

HnfResult hnf(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        for (std::size_t i = r + 1; i < rows; ++i)
            gcd_rows(a, u, r, i, j);
        if (a.at(r, j) == 0) continue;
        if (a.at(r, j) < 0) {
            a.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = fdiv_q(a.at(i, j), a.at(r, j));
            a.add_row_multiple(i, r, -q);
            u.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    return {a, u};
}

SnfResult snf(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    std::size_t t = 0;
    std::size_t steps = rows < cols ? rows : cols;
    while (t < steps) {
        // Find a pivot in the trailing submatrix.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < rows && !found; ++i)
            for (std::size_t j = t; j < cols && !found; ++j)
                if (a.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        if (pj != t) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(a.at(i, t), a.at(i, pj));
            for (std::size_t i = 0; i < cols; ++i) std::swap(v.at(i, t), v.at(i, pj));
        }
        for (;;) {
            // Clear column t below the pivot with row transforms.
            for (std::size_t i = t + 1; i < rows; ++i)
                gcd_rows(a, u, t, i, t);
            // Clear row t right of the pivot with column transforms (same
            // routine on the transposes).
            bool row_clear = true;
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a.at(t, j) != 0) {
                    row_clear = false;
                    break;
                }
            if (row_clear) break;
            IntMatrix at = a.transpose();
            IntMatrix vt = v.transpose();
            for (std::size_t j = t + 1; j < cols; ++j)
                gcd_rows(at, vt, t, j, t);
            a = at.transpose();
            v = vt.transpose();
            bool col_clear = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a.at(i, t) != 0) {
                    col_clear = false;
                    break;
                }
            if (col_clear) break;
        }
        // Divisibility repair: the pivot must divide the whole trailing
        // block; folding an offending row into row t and re-clearing
        // strictly shrinks the pivot, so this terminates.
        bool redo = false;
        for (std::size_t i = t + 1; i < rows && !redo; ++i)
            for (std::size_t j = t + 1; j < cols && !redo; ++j)
                if (mod_floor(a.at(i, j), a.at(t, t)) != 0) {
                    a.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                    redo = true;
                }
        if (redo) continue;
        if (a.at(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
        ++t;
    }
    return {a, u, v};
}

std::vector<Int> invariant_factors(const IntMatrix& m) {
    SnfResult s = snf(m);
    std::size_t n = m.rows() < m.cols() ? m.rows() : m.cols();
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = s.d.at(i, i);
    return d;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    // Row-reduce the transpose: rows of U mapping to zero rows of H span the
    // left kernel of M^T, i.e. the (right) kernel of M.
    HnfResult r = hnf(m.transpose());
    std::size_t rows = r.h.rows();
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < r.h.cols(); ++j)
            if (r.h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) zero_rows.push_back(i);
    }
    IntMatrix basis(zero_rows.size(), m.cols());
    for (std::size_t k = 0; k < zero_rows.size(); ++k)
        for (std::size_t j = 0; j < m.cols(); ++j)
            basis.at(k, j) = r.u.at(zero_rows[k], j);
    // Canonical form for reproducible output.
    return hnf(basis).h;
}

IndexValue lattice_index(const IntMatrix& generators) {
    std::size_t d = generators.rows();
    if (generators.cols() == d) {
        Int dd = det(generators);
        if (dd == 0) return std::nullopt;
        return dd < 0 ? Int(-dd) : dd;
    }
    // Columns as rows, then HNF picks out a triangular basis of the span.
    HnfResult r = hnf(generators.transpose());
    Int idx = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (i >= r.h.rows() || r.h.at(i, i) == 0) return std::nullopt;
        idx *= r.h.at(i, i);
    }
    return idx;
}

Poly charpoly(const IntMatrix& m) {
    if (!m.is_square()) throw NonSquare("charpoly of non-square matrix");
    std::size_t d = m.rows();
    if (d == 0) return Poly({1});
    // Evaluation points 0, 1, -1, 2, -2, ...
    std::vector<Int> xs;
    xs.emplace_back(0);
    for (long k = 1; xs.size() < d + 1; ++k) {
        xs.emplace_back(k);
        if (xs.size() < d + 1) xs.emplace_back(-k);
    }
    std::vector<Int> ys(d + 1);
    IntMatrix work(d, d);
    for (std::size_t p = 0; p <= d; ++p) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                work.at(i, j) = (i == j ? xs[p] - m.at(i, j) : Int(-m.at(i, j)));
        ys[p] = det(work);
    }
    // Newton interpolation over Q, then expansion to coefficient form.
    std::vector<Rat> dd(d + 1);
    for (std::size_t i = 0; i <= d; ++i) dd[i] = Rat(ys[i]);
    for (std::size_t level = 1; level <= d; ++level)
        for (std::size_t i = d; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rat(xs[i] - xs[i - level]);
            if (i == level) break;
        }
    std::vector<Rat> coeff(d + 1, Rat(0));
    coeff[0] = dd[d];
    std::size_t deg = 0;
    for (std::size_t level = d; level-- > 0;) {
        // coeff <- coeff * (x - xs[level]) + dd[level]
        ++deg;
        for (std::size_t i = deg; i > 0; --i)
            coeff[i] = coeff[i - 1] - Rat(xs[level]) * coeff[i];
        coeff[0] = dd[level] - Rat(xs[level]) * coeff[0];
    }
    std::vector<Int> out(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        coeff[i].canonicalize();
        if (coeff[i].get_den() != 1)
            throw std::logic_error("charpoly interpolation produced a non-integer");
        out[i] = coeff[i].get_num();
    }
    Poly p(out);
    if (!p.is_monic() || p.degree() != static_cast<long>(d))
        throw std::logic_error("charpoly is not monic of full degree");
    return p;
}

Poly minpoly(const IntMatrix& m) {
    if (!m.is_square()) throw NonSquare("minpoly of non-square matrix");
    std::size_t d = m.rows();
    if (d == 0) return Poly({1});
    std::size_t n2 = d * d;
    // Krylov sequence of vectorized powers, reduced over Q with tracked
    // combinations: the first dependency yields the minimal polynomial.
    std::vector<std::vector<Rat>> basis;        // reduced, echelon by pivot
    std::vector<std::size_t> pivots;
    std::vector<std::vector<Rat>> combos;       // expression in powers of M
    IntMatrix pw = IntMatrix::identity(d);
    for (std::size_t k = 0;; ++k) {
        std::vector<Rat> vec(n2);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                vec[i * d + j] = Rat(pw.at(i, j));
        std::vector<Rat> combo(k + 1, Rat(0));
        combo[k] = 1;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rat& lead = vec[pivots[b]];
            if (lead == 0) continue;
            Rat f = lead;                        // basis rows have pivot 1
            for (std::size_t c = 0; c < n2; ++c) vec[c] -= f * basis[b][c];
            for (std::size_t c = 0; c < combos[b].size(); ++c)
                combo[c] -= f * combos[b][c];
        }
        std::size_t piv = n2;
        for (std::size_t c = 0; c < n2; ++c)
            if (vec[c] != 0) {
                piv = c;
                break;
            }
        if (piv == n2) {
            // M^k = -sum_{j<k} combo[j] M^j; minimal polynomial follows.
            std::vector<Rat> rc(k + 1);
            for (std::size_t j = 0; j < k; ++j) rc[j] = combo[j];
            rc[k] = 1;
            Int den = 1;
            for (const auto& q : rc) den = lcm(den, Int(q.get_den()));
            std::vector<Int> ic(k + 1);
            for (std::size_t j = 0; j <= k; ++j) {
                Rat scaled = rc[j] * Rat(den);
                scaled.canonicalize();
                ic[j] = scaled.get_num();
            }
            Poly p(ic);
            p = p.primitive_part();
            if (!p.is_monic())
                throw std::logic_error("minpoly of integer matrix must be monic");
            return p;
        }
        Rat inv = Rat(1) / vec[piv];
        for (std::size_t c = 0; c < n2; ++c) vec[c] *= inv;
        for (auto& q : combo) q *= inv;
        basis.push_back(std::move(vec));
        pivots.push_back(piv);
        combos.push_back(std::move(combo));
        pw = pw * m;
    }
}

IntMatrix eval_poly(const Poly& p, const IntMatrix& m) {
    if (!m.is_square()) throw NonSquare("eval_poly: square matrix required");
    const std::size_t n = m.rows();
    IntMatrix acc(n, n);
    if (p.is_zero()) return acc;
    for (long k = p.degree(); k >= 0; --k) {
        acc = acc * m;
        const Int& c = p[static_cast<std::size_t>(k)];
        if (c != 0)
            for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += c;
    }
    return acc;
}

} // namespace mtr

#include "mtr/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mtr/errors.hpp"
#include "mtr/linalg.hpp"
#include "mtr/modp.hpp"

namespace mtr {

namespace {

// Symmetric representative in (-m/2, m/2].
Int smod(const Int& a, const Int& m) {
    Int r = mod_floor(a, m);
    if (r * 2 > m) r -= m;
    return r;
}

Poly reduce_sym(const Poly& f, const Int& m) {
    std::vector<Int> c = f.coeffs();
    for (Int& x : c) x = smod(x, m);
    return Poly(std::move(c));
}

// Division with remainder by a monic divisor, all coefficients kept in the
// symmetric range mod m.
void divrem_sym(const Poly& a, const Poly& h, const Int& m, Poly& q, Poly& r) {
    if (!h.is_monic()) throw std::logic_error("divrem_sym: divisor not monic");
    std::vector<Int> rc = a.coeffs();
    long dh = h.degree();
    std::vector<Int> qc;
    if (static_cast<long>(rc.size()) >= dh + 1)
        qc.assign(rc.size() - static_cast<std::size_t>(dh), Int(0));
    for (long k = static_cast<long>(rc.size()) - 1; k >= dh; --k) {
        Int c = smod(rc[static_cast<std::size_t>(k)], m);
        if (c != 0) {
            qc[static_cast<std::size_t>(k - dh)] = c;
            for (long i = 0; i <= dh; ++i) {
                Int& slot = rc[static_cast<std::size_t>(k - dh + i)];
                slot = smod(slot - c * h[static_cast<std::size_t>(i)], m);
            }
        } else {
            rc[static_cast<std::size_t>(k)] = 0;
        }
    }
    rc.resize(static_cast<std::size_t>(dh > 0 ? dh : 0));
    q = Poly(std::move(qc));
    r = Poly(std::move(rc));
}

Poly from_modp(const PolyP& f, long p) {
    std::vector<Int> c;
    c.reserve(f.size());
    for (long v : f) {
        long s = 2 * v > p ? v - p : v;
        c.push_back(Int(s));
    }
    return Poly(std::move(c));
}

// Coefficient bound for monic divisors: below 2^deg * l2norm(f). Lifting
// past twice that pins every true factor coefficient in the symmetric
// range, so the subset products can be read off exactly.
Int coefficient_bound(const Poly& f) {
    Int s = 0;
    for (const Int& c : f.coeffs()) s += c * c;
    Int l2 = isqrt(s) + 1;
    return (Int(1) << static_cast<unsigned long>(f.degree())) * l2;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest odd prime keeping f squarefree mod p. f monic squarefree.
long good_prime(const Poly& f) {
    for (long p = 3; p < 10000; p += 2) {
        if (!is_prime_long(p)) continue;
        PolyP fp = modp::reduce(f, p);
        if (modp::degree(fp) != f.degree()) continue;   // cannot happen, f monic
        PolyP g = modp::gcd(fp, modp::derivative(fp, p), p);
        if (modp::degree(g) == 0) return p;
    }
    throw std::logic_error("good_prime: no squarefree reduction found");
}

// Quadratic Hensel lift of the coprime split f = g0*h0 mod p up to a
// modulus >= target. f monic over Z, g0/h0 monic mod p.
struct LiftedPair {
    Poly g, h;
    Int modulus;
};

LiftedPair hensel_pair(const Poly& f, const PolyP& g0, const PolyP& h0,
                       long p, const Int& target) {
    PolyP sp, tp;
    modp::bezout(g0, h0, p, sp, tp);
    Int m(p);
    Poly g = from_modp(g0, p), h = from_modp(h0, p);
    Poly s = from_modp(sp, p), t = from_modp(tp, p);
    Poly one({1});
    while (m < target) {
        Int m2 = m * m;
        Poly e = reduce_sym(f - g * h, m2);
        Poly q, r;
        divrem_sym(reduce_sym(s * e, m2), h, m2, q, r);
        Poly gn = reduce_sym(g + t * e + q * g, m2);
        Poly hn = reduce_sym(h + r, m2);
        if (!gn.is_monic() || !hn.is_monic() ||
            gn.degree() != g.degree() || hn.degree() != h.degree())
            throw std::logic_error("hensel_pair: drifted off the monic split");
        Poly b = reduce_sym(s * gn + t * hn - one, m2);
        Poly c, d;
        divrem_sym(reduce_sym(s * b, m2), hn, m2, c, d);
        s = reduce_sym(s - d, m2);
        t = reduce_sym(t - t * b - c * gn, m2);
        g = std::move(gn);
        h = std::move(hn);
        m = m2;
    }
    return {std::move(g), std::move(h), std::move(m)};
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
        const Int& x = a[static_cast<std::size_t>(i)];
        const Int& y = b[static_cast<std::size_t>(i)];
        if (x != y) return x < y;
    }
    return false;
}

// Zassenhaus core: f monic squarefree, degree >= 2.
std::vector<Poly> factor_monic_squarefree(const Poly& f) {
    long p = good_prime(f);
    PolyP fp = modp::reduce(f, p);
    std::vector<PolyP> mod_factors = modp::berlekamp(fp, p);
    if (mod_factors.size() == 1) return {f};

    Int target = 2 * coefficient_bound(f) + 1;
    std::vector<Poly> lifted;
    Int modulus = 0;
    for (const PolyP& u : mod_factors) {
        PolyP cof, rem;
        modp::divrem(fp, u, p, cof, rem);
        if (!modp::is_zero(rem))
            throw std::logic_error("factor_monic_squarefree: bad modular cofactor");
        LiftedPair lp = hensel_pair(f, u, cof, p, target);
        lifted.push_back(std::move(lp.g));
        modulus = lp.modulus;
    }

    std::vector<Poly> out;
    Poly remaining = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        bool advanced = true;
        while (advanced) {
            // Cheap screen: the candidate's constant term must divide the
            // constant term of what is left.
            Int c0 = 1;
            for (std::size_t i : idx) c0 *= lifted[i][0];
            Int const_term = smod(c0, modulus);
            Poly quotient;
            bool hit = false;
            if (const_term != 0 && remaining[0] % const_term == 0) {
                Poly prod({1});
                for (std::size_t i : idx) prod = reduce_sym(prod * lifted[i], modulus);
                if (try_divexact(remaining, prod, quotient)) {
                    out.push_back(prod);
                    remaining = quotient;
                    std::vector<Poly> keep;
                    for (std::size_t i = 0; i < lifted.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            keep.push_back(std::move(lifted[i]));
                    lifted = std::move(keep);
                    hit = true;
                }
            }
            if (hit) {
                if (2 * s > lifted.size()) break;
                for (std::size_t i = 0; i < s; ++i) idx[i] = i;
                continue;
            }
            // next s-combination of {0..lifted.size()-1}
            advanced = false;
            for (std::size_t i = s; i-- > 0;) {
                if (idx[i] + (s - i) < lifted.size()) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
        }
        ++s;
    }
    if (remaining.degree() > 0) out.push_back(remaining);
    else if (!remaining.is_one())
        throw std::logic_error("factor_monic_squarefree: leftover unit is not 1");
    return out;
}

// Squarefree primitive with positive leading coefficient, degree >= 1.
std::vector<Poly> factor_squarefree_primitive(const Poly& g) {
    if (g.degree() == 1) return {g};
    const Int& c = g.lc();
    if (c == 1) return factor_monic_squarefree(g);

    // Monicize: F(x) = c^(n-1) g(x/c) is monic with integer coefficients;
    // factors map back through x -> c x and a primitive-part cleanup.
    long n = g.degree();
    std::vector<Int> fc(static_cast<std::size_t>(n) + 1);
    fc[static_cast<std::size_t>(n)] = 1;
    Int scale = 1;
    for (long i = n - 1; i >= 0; --i) {
        fc[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)] * scale;
        scale *= c;
    }
    Poly monic(std::move(fc));
    std::vector<Poly> raw = factor_monic_squarefree(monic);
    std::vector<Poly> out;
    Poly check({1});
    for (const Poly& h : raw) {
        std::vector<Int> sub(h.coeffs());
        Int pw = 1;
        for (std::size_t i = 0; i < sub.size(); ++i) {
            sub[i] *= pw;
            pw *= c;
        }
        Poly mapped = Poly(std::move(sub)).primitive_part();
        if (mapped.lc() < 0) mapped = -mapped;
        check = check * mapped;
        out.push_back(std::move(mapped));
    }
    if (check != g)
        throw std::logic_error("factor_squarefree_primitive: substitution did not invert");
    return out;
}

long euler_phi(long n) {
    long result = n, m = n;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            result -= result / d;
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

} // namespace

Poly Factorization::reconstruct() const {
    Poly acc(Int(unit) * content);
    for (const auto& [poly, mult] : factors)
        for (int i = 0; i < mult; ++i) acc = acc * poly;
    return acc;
}

Factorization factor_Z(const Poly& f) {
    if (f.is_zero())
        throw PreconditionViolated("factor_Z: zero polynomial");
    if (f.degree() > kFactorDegreeCap)
        throw DegreeTooLarge("factor_Z: degree " + std::to_string(f.degree()) +
                             " exceeds cap " + std::to_string(kFactorDegreeCap));

    Factorization out;
    out.content = f.content();
    Poly work = f.primitive_part();
    if (work.lc() < 0) {
        out.unit = -1;
        work = -work;
    }
    if (work.degree() >= 1) {
        std::size_t v = 0;
        while (work[0] == 0) {
            std::vector<Int> shifted(work.coeffs().begin() + 1, work.coeffs().end());
            work = Poly(std::move(shifted));
            ++v;
        }
        if (v > 0) out.factors.emplace_back(Poly::x(), static_cast<int>(v));
        if (work.degree() >= 1) {
            SquarefreeDecomposition sq = squarefree_decomposition(work);
            if (sq.unit != 1 || sq.content != 1)
                throw std::logic_error("factor_Z: squarefree split of a primitive positive input");
            for (const auto& [part, mult] : sq.parts)
                for (Poly& irr : factor_squarefree_primitive(part))
                    out.factors.emplace_back(std::move(irr), mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    if (out.reconstruct() != f)
        throw std::logic_error("factor_Z: reconstruction mismatch");
    return out;
}

Poly cyclotomic(long n) {
    static std::map<long, Poly> cache;
    if (n < 1) throw PreconditionViolated("cyclotomic: index must be positive");
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Poly result;
    if (n == 1) {
        result = Poly({-1, 1});
    } else {
        std::vector<Int> xn(static_cast<std::size_t>(n) + 1, Int(0));
        xn[0] = -1;
        xn[static_cast<std::size_t>(n)] = 1;
        result = Poly(std::move(xn));
        for (long d = 1; d < n; ++d)
            if (n % d == 0) result = divexact(result, cyclotomic(d));
    }
    cache.emplace(n, result);
    return result;
}

std::optional<long> is_cyclotomic(const Poly& f) {
    long m = f.degree();
    if (m < 1 || !f.is_monic()) return std::nullopt;
    // phi(n) >= sqrt(n/2), so phi(n) = m forces n <= 2 m^2.
    long bound = 2 * m * m + 2;
    for (long n = 1; n <= bound; ++n) {
        if (euler_phi(n) != m) continue;
        if (cyclotomic(n) == f) return n;
    }
    return std::nullopt;
}

std::optional<Int> finite_order(const IntMatrix& m) {
    Int dt = det(m);
    if (dt != 1 && dt != -1)
        throw NotUnimodular("finite_order: determinant " + dt.get_str());
    Poly mp = minpoly(m);
    if (poly_gcd(mp, mp.derivative()).degree() > 0) return std::nullopt;
    Factorization fac = factor_Z(mp);
    Int k = 1;
    for (const auto& [poly, mult] : fac.factors) {
        (void)mult;
        std::optional<long> n = is_cyclotomic(poly);
        if (!n) return std::nullopt;
        k = lcm(k, Int(*n));
    }
    if (!k.fits_slong_p())
        throw std::logic_error("finite_order: order does not fit in long");
    if (matpow(m, k.get_si()) != IntMatrix::identity(m.rows()))
        throw std::logic_error("finite_order: cyclotomic data disagrees with the power");
    return k;
}

} // namespace mtr

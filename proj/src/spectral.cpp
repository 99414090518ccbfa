#include "mtr/spectral.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "mtr/errors.hpp"
#include "mtr/factor.hpp"
#include "mtr/linalg.hpp"
#include "mtr/powers.hpp"

namespace mtr {

namespace {

Complex cpow(Complex z, long n) {
    Complex acc(Real(1));
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

Real arg_of(const Complex& z) { return atan2(z.im, z.re); }

std::vector<Real> real_coeffs(const Poly& f) {
    std::vector<Real> c;
    c.reserve(static_cast<std::size_t>(f.degree()) + 1);
    for (long k = 0; k <= f.degree(); ++k) c.push_back(to_real(f[k]));
    return c;
}

Complex horner(const std::vector<Real>& c, const Complex& z) {
    Complex acc(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + Complex(c[k]);
    return acc;
}

// Simultaneous iteration on one squarefree factor. Returns approximations
// with a-posteriori radii deg * |f(z_i)| / (|lc| * prod_{j!=i} |z_i - z_j|),
// or nothing if the radii fail to reach `target` within the iteration cap.
std::vector<std::pair<Complex, Real>> aberth(const Poly& f, const Real& target,
                                             long working_bits) {
    const long n = f.degree();
    auto c = real_coeffs(f);
    std::vector<Real> dc;
    for (long k = 1; k <= n; ++k) dc.push_back(c[static_cast<std::size_t>(k)] * k);

    Real bound(0);
    for (long k = 0; k < n; ++k) {
        Real t = abs(c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(n)]);
        if (t > bound) bound = t;
    }
    bound += 1;

    const Real pi = real_pi();
    std::vector<Complex> z;
    for (long k = 0; k < n; ++k) {
        Real theta = (2 * pi * (Real(k) + Real("0.35"))) / n;
        z.emplace_back(bound * cos(theta), bound * sin(theta));
    }

    const Real tiny = ldexp(Real(1), -100000);
    for (int iter = 0; iter < 400; ++iter) {
        Real worst(0);
        for (long i = 0; i < n; ++i) {
            auto& zi = z[static_cast<std::size_t>(i)];
            Complex fv = horner(c, zi);
            Complex dv = horner(dc, zi);
            if (dv.norm() == 0) {
                zi.re += ldexp(Real(1), -7);
                worst = bound;
                continue;
            }
            Complex w = fv / dv;
            Complex s(Real(0));
            for (long j = 0; j < n; ++j)
                if (j != i) s += Complex(Real(1)) / (zi - z[static_cast<std::size_t>(j)]);
            Complex denom = Complex(Real(1)) - w * s;
            Complex step = (denom.norm() > tiny) ? w / denom : w;
            zi -= step;
            Real sz = step.abs_val();
            if (sz > worst) worst = sz;
        }
        if (worst < target / (4 * n)) break;
    }

    std::vector<std::pair<Complex, Real>> out;
    Real lc = abs(c[static_cast<std::size_t>(n)]);
    for (long i = 0; i < n; ++i) {
        Real prod(1);
        for (long j = 0; j < n; ++j)
            if (j != i)
                prod *= (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)])
                            .abs_val();
        if (prod == 0) return {};
        // The residual cannot be trusted below the roundoff of its own
        // evaluation: floor it by |f|_1 at |z| times the unit roundoff,
        // else an exactly-cancelling Horner pass yields a zero-width
        // radius around an irrational root.
        Real az = z[static_cast<std::size_t>(i)].abs_val();
        Real mag(0);
        for (long k = n; k >= 0; --k) mag = mag * az + abs(c[static_cast<std::size_t>(k)]);
        Real residual = horner(c, z[static_cast<std::size_t>(i)]).abs_val();
        Real eval_floor = mag * ldexp(Real(1), static_cast<int>(-(working_bits - 6)));
        if (residual < eval_floor) residual = eval_floor;
        Real rad = n * residual / (lc * prod);
        if (!(rad < target)) return {};
        out.emplace_back(z[static_cast<std::size_t>(i)], rad);
    }
    return out;
}

} // namespace

long Spectrum::degree() const {
    long d = 0;
    for (const auto& e : entries) d += e.multiplicity;
    return d;
}

bool Spectrum::all_simple() const {
    for (const auto& e : entries)
        if (e.multiplicity != 1) return false;
    return true;
}

std::vector<Real> Spectrum::moduli() const {
    std::vector<Real> out;
    for (const auto& e : entries)
        for (long r = 0; r < e.multiplicity; ++r) out.push_back(e.value.abs_val());
    return out;
}

Spectrum roots(const Poly& p, long bits) {
    if (p.is_zero()) throw PreconditionViolated("roots of the zero polynomial");
    if (bits < 16) bits = 16;
    const long cap = std::max<long>(512, bits);

    Factorization fac = factor_Z(p);
    long working = std::max<long>(bits, 64);
    for (;;) {
        set_precision_bits(working);
        const Real target = ldexp(Real(1), static_cast<int>(-bits / 2));
        std::vector<SpectrumEntry> entries;
        bool ok = true;
        for (const auto& [f, mult] : fac.factors) {
            if (f.degree() == 1) {
                Rat r(-f[0]);
                r /= Rat(f[1]);
                entries.push_back({Complex(to_real(r)), mult, Real(0)});
                continue;
            }
            auto approx = aberth(f, target, working);
            if (approx.empty()) {
                ok = false;
                break;
            }
            for (auto& [z, rad] : approx) entries.push_back({z, mult, rad});
        }
        if (ok) {
            const Real slack = ldexp(Real(1), static_cast<int>(-bits / 2));
            std::sort(entries.begin(), entries.end(),
                      [&](const SpectrumEntry& a, const SpectrumEntry& b) {
                          Real ma = a.value.abs_val(), mb = b.value.abs_val();
                          if (abs(ma - mb) > a.radius + b.radius + slack) return ma < mb;
                          return arg_of(a.value) < arg_of(b.value);
                      });
            Spectrum spec{std::move(entries), working};
            if (spec.degree() != p.degree())
                throw std::logic_error("root multiplicities do not sum to the degree");
            return spec;
        }
        if (working >= cap) throw PrecisionExhausted("root isolation stalled at "
                                                     + std::to_string(working) + " bits");
        working *= 2;
        if (working > cap) working = cap;
    }
}

Complex vandermonde_Dn(const Spectrum& spec, long n) {
    if (!spec.all_simple()) throw RepeatedEigenvalue("repeated eigenvalue in product");
    if (n < 0) throw PreconditionViolated("negative power");
    if (n == 0) return Complex(Real(0));
    std::vector<Complex> pw;
    pw.reserve(spec.entries.size());
    for (const auto& e : spec.entries) pw.push_back(cpow(e.value, n));
    Complex acc(Real(1));
    for (std::size_t m = 1; m < pw.size(); ++m)
        for (std::size_t k = 0; k < m; ++k) acc *= pw[m] - pw[k];
    return acc;
}

RatioReport ratio_constancy_check(const IntMatrix& m, const CyclicWitness& witness,
                                  long n_max, double tol) {
    if (n_max < 1) throw PreconditionViolated("n_max < 1");
    Spectrum spec = roots(charpoly(m), 128);
    if (!spec.all_simple()) throw RepeatedEigenvalue("spectrum is not simple");

    RatioReport rep;
    rep.n_max = n_max;
    rep.max_rel_dev = Real(0);
    const Real vanish = ldexp(Real(1), -24);
    bool have_base = false;
    for (long n = 1; n <= n_max; ++n) {
        Int sn = delta_signed(m, witness, n);
        Complex dn = vandermonde_Dn(spec, n);
        if (sn == 0) {
            // both routes must vanish together
            if (dn.abs_val() > vanish)
                throw ToleranceExceeded("product nonzero where the determinant vanishes");
            continue;
        }
        Complex ratio = dn / Complex(to_real(sn));
        if (!have_base) {
            rep.ratio = ratio;
            have_base = true;
        } else {
            Real dev = (ratio - rep.ratio).abs_val() / rep.ratio.abs_val();
            if (dev > rep.max_rel_dev) rep.max_rel_dev = dev;
        }
        ++rep.checked;
    }
    if (rep.max_rel_dev > Real(tol))
        throw ToleranceExceeded("determinant ratio drifts beyond tolerance");
    return rep;
}

GrowthReport growth_K(const Spectrum& spec) {
    GrowthReport rep;
    rep.moduli = spec.moduli();
    for (const auto& v : rep.moduli)
        if (v == 0) throw PreconditionViolated("zero eigenvalue");

    Real logk(0);
    for (std::size_t j = 1; j < rep.moduli.size(); ++j)
        logk += Real(j) * log(rep.moduli[j]);
    rep.k = exp(logk);

    rep.moduli_distinct = spec.all_simple();
    if (rep.moduli_distinct)
        for (std::size_t i = 0; i + 1 < spec.entries.size(); ++i) {
            const auto& a = spec.entries[i];
            const auto& b = spec.entries[i + 1];
            if (b.value.abs_val() - a.value.abs_val() <= a.radius + b.radius) {
                rep.moduli_distinct = false;
                break;
            }
        }
    return rep;
}

GrowthComparison growth_comparison(const IntMatrix& m, long n, long bits,
                                   long search_bound) {
    if (n < 1) throw PreconditionViolated("n < 1");
    Spectrum spec = roots(charpoly(m), bits);
    GrowthReport g = growth_K(spec);

    GrowthComparison out;
    out.k = g.k;
    out.moduli_distinct = g.moduli_distinct;
    out.n = n;
    out.deviation = Real(0);
    if (!g.moduli_distinct || !(g.k > 1)) return out;

    auto w = cyclic_search(m, search_bound);
    if (!w) throw NoWitnessFound("no cyclic vector within bound "
                                 + std::to_string(search_bound));
    IndexValue dn = delta(m, *w, n);
    if (!dn) throw std::logic_error("vanishing index despite distinct moduli");
    out.deviation = abs(log(to_real(*dn)) / n - log(g.k));
    out.skipped = false;
    return out;
}

ConfluentReport confluent_example_check(const Complex& l1, const Complex& l4,
                                        long n_max, double tol, long bits) {
    if (n_max < 1) throw PreconditionViolated("n_max < 1");
    if (l1.norm() == 0 || l4.norm() == 0) throw PreconditionViolated("zero eigenvalue");
    if (l1.re == l4.re && l1.im == l4.im)
        throw PreconditionViolated("eigenvalues coincide");
    set_precision_bits(bits);

    ConfluentReport rep;
    rep.n_max = n_max;
    rep.max_rel_error = Real(0);
    for (long n = 1; n <= n_max; ++n) {
        Complex p1 = cpow(l1, n), p4 = cpow(l4, n);
        Complex a[4][4];
        a[0][0] = Complex(Real(1));
        a[0][3] = Complex(Real(1));
        Complex r1 = p1, r4 = p4;
        for (int j = 1; j <= 3; ++j) {
            Real jn = Real(j) * n;
            a[j][0] = r1;
            a[j][1] = r1 * Complex(jn);
            a[j][2] = r1 * Complex(jn * jn);
            a[j][3] = r4;
            r1 *= p1;
            r4 *= p4;
        }

        // partial-pivot elimination
        Complex det(Real(1));
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (a[r][col].norm() > a[piv][col].norm()) piv = r;
            if (piv != col) {
                for (int k = 0; k < 4; ++k) std::swap(a[col][k], a[piv][k]);
                det = -det;
            }
            det *= a[col][col];
            if (a[col][col].norm() == 0) break;
            for (int r = col + 1; r < 4; ++r) {
                Complex f = a[r][col] / a[col][col];
                for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
            }
        }

        Complex diff = p4 - p1;
        Complex closed = Complex(Real(2 * n) * n * n) * cpow(p1, 3) * diff * diff * diff;
        Real scale = closed.abs_val();
        if (scale == 0) scale = 1;
        Real rel = (det - closed).abs_val() / scale;
        if (rel > rep.max_rel_error) rep.max_rel_error = rel;
        if (rel > Real(tol))
            throw ToleranceExceeded("confluent determinant mismatch at n = "
                                    + std::to_string(n));
    }
    return rep;
}

DominanceReport dominance_check(const Spectrum& spec, long n) {
    if (n < 1) throw PreconditionViolated("n < 1");
    GrowthReport g = growth_K(spec);
    if (!g.moduli_distinct) throw ModuliNotDistinct("moduli not certified distinct");
    const long d = spec.degree();
    if (d < 2) throw PreconditionViolated("need at least two eigenvalues");
    const long pairs = d * (d - 1) / 2;
    if (pairs > 24) throw PreconditionViolated("expansion too large");

    std::vector<Real> lg;
    for (const auto& e : spec.entries) lg.push_back(log(e.value.abs_val()));

    std::vector<std::pair<long, long>> idx;
    for (long m = 1; m < d; ++m)
        for (long k = 0; k < m; ++k) idx.emplace_back(k, m);

    DominanceReport rep;
    rep.monomial_count = 1L << pairs;
    const unsigned long diagonal = (1UL << pairs) - 1;   // take mu_m in every pair
    bool have_other = false;
    for (unsigned long mask = 0; mask < (1UL << pairs); ++mask) {
        Real s(0);
        for (long p = 0; p < pairs; ++p)
            s += lg[static_cast<std::size_t>((mask >> p) & 1 ? idx[static_cast<std::size_t>(p)].second
                                                             : idx[static_cast<std::size_t>(p)].first)];
        s *= n;
        if (mask == diagonal) {
            rep.diagonal_log_modulus = s;
        } else if (!have_other || s > rep.runner_up_log_modulus) {
            rep.runner_up_log_modulus = s;
            have_other = true;
        }
    }
    if (!(rep.diagonal_log_modulus > rep.runner_up_log_modulus))
        throw ToleranceExceeded("diagonal monomial fails to dominate");
    return rep;
}

} // namespace mtr

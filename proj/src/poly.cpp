#include "mtr/poly.hpp"

#include <sstream>

namespace mtr {

Poly::Poly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

Poly Poly::x() { return Poly({0, 1}); }

Poly Poly::monomial(std::size_t deg, const Int& c) {
    std::vector<Int> v(deg + 1, Int(0));
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& Poly::operator[](std::size_t i) const {
    static const Int zero(0);
    return i < c_.size() ? c_[i] : zero;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Int> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Int& c) const {
    if (c == 0) return Poly();
    std::vector<Int> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * c;
    return Poly(std::move(r));
}

Int Poly::eval(const Int& x) const {
    Int r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Rat Poly::eval(const Rat& x) const {
    Rat r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + Rat(c_[i]);
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Int> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(i);
    return Poly(std::move(r));
}

Int Poly::content() const {
    Int g = 0;
    for (const auto& c : c_) g = gcd(g, c);
    return g;
}

Poly Poly::primitive_part() const {
    if (is_zero()) return *this;
    Int g = content();
    std::vector<Int> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = divexact(c_[i], g);
    return Poly(std::move(r));
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Int a = c_[i];
        if (first) {
            if (a < 0) {
                os << '-';
                a = -a;
            }
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) {
            os << 'x';
            if (i >= 2) os << '^' << i;
        }
    }
    return os.str();
}

bool try_divexact(const Poly& a, const Poly& b, Poly& quotient) {
    if (b.is_zero()) return false;
    if (a.is_zero()) {
        quotient = Poly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> q(a.degree() - b.degree() + 1, Int(0));
    const Int& blc = b.lc();
    for (long i = a.degree(); i >= b.degree();) {
        Int& lead = rem[i];
        if (lead == 0) {
            --i;
            continue;
        }
        if (mod_floor(lead, blc) != 0) return false;
        Int f = divexact(lead, blc);
        std::size_t shift = i - b.degree();
        q[shift] = f;
        for (long j = 0; j <= b.degree(); ++j)
            rem[shift + j] -= f * b[j];
        --i;
    }
    for (const auto& c : rem)
        if (c != 0) return false;
    quotient = Poly(std::move(q));
    return true;
}

Poly divexact(const Poly& a, const Poly& b) {
    Poly q;
    if (!try_divexact(a, b, q))
        throw std::logic_error("polynomial division is not exact");
    return q;
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
Poly prem(const Poly& a, const Poly& b) {
    Poly r = a;
    const Int& blc = b.lc();
    long db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        long shift = r.degree() - db;
        Poly t = Poly::monomial(shift, r.lc()) * b;
        r = r * blc - t;
    }
    return r;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    if (a.is_zero()) return b.lc() < 0 ? -b : b;
    if (b.is_zero()) return a.lc() < 0 ? -a : a;
    Int cont = gcd(a.content(), b.content());
    Poly p = a.primitive_part();
    Poly q = b.primitive_part();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        Poly r = prem(p, q).primitive_part();
        p = q;
        q = r;
    }
    if (p.lc() < 0) p = -p;
    return p * cont;
}

SquarefreeDecomposition squarefree_decomposition(const Poly& p) {
    SquarefreeDecomposition out;
    if (p.is_zero())
        throw PreconditionViolated("squarefree decomposition of the zero polynomial");
    out.content = p.content();
    Poly f = p.primitive_part();
    if (f.lc() < 0) {
        out.unit = -1;
        f = -f;
    }
    if (f.degree() == 0) return out;
    // Yun's algorithm on the primitive part.
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = divexact(f, a);
    Poly c = divexact(fp, a);
    int mult = 1;
    for (;;) {
        Poly d = c - b.derivative();
        if (d.is_zero()) {
            if (b.degree() > 0) out.parts.emplace_back(b, mult);
            break;
        }
        Poly g = poly_gcd(b, d);
        if (g.degree() > 0) out.parts.emplace_back(g, mult);
        b = divexact(b, g);
        c = divexact(d, g);
        ++mult;
        if (b.degree() == 0) break;
    }
    return out;
}

} // namespace mtr

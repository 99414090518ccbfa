#ifndef MTR_POLY_HPP
#define MTR_POLY_HPP

#include <string>
#include <vector>

#include "mtr/bigint.hpp"
#include "mtr/errors.hpp"

namespace mtr {

// Dense integer polynomial, coefficients ascending by degree, normalized
// so the leading coefficient is nonzero (the zero polynomial has an empty
// coefficient vector and degree -1).
class Poly {
public:
    Poly() {}
    explicit Poly(const Int& c) { c_.push_back(c); normalize(); }
    explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<long> coeffs);

    static Poly x();                       // the monomial x
    static Poly monomial(std::size_t deg, const Int& c = Int(1));

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    const Int& operator[](std::size_t i) const;    // 0 beyond degree
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& lc() const { return c_.back(); }    // leading coefficient

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Int& c) const;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    Poly derivative() const;
    Int content() const;                   // gcd of coefficients, >= 0; 0 for 0
    Poly primitive_part() const;           // this / content, sign preserved
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    std::string to_string() const;         // human form, e.g. "x^2 - x - 1"

    void normalize();

private:
    std::vector<Int> c_;
};

// Exact division; throws logic_error if the division is not exact.
Poly divexact(const Poly& a, const Poly& b);

// True and quotient returned when b divides a exactly over Z.
bool try_divexact(const Poly& a, const Poly& b, Poly& quotient);

// Primitive polynomial gcd (positive leading coefficient), by primitive
// pseudo-remainder sequence. gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

// Squarefree decomposition p = unit * prod part_i^i (Yun). Parts are
// primitive with positive leading coefficient; content goes to `content`.
struct SquarefreeDecomposition {
    int unit = 1;                          // +1 or -1
    Int content = 1;                       // >= 1
    std::vector<std::pair<Poly, int>> parts;   // (squarefree part, multiplicity)
};

SquarefreeDecomposition squarefree_decomposition(const Poly& p);

} // namespace mtr

#endif

#ifndef MTR_MPFLOAT_HPP
#define MTR_MPFLOAT_HPP

#include <boost/multiprecision/mpfr.hpp>

#include "mtr/bigint.hpp"

namespace mtr {

// Arbitrary-precision float. Precision is a process-wide default applied
// at construction time; routines that take a `bits` argument set it on
// entry and every value they build inherits it.
using Real = boost::multiprecision::mpfr_float;

inline void set_precision_bits(long bits) {
    if (bits < 8) bits = 8;
    // boost tracks decimal digits; round up so at least `bits` survive
    Real::default_precision(static_cast<unsigned>(bits * 0.30103) + 4);
}

inline Real to_real(const Int& x) { return Real(x.get_str()); }

inline Real to_real(const Rat& x) {
    return Real(Int(x.get_num()).get_str()) / Real(Int(x.get_den()).get_str());
}

inline Real real_pi() { return acos(Real(-1)); }

// Minimal complex pair; std::complex is only specified for the builtin
// floating types.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator/(const Complex& o) const {
        Real n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }
    Complex operator-() const { return {-re, -im}; }

    Real norm() const { return re * re + im * im; }
    Real abs_val() const { return sqrt(norm()); }
};

} // namespace mtr

#endif

#ifndef HV_MPCOMPLEX_HPP
#define HV_MPCOMPLEX_HPP

#include <string>

#include "hv/mpreal.hpp"

namespace hv {

// Complex scalar over two Reals. Principal branches throughout: csqrt and
// clog cut along the negative real axis, with the cut itself mapped from
// above (Im >= 0 side).
struct Complex {
    Real re, im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Complex zero(mpfr_prec_t prec) {
        return {Real::zero(prec), Real::zero(prec)};
    }
    static Complex of(long r, mpfr_prec_t prec) {
        return {Real::of(r, prec), Real::zero(prec)};
    }
    static Complex of(const Rat& r, mpfr_prec_t prec) {
        return {Real::of(r, prec), Real::zero(prec)};
    }
    static Complex of(const Rat& r, const Rat& i, mpfr_prec_t prec) {
        return {Real::of(r, prec), Real::of(i, prec)};
    }
    static Complex of(const Real& r) { return {r, Real::zero(r.prec())}; }
    static Complex unit_i(mpfr_prec_t prec) {
        return {Real::zero(prec), Real::of(1L, prec)};
    }
    // Parses "a", "a+bi" style pairs via two decimal strings.
    static Complex parse(const std::string& re, const std::string& im,
                         mpfr_prec_t prec) {
        return {Real::parse(re, prec), Real::parse(im, prec)};
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_nan() const { return re.is_nan() || im.is_nan(); }
    std::string str(int digits = 20) const {
        return "(" + re.str(digits) + ", " + im.str(digits) + ")";
    }

    Complex operator-() const { return {-re, -im}; }
    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& a, const Complex& b) {
        return {a * b.re, a * b.im};
    }
    friend Complex operator*(long a, const Complex& b) {
        return {a * b.re, a * b.im};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Complex operator/(const Complex& a, const Real& b) {
        return {a.re / b, a.im / b};
    }
    friend Complex operator/(const Complex& a, long b) {
        return {a.re / b, a.im / b};
    }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }
    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
    friend Real cabs(const Complex& a) { return hypot(a.re, a.im); }
};

// Principal square root.
Complex csqrt(const Complex& z);
Complex cexp(const Complex& z);
// Principal logarithm (imaginary part in (-pi, pi]).
Complex clog(const Complex& z);
Complex csin(const Complex& z);
Complex ccos(const Complex& z);
// z^p through exp(p log z), principal branch. p is real.
Complex cpow(const Complex& z, const Real& p);

}  // namespace hv

#endif

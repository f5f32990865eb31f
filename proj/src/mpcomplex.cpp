#include "hv/mpcomplex.hpp"

namespace hv {

Complex csqrt(const Complex& z) {
    mpfr_prec_t prec = z.prec();
    if (z.is_zero()) return Complex::zero(prec);
    // w = sqrt((|z| + |Re z|)/2) is the larger output component; the other
    // follows from re*im relations. Avoids cancellation near the axes.
    Real w = sqrt((cabs(z) + abs(z.re)) / 2L);
    if (z.re.sign() >= 0) return {w, z.im / (2L * w)};
    // Re z < 0: principal branch takes the sign of Im z, with the cut
    // (Im z == 0) mapped to the +i side.
    Real rw = abs(z.im) / (2L * w);
    if (z.im.sign() < 0) return {rw, -w};
    return {rw, w};
}

Complex cexp(const Complex& z) {
    Real e = exp(z.re);
    return {e * cos(z.im), e * sin(z.im)};
}

Complex clog(const Complex& z) {
    if (z.is_zero()) throw std::domain_error("clog: zero argument");
    // A negative-signed zero imaginary part would flip atan2 to the -pi
    // side; the cut is mapped from above, so normalize it away.
    if (z.im.is_zero()) return {log(cabs(z)), atan2(Real::zero(z.prec()), z.re)};
    return {log(cabs(z)), atan2(z.im, z.re)};
}

Complex csin(const Complex& z) {
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

Complex ccos(const Complex& z) {
    return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}

Complex cpow(const Complex& z, const Real& p) { return cexp(Complex{p, Real::zero(p.prec())} * clog(z)); }

}  // namespace hv

#ifndef HV_MATRIX_HPP
#define HV_MATRIX_HPP

#include <vector>

#include "hv/mpcomplex.hpp"

namespace hv {

// Dense square complex matrix at a fixed working precision. Dimensions stay
// desk scale (4 up to 64), so storage is one row-major vector and products
// are cubic with a zero-skip on the left factor.
struct CMat {
    long n = 0;
    mpfr_prec_t prec = 53;
    std::vector<Complex> e;

    CMat() = default;
    CMat(long dim, mpfr_prec_t p)
        : n(dim), prec(p), e(static_cast<size_t>(dim) * dim, Complex::zero(p)) {}

    static CMat identity(long dim, mpfr_prec_t p);

    Complex& at(long i, long j) { return e[static_cast<size_t>(i) * n + j]; }
    const Complex& at(long i, long j) const {
        return e[static_cast<size_t>(i) * n + j];
    }
};

CMat operator+(const CMat& A, const CMat& B);
CMat operator-(const CMat& A, const CMat& B);
CMat operator*(const CMat& A, const CMat& B);
CMat scale(const Complex& s, const CMat& A);
CMat kron(const CMat& A, const CMat& B);
CMat adjoint(const CMat& A);
// Gauss-Jordan with partial pivoting; throws on a singular input.
CMat inverse(const CMat& A);
Complex trace(const CMat& A);
// Largest |entry|, the residual norm used throughout the checks.
Real max_abs(const CMat& A);
// ||AB - BA||_max
Real commutator_norm(const CMat& A, const CMat& B);

// Embeds a two-site operator on C^4 (x) C^4 into sites (slot_a, slot_b) of a
// chain of nslots four-dimensional sites, identity elsewhere. Big-endian
// site order: site 0 varies slowest in the tensor index.
CMat embed_two_site(const CMat& A16, int slot_a, int slot_b, int nslots);

}  // namespace hv

#endif

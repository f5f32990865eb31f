#ifndef HV_ELLIPTIC_HPP
#define HV_ELLIPTIC_HPP

#include <utility>

#include "hv/mpcomplex.hpp"

namespace hv {

// Complete elliptic integral of the first kind, complex modulus k, principal
// branch. Dispatches on |k|: hypergeometric series inside |k| <= 0.9,
// complex AGM outside. Input with k^2 on [1, inf) is a branch-cut error.
Complex complete_K(const Complex& k, mpfr_prec_t prec);
// The two evaluation paths, exposed as a dual-path oracle.
Complex complete_K_series(const Complex& k, mpfr_prec_t prec);
Complex complete_K_agm(const Complex& k, mpfr_prec_t prec);

// Everything needed to evaluate the theta products for one coupling:
//   k = U/(4i),  K = K(k),  K' on the branch fixed below,  q = exp(-pi K'/K).
//
// For real U the squared modulus m = k^2 is negative, so the complementary
// integral K(sqrt(1-m)) sits on the branch cut of K. The convention used
// throughout is the continuation from the upper side of the cut, which for
// real U evaluates as K' = (K(m1) + i K(1-m1))/sqrt(w), m1 = 1/w, w = 1-m
// (both arguments then lie in (0,1)). Off the cut the principal value is
// already the continuation. With this choice the sn-form and theta-form
// weights below agree with plain principal-branch prefactors.
//
// Fractional powers of the nome are taken as exponentials (q^{1/4} =
// exp(-pi K'/(4K))), never by root extraction, so they inherit no branch
// ambiguity.
struct ThetaContext {
    Complex U, k, kp, K, Kp, q, q14;
    long trunc;
    mpfr_prec_t prec;

    // trunc_override < 0 picks ceil(prec ln2 / (2 |ln|q||)) + 8 guard terms.
    static ThetaContext for_coupling(const Complex& U, mpfr_prec_t prec,
                                     long trunc_override = -1);
};

// Jacobi theta products
//   H(l) = 2 q^{1/4} sin(pi l/2K) prod (1 - 2q^{2j} cos(pi l/K) + q^{4j})(1 - q^{2j})
//   Theta(l) = prod (1 - 2q^{2j-1} cos(pi l/K) + q^{4j-2})(1 - q^{2j})
// truncated at ctx.trunc with tail |q|^{2 trunc} < 2^{-prec} (checked).
Complex theta_H(const ThetaContext& ctx, const Complex& lambda);
Complex theta_Theta(const ThetaContext& ctx, const Complex& lambda);

// Jacobi sn as the normalized quotient H(l) Theta(K) / (H(K) Theta(l))
// (prefactors cancel; equals the classical sn, and sn(K) = 1 exactly by
// construction). Approaching a Theta zero is reported as a pole. sn at
// exactly zero modulus degenerates to sin.
Complex sn(const ThetaContext& ctx, const Complex& lambda);
Complex sn_jacobi(const Complex& lambda, const Complex& k, mpfr_prec_t prec);

// Independent oracle: sn through the descending Landen transformation,
// k_{n+1} = (1 - k'_n)/(1 + k'_n) down to the trigonometric base case. No
// theta products involved.
Complex sn_landen(const Complex& lambda, const Complex& k, mpfr_prec_t prec);

// One uniformized point of the weight curve.
struct WeightPoint {
    Complex lambda, xc, yc, thc;  // x/c, y/c, theta/c^2 at lambda
};

enum class WeightForm { Sn, Theta };

// Weight uniformization. Sn form:
//   x/c = sn(K-l) / (1 - ik sn(l) sn(K-l)),  y/c = sn(l) / (same),
// theta form (all quarter powers principal):
//   x/c = i (4k sqrt(q))^{-1/4} H(K-l) Theta(l) / (H(l + iK'/2) H(K + iK'/2 - l))
//   y/c = i (4k sqrt(q))^{-1/4} Theta(K-l) H(l) / (same denominators),
// with theta/c^2 from the printed quotient (Theta/H at the shifted points).
// Exactly zero coupling short-circuits to (cos l, sin l, 1). Denominator
// theta zeros are reported as poles.
WeightPoint uniformize(const ThetaContext& ctx, const Complex& lambda, WeightForm form);
WeightPoint uniformize(const Complex& lambda, const Complex& U, WeightForm form,
                       mpfr_prec_t prec);

// The two printed quotient expressions for theta/c^2 (with Theta[l + iK'/2]
// and with H[l - iK'/2]); asserted equal by the dual-form tests.
std::pair<Complex, Complex> theta_ratio_forms(const ThetaContext& ctx,
                                              const Complex& lambda);

}  // namespace hv

#endif

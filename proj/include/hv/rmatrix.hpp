#ifndef HV_RMATRIX_HPP
#define HV_RMATRIX_HPP

#include <string>
#include <utility>
#include <vector>

#include "hv/elliptic.hpp"
#include "hv/exactcheck.hpp"
#include "hv/matrix.hpp"
#include "hv/ratpoly.hpp"

namespace hv {

// The eight vertex weights at c = 1 normalization. h and q here are the
// weight names, unrelated to the Lax parameter h or the nome q.
struct WeightTuple {
    Complex a, b, bbar, c, d, g, h, q;
};

// Weight ratios from two uniformized points. Throws naming the vanishing
// denominator (theta_1, theta_2, or x1^2 x2^2 - y1^2 y2^2).
WeightTuple weights(const WeightPoint& w1, const WeightPoint& w2);
WeightTuple weights(const ThetaContext& ctx, const Complex& l1, const Complex& l2);

// Residuals of the five quadric relations at a numeric weight tuple.
std::vector<Complex> quadric_residuals(const WeightTuple& w, const Complex& U);

// The printed 16x16 layout: 36 structural nonzeros.
CMat rmatrix_assemble(const WeightTuple& w, mpfr_prec_t prec);

// ||R12 L13(l1) L23(l2) - L23(l2) L13(l1) R12||_max on the 64x64 triple
// space, normalized by the largest entry of either side. The _with variant
// takes an explicit weight tuple (for mutation controls).
Real ybe_residual(const ThetaContext& ctx, const Complex& l1, const Complex& l2);
Real ybe_residual_with(const ThetaContext& ctx, const Complex& l1, const Complex& l2,
                       const WeightTuple& w);

// Numerators p1..p8 of the eight weights over the common denominator p4,
// in the printed weight order (a, b, bbar, c, d, g, h, q), as polynomials
// in (x1, y1, x2, y2, U); U never appears but keeps one shared variable
// universe with the curve relations.
std::vector<RatPoly> weight_polynomials();

// The five quadrics in the weight variables (a, b, bb, c, d, g, h, q, U);
// each is homogeneous of degree 2 in the first eight.
std::vector<RatPoly> quadrics();

// Substitutes the weight numerators into each quadric; all five identities
// reduce to zero. Includes the U -> 2U mutation of the coupling-bearing
// quadric as a must-fail control.
std::vector<ExactCheck> verify_quadrics();

// omega1 = U x2^2 y2^2 / (U x2 y2 + 1) and
// omega2 = x2^2 + y2^2 / (U x2 y2 + 1), numerically.
std::pair<Complex, Complex> omega(const Complex& x2, const Complex& y2,
                                  const Complex& U);

// Numeric residual of the single constraint binding (omega1, omega2):
// (w1^2 + w2^2)^2 - U w1 w2^2 + 2 (w1^2 - w2^2) + 1 at a point of the
// weight curve.
Complex omega_curve_residual(const Complex& x2, const Complex& y2, const Complex& U);

// The same constraint cleared by (U x2 y2 + 1)^4, reduced modulo the curve
// relation in (x2, y2); plus a sign-flip mutation that must not vanish.
std::vector<ExactCheck> verify_omega_curve();

// The seven printed generators of the intermediate elimination ideal,
// cleared generator-by-generator (multipliers recorded), reduced modulo
// both curve relations. The third generator is the curve relation itself.
std::vector<ExactCheck> verify_ideal_generators();

}  // namespace hv

#endif

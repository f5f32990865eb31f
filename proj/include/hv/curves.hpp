#ifndef HV_CURVES_HPP
#define HV_CURVES_HPP

#include <vector>

#include "hv/mpcomplex.hpp"
#include "hv/rat.hpp"
#include "hv/ratpoly.hpp"

namespace hv {

// The three elliptic curves attached to the coupling U:
//   E1: x+ + 1/x+ - x- - 1/x- - iU = 0            (Beisert coordinates)
//   E2: (x^2+y^2)^2 - Uxy - 1 = 0                 (weight coordinates)
//   E3: the generic fiber of the Weierstrass fibration over E2bar
// with projective closures
//   E1bar: (x+ - x-)(x+ x- - z^2) - iU x+ x- z = 0
//   E2bar: (x^2+y^2)^2 - Uxy c^2 - c^4 = 0.
enum class CurveId { E1, E2, E3 };

struct ProjPointE2 {
    Complex x, y, c;
};

struct ProjPointE1 {
    Complex xp, xm, z;
};

// Affine curve residual (x^2+y^2)^2 - Uxy - 1; zero iff on E2.
Rat on_curve_E2(const Rat& x, const Rat& y, const Rat& U);
Complex on_curve_E2(const Complex& x, const Complex& y, const Complex& U);

// Projective residuals of the closures.
Rat e2bar_residual(const Rat& x, const Rat& y, const Rat& c, const Rat& U);
Complex e2bar_residual(const ProjPointE2& P, const Complex& U);
Complex e1bar_residual(const ProjPointE1& Q, const Complex& U);

// The fourfold isogeny E2bar -> E1bar,
//   (x : y : c) -> (i x^2 (x^2+y^2) : -i y^2 (x^2+y^2) : x y c^2),
// falling back to the alternative charts
//   (x^2 : -y^2 : -i x y c^2/(x^2+y^2))
//   (x^2 : -y^2 : -i x y (x^2+y^2)/(c^2 + Uxy))
// in that order where the previous expression degenerates; the last chart
// resolves the singular points (1 : +-i : 0) -> (1 : 1 : 0). Input off
// E2bar is rejected with the residual in the message.
ProjPointE1 isogeny_psi(const ProjPointE2& P, const Complex& U);

// Exact statement behind the map: E1bar(psi) reduces to 0 modulo the E2bar
// rewrite rule, symbolically in (x, y, c, U). The mutated variant damages
// the third component (x y c^2 -> x y c^2 + c^4) and must come back false.
bool verify_psi_exact();
bool verify_psi_exact_mutated();
// Same reduction with U specialized to an exact rational.
bool verify_psi_exact_at(const Rat& U);

// Number of numerically distinct preimages of a generic Q under the
// isogeny (expected: 4). Solves psi(P) parallel to Q subject to E2bar in the
// c=1 chart, verifies every candidate, and clusters at relative distance
// 2^(-prec/4). Non-generic Q (the singular image, q1=0, or degenerate U)
// and ambiguous clustering are errors.
int fiber_count(const ProjPointE1& Q, const Complex& U, mpfr_prec_t prec);

// Exact rational J-invariants of the printed closed forms. Degenerate
// couplings (U = 0 or U^2 + 16 = 0, where the curves rationalize) are
// errors.
Rat j_invariant(CurveId which, const Rat& U);

// J = 1728 * 4A^3 / (4A^3 + 27B^2) for y^2 = x^3 + Ax + B.
Rat j_from_weierstrass(const Rat& A, const Rat& B);
Complex j_from_weierstrass(const Complex& A, const Complex& B);

// The level-4 modular polynomial, exact in both arguments. Symmetric.
Rat phi4(const Rat& j1, const Rat& j2);

// Coefficient table of phi4: entries (i, j, coefficient) with i >= j; a pair
// with i != j stands for x^i y^j + x^j y^i. Exposed so tests can guard the
// transcription with a checksum.
struct Phi4Coefficient {
    int i, j;
    const char* value;
};
const std::vector<Phi4Coefficient>& phi4_coefficients();

// Rotated quadric coordinates: from (x : y : c) with c != 0, w = (x^2+y^2)/c,
// w1 = (c+w)/2, w2 = (w-c)/(2i); then x^2+y^2 = w1^2+w2^2 and
// w1 w2 = (U/4i) x y.
struct EightVertexCoords {
    Complex x, y, w1, w2;
};
EightVertexCoords eight_vertex_coords(const ProjPointE2& P, const Complex& U);

}  // namespace hv

#endif

#ifndef HV_LAX_HPP
#define HV_LAX_HPP

#include "hv/elliptic.hpp"
#include "hv/matrix.hpp"

namespace hv {

// Free-fermion vertex weights with the interaction folded into the
// parameter h: x = a e^h, y = b e^h, constrained by a^2 + b^2 = c^2 and
// sinh(2h) = U a b / (2 c^2).
struct ShastryParams {
    Complex a, b, c, h;
};

// Splits uniformized weights (x/c, y/c at c = 1) into the constrained set:
// e^{2h} = x^2 + y^2, a = x e^{-h}, b = y e^{-h}, c = 1.
ShastryParams shastry_params(const Complex& xc, const Complex& yc);

// Recovers the coupling from sinh(2h) = U a b/(2c^2). Defined when ab != 0;
// equals the uniformizing coupling exactly when (x, y) sits on the weight
// curve, which is what the round-trip tests pin down.
Complex shastry_coupling(const ShastryParams& p);

// The 16x16 Lax matrix in its explicit printed form, normalized to c = 1,
// entries rational in (xc, yc). 36 structural nonzeros; at (1, 0) it is
// exactly the two-site permutation operator.
CMat lax_explicit(const Complex& xc, const Complex& yc);

// The same operator assembled constructively: the product of the two
// single-species six-vertex operators, conjugated by exp[h/2 (s^z t^z + 1)]
// on the auxiliary site. At c = 1 this equals lax_explicit(a e^h, b e^h)
// entrywise (global scalar exactly 1).
CMat lax_shastry(const ShastryParams& p);

// 4x4 charge conjugation: antidiagonal ones (an involution).
CMat charge_conjugation(mpfr_prec_t prec);

// ||L(lam) - (M x I) L(K - lam)^{t2} (M^{-1} x I)||_max where t2 transposes
// the second four-dimensional factor. The _with variant takes an arbitrary
// conjugator so mutated M can be shown to break the relation.
Real crossing_residual_with(const ThetaContext& ctx, const Complex& lambda,
                            const CMat& M4);
Real crossing_residual(const ThetaContext& ctx, const Complex& lambda);

// residual = ||L(lam) L(-lam) - [x(lam) x(-lam)]^2 I||_max with both
// factors on the same ordered pair of spaces. permuted_control swaps the
// spaces of the second factor; it stays O(1) for generic coupling, which
// certifies the non-permuted form as the correct inverse.
struct UnitarityCheck {
    Real residual;
    Real permuted_control;
};
UnitarityCheck unitarity_check(const ThetaContext& ctx, const Complex& lambda);

// Row-to-row transfer matrix on `sites` four-dimensional sites, periodic
// closure: tr_aux [L_{0,sites} ... L_{0,1}]. sites in {1, 2, 3}; larger
// chains are refused (4^sites blows the dense-matrix budget).
CMat transfer_matrix(const ThetaContext& ctx, const Complex& lambda, int sites);

// Partition trace Tr[T(lambda)^power].
Complex partition_trace(const ThetaContext& ctx, const Complex& lambda, int sites,
                        int power = 1);

// Spin-chain Hamiltonian: nearest-neighbour hopping for both species plus
// (U/4) s^z t^z on each site, periodic, sites >= 2. Hermitian for real U,
// traceless always.
CMat spin_hamiltonian(int sites, const Complex& U, mpfr_prec_t prec);

}  // namespace hv

#endif

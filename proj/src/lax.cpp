#include "hv/lax.hpp"

#include <stdexcept>

namespace hv {

ShastryParams shastry_params(const Complex& xc, const Complex& yc) {
    mpfr_prec_t prec = std::max(xc.prec(), yc.prec());
    Complex th = xc * xc + yc * yc;
    if (cabs(th) < Real::pow2(-(prec / 2), prec))
        throw std::domain_error("shastry_params: x^2 + y^2 vanishes, h undefined");
    Complex h = clog(th) / 2L;
    Complex emh = cexp(-h);
    return {xc * emh, yc * emh, Complex::of(1L, prec), h};
}

Complex shastry_coupling(const ShastryParams& p) {
    mpfr_prec_t prec = p.a.prec();
    Complex ab = p.a * p.b;
    if (cabs(ab) < Real::pow2(-(prec / 2), prec))
        throw std::domain_error("shastry_coupling: ab vanishes, coupling undetermined");
    Complex two_h = p.h + p.h;
    Complex sinh2h = (cexp(two_h) - cexp(-two_h)) / 2L;
    return 2L * (p.c * p.c * sinh2h) / ab;
}

CMat lax_explicit(const Complex& xc, const Complex& yc) {
    mpfr_prec_t prec = std::max(xc.prec(), yc.prec());
    Complex th = xc * xc + yc * yc;
    if (cabs(th) < Real::pow2(-(prec / 2), prec))
        throw std::domain_error("lax_explicit: x^2 + y^2 vanishes (entries divide by it)");
    Complex x2 = xc * xc, y2 = yc * yc, xy = xc * yc;
    Complex one = Complex::of(1L, prec);
    Complex xyt = xy / th, x2t = x2 / th, y2t = y2 / th;

    CMat L(16, prec);
    auto set = [&](int r, int c, const Complex& v) { L.at(r - 1, c - 1) = v; };
    set(1, 1, x2);
    set(2, 2, xy), set(2, 5, xc);
    set(3, 3, xy), set(3, 9, xc);
    set(4, 4, y2), set(4, 7, yc), set(4, 10, yc), set(4, 13, th);
    set(5, 2, xc), set(5, 5, xyt);
    set(6, 6, x2t);
    set(7, 4, yc), set(7, 7, y2t), set(7, 10, one), set(7, 13, yc);
    set(8, 8, xyt), set(8, 14, xc);
    set(9, 3, xc), set(9, 9, xyt);
    set(10, 4, yc), set(10, 7, one), set(10, 10, y2t), set(10, 13, yc);
    set(11, 11, x2t);
    set(12, 12, xyt), set(12, 15, xc);
    set(13, 4, th), set(13, 7, yc), set(13, 10, yc), set(13, 13, y2);
    set(14, 8, xc), set(14, 14, xy);
    set(15, 12, xc), set(15, 15, xy);
    set(16, 16, x2);
    return L;
}

namespace {

CMat pauli(char which, mpfr_prec_t prec) {
    CMat m(2, prec);
    Complex one = Complex::of(1L, prec);
    switch (which) {
        case 'z':
            m.at(0, 0) = one;
            m.at(1, 1) = -one;
            break;
        case '+':
            m.at(0, 1) = one;
            break;
        case '-':
            m.at(1, 0) = one;
            break;
        default:
            m.at(0, 0) = one;
            m.at(1, 1) = one;
    }
    return m;
}

}  // namespace

CMat lax_shastry(const ShastryParams& p) {
    mpfr_prec_t prec = p.a.prec();
    Complex ff = p.a * p.a + p.b * p.b - p.c * p.c;
    if (cabs(ff) > Real::pow2(-(prec / 2), prec) * (Real::of(1L, prec) + cabs(p.c * p.c)))
        throw std::invalid_argument("lax_shastry: a^2 + b^2 != c^2 beyond tolerance");

    CMat i2 = pauli('1', prec), sz = pauli('z', prec);
    CMat sp = pauli('+', prec), sm = pauli('-', prec);

    // Each site is C^2 (x) C^2; the first qubit carries the sigma species,
    // the second the tau species. Full space: (aux qubits) (x) (quantum
    // qubits), so sigma lives on qubits (1, 3) and tau on (2, 4).
    auto embed_sigma = [&](const CMat& oa, const CMat& oq) {
        return kron(kron(oa, i2), kron(oq, i2));
    };
    auto embed_tau = [&](const CMat& oa, const CMat& oq) {
        return kron(kron(i2, oa), kron(i2, oq));
    };

    auto species = [&](auto embed) {
        Complex apb = (p.a + p.b) / 2L, amb = (p.a - p.b) / 2L;
        return scale(apb, embed(i2, i2)) + scale(amb, embed(sz, sz)) +
               scale(p.c, embed(sp, sm)) + scale(p.c, embed(sm, sp));
    };

    CMat Ls = species(embed_sigma);
    CMat Lt = species(embed_tau);

    // exp[h/2 (s^z t^z + 1)] on the auxiliary site = diag(e^h, 1, 1, e^h).
    Complex eh = cexp(p.h);
    CMat E4 = CMat::identity(4, prec);
    E4.at(0, 0) = eh;
    E4.at(3, 3) = eh;
    CMat E = kron(E4, CMat::identity(4, prec));
    return E * (Ls * Lt) * E;
}

CMat charge_conjugation(mpfr_prec_t prec) {
    CMat M(4, prec);
    for (int i = 0; i < 4; ++i) M.at(i, 3 - i) = Complex::of(1L, prec);
    return M;
}

namespace {

// Partial transpose on the second four-dimensional factor of a 16x16.
CMat transpose_second(const CMat& X) {
    CMat Y(16, X.prec);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    Y.at(4 * i + j, 4 * k + l) = X.at(4 * i + l, 4 * k + j);
    return Y;
}

CMat lax_at(const ThetaContext& ctx, const Complex& lambda) {
    WeightPoint w = uniformize(ctx, lambda, WeightForm::Sn);
    return lax_explicit(w.xc, w.yc);
}

}  // namespace

Real crossing_residual_with(const ThetaContext& ctx, const Complex& lambda,
                            const CMat& M4) {
    CMat L = lax_at(ctx, lambda);
    CMat Lk = lax_at(ctx, ctx.K - lambda);
    CMat I4 = CMat::identity(4, ctx.prec);
    CMat M1 = kron(M4, I4);
    CMat M1inv = kron(inverse(M4), I4);
    return max_abs(L - M1 * transpose_second(Lk) * M1inv);
}

Real crossing_residual(const ThetaContext& ctx, const Complex& lambda) {
    return crossing_residual_with(ctx, lambda, charge_conjugation(ctx.prec));
}

UnitarityCheck unitarity_check(const ThetaContext& ctx, const Complex& lambda) {
    WeightPoint wp = uniformize(ctx, lambda, WeightForm::Sn);
    WeightPoint wm = uniformize(ctx, -lambda, WeightForm::Sn);
    CMat L = lax_explicit(wp.xc, wp.yc);
    CMat Lm = lax_explicit(wm.xc, wm.yc);
    Complex s = wp.xc * wp.xc * (wm.xc * wm.xc);
    CMat sI = scale(s, CMat::identity(16, ctx.prec));

    // Permutation swapping the two four-dimensional spaces.
    CMat P = lax_explicit(Complex::of(1L, ctx.prec), Complex::zero(ctx.prec));
    UnitarityCheck out{max_abs(L * Lm - sI), max_abs(L * (P * Lm * P) - sI)};
    return out;
}

CMat transfer_matrix(const ThetaContext& ctx, const Complex& lambda, int sites) {
    if (sites < 1 || sites > 3)
        throw std::invalid_argument(
            "transfer_matrix: sites must be 1..3 (dense 4^sites blows up beyond that)");
    WeightPoint w = uniformize(ctx, lambda, WeightForm::Sn);
    CMat L = lax_explicit(w.xc, w.yc);

    // Quantum-space blocks B[ia][ib] of the Lax operator, indexed by the
    // auxiliary in/out states.
    CMat B[4][4];
    for (int ia = 0; ia < 4; ++ia)
        for (int ib = 0; ib < 4; ++ib) {
            CMat blk(4, ctx.prec);
            for (int qa = 0; qa < 4; ++qa)
                for (int qb = 0; qb < 4; ++qb)
                    blk.at(qa, qb) = L.at(4 * ia + qa, 4 * ib + qb);
            B[ia][ib] = blk;
        }

    // Running operator cur[ia][ib] on the quantum chain built so far; extend
    // site by site by contracting the middle auxiliary index, then close the
    // trace.
    CMat cur[4][4];
    for (int ia = 0; ia < 4; ++ia)
        for (int ib = 0; ib < 4; ++ib) cur[ia][ib] = B[ia][ib];
    for (int s = 1; s < sites; ++s) {
        CMat nxt[4][4];
        for (int ia = 0; ia < 4; ++ia)
            for (int ib = 0; ib < 4; ++ib) {
                CMat acc = kron(cur[ia][0], B[0][ib]);
                for (int m = 1; m < 4; ++m) acc = acc + kron(cur[ia][m], B[m][ib]);
                nxt[ia][ib] = acc;
            }
        for (int ia = 0; ia < 4; ++ia)
            for (int ib = 0; ib < 4; ++ib) cur[ia][ib] = nxt[ia][ib];
    }
    CMat T = cur[0][0];
    for (int ia = 1; ia < 4; ++ia) T = T + cur[ia][ia];
    return T;
}

Complex partition_trace(const ThetaContext& ctx, const Complex& lambda, int sites,
                        int power) {
    if (power < 1) throw std::invalid_argument("partition_trace: power must be >= 1");
    CMat T = transfer_matrix(ctx, lambda, sites);
    CMat Tp = T;
    for (int i = 1; i < power; ++i) Tp = Tp * T;
    return trace(Tp);
}

CMat spin_hamiltonian(int sites, const Complex& U, mpfr_prec_t prec) {
    if (sites < 2) throw std::invalid_argument("spin_hamiltonian: need at least 2 sites");
    CMat i2 = pauli('1', prec), sz = pauli('z', prec);
    CMat sp = pauli('+', prec), sm = pauli('-', prec);
    CMat I4 = CMat::identity(4, prec);

    // Species embedding within one C^4 site (sigma on the first qubit, tau
    // on the second), matching the Lax construction.
    auto site_op = [&](const CMat& op, int species) {
        return species == 0 ? kron(op, i2) : kron(i2, op);
    };
    auto chain_one = [&](const CMat& op4, int j) {
        CMat M = (j == 0) ? op4 : I4;
        for (int s = 1; s < sites; ++s) M = kron(M, s == j ? op4 : I4);
        return M;
    };
    auto chain_two = [&](const CMat& opA, const CMat& opB, int j) {
        int jn = (j + 1) % sites;
        CMat M = (j == 0) ? opA : (jn == 0 ? opB : I4);
        for (int s = 1; s < sites; ++s)
            M = kron(M, s == j ? opA : (s == jn ? opB : I4));
        return M;
    };

    long n = 1;
    for (int s = 0; s < sites; ++s) n *= 4;
    CMat H(n, prec);
    Complex quarterU = U / 4L;
    for (int j = 0; j < sites; ++j) {
        for (int species : {0, 1}) {
            H = H + chain_two(site_op(sp, species), site_op(sm, species), j);
            H = H + chain_two(site_op(sm, species), site_op(sp, species), j);
        }
        H = H + scale(quarterU, chain_one(kron(sz, sz), j));
    }
    return H;
}

}  // namespace hv

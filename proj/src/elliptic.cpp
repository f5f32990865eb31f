#include "hv/elliptic.hpp"

#include <stdexcept>

namespace hv {

namespace {

// All K computations run on m = k^2 internally.
void reject_cut(const Complex& m) {
    if (m.im.is_zero() && m.re >= Real::of(1L, m.prec()))
        throw std::domain_error("complete_K: k^2 lies on the branch cut [1, inf)");
}

Complex complete_K_m_series(const Complex& m, mpfr_prec_t prec) {
    // pi/2 * 2F1(1/2, 1/2; 1; m); term ratio ((2n+1)/(2n+2))^2 m.
    Complex sum = Complex::of(1L, prec);
    Complex term = Complex::of(1L, prec);
    Real cutoff = Real::pow2(-(prec + 16), prec);
    for (long n = 0; n < 100000; ++n) {
        Rat r = make_rat(2 * n + 1, 2 * n + 2);
        term = term * m * Complex::of(r * r, prec);
        sum += term;
        if (cabs(term) < cutoff * cabs(sum))
            return (Real::pi(prec) / 2L) * sum;
    }
    throw std::runtime_error("complete_K: series did not converge (|k| too close to 1?)");
}

Complex complete_K_m_agm(const Complex& m, mpfr_prec_t prec) {
    Complex a = Complex::of(1L, prec);
    Complex b = csqrt(Complex::of(1L, prec) - m);  // k'
    // Quadratic convergence stalls at the ulp floor, so stop a few bits
    // short and take one polishing step past the gate.
    Real cutoff = Real::pow2(-(prec - 8), prec);
    for (int it = 0; it < 200; ++it) {
        Complex a1 = (a + b) / 2L;
        Complex g = csqrt(a * b);
        // Square-root branch: keep the root closest to the arithmetic mean.
        if (cabs(a1 - g) > cabs(a1 + g)) g = -g;
        bool done = cabs(a - b) < cutoff * cabs(a);
        a = a1;
        b = g;
        if (done)
            return Complex::of(Real::pi(prec) / 2L) / a;
    }
    throw std::runtime_error("complete_K: AGM did not converge");
}

Complex complete_K_m(const Complex& m, mpfr_prec_t prec) {
    reject_cut(m);
    // |m| <= 0.81 is |k| <= 0.9.
    if (cabs(m) <= Real::of(make_rat(81, 100), prec)) return complete_K_m_series(m, prec);
    return complete_K_m_agm(m, prec);
}

}  // namespace

Complex complete_K(const Complex& k, mpfr_prec_t prec) { return complete_K_m(k * k, prec); }

Complex complete_K_series(const Complex& k, mpfr_prec_t prec) {
    Complex m = k * k;
    reject_cut(m);
    return complete_K_m_series(m, prec);
}

Complex complete_K_agm(const Complex& k, mpfr_prec_t prec) {
    Complex m = k * k;
    reject_cut(m);
    return complete_K_m_agm(m, prec);
}

ThetaContext ThetaContext::for_coupling(const Complex& U, mpfr_prec_t prec,
                                        long trunc_override) {
    if (U.is_zero())
        throw std::domain_error(
            "ThetaContext: U=0 is the trigonometric degeneration (q=0), no context");
    ThetaContext ctx;
    ctx.prec = prec;
    ctx.U = U;
    // k = U/(4i) = -iU/4; written out so exact zeros survive.
    ctx.k = Complex{U.im / 4L, -(U.re / 4L)};
    Complex m = ctx.k * ctx.k;
    Complex one = Complex::of(1L, prec);
    ctx.kp = csqrt(one - m);
    ctx.K = complete_K_m(m, prec);

    if (m.im.is_zero() && m.re.sign() < 0) {
        // Real coupling: 1-m sits on the cut; continue from the upper side.
        // (K(1/w) + i K(1 - 1/w))/sqrt(w), w = 1-m, both arguments in (0,1).
        Complex w = one - m;
        Complex m1 = one / w;
        ctx.Kp = (complete_K_m(m1, prec) + Complex::unit_i(prec) * complete_K_m(one - m1, prec)) /
                 csqrt(w);
    } else {
        ctx.Kp = complete_K_m(one - m, prec);
    }

    Real pi = Real::pi(prec);
    Complex ratio = ctx.Kp / ctx.K;  // pi * Re(ratio) = -ln|q|
    if (!(ratio.re > Real::zero(prec)))
        throw std::domain_error("ThetaContext: |q| >= 1, no convergent product");
    ctx.q = cexp(-(pi * ratio));
    ctx.q14 = cexp(-(pi * ratio) / 4L);

    if (trunc_override >= 0) {
        ctx.trunc = trunc_override;
    } else {
        // |q|^{2 trunc} < 2^{-prec} plus guard terms.
        Real need = Real::of(static_cast<long>(prec), prec) *
                    log(Real::of(2L, prec)) / (2L * (pi * ratio.re));
        ctx.trunc = static_cast<long>(need.to_double()) + 1 + 8;
    }
    return ctx;
}

namespace {

void check_trunc(const ThetaContext& ctx) {
    // Tail of the product is O(|q|^{2 trunc}); must clear 2^{-prec}.
    Real tail = Real::of(2L * ctx.trunc, ctx.prec) * log(cabs(ctx.q));
    Real need = -(Real::of(static_cast<long>(ctx.prec), ctx.prec) * log(Real::of(2L, ctx.prec)));
    if (!(tail < need))
        throw std::invalid_argument("theta products: trunc too small for prec");
}

// Common product core. with_h_factors selects the H-type (even powers
// q^{2j}) or Theta-type (odd powers q^{2j-1}) cosine factors; both carry
// the (1 - q^{2j}) tail.
Complex theta_product(const ThetaContext& ctx, const Complex& lambda, bool h_type) {
    check_trunc(ctx);
    mpfr_prec_t prec = ctx.prec;
    Complex one = Complex::of(1L, prec);
    Complex c2z = ccos(Real::pi(prec) * lambda / ctx.K);
    Complex q2 = ctx.q * ctx.q;
    Complex prod = one;
    Complex q_even = one;           // q^{2j}
    Complex q_cos = h_type ? q2 : ctx.q;  // q^{2j} or q^{2j-1}
    for (long j = 1; j <= ctx.trunc; ++j) {
        q_even *= q2;
        Complex f = one - 2L * (q_cos * c2z) + q_cos * q_cos;
        prod *= f * (one - q_even);
        q_cos *= q2;
    }
    if (h_type) prod *= csin(Real::pi(prec) * lambda / (2L * ctx.K));
    return prod;
}

// H without its 2 q^{1/4} prefactor; the prefactor cancels in every ratio
// the weights use, and dropping it dodges the q^{1/4} branch entirely.
Complex theta_H_reduced(const ThetaContext& ctx, const Complex& lambda) {
    return theta_product(ctx, lambda, true);
}

}  // namespace

Complex theta_H(const ThetaContext& ctx, const Complex& lambda) {
    return 2L * (ctx.q14 * theta_H_reduced(ctx, lambda));
}

Complex theta_Theta(const ThetaContext& ctx, const Complex& lambda) {
    return theta_product(ctx, lambda, false);
}

Complex sn(const ThetaContext& ctx, const Complex& lambda) {
    Complex tl = theta_Theta(ctx, lambda);
    Real pole_tol = Real::pow2(-(ctx.prec / 2), ctx.prec);
    if (cabs(tl) < pole_tol)
        throw std::domain_error("sn: lambda is within 2^(-prec/2) of a pole (Theta zero)");
    Complex num = theta_H_reduced(ctx, lambda) * theta_Theta(ctx, ctx.K);
    Complex den = theta_H_reduced(ctx, ctx.K) * tl;
    return num / den;
}

Complex sn_jacobi(const Complex& lambda, const Complex& k, mpfr_prec_t prec) {
    if (k.is_zero()) return csin(lambda);
    // Reconstruct the coupling for the context: U = 4ik.
    Complex U = Complex{-(4L * k.im), 4L * k.re};
    return sn(ThetaContext::for_coupling(U, prec), lambda);
}

Complex sn_landen(const Complex& lambda, const Complex& k, mpfr_prec_t prec) {
    // |k| below 2^(-prec/2-4) leaves an O(|k|^2) defect under 2^(-prec).
    if (cabs(k) < Real::pow2(-(prec / 2) - 4, prec)) return csin(lambda);
    Complex one = Complex::of(1L, prec);
    Complex kp = csqrt(one - k * k);
    Complex k1 = (one - kp) / (one + kp);
    Complex s1 = sn_landen(lambda / (one + k1), k1, prec);
    return (one + k1) * s1 / (one + k1 * s1 * s1);
}

namespace {

void check_pole(const Complex& den, mpfr_prec_t prec, const char* what) {
    if (cabs(den) < Real::pow2(-(prec / 2), prec))
        throw std::domain_error(std::string("uniformize: lambda too close to a weight pole (") +
                                what + " below 2^(-prec/2))");
}

}  // namespace

std::pair<Complex, Complex> theta_ratio_forms(const ThetaContext& ctx,
                                              const Complex& lambda) {
    Complex i = Complex::unit_i(ctx.prec);
    Complex half = i * ctx.Kp / 2L;
    Complex a = ctx.K + half - lambda;
    Complex bp = lambda + half;
    Complex bm = lambda - half;
    Complex Ha = theta_H(ctx, a);
    check_pole(Ha, ctx.prec, "H(K + iK'/2 - lambda)");
    Complex form1_den = theta_H(ctx, bp);
    check_pole(form1_den, ctx.prec, "H(lambda + iK'/2)");
    Complex form2_den = theta_Theta(ctx, bm);
    check_pole(form2_den, ctx.prec, "Theta(lambda - iK'/2)");
    Complex f1 = i * (theta_Theta(ctx, a) * theta_Theta(ctx, bp)) / (Ha * form1_den);
    Complex f2 = i * (theta_Theta(ctx, a) * theta_H(ctx, bm)) / (Ha * form2_den);
    return {f1, f2};
}

WeightPoint uniformize(const ThetaContext& ctx, const Complex& lambda, WeightForm form) {
    mpfr_prec_t prec = ctx.prec;
    Complex i = Complex::unit_i(prec);
    Complex one = Complex::of(1L, prec);

    if (form == WeightForm::Sn) {
        Complex s1 = sn(ctx, lambda);
        Complex s2 = sn(ctx, ctx.K - lambda);
        Complex den = one - i * (ctx.k * s1 * s2);
        check_pole(den, prec, "1 - ik sn sn");
        Complex xc = s2 / den;
        Complex yc = s1 / den;
        return {lambda, xc, yc, xc * xc + yc * yc};
    }

    // Theta form. The prefactor is i (4k sqrt(q))^{-1/4}, and the fourth root
    // is fixed by the theta constants: H(K)^2/Theta(K)^2 = k gives
    // (4k sqrt(q))^{1/4} = 2 q^{1/4} sqrt(H_r(K)/Theta(K)) with the remaining
    // square root acting on a ratio near 1. A principal fractional power of
    // 4k sqrt(q) itself lands on a wrong fourth root for about half the
    // couplings (U = 1 and 3 come out scaled by -i, U = 2 does not).
    Complex hrk = theta_H(ctx, ctx.K) / (2L * ctx.q14);
    Complex thk = theta_Theta(ctx, ctx.K);
    Complex ratio = hrk / thk;
    // The nome's own modulus (H(K)/Theta(K))^2 equals +k on the sheet the
    // context branch rule selects (couplings with Re U > 0 or Im U > 0) and
    // -k on the mirror sheet. Jacobi functions only see k^2, so the sn form
    // is fine there, but these quotients then produce the weights of the
    // mirror coupling -U and no constant prefactor can repair that.
    Complex kq = 4L * ((ctx.q14 * ctx.q14) * (ratio * ratio));
    if (!(cabs(kq - ctx.k) < cabs(kq + ctx.k)))
        throw std::domain_error(
            "uniformize: theta form on this branch belongs to the mirror "
            "coupling -U (the nome's modulus is -k); use the sn form");
    Complex pref = i / (2L * (ctx.q14 * csqrt(ratio)));
    Complex half = i * ctx.Kp / 2L;
    Complex d1 = theta_H(ctx, lambda + half);
    Complex d2 = theta_H(ctx, ctx.K + half - lambda);
    check_pole(d1, prec, "H(lambda + iK'/2)");
    check_pole(d2, prec, "H(K + iK'/2 - lambda)");
    Complex den = d1 * d2;
    Complex xc = pref * (theta_H(ctx, ctx.K - lambda) * theta_Theta(ctx, lambda)) / den;
    Complex yc = pref * (theta_Theta(ctx, ctx.K - lambda) * theta_H(ctx, lambda)) / den;
    Complex thc = i * (theta_Theta(ctx, ctx.K + half - lambda) * theta_Theta(ctx, lambda + half)) / den;
    return {lambda, xc, yc, thc};
}

WeightPoint uniformize(const Complex& lambda, const Complex& U, WeightForm form,
                       mpfr_prec_t prec) {
    if (U.is_zero()) {
        Complex xc = ccos(lambda), yc = csin(lambda);
        return {lambda, xc, yc, xc * xc + yc * yc};
    }
    return uniformize(ThetaContext::for_coupling(U, prec), lambda, form);
}

}  // namespace hv

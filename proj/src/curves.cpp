#include "hv/curves.hpp"

#include <algorithm>
#include <stdexcept>

namespace hv {

Rat on_curve_E2(const Rat& x, const Rat& y, const Rat& U) {
    Rat s = x * x + y * y;
    return s * s - U * x * y - 1;
}

Complex on_curve_E2(const Complex& x, const Complex& y, const Complex& U) {
    Complex s = x * x + y * y;
    return s * s - U * x * y - Complex::of(1L, s.prec());
}

Rat e2bar_residual(const Rat& x, const Rat& y, const Rat& c, const Rat& U) {
    Rat s = x * x + y * y;
    Rat c2 = c * c;
    return s * s - U * x * y * c2 - c2 * c2;
}

Complex e2bar_residual(const ProjPointE2& P, const Complex& U) {
    Complex s = P.x * P.x + P.y * P.y;
    Complex c2 = P.c * P.c;
    return s * s - U * P.x * P.y * c2 - c2 * c2;
}

Complex e1bar_residual(const ProjPointE1& Q, const Complex& U) {
    Complex i = Complex::unit_i(U.prec());
    return (Q.xp - Q.xm) * (Q.xp * Q.xm - Q.z * Q.z) - i * U * Q.xp * Q.xm * Q.z;
}

namespace {

Real point_scale(const ProjPointE2& P) {
    return max(cabs(P.x), max(cabs(P.y), cabs(P.c)));
}

}  // namespace

ProjPointE1 isogeny_psi(const ProjPointE2& P, const Complex& U) {
    mpfr_prec_t prec = std::max(P.x.prec(), U.prec());
    Real scale = point_scale(P);
    if (scale.is_zero()) throw std::invalid_argument("isogeny_psi: zero point");
    Real tol = Real::pow2(-(prec / 2), prec);

    // Work on the unit-scaled representative so tolerances are relative.
    Real inv = Real::of(1L, prec) / scale;
    ProjPointE2 N{inv * P.x, inv * P.y, inv * P.c};
    Complex res = e2bar_residual(N, U);
    if (!(cabs(res) < tol))
        throw std::invalid_argument("isogeny_psi: input not on the curve, residual " +
                                    res.str(6));

    Complex i = Complex::unit_i(prec);
    Complex s = N.x * N.x + N.y * N.y;
    Complex x2 = N.x * N.x, y2 = N.y * N.y;

    ProjPointE1 out{i * x2 * s, -(i * y2 * s), N.x * N.y * N.c * N.c};
    Real m = max(cabs(out.xp), max(cabs(out.xm), cabs(out.z)));
    if (!(m < tol)) return out;

    // All three polynomial components vanish (the singular points): switch
    // to the alternative charts, first denominator x^2+y^2, then c^2+Uxy.
    if (!(cabs(s) < tol))
        return {x2, -y2, -(i * N.x * N.y * N.c * N.c) / s};
    Complex den = N.c * N.c + U * N.x * N.y;
    if (!(cabs(den) < tol))
        return {x2, -y2, -(i * N.x * N.y * s) / den};
    throw std::invalid_argument("isogeny_psi: every chart degenerates at this point");
}

namespace {

// Shared symbolic setup: psi components and the E2bar reduction rules over
// the ring (x, y, c, U, i) with i adjoined through i^2 -> -1.
struct PsiSymbols {
    RatPoly x, y, c, U, i, s;
    std::vector<RewriteRule> rules;
};

PsiSymbols psi_symbols(bool specialize_U = false, const Rat& Uval = Rat(0)) {
    PsiSymbols S{RatPoly::variable("x"), RatPoly::variable("y"),
                 RatPoly::variable("c"),
                 specialize_U ? RatPoly::constant(Uval) : RatPoly::variable("U"),
                 RatPoly::variable("i"), RatPoly(), {}};
    S.s = S.x * S.x + S.y * S.y;
    RatPoly c2 = S.c * S.c;
    RatPoly e2bar = S.s.pow(2) - S.U * S.x * S.y * c2 - c2.pow(2);
    S.rules.push_back(rule_from_poly(e2bar));  // leading monomial x^4
    S.rules.push_back(rule_from_poly(S.i.pow(2) + RatPoly::constant(1)));
    return S;
}

bool psi_lands_on_e1bar(const PsiSymbols& S, const RatPoly& psi3) {
    RatPoly p1 = S.i * S.x * S.x * S.s;
    RatPoly p2 = -(S.i * S.y * S.y * S.s);
    RatPoly e1 = (p1 - p2) * (p1 * p2 - psi3 * psi3) - S.i * S.U * p1 * p2 * psi3;
    return reduce_mod(e1, S.rules).is_zero();
}

}  // namespace

bool verify_psi_exact() {
    PsiSymbols S = psi_symbols();
    return psi_lands_on_e1bar(S, S.x * S.y * S.c * S.c);
}

bool verify_psi_exact_mutated() {
    PsiSymbols S = psi_symbols();
    RatPoly c2 = S.c * S.c;
    return psi_lands_on_e1bar(S, S.x * S.y * c2 + c2 * c2);
}

bool verify_psi_exact_at(const Rat& U) {
    PsiSymbols S = psi_symbols(true, U);
    return psi_lands_on_e1bar(S, S.x * S.y * S.c * S.c);
}

int fiber_count(const ProjPointE1& Q, const Complex& U, mpfr_prec_t prec) {
    Real tol = Real::pow2(-(prec / 2), prec);
    Real scale = max(cabs(Q.xp), max(cabs(Q.xm), cabs(Q.z)));
    if (scale.is_zero()) throw std::invalid_argument("fiber_count: zero point");
    Real inv = Real::of(1L, prec) / scale;
    Complex q1 = inv * Q.xp, q2 = inv * Q.xm, q3 = inv * Q.z;

    if (cabs(U) < tol) throw std::invalid_argument("fiber_count: degenerate coupling U=0");
    if (cabs(q1) < tol || cabs(q1 - q2) < tol)
        throw std::invalid_argument(
            "fiber_count: non-generic base point (image of a singular point)");

    // In the c=1 chart, psi(P) parallel to Q forces, with t = x^2 and
    // s = x^2+y^2 = t mu (mu = (q1-q2)/q1):
    //   t^2 (mu^2 q1 - i U mu q3) = q1,   xy = (t^2 mu^2 - 1)/U,
    // so four candidate points (two square roots each for t and x).
    Complex i = Complex::unit_i(prec);
    Complex mu = (q1 - q2) / q1;
    Complex T = q1 / (mu * mu * q1 - i * U * mu * q3);
    Complex p = (T * mu * mu - Complex::of(1L, prec)) / U;

    std::vector<ProjPointE2> cands;
    for (int st = 0; st < 2; ++st) {
        Complex t = csqrt(T);
        if (st) t = -t;
        for (int sx = 0; sx < 2; ++sx) {
            Complex x = csqrt(t);
            if (sx) x = -x;
            cands.push_back({x, p / x, Complex::of(1L, prec)});
        }
    }

    // Verification: each candidate must sit on E2bar and map onto Q (cross
    // product of psi(P) with Q below tolerance).
    Real verify_tol = Real::pow2(-(prec / 2) + 8, prec);
    for (const auto& P : cands) {
        if (!(cabs(e2bar_residual(P, U)) < verify_tol))
            throw std::runtime_error("fiber_count: candidate failed the curve residual " +
                                     e2bar_residual(P, U).str(6));
        ProjPointE1 img = isogeny_psi(P, U);
        Complex c12 = img.xp * q2 - img.xm * q1;
        Complex c13 = img.xp * q3 - img.z * q1;
        Complex c23 = img.xm * q3 - img.z * q2;
        Real mis = max(cabs(c12), max(cabs(c13), cabs(c23)));
        Real m = max(cabs(img.xp), max(cabs(img.xm), cabs(img.z)));
        if (!(mis < verify_tol * m))
            throw std::runtime_error("fiber_count: candidate does not map to the base point");
    }

    // Projective clustering at relative distance 2^(-prec/4). Distances in
    // the ambiguous band just above the threshold are reported, not guessed.
    Real cluster_tol = Real::pow2(-(prec / 4), prec);
    Real band_top = Real::pow2(-(prec / 8), prec);
    auto proj_dist = [&](const ProjPointE2& A, const ProjPointE2& B) {
        Complex d12 = A.x * B.y - A.y * B.x;
        Complex d13 = A.x * B.c - A.c * B.x;
        Complex d23 = A.y * B.c - A.c * B.y;
        Real na = max(cabs(A.x), max(cabs(A.y), cabs(A.c)));
        Real nb = max(cabs(B.x), max(cabs(B.y), cabs(B.c)));
        return max(cabs(d12), max(cabs(d13), cabs(d23))) / (na * nb);
    };

    std::vector<int> rep;
    for (std::size_t a = 0; a < cands.size(); ++a) {
        bool fresh = true;
        for (int r : rep) {
            Real d = proj_dist(cands[a], cands[static_cast<std::size_t>(r)]);
            if (d < cluster_tol) {
                fresh = false;
                break;
            }
            if (d < band_top)
                throw std::runtime_error(
                    "fiber_count: ill-conditioned root clustering, separation " +
                    d.str(6) + " sits between 2^-prec/4 and 2^-prec/8");
        }
        if (fresh) rep.push_back(static_cast<int>(a));
    }
    return static_cast<int>(rep.size());
}

namespace {

void reject_degenerate(const Rat& U) {
    if (U == 0 || U * U + 16 == 0)
        throw std::domain_error(
            "j_invariant: curve rationalizes/degenerates at U=0 and U^2+16=0");
}

}  // namespace

Rat j_invariant(CurveId which, const Rat& U) {
    reject_degenerate(U);
    Rat u2 = U * U;
    switch (which) {
        case CurveId::E1: {
            Rat n = u2 * u2 + 16 * u2 + 16;
            return rat_pow(n, 3) / (u2 * (u2 + 16));
        }
        case CurveId::E2: {
            Rat f = u2 + 16 * U + 16;
            Rat g = u2 - 16 * U + 16;
            return -(rat_pow(f, 3) * rat_pow(g, 3)) / (u2 * rat_pow(u2 + 16, 4));
        }
        case CurveId::E3: {
            Rat n = u2 * u2 + 256 * u2 + 4096;
            return rat_pow(n, 3) / (rat_pow(U, 8) * (u2 + 16));
        }
    }
    throw std::logic_error("j_invariant: unknown curve");
}

Rat j_from_weierstrass(const Rat& A, const Rat& B) {
    Rat disc = 4 * rat_pow(A, 3) + 27 * B * B;
    if (disc == 0)
        throw std::domain_error("j_from_weierstrass: zero discriminant (singular cubic)");
    return Rat(1728 * 4) * rat_pow(A, 3) / disc;
}

Complex j_from_weierstrass(const Complex& A, const Complex& B) {
    mpfr_prec_t prec = std::max(A.prec(), B.prec());
    Complex a3 = A * A * A;
    Complex disc = 4L * a3 + 27L * (B * B);
    if (cabs(disc) < Real::pow2(-(prec / 2), prec) * (Real::of(1L, prec) + cabs(a3)))
        throw std::domain_error("j_from_weierstrass: zero discriminant (singular cubic)");
    return (1728L * 4L) * a3 / disc;
}

EightVertexCoords eight_vertex_coords(const ProjPointE2& P, const Complex& U) {
    mpfr_prec_t prec = std::max(P.x.prec(), U.prec());
    Real scale = point_scale(P);
    if (cabs(P.c) < Real::pow2(-(prec / 2), prec) * scale)
        throw std::invalid_argument("eight_vertex_coords: c=0, chart invalid");
    Complex w = (P.x * P.x + P.y * P.y) / P.c;
    Complex w1 = (P.c + w) / 2L;
    Complex i = Complex::unit_i(prec);
    Complex w2 = (w - P.c) / (2L * i);
    return {P.x, P.y, w1, w2};
}

}  // namespace hv

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "checks.hpp"
#include "hv/curves.hpp"
#include "hv/elliptic.hpp"
#include "hv/sampling.hpp"

using namespace hv;
using namespace hv::testing;

namespace {

constexpr mpfr_prec_t P = 128;

struct FrozenContext {
    Rat u_re, u_im;
    const char *K_re, *K_im, *Kp_re, *Kp_im, *q_re, *q_im;
};

// K, K', q at 40 digits for the couplings the suites run on, pinned from an
// independent evaluation of the same branch convention.
const FrozenContext kFrozen[] = {
    {make_rat(1), make_rat(0),
     "1.54707975355112017320957900497294371793", "0",
     "2.745739118089753672034187880380109071344",
     "1.54707975355112017320957900497294371793",
     "-0.003788966335379185083505042332505083721715", "0"},
    {make_rat(2), make_rat(0),
     "1.484412473422386452907343887925897958167", "0",
     "2.018905819978423215584014439998932465068",
     "1.484412473422386452907343887925897958167",
     "-0.01394285727531826872146408553480080836246", "0"},
    {make_rat(3), make_rat(0),
     "1.400603042332602023180180836809718604614", "0",
     "1.596242222131783510148969071497949879506",
     "1.400603042332602023180180836809718604614",
     "-0.02786407859372872492137790287137287498774", "0"},
    {make_rat(1), make_rat(1),
     "1.567373241849723261492814601592503760638",
     "-0.04879065028228389200608623086603637533381",
     "2.447664238359163767482177317657815227795",
     "0.7393490597223066917712139346810359175657",
     "-0.0004846227838350878946209592082260984141119",
     "-0.00777280596549352120099841245207592209548"},
    {make_rat(0), make_rat(1),
     "1.596242222131783510148969071497949879506", "0",
     "2.801206084665204046360361673619437209228", "0",
     "0.00403357006991749802719742688398935244368", "0"},
};

Complex coupling(const FrozenContext& f, mpfr_prec_t prec) {
    return Complex::of(f.u_re, f.u_im, prec);
}

// Membership residual of a uniformized point on the affine weight curve
// (x^2+y^2)^2 - U x y - 1.
Real curve_residual(const WeightPoint& w, const Complex& U) {
    return cabs(on_curve_E2(w.xc, w.yc, U));
}

}  // namespace

TEST_CASE("complete elliptic integral spot values and dual paths") {
    SUBCASE("K(0) = pi/2") {
        Complex K0 = complete_K(Complex::zero(P), P);
        CHECK(near(K0.re, Real::pi(P) / 2L, -120));
        CHECK(K0.im.is_zero());
    }

    SUBCASE("K at modulus 1/sqrt(2)") {
        Complex k{sqrt(Real::of(make_rat(1, 2), P)), Real::zero(P)};
        Complex K = complete_K(k, P);
        Real want = Real::parse("1.854074677301371918433850347195260046218", P);
        CHECK(near(K.re, want, -120));
        CHECK(small(K.im, -120));
    }

    SUBCASE("series and AGM agree where both converge") {
        // Representative moduli on both sides of the dispatch threshold.
        Complex pts[] = {
            Complex::of(make_rat(0), make_rat(-1, 2), P),   // -i/2 (real coupling)
            Complex::of(make_rat(1, 4), make_rat(1, 4), P),
            Complex::of(make_rat(19, 20), make_rat(0), P),  // past the threshold
            Complex::of(make_rat(3, 5), make_rat(3, 5), P),
        };
        for (const Complex& k : pts) {
            Complex a = complete_K_series(k, P);
            Complex b = complete_K_agm(k, P);
            CHECK(near(a, b, -120));
        }
    }

    SUBCASE("k^2 on [1, inf) is a branch-cut error") {
        CHECK_THROWS_WITH_AS(complete_K(Complex::of(1L, P), P),
                             doctest::Contains("branch cut"), std::domain_error);
        CHECK_THROWS_WITH_AS(complete_K(Complex::of(make_rat(3, 2), P), P),
                             doctest::Contains("branch cut"), std::domain_error);
        CHECK_THROWS_WITH_AS(complete_K_agm(Complex::of(2L, P), P),
                             doctest::Contains("branch cut"), std::domain_error);
    }
}

TEST_CASE("theta context matches the frozen constants") {
    for (const FrozenContext& f : kFrozen) {
        ThetaContext ctx = ThetaContext::for_coupling(coupling(f, P), P);
        Complex K = Complex::parse(f.K_re, f.K_im, P);
        Complex Kp = Complex::parse(f.Kp_re, f.Kp_im, P);
        Complex q = Complex::parse(f.q_re, f.q_im, P);
        CAPTURE(f.q_re);
        CHECK(near(ctx.K, K, -110));
        CHECK(near(ctx.Kp, Kp, -110));
        CHECK(near(ctx.q, q, -100));
        CHECK(cabs(ctx.q) < Real::of(1L, P));
        // q^{1/4} is exponential-based, so its fourth power recovers q on
        // the nose regardless of which root classical conventions pick.
        CHECK(near(ctx.q14 * ctx.q14 * ctx.q14 * ctx.q14, q, -100));
    }

    SUBCASE("real coupling gives a negative real nome") {
        ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P);
        CHECK(ctx.q.re.sign() < 0);
        CHECK(small(ctx.q.im, -120));
    }

    SUBCASE("zero coupling has no context") {
        CHECK_THROWS_AS(ThetaContext::for_coupling(Complex::zero(P), P),
                        std::domain_error);
    }
}

TEST_CASE("theta product zeros, parity, and periodicity") {
    ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P);

    CHECK(theta_H(ctx, Complex::zero(P)).is_zero());
    CHECK(small(theta_H(ctx, 2L * ctx.K), -116));

    Rng rng(41);
    for (int i = 0; i < 8; ++i) {
        Complex lam = Complex::of(Real::of(rng.uniform(-1.5, 1.5), P)) * ctx.K +
                      Complex::of(Real::of(rng.uniform(-0.2, 0.2), P)) *
                          (Complex::unit_i(P) * ctx.Kp);
        Complex H = theta_H(ctx, lam);
        Complex T = theta_Theta(ctx, lam);
        CHECK(near(theta_H(ctx, -lam), -H, -110));
        CHECK(near(theta_Theta(ctx, -lam), T, -110));
        CHECK(near(theta_H(ctx, lam + 2L * ctx.K), -H, -110));
        CHECK(near(theta_Theta(ctx, lam + 2L * ctx.K), T, -110));
    }
}

TEST_CASE("theta quasi-periodicity under imaginary shifts") {
    // H(l + iK') = i q^{-1/4} e^{-i pi l/(2K)} Theta(l), and the same factor
    // sends Theta to H; the full period 2iK' multiplies both by
    // -q^{-1} e^{-i pi l/K}.
    for (const FrozenContext* f : {&kFrozen[1], &kFrozen[3]}) {
        ThetaContext ctx = ThetaContext::for_coupling(coupling(*f, P), P);
        Complex i = Complex::unit_i(P);
        Complex ik = i * ctx.Kp;
        Rng rng(42);
        for (int t = 0; t < 6; ++t) {
            Complex lam = Complex::of(Real::of(rng.uniform(-1.0, 1.0), P)) * ctx.K +
                          Complex::of(Real::of(rng.uniform(-0.2, 0.2), P)) * ik;
            Complex H = theta_H(ctx, lam);
            Complex T = theta_Theta(ctx, lam);
            Complex half = i * (cexp(-(i * (Real::pi(P) * lam) / (2L * ctx.K))) / ctx.q14);
            CHECK(near(theta_H(ctx, lam + ik), half * T, -104));
            CHECK(near(theta_Theta(ctx, lam + ik), half * H, -104));
            Complex full = -(cexp(-(i * (Real::pi(P) * lam) / ctx.K)) / ctx.q);
            CHECK(near(theta_H(ctx, lam + 2L * ik), full * H, -100));
            CHECK(near(theta_Theta(ctx, lam + 2L * ik), full * T, -100));
        }
    }
}

TEST_CASE("sn normalization, oracle agreement, and degenerations") {
    ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P);

    SUBCASE("pinned values at 0 and K") {
        CHECK(sn(ctx, Complex::zero(P)).is_zero());
        Complex sK = sn(ctx, ctx.K);
        CHECK(sK.re == Real::of(1L, P));
        CHECK(sK.im.is_zero());
    }

    SUBCASE("the quotient normalization equals the classical one") {
        // Classically sn = H/(sqrt(k) Theta); squaring removes the root:
        // H(K)^2 = k Theta(K)^2 certifies both normalizations coincide.
        Complex hk = theta_H(ctx, ctx.K);
        Complex tk = theta_Theta(ctx, ctx.K);
        CHECK(near(hk * hk, ctx.k * (tk * tk), -110));
    }

    SUBCASE("zero modulus degenerates to sine") {
        Complex lam = Complex::of(make_rat(3, 7), make_rat(1, 9), P);
        CHECK(near(sn_jacobi(lam, Complex::zero(P), P), csin(lam), -120));
        CHECK(near(sn_landen(lam, Complex::zero(P), P), csin(lam), -120));
    }

    SUBCASE("agrees with the Landen-recursion oracle") {
        for (const FrozenContext* f : {&kFrozen[1], &kFrozen[3]}) {
            ThetaContext c = ThetaContext::for_coupling(coupling(*f, P), P);
            Rng rng(43);
            for (int t = 0; t < 20; ++t) {
                Complex lam = Complex::of(Real::of(rng.uniform(-1.8, 1.8), P)) * c.K +
                              Complex::of(Real::of(rng.uniform(-0.24, 0.24), P)) *
                                  (Complex::unit_i(P) * c.Kp);
                CHECK(near(sn(c, lam), sn_landen(lam, c.k, P), -104));
            }
        }
    }

    SUBCASE("a Theta zero is reported as a pole") {
        Complex pole = Complex::unit_i(P) * ctx.Kp;
        CHECK_THROWS_WITH_AS(sn(ctx, pole), doctest::Contains("pole"),
                             std::domain_error);
    }
}

TEST_CASE("uniformized weights land on the curve") {
    for (const FrozenContext& f : kFrozen) {
        Complex U = coupling(f, P);
        ThetaContext ctx = ThetaContext::for_coupling(U, P);
        SampleStream s(7);
        for (int t = 0; t < 25; ++t) {
            Complex lam = sample_lambda(s, ctx);
            WeightPoint w = uniformize(ctx, lam, WeightForm::Sn);
            CAPTURE(t);
            CHECK(small(curve_residual(w, U), -(P / 2)));
            CHECK(near(w.thc, w.xc * w.xc + w.yc * w.yc, -110));
        }
    }
}

TEST_CASE("sn form and theta form give the same weights") {
    // All frozen couplings. U = 1 and U = 3 are the regression members: a
    // principal fractional power in the theta prefactor scales their weights
    // by -i, so only the theta-constant fourth root passes here.
    for (const FrozenContext& f : kFrozen) {
        Complex U = coupling(f, P);
        ThetaContext ctx = ThetaContext::for_coupling(U, P);
        SampleStream s(11);
        for (int t = 0; t < 20; ++t) {
            Complex lam = sample_lambda(s, ctx);
            WeightPoint a = uniformize(ctx, lam, WeightForm::Sn);
            WeightPoint b = uniformize(ctx, lam, WeightForm::Theta);
            CAPTURE(t);
            CHECK(near(a.xc, b.xc, -100));
            CHECK(near(a.yc, b.yc, -100));
            CHECK(near(a.thc, b.thc, -100));
            // Both printed quotients for theta/c^2 match the assembled one.
            auto [f1, f2] = theta_ratio_forms(ctx, lam);
            CHECK(near(f1, f2, -100));
            CHECK(near(f1, b.thc, -100));
        }
    }
}

TEST_CASE("theta form is tied to the branch sheet of the context") {
    // The nome's own modulus (H(K)/Theta(K))^2 agrees with the context's k on
    // the sheet the K' branch rule selects. On the mirror sheet it is -k, the
    // theta quotients then uniformize the mirror coupling -U, and the theta
    // form refuses to return that point. The sn form only sees k^2 and keeps
    // working on both sheets.
    SUBCASE("nome modulus matches k on the selected sheet") {
        for (const FrozenContext& f : kFrozen) {
            Complex U = coupling(f, P);
            ThetaContext ctx = ThetaContext::for_coupling(U, P);
            Complex hk = theta_H(ctx, ctx.K) / (2L * ctx.q14);
            Complex ratio = hk / theta_Theta(ctx, ctx.K);
            Complex kq = 4L * ((ctx.q14 * ctx.q14) * (ratio * ratio));
            CHECK(near(kq, ctx.k, -110));
        }
    }

    SUBCASE("mirror sheet: nome modulus is -k, theta form throws, sn holds") {
        for (long num : {-1L, -3L}) {
            Complex U = Complex::of(num, P);
            ThetaContext ctx = ThetaContext::for_coupling(U, P);
            Complex hk = theta_H(ctx, ctx.K) / (2L * ctx.q14);
            Complex ratio = hk / theta_Theta(ctx, ctx.K);
            Complex kq = 4L * ((ctx.q14 * ctx.q14) * (ratio * ratio));
            CHECK(near(kq, -ctx.k, -110));
            SampleStream s(17);
            Complex lam = sample_lambda(s, ctx);
            CHECK_THROWS_WITH_AS(uniformize(ctx, lam, WeightForm::Theta),
                                 doctest::Contains("mirror"), std::domain_error);
            WeightPoint w = uniformize(ctx, lam, WeightForm::Sn);
            CHECK(small(curve_residual(w, U), -(P / 2)));
        }
    }

    SUBCASE("the mirror context carries the periods of the mirror coupling") {
        // k enters the periods only through k^2, so U and -U share K, K', q
        // and the theta quotients cannot tell the two couplings apart.
        ThetaContext cm = ThetaContext::for_coupling(Complex::of(-1L, P), P);
        ThetaContext cp = ThetaContext::for_coupling(Complex::of(1L, P), P);
        CHECK(near(cm.K, cp.K, -120));
        CHECK(near(cm.Kp, cp.Kp, -120));
        CHECK(near(cm.q, cp.q, -120));
        CHECK(near(cm.k, -cp.k, -120));
    }
}

TEST_CASE("weight symmetry under lambda -> K - lambda") {
    ThetaContext ctx = ThetaContext::for_coupling(Complex::of(3L, P), P);
    SampleStream s(13);
    for (int t = 0; t < 10; ++t) {
        Complex lam = sample_lambda(s, ctx);
        WeightPoint a = uniformize(ctx, lam, WeightForm::Sn);
        WeightPoint b = uniformize(ctx, ctx.K - lam, WeightForm::Sn);
        CHECK(near(a.xc, b.yc, -104));
        CHECK(near(a.yc, b.xc, -104));
    }
}

TEST_CASE("pinned point and trigonometric limit") {
    SUBCASE("lambda = 0 maps to (1, 0, 1) exactly") {
        ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P);
        WeightPoint w = uniformize(ctx, Complex::zero(P), WeightForm::Sn);
        CHECK(w.xc.re == Real::of(1L, P));
        CHECK(w.xc.im.is_zero());
        CHECK(w.yc.is_zero());
        CHECK(w.thc.re == Real::of(1L, P));
    }

    SUBCASE("exactly zero coupling short-circuits to trig") {
        Complex lam = Complex::of(make_rat(2, 5), make_rat(1, 10), P);
        WeightPoint w = uniformize(lam, Complex::zero(P), WeightForm::Sn, P);
        CHECK(near(w.xc, ccos(lam), -120));
        CHECK(near(w.yc, csin(lam), -120));
    }

    SUBCASE("small coupling approaches trig at rate O(U)") {
        Complex lam = Complex::of(make_rat(2, 5), make_rat(0), P);
        Real dev[2];
        int idx = 0;
        for (long den : {10000L, 1000000L}) {
            Complex U = Complex::of(make_rat(1, den), P);
            WeightPoint w = uniformize(lam, U, WeightForm::Sn, P);
            dev[idx++] = max(cabs(w.xc - ccos(lam)), cabs(w.yc - csin(lam)));
        }
        CHECK(dev[0] < Real::of(make_rat(1, 10000), P));
        CHECK(dev[1] < Real::of(make_rat(1, 1000000), P));
        CHECK(50L * dev[1] < dev[0]);
    }
}

TEST_CASE("doubling the precision squares the residual headroom") {
    Complex lam128 = Complex::of(make_rat(3, 10), make_rat(1, 10), 128);
    Complex lam256 = Complex::of(make_rat(3, 10), make_rat(1, 10), 256);
    ThetaContext c128 = ThetaContext::for_coupling(Complex::of(2L, 128), 128);
    ThetaContext c256 = ThetaContext::for_coupling(Complex::of(2L, 256), 256);
    Complex U128 = Complex::of(2L, 128), U256 = Complex::of(2L, 256);
    Complex lamK128 = lam128 * c128.K, lamK256 = lam256 * c256.K;
    Real r128 = curve_residual(uniformize(c128, lamK128, WeightForm::Sn), U128);
    Real r256 = curve_residual(uniformize(c256, lamK256, WeightForm::Sn), U256);
    CHECK(!r128.is_zero());
    CHECK(r256 < r128 * Real::pow2(-32, 256));
}

TEST_CASE("guard rails") {
    SUBCASE("under-truncated products are refused") {
        ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P, 2);
        CHECK_THROWS_WITH_AS(theta_H(ctx, ctx.K), doctest::Contains("trunc too small"),
                             std::invalid_argument);
    }

    SUBCASE("weight poles are reported, not returned") {
        ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P);
        Complex pole = -(Complex::unit_i(P) * ctx.Kp) / 2L;
        CHECK_THROWS_WITH_AS(uniformize(ctx, pole, WeightForm::Theta),
                             doctest::Contains("pole"), std::domain_error);
    }
}

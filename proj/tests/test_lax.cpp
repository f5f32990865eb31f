#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "checks.hpp"
#include "hv/lax.hpp"
#include "hv/sampling.hpp"

using namespace hv;
using namespace hv::testing;

namespace {

constexpr mpfr_prec_t P = 128;

CMat perm16(mpfr_prec_t prec) {
    CMat M(16, prec);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M.at(4 * i + j, 4 * j + i) = Complex::of(1L, prec);
    return M;
}

int structural_nonzeros(const CMat& A, long floor_exp) {
    int count = 0;
    for (const Complex& v : A.e)
        if (!small(v, floor_exp)) ++count;
    return count;
}

}  // namespace

TEST_CASE("explicit Lax matrix structure") {
    SUBCASE("(1, 0) is exactly the permutation operator") {
        CMat L = lax_explicit(Complex::of(1L, P), Complex::zero(P));
        CMat D = L - perm16(P);
        CHECK(max_abs(D).is_zero());
    }

    SUBCASE("printed entries at a generic point") {
        Complex x = Complex::of(make_rat(3, 5), make_rat(1, 7), P);
        Complex y = Complex::of(make_rat(2, 9), make_rat(-1, 3), P);
        Complex th = x * x + y * y;
        CMat L = lax_explicit(x, y);
        CHECK(near(L.at(3, 12), th, -120));             // (4,13) carries theta
        CHECK(L.at(6, 9) == Complex::of(1L, P));        // (7,10) carries c^2 = 1
        CHECK(near(L.at(12, 3), th, -120));             // transposed partner
        CHECK(structural_nonzeros(L, -100) == 36);
    }

    SUBCASE("vanishing theta is refused") {
        CHECK_THROWS_AS(lax_explicit(Complex::of(1L, P), Complex::unit_i(P)),
                        std::domain_error);
    }
}

TEST_CASE("constructive Lax assembly matches the explicit form") {
    SUBCASE("permutation point, exact") {
        ShastryParams p{Complex::of(1L, P), Complex::zero(P), Complex::of(1L, P),
                        Complex::zero(P)};
        CMat L = lax_shastry(p);
        CHECK(max_abs(L - perm16(P)).is_zero());
    }

    SUBCASE("free-fermion violation is refused") {
        ShastryParams bad{Complex::of(1L, P), Complex::of(1L, P), Complex::of(1L, P),
                          Complex::zero(P)};
        CHECK_THROWS_AS(lax_shastry(bad), std::invalid_argument);
    }

    SUBCASE("entrywise equality with scalar exactly 1 at sampled points") {
        for (Complex U : {Complex::of(2L, P), Complex::of(make_rat(1), make_rat(1), P)}) {
            ThetaContext ctx = ThetaContext::for_coupling(U, P);
            SampleStream s(17);
            for (int t = 0; t < 6; ++t) {
                WeightPoint w = uniformize(ctx, sample_lambda(s, ctx), WeightForm::Sn);
                ShastryParams p = shastry_params(w.xc, w.yc);
                CHECK(small(p.a * p.a + p.b * p.b - Complex::of(1L, P), -110));
                CMat L1 = lax_explicit(w.xc, w.yc);
                CMat L2 = lax_shastry(p);
                Complex ratio = L2.at(0, 0) / L1.at(0, 0);
                CHECK(near(ratio, Complex::of(1L, P), -100));
                CHECK(small(max_abs(L2 - scale(ratio, L1)), -100));
            }
        }
    }

    SUBCASE("coupling recovered from the parameter constraint") {
        Complex U = Complex::of(3L, P);
        ThetaContext ctx = ThetaContext::for_coupling(U, P);
        SampleStream s(19);
        for (int t = 0; t < 5; ++t) {
            WeightPoint w = uniformize(ctx, sample_lambda(s, ctx), WeightForm::Sn);
            CHECK(near(shastry_coupling(shastry_params(w.xc, w.yc)), U, -100));
        }
    }
}

TEST_CASE("crossing relation") {
    Complex U = Complex::of(3L, P);
    ThetaContext ctx = ThetaContext::for_coupling(U, P);

    SUBCASE("self-crossing point") {
        CHECK(small(crossing_residual(ctx, ctx.K / 2L), -100));
    }

    SUBCASE("sampled points") {
        SampleStream s(23);
        for (int t = 0; t < 20; ++t)
            CHECK(small(crossing_residual(ctx, sample_lambda(s, ctx)), -100));
    }

    SUBCASE("one flipped sign in the conjugator breaks it") {
        CMat M = charge_conjugation(P);
        M.at(0, 3) = -M.at(0, 3);
        SampleStream s(29);
        Real r = crossing_residual_with(ctx, sample_lambda(s, ctx), M);
        CHECK(r > Real::pow2(-8, P));
    }
}

TEST_CASE("unitarity relation") {
    SUBCASE("lambda = 0 collapses to P^2 = I, exactly") {
        ThetaContext ctx = ThetaContext::for_coupling(Complex::of(2L, P), P);
        UnitarityCheck u = unitarity_check(ctx, Complex::zero(P));
        CHECK(u.residual.is_zero());
    }

    SUBCASE("sampled points, and the space-swapped control stays O(1)") {
        for (Complex U : {Complex::of(1L, P), Complex::of(2L, P),
                          Complex::of(make_rat(1), make_rat(1), P)}) {
            ThetaContext ctx = ThetaContext::for_coupling(U, P);
            SampleStream s(31);
            int generic = 0;
            for (int t = 0; t < 7; ++t) {
                Complex lam = sample_lambda(s, ctx);
                UnitarityCheck u = unitarity_check(ctx, lam);
                CHECK(small(u.residual, -100));
                // Both orderings coincide at lambda = 0 (the operator is the
                // permutation there), so the O(1) claim is for lambda away
                // from that point.
                if (cabs(lam) > cabs(ctx.K) / 8L) {
                    ++generic;
                    CHECK(u.permuted_control > Real::pow2(-8, P));
                }
            }
            CHECK(generic >= 5);
        }
    }
}

TEST_CASE("transfer matrices commute and close periodically") {
    Complex U = Complex::of(2L, P);
    ThetaContext ctx = ThetaContext::for_coupling(U, P);
    Complex l1 = Complex::of(make_rat(1, 4), P) * ctx.K +
                 Complex::of(make_rat(1, 8), P) * (Complex::unit_i(P) * ctx.Kp);
    Complex l2 = Complex::of(make_rat(-3, 8), P) * ctx.K +
                 Complex::of(make_rat(1, 16), P) * (Complex::unit_i(P) * ctx.Kp);

    SUBCASE("single site: trace of the permutation's partial trace") {
        CMat T0 = transfer_matrix(ctx, Complex::zero(P), 1);
        CHECK(T0.n == 4);
        Complex tr = trace(T0);
        CHECK(tr.re == Real::of(4L, P));
        CHECK(tr.im.is_zero());
    }

    SUBCASE("commuting family at 2 and 3 sites") {
        for (int sites : {2, 3}) {
            CMat T1 = transfer_matrix(ctx, l1, sites);
            CMat T2 = transfer_matrix(ctx, l2, sites);
            Real rel = commutator_norm(T1, T2) / (max_abs(T1) * max_abs(T2));
            CAPTURE(sites);
            CHECK(small(rel, -100));
        }
    }

    SUBCASE("partition trace is crossing symmetric") {
        for (int sites : {1, 2, 3}) {
            Complex za = partition_trace(ctx, l1, sites);
            Complex zb = partition_trace(ctx, ctx.K - l1, sites);
            CAPTURE(sites);
            CHECK(near(za, zb, -100));
        }
        // Same symmetry for the squared transfer matrix.
        CHECK(near(partition_trace(ctx, l1, 2, 2),
                   partition_trace(ctx, ctx.K - l1, 2, 2), -100));
    }

    SUBCASE("oversized chains are refused") {
        CHECK_THROWS_AS(transfer_matrix(ctx, l1, 4), std::invalid_argument);
    }
}

TEST_CASE("spin Hamiltonian") {
    SUBCASE("Hermitian and traceless at real coupling") {
        CMat H = spin_hamiltonian(2, Complex::of(2L, P), P);
        CHECK(max_abs(H - adjoint(H)).is_zero());
        CHECK(trace(H).is_zero());
    }

    SUBCASE("commutes with the 3-site transfer matrix") {
        Complex U = Complex::of(2L, P);
        ThetaContext ctx = ThetaContext::for_coupling(U, P);
        Complex lam = Complex::of(make_rat(1, 4), P) * ctx.K +
                      Complex::of(make_rat(1, 8), P) * (Complex::unit_i(P) * ctx.Kp);
        CMat T = transfer_matrix(ctx, lam, 3);
        CMat H = spin_hamiltonian(3, U, P);
        Real rel = commutator_norm(T, H) / (max_abs(T) * max_abs(H));
        MESSAGE("[T, H] relative norm at 3 sites: ", rel.str(6));
        CHECK(small(rel, -100));
    }
}

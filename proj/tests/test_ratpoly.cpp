#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "hv/ratpoly.hpp"

using namespace hv;

namespace {

RatPoly V(const char* name) { return RatPoly::variable(name); }
RatPoly C(long v) { return RatPoly::constant(v); }

// The affine quartic relating the weight coordinates: (x²+y²)² − Uxy − 1.
RatPoly curve_E2(const RatPoly& x, const RatPoly& y, const RatPoly& U) {
    return (x * x + y * y).pow(2) - U * x * y - C(1);
}

// Small deterministic generator for the random-polynomial properties.
struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    long small(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

RatPoly random_poly(Lcg& rng) {
    RatPoly x = V("x"), y = V("y"), U = V("U");
    RatPoly p = C(0);
    int nterms = static_cast<int>(rng.small(1, 5));
    for (int t = 0; t < nterms; ++t) {
        RatPoly m = C(rng.small(-9, 9));
        for (long e = rng.small(0, 3); e > 0; --e) m = m * x;
        for (long e = rng.small(0, 3); e > 0; --e) m = m * y;
        for (long e = rng.small(0, 1); e > 0; --e) m = m * U;
        p = p + m;
    }
    return p;
}

}  // namespace

TEST_CASE("arithmetic basics") {
    RatPoly x = V("x"), y = V("y");
    CHECK((x + y) + (x - y) == C(2) * x);
    CHECK((x * x + y * y) * (x * x + y * y) ==
          x.pow(4) + C(2) * x.pow(2) * y.pow(2) + y.pow(4));
    RatPoly e2 = curve_E2(x, y, V("U"));
    CHECK((e2 - e2).is_zero());
    CHECK(e2.degree() == 4);
    CHECK((-e2 + e2).is_zero());
}

TEST_CASE("universe alignment by name") {
    RatPoly x = V("x"), y = V("y"), z = V("z");
    RatPoly p = (x + y) + (y + z);
    CHECK(p.vars() == std::vector<std::string>{"x", "y", "z"});
    std::map<std::string, Rat> at{{"x", make_rat(1)}, {"y", make_rat(2)}, {"z", make_rat(5)}};
    CHECK(p.eval(at) == make_rat(10));
    // Multiplication across universes agrees with evaluation.
    RatPoly q = (x + z) * (y - z);
    CHECK(q.eval(at) == make_rat(6 * -3));
}

TEST_CASE("lex leading monomial follows declared order") {
    RatPoly x = V("x"), y = V("y");
    auto [lm, lc] = (x + C(7) * y).lead();
    CHECK(lm == RatPoly::Monomial{1, 0});
    CHECK(lc == make_rat(1));
    auto [lm2, lc2] = (C(3) * x * y.pow(2) + x * y).lead();
    CHECK(lm2 == RatPoly::Monomial{1, 2});
    CHECK(lc2 == make_rat(3));
}

TEST_CASE("reduction by the curve rule") {
    RatPoly x = V("x"), y = V("y"), U = V("U");
    auto rule = rule_from_poly(curve_E2(x, y, U));
    CHECK(rule.lm == RatPoly::Monomial{4, 0, 0});

    SUBCASE("(x^2+y^2)^2 reduces to Uxy + 1") {
        RatPoly r = reduce_mod((x * x + y * y).pow(2), {rule});
        CHECK(r == U * x * y + C(1));
    }
    SUBCASE("the generator reduces to zero") {
        CHECK(reduce_mod(curve_E2(x, y, U), {rule}).is_zero());
    }
    SUBCASE("x^3 y is already in normal form") {
        RatPoly p = x.pow(3) * y;
        CHECK(reduce_mod(p, {rule}) == p);
    }
}

TEST_CASE("non-coprime leading monomials are rejected") {
    RatPoly x = V("x"), y = V("y");
    auto r1 = rule_from_poly(x.pow(4) - y);
    auto r2 = rule_from_poly(x.pow(2) * y.pow(2) - C(1));
    CHECK_THROWS_WITH_AS(reduce_mod(x, {r1, r2}),
                         doctest::Contains("non-coprime"), std::invalid_argument);
    // Disjoint supports are fine.
    auto r3 = rule_from_poly(y.pow(4) - C(2));
    CHECK(reduce_mod(x.pow(4) * y.pow(4), {r1, r3}) == C(2) * y);
}

TEST_CASE("evaluation") {
    RatPoly x = V("x"), y = V("y"), U = V("U");
    RatPoly e2 = curve_E2(x, y, U);
    std::map<std::string, Rat> on1{{"x", make_rat(1)}, {"y", make_rat(0)}, {"U", make_rat(17)}};
    CHECK(e2.eval(on1) == 0);
    std::map<std::string, Rat> on2{
        {"x", make_rat(1, 2)}, {"y", make_rat(1, 2)}, {"U", make_rat(-3)}};
    CHECK(e2.eval(on2) == 0);
    std::map<std::string, Rat> off{{"x", make_rat(1)}, {"y", make_rat(1)}, {"U", make_rat(0)}};
    CHECK(e2.eval(off) == make_rat(3));

    std::map<std::string, Rat> missing{{"x", make_rat(1)}, {"y", make_rat(0)}};
    CHECK_THROWS_WITH_AS(e2.eval(missing), doctest::Contains("'U'"), std::invalid_argument);
    // A variable in the universe that never occurs with nonzero exponent
    // needs no assignment.
    RatPoly p = (x + y) - y;
    CHECK(p.eval({{"x", make_rat(4)}}) == make_rat(4));
}

TEST_CASE("ideal membership: products of a generator reduce to zero") {
    RatPoly x = V("x"), y = V("y"), U = V("U");
    RatPoly e2 = curve_E2(x, y, U);
    auto rule = rule_from_poly(e2);
    Lcg rng(20260818);
    for (int i = 0; i < 100; ++i) {
        RatPoly p = random_poly(rng);
        CHECK(reduce_mod(p * e2, {rule}).is_zero());
    }
}

TEST_CASE("reduction is idempotent and respects common zeros") {
    RatPoly x = V("x"), y = V("y"), U = V("U");
    auto rule = rule_from_poly(curve_E2(x, y, U));
    std::map<std::string, Rat> zero_pt{
        {"x", make_rat(1, 2)}, {"y", make_rat(1, 2)}, {"U", make_rat(-3)}};
    Lcg rng(77);
    for (int i = 0; i < 50; ++i) {
        RatPoly p = random_poly(rng);
        RatPoly r = reduce_mod(p, {rule});
        CHECK(reduce_mod(r, {rule}) == r);
        CHECK(r.eval(zero_pt) == p.eval(zero_pt));
    }
}

TEST_CASE("nf_mul matches multiply-then-reduce") {
    RatPoly x = V("x"), y = V("y"), U = V("U");
    auto rule = rule_from_poly(curve_E2(x, y, U));
    RatPoly a = (x * x + y * y).pow(2) + x * y;
    RatPoly b = x.pow(3) + U * y;
    CHECK(nf_mul(a, b, {rule}) == reduce_mod(a * b, {rule}));
    CHECK(nf_pow(x * x + y * y, 4, {rule}) == reduce_mod((x * x + y * y).pow(4), {rule}));
}

TEST_CASE("rational coefficient edge cases") {
    CHECK(rat_from_string("-22/7") == make_rat(-22, 7));
    CHECK(rat_from_string("280949374722195372109640625000000000000") ==
          rat_from_string("280949374722195372109640625000000000000"));
    CHECK_THROWS_AS(rat_from_string("z7"), std::invalid_argument);
    CHECK(rat_pow(make_rat(-2, 3), 3) == make_rat(-8, 27));
    CHECK(rat_pow(make_rat(5), 0) == make_rat(1));
}

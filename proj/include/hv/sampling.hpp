#ifndef HV_SAMPLING_HPP
#define HV_SAMPLING_HPP

#include <cstdint>

#include "hv/elliptic.hpp"

namespace hv {

// Deterministic splitmix64 stream. Every sampled coordinate is a dyadic
// rational with 30 fractional bits, so a (seed, index) pair reproduces the
// exact same multiprecision value at any precision.
struct SampleStream {
    std::uint64_t state;

    explicit SampleStream(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Dyadic draw from (lo, hi): lo + (hi-lo) * t with t = (r+1)/2^30 drawn
    // from the open unit interval.
    Rat next_rat(const Rat& lo, const Rat& hi) {
        long r = static_cast<long>(next_u64() >> 34);  // 30 bits
        Rat t = make_rat(r + 1, 1L << 30);
        return lo + (hi - lo) * t;
    }
};

// One spectral parameter lambda = alpha K + beta i K' with alpha in (-2, 2)
// and beta in (-1/4, 1/4). The box keeps lambda clear of the Theta zeros at
// iK' + lattice and of the weight poles at +-iK'/2 + lattice, so uniformize
// never trips its pole guard on sampled input.
inline Complex sample_lambda(SampleStream& s, const ThetaContext& ctx) {
    Rat alpha = s.next_rat(make_rat(-2, 1), make_rat(2, 1));
    Rat beta = s.next_rat(make_rat(-1, 4), make_rat(1, 4));
    return Complex::of(alpha, ctx.prec) * ctx.K +
           Complex::of(beta, ctx.prec) * (Complex::unit_i(ctx.prec) * ctx.Kp);
}

}  // namespace hv

#endif

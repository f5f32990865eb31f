#ifndef HV_RAT_HPP
#define HV_RAT_HPP

#include <gmpxx.h>

#include <string>

namespace hv {

// Exact rational scalar. mpq_class keeps gcd(|num|, den) = 1 and den > 0
// after canonicalization, which the helpers below always perform.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "n" or "n/d". Throws std::invalid_argument on garbage.
Rat rat_from_string(const std::string& s);

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace hv

#endif

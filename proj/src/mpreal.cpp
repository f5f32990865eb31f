#include "hv/mpreal.hpp"

#include <cstdio>
#include <vector>

namespace hv {

Real Real::parse(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("Real::parse: cannot parse '" + s + "'");
    return r;
}

std::string Real::str(int digits) const {
    // %R*g prints shortest-faithful within the digit budget.
    char buf[256];
    int n = mpfr_snprintf(buf, sizeof buf, "%.*R*g", digits, MPFR_RNDN, v_);
    if (n < 0 || n >= static_cast<int>(sizeof buf)) {
        std::vector<char> big(4096);
        mpfr_snprintf(big.data(), big.size(), "%.*R*g", digits, MPFR_RNDN, v_);
        return std::string(big.data());
    }
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace hv

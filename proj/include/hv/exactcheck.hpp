#ifndef HV_EXACTCHECK_HPP
#define HV_EXACTCHECK_HPP

#include <string>

namespace hv {

// One exact identity, verified by reduction to normal form modulo a set
// of rewrite rules with pairwise coprime leading monomials (so the normal
// form decides ideal membership).
struct ExactCheck {
    std::string name;
    bool zero_remainder = false;
    long remainder_terms = 0;   // 0 when the identity holds
    std::string multiplier;     // denominator-clearing trail, "" when none
    bool expected_zero = true;  // mutation controls expect a nonzero rest
};

}  // namespace hv

#endif

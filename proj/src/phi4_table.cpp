#include "hv/curves.hpp"

namespace hv {

// Coefficients of the level-4 modular polynomial, symmetric form: an entry
// (i, j) with i > j carries the monomial pair x^i y^j + x^j y^i. Guarded by
// two checksum tests (values at (1,1) and (0,0)) and by the vanishing
// identities on J-invariant pairs; a single digit slip breaks all of them.
const std::vector<Phi4Coefficient>& phi4_coefficients() {
    static const std::vector<Phi4Coefficient> table = {
        {6, 0, "1"},
        {5, 4, "-1"},
        {5, 3, "2976"},
        {5, 2, "-2533680"},
        {5, 1, "561444609"},
        {5, 0, "-8507430000"},
        {4, 4, "7440"},
        {4, 3, "80967606480"},
        {4, 2, "1425220456750080"},
        {4, 1, "1194227244109980000"},
        {4, 0, "24125474716854750000"},
        {3, 3, "2729942049541120"},
        {3, 2, "-914362550706103200000"},
        {3, 1, "12519806366846423598750000"},
        {3, 0, "-22805180351548032195000000000"},
        {2, 2, "26402314839969410496000000"},
        {2, 1, "188656639464998455284287109375"},
        {2, 0, "158010236947953767724187500000000"},
        {1, 1, "-94266583063223403127324218750000"},
        {1, 0, "-364936327796757658404375000000000000"},
        {0, 0, "280949374722195372109640625000000000000"},
    };
    return table;
}

Rat phi4(const Rat& j1, const Rat& j2) {
    Rat total = 0;
    for (const auto& t : phi4_coefficients()) {
        Rat c = rat_from_string(t.value);
        Rat a = rat_pow(j1, static_cast<unsigned long>(t.i)) *
                rat_pow(j2, static_cast<unsigned long>(t.j));
        if (t.i == t.j) {
            total += c * a;
        } else {
            total += c * (a + rat_pow(j1, static_cast<unsigned long>(t.j)) *
                                  rat_pow(j2, static_cast<unsigned long>(t.i)));
        }
    }
    return total;
}

}  // namespace hv

#ifndef HV_RATPOLY_HPP
#define HV_RATPOLY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hv/rat.hpp"

namespace hv {

// Sparse multivariate polynomial over exact rationals with named variables.
// Monomials are exponent vectors over the declared variable order; the
// monomial order everywhere is lexicographic over that order. Binary
// operations align differing variable universes by name (stable merge:
// left operand's order first, then unseen names from the right operand).
class RatPoly {
public:
    using Monomial = std::vector<int>;
    using TermMap = std::map<Monomial, Rat>;

    RatPoly() = default;  // zero polynomial over the empty universe

    static RatPoly constant(const Rat& c);
    static RatPoly constant(long c) { return constant(make_rat(c)); }
    static RatPoly variable(const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int degree() const;  // total degree, -1 for the zero polynomial

    RatPoly operator-() const;
    RatPoly pow(int e) const;  // e >= 0

    friend RatPoly operator+(const RatPoly& p, const RatPoly& q);
    friend RatPoly operator-(const RatPoly& p, const RatPoly& q);
    friend RatPoly operator*(const RatPoly& p, const RatPoly& q);
    friend RatPoly operator*(const Rat& c, const RatPoly& p);
    friend RatPoly operator*(const RatPoly& p, const Rat& c) { return c * p; }
    friend RatPoly operator+(const RatPoly& p, const Rat& c);
    friend RatPoly operator+(const Rat& c, const RatPoly& p) { return p + c; }
    friend RatPoly operator-(const RatPoly& p, const Rat& c) { return p + Rat(-c); }
    friend RatPoly operator-(const Rat& c, const RatPoly& p) { return -p + c; }
    friend bool operator==(const RatPoly& p, const RatPoly& q);
    friend bool operator!=(const RatPoly& p, const RatPoly& q) { return !(p == q); }

    // Leading (lex-largest) monomial and its coefficient. Zero polynomial
    // has no leading term.
    std::pair<Monomial, Rat> lead() const;

    // Exact evaluation. Every variable appearing with a nonzero exponent
    // must be assigned; a missing one is reported by name.
    Rat eval(const std::map<std::string, Rat>& assignment) const;

    // Re-expresses this polynomial over a larger universe. Every current
    // variable must appear in `universe`.
    RatPoly aligned_to(const std::vector<std::string>& universe) const;

    static std::vector<std::string> merge_universe(
        const std::vector<std::string>& a, const std::vector<std::string>& b);

    std::string str() const;  // human-readable, lex-largest term first

    // Construction from raw parts (used by the reducer; keeps invariants:
    // zero coefficients are dropped).
    static RatPoly from_terms(std::vector<std::string> vars, TermMap terms);

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

// A rewrite rule lm -> replacement encoding a curve relation p = 0 solved
// for its lex-leading monomial. Valid rules have a monic leading monomial
// and a replacement none of whose monomials is divisible by lm (otherwise
// rewriting need not terminate).
struct RewriteRule {
    std::vector<std::string> vars;
    RatPoly::Monomial lm;
    RatPoly replacement;
};

// Builds the rule from a defining polynomial: its lex-leading monomial is
// solved for. Throws if the replacement would contain a monomial divisible
// by the leading one.
RewriteRule rule_from_poly(const RatPoly& p);

// Normal form of p under the rules. The rules must have pairwise coprime
// leading monomials (checked; violation is reported with both rules), which
// makes plain division a confluent, terminating normal form.
RatPoly reduce_mod(const RatPoly& p, const std::vector<RewriteRule>& rules);

// Product followed by reduction. Keeping intermediates in normal form is
// what makes the high-degree identity checks tractable.
RatPoly nf_mul(const RatPoly& a, const RatPoly& b,
               const std::vector<RewriteRule>& rules);
RatPoly nf_pow(const RatPoly& a, int e, const std::vector<RewriteRule>& rules);

}  // namespace hv

#endif

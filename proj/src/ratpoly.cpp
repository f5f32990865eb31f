#include "hv/ratpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hv {

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

RatPoly RatPoly::constant(const Rat& c) {
    RatPoly p;
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
}

RatPoly RatPoly::variable(const std::string& name) {
    RatPoly p;
    p.vars_ = {name};
    p.terms_.emplace(Monomial{1}, make_rat(1));
    return p;
}

RatPoly RatPoly::from_terms(std::vector<std::string> vars, TermMap terms) {
    RatPoly p;
    p.vars_ = std::move(vars);
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second == 0)
            it = terms.erase(it);
        else
            ++it;
    }
    p.terms_ = std::move(terms);
    return p;
}

int RatPoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

std::vector<std::string> RatPoly::merge_universe(const std::vector<std::string>& a,
                                                 const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& name : b)
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    return out;
}

RatPoly RatPoly::aligned_to(const std::vector<std::string>& universe) const {
    if (vars_ == universe) return *this;
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(universe.begin(), universe.end(), vars_[i]);
        if (it == universe.end())
            throw std::invalid_argument("aligned_to: universe lacks variable '" + vars_[i] + "'");
        where[i] = static_cast<std::size_t>(it - universe.begin());
    }
    TermMap out;
    for (const auto& [m, c] : terms_) {
        Monomial nm(universe.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) nm[where[i]] = m[i];
        out.emplace(std::move(nm), c);
    }
    return from_terms(universe, std::move(out));
}

namespace {

// Brings p and q over a common universe with the cheapest alignment.
std::pair<RatPoly, RatPoly> aligned(const RatPoly& p, const RatPoly& q) {
    if (p.vars() == q.vars()) return {p, q};
    auto u = RatPoly::merge_universe(p.vars(), q.vars());
    return {p.aligned_to(u), q.aligned_to(u)};
}

}  // namespace

RatPoly operator+(const RatPoly& p, const RatPoly& q) {
    auto [a, b] = aligned(p, q);
    RatPoly::TermMap terms = a.terms();
    for (const auto& [m, c] : b.terms()) {
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return RatPoly::from_terms(a.vars(), std::move(terms));
}

RatPoly RatPoly::operator-() const {
    TermMap terms;
    for (const auto& [m, c] : terms_) terms.emplace(m, Rat(-c));
    return from_terms(vars_, std::move(terms));
}

RatPoly operator-(const RatPoly& p, const RatPoly& q) { return p + (-q); }

RatPoly operator*(const RatPoly& p, const RatPoly& q) {
    auto [a, b] = aligned(p, q);
    const std::size_t n = a.vars().size();
    RatPoly::TermMap terms;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            RatPoly::Monomial m(n);
            for (std::size_t i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
            auto [it, fresh] = terms.emplace(std::move(m), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    }
    return RatPoly::from_terms(a.vars(), std::move(terms));
}

RatPoly operator*(const Rat& c, const RatPoly& p) {
    if (c == 0) return RatPoly();
    RatPoly::TermMap terms;
    for (const auto& [m, k] : p.terms()) terms.emplace(m, c * k);
    return RatPoly::from_terms(p.vars(), std::move(terms));
}

RatPoly operator+(const RatPoly& p, const Rat& c) { return p + RatPoly::constant(c); }

bool operator==(const RatPoly& p, const RatPoly& q) {
    auto [a, b] = aligned(p, q);
    return a.terms() == b.terms();
}

RatPoly RatPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("RatPoly::pow: negative exponent");
    RatPoly acc = constant(1);
    for (int i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
}

std::pair<RatPoly::Monomial, Rat> RatPoly::lead() const {
    if (terms_.empty()) throw std::domain_error("lead: zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

Rat RatPoly::eval(const std::map<std::string, Rat>& assignment) const {
    // Resolve each variable once; complain only about variables that occur.
    std::vector<const Rat*> val(vars_.size(), nullptr);
    Rat total = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m[i] == 0) continue;
            if (val[i] == nullptr) {
                auto it = assignment.find(vars_[i]);
                if (it == assignment.end())
                    throw std::invalid_argument("eval_poly: no value for variable '" +
                                                vars_[i] + "'");
                val[i] = &it->second;
            }
            t *= rat_pow(*val[i], static_cast<unsigned long>(m[i]));
        }
        total += t;
    }
    return total;
}

std::string RatPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& c = it->second;
        if (!first) os << (c < 0 ? " - " : " + ");
        if (first && c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        bool any_var = false;
        for (int e : it->first)
            if (e > 0) any_var = true;
        if (ac != 1 || !any_var) os << ac.get_str();
        bool star = (ac != 1 || !any_var) && any_var;
        if (star) os << "*";
        bool first_var = true;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            int e = it->first[i];
            if (e == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << vars_[i];
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

RewriteRule rule_from_poly(const RatPoly& p) {
    auto [lm, lc] = p.lead();
    RatPoly::TermMap rest;
    for (const auto& [m, c] : p.terms()) {
        if (m == lm) continue;
        rest.emplace(m, Rat(-c / lc));
    }
    RewriteRule rule{p.vars(), lm, RatPoly::from_terms(p.vars(), std::move(rest))};
    for (const auto& [m, c] : rule.replacement.terms()) {
        bool divisible = true;
        for (std::size_t i = 0; i < lm.size(); ++i)
            if (m[i] < lm[i]) divisible = false;
        if (divisible)
            throw std::invalid_argument(
                "rule_from_poly: replacement contains a monomial divisible by the "
                "leading monomial; rewriting would not terminate");
    }
    return rule;
}

namespace {

std::string monomial_str(const std::vector<std::string>& vars,
                         const RatPoly::Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << vars[i];
        if (m[i] > 1) os << "^" << m[i];
    }
    if (first) os << "1";
    return os.str();
}

}  // namespace

RatPoly reduce_mod(const RatPoly& p, const std::vector<RewriteRule>& rules) {
    // Common universe for the polynomial and every rule.
    std::vector<std::string> u = p.vars();
    for (const auto& r : rules) u = RatPoly::merge_universe(u, r.vars);

    struct AlignedRule {
        RatPoly::Monomial lm;
        RatPoly replacement;
    };
    std::vector<AlignedRule> rs;
    rs.reserve(rules.size());
    for (const auto& r : rules) {
        RatPoly lmpoly = RatPoly::from_terms(r.vars, {{r.lm, make_rat(1)}});
        rs.push_back({lmpoly.aligned_to(u).lead().first, r.replacement.aligned_to(u)});
    }

    // Pairwise coprime leading monomials make division order-independent
    // (Buchberger's first criterion); anything else is rejected.
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            bool share = false;
            for (std::size_t v = 0; v < u.size(); ++v)
                if (rs[i].lm[v] > 0 && rs[j].lm[v] > 0) share = true;
            if (share)
                throw std::invalid_argument(
                    "reduce_mod: rules " + monomial_str(u, rs[i].lm) + " and " +
                    monomial_str(u, rs[j].lm) +
                    " have non-coprime leading monomials; reduction would not be "
                    "confluent");
        }

    RatPoly::TermMap work = p.aligned_to(u).terms();

    // Rewrite the lex-largest reducible monomial until none is divisible by
    // any rule's leading monomial. Each step replaces a monomial by strictly
    // lex-smaller ones, so this terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = work.rbegin(); it != work.rend(); ++it) {
            const RatPoly::Monomial& m = it->first;
            const AlignedRule* hit = nullptr;
            for (const auto& r : rs) {
                bool divisible = true;
                for (std::size_t v = 0; v < u.size(); ++v)
                    if (m[v] < r.lm[v]) {
                        divisible = false;
                        break;
                    }
                if (divisible) {
                    hit = &r;
                    break;
                }
            }
            if (hit == nullptr) continue;

            Rat coeff = it->second;
            RatPoly::Monomial shift(u.size());
            for (std::size_t v = 0; v < u.size(); ++v) shift[v] = m[v] - hit->lm[v];
            work.erase(std::next(it).base());
            for (const auto& [rm, rc] : hit->replacement.terms()) {
                RatPoly::Monomial nm(u.size());
                for (std::size_t v = 0; v < u.size(); ++v) nm[v] = rm[v] + shift[v];
                auto [slot, fresh] = work.emplace(std::move(nm), coeff * rc);
                if (!fresh) {
                    slot->second += coeff * rc;
                    if (slot->second == 0) work.erase(slot);
                }
            }
            changed = true;
            break;
        }
    }
    return RatPoly::from_terms(u, std::move(work));
}

RatPoly nf_mul(const RatPoly& a, const RatPoly& b,
               const std::vector<RewriteRule>& rules) {
    return reduce_mod(a * b, rules);
}

RatPoly nf_pow(const RatPoly& a, int e, const std::vector<RewriteRule>& rules) {
    if (e < 0) throw std::invalid_argument("nf_pow: negative exponent");
    RatPoly acc = RatPoly::constant(1);
    for (int i = 0; i < e; ++i) acc = nf_mul(acc, a, rules);
    return acc;
}

}  // namespace hv

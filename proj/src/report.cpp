#include "hv/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <functional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

#include "hv/curves.hpp"
#include "hv/fibration.hpp"
#include "hv/lax.hpp"
#include "hv/rmatrix.hpp"
#include "hv/sampling.hpp"

namespace hv {

namespace {

Rat parse_rat(std::string s) {
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.empty()) throw std::invalid_argument("coupling: empty number");
    Rat r(s);  // GMP rejects malformed text with the same exception type
    if (r.get_den() == 0)
        throw std::invalid_argument("coupling: zero denominator in " + s);
    r.canonicalize();
    return r;
}

std::string exp2_str(const Real& r) {
    double d = r.to_double();
    if (d == 0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "2^%.2f", std::log2(d));
    return buf;
}

// Largest magnitude seen so far; Real has no unseeded max, so hold zero.
struct Peak {
    Real value;
    explicit Peak(mpfr_prec_t prec) : value(Real::zero(prec)) {}
    void feed(const Real& r) {
        if (r > value) value = r;
    }
};

// 4x4 <-> 4x4 site swap, the regular-point target for both L and R.
CMat two_site_permutation(mpfr_prec_t prec) {
    CMat P(16, prec);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            P.at(4 * i + j, 4 * j + i) = Complex::of(1L, prec);
    return P;
}

// The shared rational coupling list for the exact J checks: ten integers
// and ten odd-numerator fractions, no zeros.
std::vector<Rat> rational_couplings() {
    std::vector<Rat> us;
    for (long k = 1; k <= 10; ++k) us.push_back(make_rat(k));
    for (long j = 1; j <= 10; ++j) us.push_back(make_rat(2 * j - 11, 7));
    return us;
}

Rat pow_rat(const Rat& base, int e) {
    Rat acc(1);
    for (int k = 0; k < e; ++k) acc = acc * base;
    return acc;
}

struct Runner {
    const RunConfig& cfg;
    mpfr_prec_t prec;
    Real tol;
    std::vector<CheckRecord> records;

    Runner(const RunConfig& c)
        : cfg(c),
          prec(static_cast<mpfr_prec_t>(c.precision_bits)),
          tol(Real::pow2(-c.tolerance_exponent, prec)) {}

    void add(const std::string& name, const std::string& anchor,
             const std::string& method,
             const std::function<std::pair<bool, std::string>()>& body) {
        CheckRecord r;
        r.name = name;
        r.anchor = anchor;
        r.method = method;
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto [ok, detail] = body();
            r.status = ok ? "pass" : "fail";
            r.detail = detail;
        } catch (const std::exception& e) {
            r.status = "error";
            r.detail = e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        records.push_back(std::move(r));
    }
};

// Rolls the expected-zero entries of an exact-check batch into one record.
std::pair<bool, std::string> summarize_identities(const std::vector<ExactCheck>& cs) {
    int n = 0;
    bool ok = true;
    for (const ExactCheck& c : cs) {
        if (!c.expected_zero) continue;
        ++n;
        if (!c.zero_remainder) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d identit%s, %s", n, n == 1 ? "y" : "ies",
                  ok ? "all remainders zero" : "nonzero remainder found");
    return {ok, buf};
}

// The must-fail entries of the same batches, reported under --mutations.
std::pair<bool, std::string> summarize_controls(const std::vector<ExactCheck>& cs) {
    bool ok = true;
    long terms = 0;
    int n = 0;
    for (const ExactCheck& c : cs) {
        if (c.expected_zero) continue;
        ++n;
        terms += c.remainder_terms;
        if (c.zero_remainder) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d mutated identit%s, remainders keep %ld terms",
                  n, n == 1 ? "y" : "ies", terms);
    return {ok, buf};
}

void run_curves(Runner& R) {
    R.add("curves.isogeny_pushforward", "fourfold-isogeny", "exact", [] {
        bool ok = verify_psi_exact();
        return std::pair{ok, std::string(ok ? "image satisfies the target curve"
                                            : "image misses the target curve")};
    });

    R.add("curves.modular_relation_level4", "modular-level-4", "exact", [] {
        int n = 0;
        for (const Rat& u : rational_couplings()) {
            Rat j1 = j_invariant(CurveId::E1, u);
            Rat j2 = j_invariant(CurveId::E2, u);
            Rat j3 = j_invariant(CurveId::E3, u);
            if (phi4(j1, j2) != 0 || phi4(j2, j3) != 0)
                return std::pair{false, "nonzero at U = " + u.get_str()};
            n += 2;
        }
        return std::pair{true, std::to_string(n) + " evaluations identically zero"};
    });

    R.add("curves.distinct_j_invariants", "j-separation", "exact", [] {
        for (const Rat& u : rational_couplings())
            if (j_invariant(CurveId::E1, u) == j_invariant(CurveId::E2, u))
                return std::pair{false, "coincide at U = " + u.get_str()};
        if (j_invariant(CurveId::E1, make_rat(4)) != make_rat(287496))
            return std::pair{false, std::string("spot value at U = 4 is wrong")};
        return std::pair{true,
                         std::string("separated at 20 couplings; spot value exact")};
    });

    if (R.cfg.mutations) {
        R.add("curves.isogeny_pushforward_control", "fourfold-isogeny-control",
              "exact", [] {
                  bool still_on_curve = verify_psi_exact_mutated();
                  return std::pair{!still_on_curve,
                                   std::string(still_on_curve
                                                   ? "mutated map stayed on the curve"
                                                   : "mutated map leaves the curve")};
              });
        R.add("curves.modular_coefficient_control", "modular-level-4-control",
              "exact", [] {
                  // bumping one interior coefficient by 1 must break both
                  // vanishing identities
                  for (const Rat& u : {make_rat(1), make_rat(5, 2)}) {
                      Rat j1 = j_invariant(CurveId::E1, u);
                      Rat j2 = j_invariant(CurveId::E2, u);
                      Rat bumped = phi4(j1, j2) + pow_rat(j1, 5) * pow_rat(j2, 3);
                      if (bumped == 0)
                          return std::pair{false,
                                           std::string("mutation still vanishes")};
                  }
                  return std::pair{true,
                                   std::string("bumped coefficient breaks both")};
              });
    }
}

void run_elliptic(Runner& R,
                  const std::vector<std::pair<CouplingSpec, ThetaContext>>& ctxs) {
    const RunConfig& cfg = R.cfg;
    mpfr_prec_t prec = R.prec;

    R.add("elliptic.uniformized_on_curve", "weight-uniformization", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 11};
            for (long n = 0; n < cfg.sample_count; ++n) {
                Complex l = sample_lambda(s, ctx);
                WeightPoint w = uniformize(ctx, l, WeightForm::Sn);
                peak.feed(cabs(on_curve_E2(w.xc, w.yc, ctx.U)));
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "max curve residual %s over %zux%ld points",
                      exp2_str(peak.value).c_str(), ctxs.size(), cfg.sample_count);
        return std::pair{peak.value < R.tol, std::string(buf)};
    });

    R.add("elliptic.dual_form_agreement", "theta-sn-duality", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 12};
            for (long n = 0; n < cfg.sample_count; ++n) {
                Complex l = sample_lambda(s, ctx);
                WeightPoint a = uniformize(ctx, l, WeightForm::Sn);
                WeightPoint b = uniformize(ctx, l, WeightForm::Theta);
                peak.feed(cabs(a.xc - b.xc));
                peak.feed(cabs(a.yc - b.yc));
                peak.feed(cabs(a.thc - b.thc));
            }
        }
        return std::pair{peak.value < R.tol,
                         "max form difference " + exp2_str(peak.value)};
    });

    R.add("elliptic.crossing_parameter_swap", "crossing-swap", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 13};
            for (long n = 0; n < cfg.sample_count; ++n) {
                Complex l = sample_lambda(s, ctx);
                WeightPoint w = uniformize(ctx, l, WeightForm::Sn);
                WeightPoint x = uniformize(ctx, ctx.K - l, WeightForm::Sn);
                peak.feed(cabs(x.xc - w.yc));
                peak.feed(cabs(x.yc - w.xc));
            }
        }
        return std::pair{peak.value < R.tol,
                         "max swap defect " + exp2_str(peak.value)};
    });
}

void run_lax(Runner& R,
             const std::vector<std::pair<CouplingSpec, ThetaContext>>& ctxs) {
    const RunConfig& cfg = R.cfg;
    mpfr_prec_t prec = R.prec;

    R.add("lax.construction_matches_explicit", "lax-factorization", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 21};
            for (long n = 0; n < cfg.sample_count; ++n) {
                Complex l = sample_lambda(s, ctx);
                WeightPoint w = uniformize(ctx, l, WeightForm::Sn);
                CMat built = lax_shastry(shastry_params(w.xc, w.yc));
                CMat printed = lax_explicit(w.xc, w.yc);
                peak.feed(max_abs(built - printed) / max_abs(printed));
            }
        }
        return std::pair{peak.value < R.tol,
                         "max entrywise defect " + exp2_str(peak.value)};
    });

    R.add("lax.regular_point", "lax-regular-point", "numeric", [&] {
        CMat P = two_site_permutation(prec);
        for (const auto& [spec, ctx] : ctxs) {
            WeightPoint w = uniformize(ctx, Complex::zero(prec), WeightForm::Sn);
            CMat L = lax_explicit(w.xc, w.yc);
            if (!max_abs(L - P).is_zero())
                return std::pair{false, "nonzero entries at U = " + spec.str()};
        }
        return std::pair{true,
                         std::string("equals the permutation matrix exactly")};
    });

    R.add("lax.crossing_relation", "crossing-conjugation", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 22};
            for (long n = 0; n < cfg.sample_count; ++n)
                peak.feed(crossing_residual(ctx, sample_lambda(s, ctx)));
        }
        return std::pair{peak.value < R.tol, "max residual " + exp2_str(peak.value)};
    });

    R.add("lax.unitarity_inverse", "inversion-relation", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 23};
            for (long n = 0; n < cfg.sample_count; ++n)
                peak.feed(unitarity_check(ctx, sample_lambda(s, ctx)).residual);
        }
        return std::pair{peak.value < R.tol, "max residual " + exp2_str(peak.value)};
    });

    R.add("lax.unitarity_permuted_control", "inversion-permuted", "numeric", [&] {
        // the space-swapped product must stay order one somewhere; tiny
        // lambda is excluded because both variants degenerate near the
        // regular point
        bool all_big = true;
        std::string worst_u;
        for (const auto& [spec, ctx] : ctxs) {
            Peak peak(prec);
            SampleStream s{cfg.seed + 24};
            Real gate = cabs(ctx.K) / 8L;
            for (long n = 0; n < cfg.sample_count; ++n) {
                Complex l = sample_lambda(s, ctx);
                if (cabs(l) < gate) continue;
                peak.feed(unitarity_check(ctx, l).permuted_control);
            }
            if (!(peak.value > Real::pow2(-8, prec))) {
                all_big = false;
                worst_u = spec.str();
            }
        }
        return std::pair{all_big,
                         all_big ? std::string("order-one defect at every coupling")
                                 : "stayed small at U = " + worst_u};
    });

    long pair_count = std::min(cfg.sample_count, 10L);
    R.add("lax.transfer_commutator", "transfer-commutativity", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 25};
            for (int sites = 2; sites <= 3; ++sites) {
                for (long n = 0; n < pair_count; ++n) {
                    Complex l1 = sample_lambda(s, ctx);
                    Complex l2 = sample_lambda(s, ctx);
                    CMat T1 = transfer_matrix(ctx, l1, sites);
                    CMat T2 = transfer_matrix(ctx, l2, sites);
                    CMat p12 = T1 * T2;
                    CMat p21 = T2 * T1;
                    Real den = max_abs(p12);
                    Real d21 = max_abs(p21);
                    if (d21 > den) den = d21;
                    peak.feed(max_abs(p12 - p21) / den);
                }
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "max normalized commutator %s (2 and 3 sites, %ld pairs each)",
                      exp2_str(peak.value).c_str(), pair_count);
        return std::pair{peak.value < R.tol, std::string(buf)};
    });

    R.add("lax.partition_trace_symmetry", "partition-trace-symmetry", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 26};
            for (int sites = 2; sites <= 3; ++sites) {
                for (long n = 0; n < pair_count; ++n) {
                    Complex l = sample_lambda(s, ctx);
                    Complex z1 = partition_trace(ctx, l, sites);
                    Complex z2 = partition_trace(ctx, ctx.K - l, sites);
                    Real scale = Real::of(1L, prec) + cabs(z1);
                    peak.feed(cabs(z1 - z2) / scale);
                }
            }
        }
        return std::pair{peak.value < R.tol,
                         "max reflection defect " + exp2_str(peak.value)};
    });
}

void run_rmatrix(Runner& R,
                 const std::vector<std::pair<CouplingSpec, ThetaContext>>& ctxs) {
    const RunConfig& cfg = R.cfg;
    mpfr_prec_t prec = R.prec;

    R.add("rmatrix.weight_quadrics", "six-vertex-quadrics", "exact",
          [] { return summarize_identities(verify_quadrics()); });
    R.add("rmatrix.base_curve_constraint", "coupling-curve-constraint", "exact",
          [] { return summarize_identities(verify_omega_curve()); });
    R.add("rmatrix.elimination_ideal", "elimination-ideal-generators", "exact",
          [] { return summarize_identities(verify_ideal_generators()); });

    R.add("rmatrix.yang_baxter", "yang-baxter", "numeric", [&] {
        Peak peak(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 31};
            for (long n = 0; n < cfg.sample_count; ++n) {
                Complex l1 = sample_lambda(s, ctx);
                Complex l2 = sample_lambda(s, ctx);
                peak.feed(ybe_residual(ctx, l1, l2));
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "max residual %s over %zux%ld pairs",
                      exp2_str(peak.value).c_str(), ctxs.size(), cfg.sample_count);
        return std::pair{peak.value < R.tol, std::string(buf)};
    });

    R.add("rmatrix.regular_point", "r-regular-point", "numeric", [&] {
        Peak peak(prec);
        CMat P = two_site_permutation(prec);
        for (const auto& uc : ctxs) {
            const ThetaContext& ctx = uc.second;
            SampleStream s{cfg.seed + 32};
            for (long n = 0; n < std::min(cfg.sample_count, 10L); ++n) {
                Complex l = sample_lambda(s, ctx);
                CMat Rm = rmatrix_assemble(weights(ctx, l, l), prec);
                peak.feed(max_abs(Rm - P));
            }
        }
        return std::pair{peak.value < R.tol,
                         "max distance to the permutation " + exp2_str(peak.value)};
    });

    if (cfg.mutations) {
        R.add("rmatrix.weight_quadrics_control", "six-vertex-quadrics-control",
              "exact", [] { return summarize_controls(verify_quadrics()); });
        R.add("rmatrix.base_curve_control", "coupling-curve-constraint-control",
              "exact", [] { return summarize_controls(verify_omega_curve()); });
        R.add("rmatrix.yang_baxter_weight_control", "yang-baxter-control", "numeric",
              [&] {
                  // nudging one weight by a relative 1e-6 has to surface as an
                  // order-of-rounding-free defect
                  Peak peak(prec);
                  for (const auto& uc : ctxs) {
                      const ThetaContext& ctx = uc.second;
                      SampleStream s{cfg.seed + 33};
                      Complex l1 = sample_lambda(s, ctx);
                      Complex l2 = sample_lambda(s, ctx);
                      WeightTuple w = weights(ctx, l1, l2);
                      Complex bump =
                          Complex::of(make_rat(1000001, 1000000), prec);
                      w.c = w.c * bump;
                      peak.feed(ybe_residual_with(ctx, l1, l2, w));
                  }
                  return std::pair{peak.value > Real::pow2(-27, prec),
                                   "mutated-weight residual " + exp2_str(peak.value)};
              });
    }
}

void run_fibration(Runner& R) {
    const RunConfig& cfg = R.cfg;
    mpfr_prec_t prec = R.prec;

    R.add("fibration.quartic_elimination", "fiber-quartic-elimination", "exact",
          [] { return summarize_identities(verify_fiber_elimination()); });

    R.add("fibration.cubic_model", "weierstrass-cubic", "numeric", [&] {
        Peak peak(prec);
        int points = 0;
        for (const BasePoint& p : canonical_bases()) {
            Complex c0 = Complex::of(p.c0, prec), d0 = Complex::of(p.d0, prec),
                    U = Complex::of(p.U, prec);
            for (long k = 1; k <= 3; ++k) {
                Complex a = Complex::of(make_rat(k, 7), prec);
                for (const Complex& b : fiber_roots(a, c0, d0, U)) {
                    WeierstrassPoint w = weierstrass_map_at(a, b, c0, d0, U);
                    peak.feed(weif_residual(w, p, prec));
                    ++points;
                }
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "max residual %s at %d points over 5 rational bases",
                      exp2_str(peak.value).c_str(), points);
        return std::pair{peak.value < R.tol, std::string(buf)};
    });

    R.add("fibration.coefficient_adjudication", "cubic-coefficient-256", "exact",
          [] {
              for (const BasePoint& p :
                   {base_from(make_rat(1, 2), make_rat(1, 2)),
                    base_from(make_rat(1, 3), make_rat(1, 4))}) {
                  WeifAdjudication w = weif_adjudicate(p);
                  bool ok = w.consistent && w.imag_parts_zero &&
                            w.matches_corrected && !w.matches_printed &&
                            w.B_matches;
                  if (!ok)
                      return std::pair{
                          false, "solve disagrees at U = " + Rat(p.U).get_str()};
              }
              return std::pair{
                  true,
                  std::string("exact solve picks the 256 variant of the quadratic "
                              "term at both probe bases; 246 excluded")};
          });

    R.add("fibration.fiber_j_invariant", "fiber-j-constancy", "exact", [] {
        for (const Rat& u : rational_couplings()) {
            if (j_generic_fiber(u) != j_invariant(CurveId::E3, u))
                return std::pair{false, "mismatch at U = " + u.get_str()};
            if (phi4(j_invariant(CurveId::E2, u), j_generic_fiber(u)) != 0)
                return std::pair{false,
                                 "modular link broken at U = " + u.get_str()};
        }
        return std::pair{true,
                         std::string("matches the isogenous curve and closes the "
                                     "modular relation at 20 couplings")};
    });

    R.add("fibration.special_fiber", "degenerate-fiber", "numeric", [&] {
        Peak peak(prec);
        for (const CouplingSpec& spec : cfg.u_list) {
            Complex U = Complex::of(spec.re, spec.im, prec);
            auto [c0, d0] = special_fiber_base(U);
            for (long k = 1; k <= 3; ++k) {
                Complex a = Complex::of(make_rat(k, 7), prec);
                for (const Complex& b : fiber_roots(a, c0, d0, U)) {
                    WeierstrassPoint w = weierstrass_map_at(a, b, c0, d0, U);
                    peak.feed(weif_residual_at(w, c0, d0, U));
                }
            }
            // scale-free j stays the generic-fiber value over this locus too
            Complex cd = c0 * d0, c2d2 = cd * cd, c4d4 = c2d2 * c2d2;
            Complex U2 = U * U;
            Complex A =
                -(c4d4 * (U2 * U2 + 256L * U2 + Complex::of(4096L, prec))) / 48L;
            Complex B = -(c4d4 * c2d2 *
                          ((Complex::of(32L, prec) + U2) *
                           (U2 * U2 - 512L * U2 - Complex::of(8192L, prec)))) /
                        864L;
            Complex j = j_from_weierstrass(A, B);
            Complex u4 = U2 * U2;
            Complex num = u4 + 256L * U2 + Complex::of(4096L, prec);
            Complex expected = num * num * num /
                               (u4 * u4 * (U2 + Complex::of(16L, prec)));
            Real scale = Real::of(1L, prec) + cabs(expected);
            peak.feed(cabs(j - expected) / scale);
        }
        return std::pair{peak.value < R.tol,
                         "max defect " + exp2_str(peak.value) +
                             " over the degenerate locus"};
    });

    if (cfg.stretch) {
        R.add("fibration.symbolic_cubic", "whole-base-cubic", "exact", [] {
            StretchResult r = verify_weif_symbolic(600.0);
            if (!r.completed)
                return std::pair{false, std::string("budget expired")};
            char buf[96];
            std::snprintf(buf, sizeof buf, "remainder %ld terms, %.1f s",
                          r.remainder_terms, r.seconds);
            return std::pair{r.zero_remainder, std::string(buf)};
        });
    }

    if (cfg.mutations) {
        R.add("fibration.quartic_elimination_control",
              "fiber-quartic-elimination-control", "exact",
              [] { return summarize_controls(verify_fiber_elimination()); });
        R.add("fibration.printed_coefficient_control", "cubic-coefficient-246",
              "numeric", [&] {
                  Peak peak(prec);
                  for (const BasePoint& p : canonical_bases()) {
                      Complex c0 = Complex::of(p.c0, prec),
                              d0 = Complex::of(p.d0, prec),
                              U = Complex::of(p.U, prec);
                      Complex a = Complex::of(make_rat(2, 7), prec);
                      for (const Complex& b : fiber_roots(a, c0, d0, U)) {
                          WeierstrassPoint w = weierstrass_map_at(a, b, c0, d0, U);
                          peak.feed(weif_residual(w, p, prec, 246));
                      }
                  }
                  return std::pair{peak.value > Real::pow2(-20, prec),
                                   "246 variant misses by " + exp2_str(peak.value)};
              });
    }
}

}  // namespace

std::string CouplingSpec::str() const {
    if (im == 0) return re.get_str();
    Rat mag = im < 0 ? Rat(-im) : im;
    std::string itext = (mag == 1) ? "i" : mag.get_str() + "i";
    if (re == 0) return (im < 0 ? "-" : "") + itext;
    return re.get_str() + (im < 0 ? "-" : "+") + itext;
}

CouplingSpec parse_coupling(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("coupling: empty spec");
    if (s.back() != 'i') return {parse_rat(s), Rat(0)};
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' &&
            body[k - 1] != '+' && body[k - 1] != '-') {
            split = k;
            break;
        }
    }
    std::string re_part = "0", im_part = body;
    if (split != std::string::npos) {
        re_part = body.substr(0, split);
        im_part = body.substr(split);
    }
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return {parse_rat(re_part), parse_rat(im_part)};
}

RunConfig validate(RunConfig cfg) {
    if (cfg.precision_bits < 64)
        throw std::invalid_argument("precision must be at least 64 bits");
    if (cfg.sample_count < 1)
        throw std::invalid_argument("sample count must be at least 1");
    if (cfg.tolerance_exponent == 0)
        cfg.tolerance_exponent = cfg.precision_bits / 2 - 12;
    if (cfg.tolerance_exponent < 8 || cfg.tolerance_exponent > cfg.precision_bits)
        throw std::invalid_argument("tolerance exponent out of range");
    if (cfg.u_list.empty())
        cfg.u_list = {{Rat(1), Rat(0)},
                      {Rat(2), Rat(0)},
                      {Rat(3), Rat(0)},
                      {Rat(1), Rat(1)}};
    for (const CouplingSpec& u : cfg.u_list)
        if (u.re == 0 && u.im == 0)
            throw std::invalid_argument(
                "coupling 0 degenerates the sampling rectangle; the "
                "trigonometric limit has its own fixed tests");
    if (cfg.suites.empty()) cfg.suites.push_back("all");
    static const std::set<std::string> known{"curves", "elliptic", "lax",
                                             "rmatrix",  "fibration", "all"};
    std::vector<std::string> dedup;
    for (const std::string& s : cfg.suites) {
        if (!known.count(s)) throw std::invalid_argument("unknown suite: " + s);
        if (std::find(dedup.begin(), dedup.end(), s) == dedup.end())
            dedup.push_back(s);
    }
    cfg.suites = dedup;
    return cfg;
}

Report run(const RunConfig& cfg_in) {
    RunConfig cfg = validate(cfg_in);
    Runner R(cfg);

    auto wants = [&cfg](const char* name) {
        for (const std::string& s : cfg.suites)
            if (s == "all" || s == name) return true;
        return false;
    };

    bool needs_ctx = wants("elliptic") || wants("lax") || wants("rmatrix");
    std::vector<std::pair<CouplingSpec, ThetaContext>> ctxs;
    if (needs_ctx) {
        // a coupling whose modulus lands on the branch cut cannot seed a
        // context; record it and keep going with the rest
        for (const CouplingSpec& u : cfg.u_list) {
            try {
                ctxs.emplace_back(
                    u, ThetaContext::for_coupling(Complex::of(u.re, u.im, R.prec),
                                                  R.prec));
            } catch (const std::exception& e) {
                CheckRecord r;
                r.name = "config.coupling[" + u.str() + "]";
                r.anchor = "coupling-context";
                r.method = "numeric";
                r.status = "error";
                r.detail = e.what();
                R.records.push_back(std::move(r));
            }
        }
    }

    // with no context at all the sampled checks cannot say anything; a
    // sentinel error keeps the report honest instead of passing vacuously
    bool ctx_dead = needs_ctx && ctxs.empty();
    if (ctx_dead) {
        CheckRecord r;
        r.name = "config.no_usable_coupling";
        r.anchor = "coupling-context";
        r.method = "numeric";
        r.status = "error";
        r.detail = "every requested coupling failed to seed a theta context";
        R.records.push_back(std::move(r));
    }

    if (wants("curves")) run_curves(R);
    if (wants("elliptic") && !ctx_dead) run_elliptic(R, ctxs);
    if (wants("lax") && !ctx_dead) run_lax(R, ctxs);
    if (wants("rmatrix") && !ctx_dead) run_rmatrix(R, ctxs);
    if (wants("fibration")) run_fibration(R);

    std::sort(R.records.begin(), R.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) {
                  return a.name < b.name;
              });

    Report rep;
    rep.config = cfg;
    rep.checks = std::move(R.records);
    rep.overall_pass = true;
    for (const CheckRecord& c : rep.checks)
        if (c.status != "pass") rep.overall_pass = false;
    return rep;
}

std::string render_json(const Report& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    nlohmann::ordered_json cj;
    cj["precision_bits"] = rep.config.precision_bits;
    cj["tolerance_exponent"] = rep.config.tolerance_exponent;
    cj["sample_count"] = rep.config.sample_count;
    cj["seed"] = rep.config.seed;
    std::vector<std::string> us;
    for (const CouplingSpec& u : rep.config.u_list) us.push_back(u.str());
    cj["u_list"] = us;
    cj["suites"] = rep.config.suites;
    cj["stretch"] = rep.config.stretch;
    cj["mutations"] = rep.config.mutations;
    cj["timings"] = rep.config.timings;
    j["config"] = cj;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckRecord& c : rep.checks) {
        nlohmann::ordered_json rj;
        rj["name"] = c.name;
        rj["anchor"] = c.anchor;
        rj["method"] = c.method;
        rj["status"] = c.status;
        rj["detail"] = c.detail;
        if (rep.config.timings) rj["seconds"] = c.seconds;
        arr.push_back(rj);
    }
    j["checks"] = arr;
    j["overall"] = rep.overall_pass ? "pass" : "fail";
    return j.dump(2) + "\n";
}

void emit_weights_csv(std::ostream& out, const Complex& U,
                      const std::vector<Complex>& grid, mpfr_prec_t prec) {
    int digits = static_cast<int>(prec * 0.30103) + 3;
    auto field = [digits](const Complex& z) {
        if (z.im.is_zero()) return z.re.str(digits);
        std::string im = z.im.str(digits);
        std::string sep = (!im.empty() && im[0] == '-') ? "" : "+";
        return z.re.str(digits) + sep + im + "i";
    };
    out << "lambda_re,lambda_im,xc,yc,thc,curve_residual\n";
    for (const Complex& l : grid) {
        out << l.re.str(digits) << ',' << l.im.str(digits) << ',';
        try {
            WeightPoint w = uniformize(l, U, WeightForm::Sn, prec);
            Complex sq = w.xc * w.xc + w.yc * w.yc;
            Real residual =
                cabs(sq * sq - U * w.xc * w.yc - Complex::of(1L, prec));
            out << field(w.xc) << ',' << field(w.yc) << ',' << field(w.thc) << ','
                << residual.str(digits) << '\n';
        } catch (const std::domain_error&) {
            // poles stay visible in the table rather than silently vanishing
            out << "nan,nan,nan,pole\n";
        }
    }
}

std::vector<Complex> weight_grid(const Complex& U, long count,
                                 unsigned long long seed, mpfr_prec_t prec) {
    if (U.is_zero())
        throw std::invalid_argument(
            "weight grid needs a nonzero coupling; the trigonometric limit "
            "is tabulated directly");
    ThetaContext ctx = ThetaContext::for_coupling(U, prec);
    std::vector<Complex> grid{Complex::zero(prec)};
    SampleStream s{seed};
    for (long n = 0; n < count; ++n) grid.push_back(sample_lambda(s, ctx));
    return grid;
}

}  // namespace hv

#ifndef HV_REPORT_HPP
#define HV_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "hv/mpcomplex.hpp"

namespace hv {

// One coupling value as an exact rational pair; precision enters only when
// a run materializes it.
struct CouplingSpec {
    Rat re, im;
    // Canonical text: "3", "5/2", "1+i", "2-3/4i". Parsing accepts the same
    // forms (plus "i", "-i", "2i").
    std::string str() const;
};
// Throws std::invalid_argument on anything it cannot read back.
CouplingSpec parse_coupling(const std::string& text);

struct RunConfig {
    long precision_bits = 128;
    long tolerance_exponent = 0;  // 0 derives precision_bits/2 - 12
    long sample_count = 100;
    unsigned long long seed = 0;
    std::vector<CouplingSpec> u_list;  // empty picks {1, 2, 3, 1+i}
    std::vector<std::string> suites;   // empty means {"all"}
    bool stretch = false;    // adds the symbolic whole-base cubic job
    bool mutations = false;  // adds the must-fail mutation controls
    bool timings = false;    // adds wall-clock fields, costs byte determinism
};

// Fills derived defaults and rejects out-of-range values or unknown suite
// names with std::invalid_argument (the usage-error exit path).
RunConfig validate(RunConfig cfg);

struct CheckRecord {
    std::string name;    // "<suite>.<check>", unique within a run
    std::string anchor;  // stable identity slug, config-independent
    std::string method;  // "exact" or "numeric"
    std::string status;  // "pass", "fail", or "error"
    std::string detail;  // residual exponent, remainder terms, or error text
    double seconds = 0;  // serialized only when timings are enabled
};

struct Report {
    RunConfig config;
    std::vector<CheckRecord> checks;  // sorted by name
    bool overall_pass = false;
};

// Runs every check the config enables. A failing or throwing check is
// recorded and the suite keeps going.
Report run(const RunConfig& cfg);

// Stable JSON rendering, byte-identical for equal (config, seed) unless
// timings are on.
std::string render_json(const Report& rep);

// CSV of uniformized weights over a lambda grid: columns lambda_re,
// lambda_im, xc, yc, thc, curve_residual. A pole keeps its row, with the
// value columns "nan" and the residual column "pole".
void emit_weights_csv(std::ostream& out, const Complex& U,
                      const std::vector<Complex>& grid, mpfr_prec_t prec);

// The grid the CLI tabulates: lambda = 0 first, then `count` draws from
// the standard sampling rectangle.
std::vector<Complex> weight_grid(const Complex& U, long count,
                                 unsigned long long seed, mpfr_prec_t prec);

}  // namespace hv

#endif

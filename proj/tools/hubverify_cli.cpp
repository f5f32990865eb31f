#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hv/report.hpp"

// Exit codes: 0 all checks pass, 1 at least one check failed or errored,
// 2 configuration or usage problem.
int main(int argc, char** argv) {
    CLI::App app{
        "Verification harness for the coupled six-vertex Lax operator, its "
        "R-matrix, and the elliptic-curve structure behind them."};

    long precision = 128;
    long tolerance = 0;
    long samples = 100;
    unsigned long long seed = 0;
    std::vector<std::string> suites;
    std::vector<std::string> u_specs;
    bool stretch = false, mutations = false, timings = false;
    std::string out_path, weights_path;

    app.add_option("--suite", suites,
                   "suite to run: curves, elliptic, lax, rmatrix, fibration, "
                   "all (repeatable; default all)")
        ->envname("HUBVERIFY_SUITE");
    app.add_option("--precision", precision, "working precision in bits, >= 64")
        ->envname("HUBVERIFY_PRECISION");
    app.add_option("--tolerance", tolerance,
                   "tolerance exponent t: numeric residuals must stay below "
                   "2^-t (0 derives precision/2 - 12)")
        ->envname("HUBVERIFY_TOLERANCE");
    app.add_option("--samples", samples, "sample count per numeric check, >= 1")
        ->envname("HUBVERIFY_SAMPLES");
    app.add_option("--seed", seed, "deterministic sampling seed")
        ->envname("HUBVERIFY_SEED");
    app.add_option("--u", u_specs,
                   "coupling value, e.g. 2, 5/2, 1+i (repeatable; default "
                   "1, 2, 3, 1+i)")
        ->envname("HUBVERIFY_U");
    app.add_flag("--stretch", stretch,
                 "also run the symbolic cubic-model job over the whole base")
        ->envname("HUBVERIFY_STRETCH");
    app.add_flag("--mutations", mutations,
                 "also run the must-fail mutation controls")
        ->envname("HUBVERIFY_MUTATIONS");
    app.add_flag("--timings", timings,
                 "record wall-clock seconds per check (report is then no "
                 "longer byte-reproducible)")
        ->envname("HUBVERIFY_TIMINGS");
    app.add_option("--out", out_path, "write the JSON report to this file")
        ->envname("HUBVERIFY_OUT");
    app.add_option("--emit-weights", weights_path,
                   "write a CSV weight table for the first coupling to this "
                   "file")
        ->envname("HUBVERIFY_EMIT_WEIGHTS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    hv::RunConfig cfg;
    cfg.precision_bits = precision;
    cfg.tolerance_exponent = tolerance;
    cfg.sample_count = samples;
    cfg.seed = seed;
    cfg.suites = suites;
    cfg.stretch = stretch;
    cfg.mutations = mutations;
    cfg.timings = timings;
    try {
        for (const std::string& spec : u_specs)
            cfg.u_list.push_back(hv::parse_coupling(spec));
        cfg = hv::validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "hubverify: " << e.what() << "\n";
        return 2;
    }

    hv::Report rep;
    try {
        rep = hv::run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "hubverify: " << e.what() << "\n";
        return 2;
    }

    std::string json = hv::render_json(rep);
    if (out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "hubverify: cannot open " << out_path << "\n";
            return 2;
        }
        f << json;
    }

    if (!weights_path.empty()) {
        try {
            const hv::CouplingSpec& u = cfg.u_list.front();
            mpfr_prec_t prec = static_cast<mpfr_prec_t>(cfg.precision_bits);
            hv::Complex U = hv::Complex::of(u.re, u.im, prec);
            std::vector<hv::Complex> grid =
                hv::weight_grid(U, cfg.sample_count, cfg.seed, prec);
            std::ofstream f(weights_path);
            if (!f) {
                std::cerr << "hubverify: cannot open " << weights_path << "\n";
                return 2;
            }
            hv::emit_weights_csv(f, U, grid, prec);
        } catch (const std::exception& e) {
            std::cerr << "hubverify: " << e.what() << "\n";
            return 2;
        }
    }

    return rep.overall_pass ? 0 : 1;
}

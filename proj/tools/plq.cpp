#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plq/suites.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification runs for Heisenberg-type Lie bialgebras, their dual\n"
                 "Poisson-Lie groups, and the associated multiplicative unitaries."};

    std::string case_s, lambda_s, nu_s, jmat_s, pirates_s, rhorates_s;
    std::string suites_s, report_s, config_s;
    int n = 0, m = 0, samples = 0;
    std::uint64_t seed = 0;
    double tol = 0;
    bool self_test = false, timings = false;

    app.add_option("--case", case_s,
                   "variant to check: case1, case2, case3, mixed, rieffel, nonuni");
    app.add_option("--n", n, "number of position/momentum pairs");
    app.add_option("--m", m, "number of central directions (rate-matrix variants)");
    app.add_option("--lambda", lambda_s, "scaling rate, an exact rational like 1/2");
    app.add_option("--nu", nu_s, "second scaling rate (mixed variant)");
    app.add_option("--J", jmat_s, "skew matrix as rows 'a,b;c,d' (case3)");
    app.add_option("--pi-rates", pirates_s, "n x m rate matrix for the x block, rows 'a,b;c,d'");
    app.add_option("--rho-rates", rhorates_s, "n x m rate matrix for the y block, rows 'a,b;c,d'");
    app.add_option("--seed", seed, "seed for the sampled phase checks");
    app.add_option("--samples", samples, "sample count for the numeric phase checks");
    app.add_option("--tol", tol, "tolerance for sampled residuals");
    app.add_option("--suites", suites_s,
                   "comma-separated subset of: liealg,group,poisson,unitary,bialgebra");
    app.add_option("--report", report_s, "output format: text or json");
    app.add_option("--config", config_s, "JSON config file; explicit flags override its values");
    app.add_flag("--self-test", self_test, "also run the corrupted-fixture detection suite");
    app.add_flag("--timings", timings, "include elapsed time in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        plq::RunConfig cfg;
        if (app.count("--config")) cfg = plq::load_config(config_s);
        if (app.count("--case")) cfg.c = plq::case_from_name(case_s);
        if (app.count("--n")) cfg.n = n;
        if (app.count("--m")) cfg.m = m;
        if (app.count("--lambda")) cfg.lambda = plq::parse_rational(lambda_s);
        if (app.count("--nu")) cfg.nu = plq::parse_rational(nu_s);
        if (app.count("--J")) cfg.J = plq::parse_matrix_string(jmat_s);
        if (app.count("--pi-rates")) cfg.pi_rates = plq::parse_matrix_string(pirates_s);
        if (app.count("--rho-rates")) cfg.rho_rates = plq::parse_matrix_string(rhorates_s);
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--samples")) cfg.samples = samples;
        if (app.count("--tol")) cfg.tol = tol;
        if (app.count("--suites")) cfg.suites = split_csv(suites_s);
        if (app.count("--report")) cfg.report = report_s;
        if (self_test) cfg.self_test = true;
        if (timings) cfg.timings = true;

        plq::Report rep = plq::run(cfg);
        std::cout << (cfg.report == "json" ? plq::report_json(rep) : plq::report_text(rep));
        if (const char* dir = std::getenv("PLQ_REPORT_DIR")) plq::write_report_files(rep, dir);
        return rep.all_passed() ? 0 : 1;
    } catch (const plq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "plq/cases.hpp"
#include "plq/rational.hpp"

namespace plq {

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s = {"liealg", "group", "poisson", "unitary",
                                               "bialgebra"};
    return s;
}

/// One verification run: a case, its parameters, and what to check.
/// Rationals travel as exact "a/b" strings; matrices as rows of them.
struct RunConfig {
    CaseId c = CaseId::case2;
    int n = 2;
    int m = 1;
    Rational lambda = Rational(1, 2);
    Rational nu = Rational(-1, 3);
    Matrix J;
    Matrix pi_rates;
    Matrix rho_rates;
    std::uint64_t seed = 20200521;
    int samples = 200;
    double tol = 1e-9;
    std::vector<std::string> suites = all_suites();
    std::string report = "text";
    bool self_test = false;
    bool timings = false;
};

inline CaseParams config_case_params(const RunConfig& cfg) {
    CaseParams p;
    p.n = cfg.n;
    p.m = cfg.m;
    p.lambda = cfg.lambda;
    p.nu = cfg.nu;
    p.J = cfg.J;
    p.pi_rates = cfg.pi_rates;
    p.rho_rates = cfg.rho_rates;
    return p;
}

inline void validate_config(const RunConfig& cfg) {
    if (cfg.n < 1) throw ConfigError("n must be >= 1");
    if (cfg.m < 1) throw ConfigError("m must be >= 1");
    if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
    if (!(cfg.tol > 0)) throw ConfigError("tol must be positive");
    if (cfg.report != "text" && cfg.report != "json")
        throw ConfigError("report must be 'text' or 'json'");
    if (cfg.suites.empty()) throw ConfigError("at least one suite is required");
    std::set<std::string> seen;
    for (const auto& s : cfg.suites) {
        bool known = false;
        for (const auto& k : all_suites()) known = known || k == s;
        if (!known) throw ConfigError("unknown suite '" + s + "'");
        if (!seen.insert(s).second) throw ConfigError("duplicate suite '" + s + "'");
    }
}

/// "a,b;c,d" with rational entries -> matrix (rows split on ';').
inline Matrix parse_matrix_string(const std::string& text) {
    Matrix out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t stop = text.find(';', pos);
        std::string row = text.substr(pos, stop == std::string::npos ? std::string::npos
                                                                     : stop - pos);
        std::vector<Rational> entries;
        std::size_t rp = 0;
        while (rp <= row.size()) {
            std::size_t comma = row.find(',', rp);
            entries.push_back(parse_rational(
                row.substr(rp, comma == std::string::npos ? std::string::npos : comma - rp)));
            if (comma == std::string::npos) break;
            rp = comma + 1;
        }
        out.push_back(entries);
        if (stop == std::string::npos) break;
        pos = stop + 1;
    }
    return out;
}

namespace cfgdetail {

inline Rational rational_from_json(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ConfigError("'" + key + "' must be an exact rational: an integer or an \"a/b\" string");
}

inline Matrix matrix_from_json(const nlohmann::json& v, const std::string& key) {
    if (!v.is_array()) throw ConfigError("'" + key + "' must be an array of rows");
    Matrix out;
    for (const auto& row : v) {
        if (!row.is_array()) throw ConfigError("'" + key + "' rows must be arrays");
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(rational_from_json(e, key));
        out.push_back(r);
    }
    return out;
}

} // namespace cfgdetail

inline RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    static const std::set<std::string> known = {"case",      "n",       "m",      "lambda",
                                                "nu",        "J",       "pi_rates", "rho_rates",
                                                "seed",      "samples", "tol",    "suites",
                                                "report",    "self_test", "timings"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");

    RunConfig cfg;
    if (j.contains("case")) cfg.c = case_from_name(j.at("case").get<std::string>());
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("m")) cfg.m = j.at("m").get<int>();
    if (j.contains("lambda")) cfg.lambda = cfgdetail::rational_from_json(j.at("lambda"), "lambda");
    if (j.contains("nu")) cfg.nu = cfgdetail::rational_from_json(j.at("nu"), "nu");
    if (j.contains("J")) cfg.J = cfgdetail::matrix_from_json(j.at("J"), "J");
    if (j.contains("pi_rates"))
        cfg.pi_rates = cfgdetail::matrix_from_json(j.at("pi_rates"), "pi_rates");
    if (j.contains("rho_rates"))
        cfg.rho_rates = cfgdetail::matrix_from_json(j.at("rho_rates"), "rho_rates");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("suites")) cfg.suites = j.at("suites").get<std::vector<std::string>>();
    if (j.contains("report")) cfg.report = j.at("report").get<std::string>();
    if (j.contains("self_test")) cfg.self_test = j.at("self_test").get<bool>();
    if (j.contains("timings")) cfg.timings = j.at("timings").get<bool>();
    validate_config(cfg);
    return cfg;
}

/// Load a JSON config file; malformed JSON is reported as
/// "path:line:column: reason".
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

} // namespace plq

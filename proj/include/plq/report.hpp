#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plq/errors.hpp"
#include "plq/rational.hpp"

namespace plq {

/// One verified identity.  Exact checks carry a rational residual and pass
/// only when it is literally zero; sampled checks carry a decimal residual
/// compared against the configured tolerance.
struct CheckRecord {
    std::string suite;
    std::string name;
    bool passed = false;
    bool exact = true;
    std::string residual;
    std::string note;
};

inline std::string residual_string(const Rational& r) { return rational_to_string(r); }

inline std::string residual_string(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline CheckRecord exact_record(std::string suite, std::string name, const Rational& residual,
                                std::string note = "") {
    CheckRecord rec;
    rec.suite = std::move(suite);
    rec.name = std::move(name);
    rec.passed = residual == 0;
    rec.exact = true;
    rec.residual = residual_string(residual);
    rec.note = std::move(note);
    return rec;
}

inline CheckRecord sampled_record(std::string suite, std::string name, double residual,
                                  double tol, std::string note = "") {
    CheckRecord rec;
    rec.suite = std::move(suite);
    rec.name = std::move(name);
    rec.passed = residual <= tol;
    rec.exact = false;
    rec.residual = residual_string(residual);
    rec.note = std::move(note);
    return rec;
}

/// A record that passes when a deliberately broken input is detected,
/// i.e. when the residual is nonzero.
inline CheckRecord detection_record(std::string suite, std::string name, const Rational& residual,
                                    std::string note = "") {
    CheckRecord rec;
    rec.suite = std::move(suite);
    rec.name = std::move(name);
    rec.passed = residual > 0;
    rec.exact = true;
    rec.residual = residual_string(residual);
    rec.note = std::move(note);
    return rec;
}

inline CheckRecord detection_record(std::string suite, std::string name, double residual,
                                    double threshold, std::string note = "") {
    CheckRecord rec;
    rec.suite = std::move(suite);
    rec.name = std::move(name);
    rec.passed = residual > threshold;
    rec.exact = false;
    rec.residual = residual_string(residual);
    rec.note = std::move(note);
    return rec;
}

struct Report {
    std::string case_id;
    int n = 1;
    int m = 1;
    std::uint64_t seed = 0;
    int samples = 0;
    double tol = 0;
    std::vector<std::string> suites;
    std::vector<CheckRecord> records;
    bool timings = false;
    double elapsed_seconds = 0;

    int passed_count() const {
        int k = 0;
        for (const auto& r : records) k += r.passed ? 1 : 0;
        return k;
    }
    bool all_passed() const { return passed_count() == int(records.size()); }
};

/// Deterministic JSON rendering: fixed key order, residuals as strings,
/// wall-clock time only when explicitly requested.
inline std::string report_json(const Report& rep) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["case"] = rep.case_id;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    j["tol"] = rep.tol;
    j["suites"] = rep.suites;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.records) {
        nlohmann::ordered_json c;
        c["suite"] = r.suite;
        c["name"] = r.name;
        c["passed"] = r.passed;
        c["exact"] = r.exact;
        c["residual"] = r.residual;
        if (!r.note.empty()) c["note"] = r.note;
        j["checks"].push_back(c);
    }
    j["summary"]["total"] = int(rep.records.size());
    j["summary"]["passed"] = rep.passed_count();
    j["summary"]["all_passed"] = rep.all_passed();
    if (rep.timings) j["elapsed_seconds"] = rep.elapsed_seconds;
    return j.dump(2) + "\n";
}

inline std::string report_text(const Report& rep) {
    std::ostringstream os;
    os << "case " << rep.case_id << " (n=" << rep.n << ", m=" << rep.m << "), seed " << rep.seed
       << ", samples " << rep.samples << ", tol " << rep.tol << "\n";
    os << "suites:";
    for (const auto& s : rep.suites) os << " " << s;
    os << "\n\n";
    std::size_t width = 0;
    for (const auto& r : rep.records) width = std::max(width, r.suite.size() + r.name.size() + 1);
    for (const auto& r : rep.records) {
        std::string label = r.suite + "/" + r.name;
        os << (r.passed ? "[PASS] " : "[FAIL] ") << label
           << std::string(width - label.size() + 2, ' ') << r.residual
           << (r.exact ? " (exact)" : " (sampled)");
        if (!r.note.empty()) os << "  -- " << r.note;
        os << "\n";
    }
    os << "\n" << rep.passed_count() << "/" << rep.records.size() << " checks passed\n";
    if (rep.timings)
        os << "elapsed: " << std::setprecision(3) << rep.elapsed_seconds << " s\n";
    return os.str();
}

/// Write both renderings into a directory (used with PLQ_REPORT_DIR).
inline void write_report_files(const Report& rep, const std::string& dir) {
    std::ofstream txt(dir + "/report.txt");
    std::ofstream js(dir + "/report.json");
    if (!txt || !js) throw ConfigError("cannot write reports into '" + dir + "'");
    txt << report_text(rep);
    js << report_json(rep);
}

} // namespace plq

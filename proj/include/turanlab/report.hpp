#pragma once

// Machine-readable reports. Numbers are written in shortest round-trip form so a
// report can be reloaded and compared bit-for-bit against a re-run.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "turanlab/bounds.hpp"
#include "turanlab/certify.hpp"
#include "turanlab/oscillation.hpp"
#include "turanlab/polynomial.hpp"
#include "turanlab/verify.hpp"

namespace turanlab {

inline constexpr const char* tool_name = "turanlab";
inline constexpr const char* tool_version = "1.0.0";

using nlohmann::json;

/// JSON cannot carry infinities; encode them as the strings "inf" and "-inf".
inline json number_json(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    return x;
}

inline double number_from_json(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return infinity;
        if (s == "-inf") return -infinity;
        return std::numeric_limits<double>::quiet_NaN();
    }
    return v.get<double>();
}

inline json point_json(PlanePoint z) { return json::array({z.real(), z.imag()}); }

inline json roots_json(const std::vector<PlanePoint>& roots) {
    json a = json::array();
    for (const auto& r : roots) a.push_back(point_json(r));
    return a;
}

inline std::vector<PlanePoint> roots_from_json(const json& a) {
    std::vector<PlanePoint> out;
    for (const auto& r : a) out.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
    return out;
}

/// Envelope shared by all commands.
inline json report_envelope(const std::string& command, const std::string& domain, json parameters,
                            std::uint64_t seed, double wall_time) {
    return {{"tool", tool_name},     {"version", tool_version},   {"command", command}, {"domain", domain},
            {"parameters", parameters}, {"seed", seed},           {"wall_time_s", wall_time}};
}

inline json certificate_json(const ECertificate& c) {
    return {{"k", c.k},
            {"d", c.d},
            {"Delta", c.delta_cap},
            {"Delta_bracket", {c.delta_lower, c.delta_upper}},
            {"fekete_estimate", c.fekete_estimate},
            {"kappa", number_json(c.kappa)},
            {"xi", c.xi},
            {"delta", c.delta_small},
            {"lambda", c.lambdas},
            {"status", to_string(c.status)}};
}

inline json constants_json(const ErodConstants& k) {
    return {{"theta", k.theta}, {"eta", k.eta}, {"n0", k.n0}, {"RK", k.RK}, {"cK", k.cK}};
}

inline json bound_rows_json(const std::vector<BoundRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        json row = {{"label", r.label},
                    {"formula", r.source},
                    {"kind", r.kind == BoundKind::Lower ? "lower" : "upper"},
                    {"applicable", r.applicable}};
        row["value"] = r.applicable ? json(r.value) : json(nullptr);
        if (!r.note.empty()) row["note"] = r.note;
        a.push_back(row);
    }
    return a;
}

inline json norm_json(const NormReport& r) {
    return {{"value", r.value},
            {"log_value", r.log_value},
            {"error_estimate", r.error_estimate},
            {"argmax_param", r.argmax_param},
            {"quadrature_nodes", r.quadrature_nodes},
            {"converged", r.converged}};
}

inline json search_json(const SearchResult& r) {
    return {{"best_ratio", r.best_ratio},
            {"witness_roots", roots_json(r.witness.roots)},
            {"evaluations", r.evaluations},
            {"converged", r.converged},
            {"family", r.family},
            {"trace_length", r.trace.size()}};
}

inline json record_json(const CaseRecord& r) {
    json j = {{"domain", r.domain}, {"suite", r.suite},   {"case_id", r.case_id},
              {"n", r.n},           {"q", number_json(r.q)}, {"lhs", number_json(r.lhs)},
              {"rhs", number_json(r.rhs)}, {"margin", number_json(r.margin)}, {"pass", r.pass},
              {"seed", r.seed},     {"roots", roots_json(r.roots)}};
    j["sample"] = r.sample ? point_json(*r.sample) : json(nullptr);
    return j;
}

inline json verify_json(const VerifyReport& v) {
    json records = json::array();
    for (const auto& r : v.records) records.push_back(record_json(r));
    return {{"certified", v.certified},
            {"certification_error", v.certification_error},
            {"cases", v.records.size()},
            {"failures", v.failures()},
            {"records", records}};
}

inline json verify_parameters_json(const VerifyOptions& o) {
    return {{"n", o.n},
            {"q", number_json(o.q)},
            {"trials", o.trials},
            {"seed", o.seed},
            {"optimizer_cases", o.optimizer_cases},
            {"optimizer_budget", o.optimizer_budget},
            {"oracle_cases", o.oracle_cases},
            {"oracle_points", o.oracle_points}};
}

inline VerifyOptions verify_parameters_from_json(const json& j) {
    VerifyOptions o;
    o.n = j.at("n").get<int>();
    o.q = number_from_json(j.at("q"));
    o.trials = j.at("trials").get<int>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.optimizer_cases = j.at("optimizer_cases").get<int>();
    o.optimizer_budget = j.at("optimizer_budget").get<long long>();
    o.oracle_cases = j.at("oracle_cases").get<int>();
    o.oracle_points = j.at("oracle_points").get<std::size_t>();
    return o;
}

inline std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline const char* csv_header = "domain,suite,case_id,n,q,lhs,rhs,margin,pass,seed";

inline void write_csv(std::ostream& os, const std::vector<CaseRecord>& records, bool header = true) {
    if (header) os << csv_header << '\n';
    for (const auto& r : records) {
        os << r.domain << ',' << r.suite << ',' << r.case_id << ',' << r.n << ',' << format_double(r.q) << ','
           << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.margin) << ','
           << (r.pass ? "true" : "false") << ',' << r.seed << '\n';
    }
}

} // namespace turanlab

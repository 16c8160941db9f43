#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "turanlab/turanlab.hpp"

#ifndef TURANLAB_CORPUS_DIR
#define TURANLAB_CORPUS_DIR "data/domains"
#endif

namespace fs = std::filesystem;
using namespace turanlab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_falsified = 1;
constexpr int exit_usage = 2;

double parse_q(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "sup") return infinity;
    std::size_t used = 0;
    double q = 0.0;
    try {
        q = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "q must be a number >= 1 or inf");
    return q;
}

/// Roots as JSON [[x, y], ...] or "x,y;x,y", given inline or as a file path.
std::vector<PlanePoint> parse_roots(const std::string& arg) {
    std::string text = arg;
    if (fs::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        try {
            return roots_from_json(json::parse(text));
        } catch (const std::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("roots: ") + e.what());
        }
    }
    std::vector<PlanePoint> roots;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        double x = 0.0, y = 0.0;
        char comma = 0;
        std::stringstream is(item);
        if (!(is >> x >> comma >> y) || comma != ',') {
            throw Error(ErrorKind::ParseError, "roots: cannot parse \"" + item + "\" as x,y");
        }
        roots.emplace_back(x, y);
    }
    if (roots.empty()) throw Error(ErrorKind::ParseError, "roots: no roots given");
    return roots;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out);
    f << j.dump(2) << '\n';
}

struct CertifyOutcome {
    json body;
    bool falsified = false;
};

CertifyOutcome certify_body(const DomainSpec& spec) {
    CertifyOutcome out;
    try {
        const auto cert = certify(spec.decomposition);
        const auto k = erod_constants(cert);
        const auto circ = check_partial_r_circular(spec.decomposition, cert, k.RK);
        out.body = {{"certificate", certificate_json(cert)},
                    {"constants", constants_json(k)},
                    {"partial_r_circular",
                     {{"R", k.RK},
                      {"max_violation", circ.max_violation},
                      {"violation_found", circ.violation_found},
                      {"witness", point_json(circ.witness)}}}};
        out.falsified = circ.violation_found && cert.status == CertificationStatus::Certified;
    } catch (const Error& e) {
        out.body = {{"certificate", nullptr}, {"rejected", std::string(to_string(e.kind()))}, {"reason", e.what()}};
    }
    return out;
}

json bounds_body(const DomainSpec& spec, int n, std::optional<double> R) {
    const auto& b = spec.decomposition.boundary;
    const auto g = summarize(b);
    ComparisonInputs in;
    in.R = R;
    bool all_curved = true;
    for (auto t : spec.decomposition.tags) all_curved = all_curved && t == PieceTag::Curved;
    try {
        const auto cert = certify(spec.decomposition);
        if (cert.status == CertificationStatus::Certified) in.cK = erod_constants(cert).cK;
        if (all_curved && std::isfinite(cert.kappa)) in.kappa = cert.kappa;
    } catch (const Error&) {
    }
    return {{"geometry",
             {{"diameter", g.diameter},
              {"width", g.width},
              {"perimeter", g.perimeter},
              {"depth", g.depth},
              {"Delta_bracket", {g.transfinite_lower, g.transfinite_upper}}}},
            {"n", n},
            {"rows", bound_rows_json(comparison_bounds(g, in, n))}};
}

json verify_document(const DomainSpec& spec, const VerifyOptions& opt, const VerifyReport& rep, double wall) {
    auto j = report_envelope("verify", spec.name, verify_parameters_json(opt), opt.seed, wall);
    j["domain_spec"] = domain_spec_json(spec);
    j["result"] = verify_json(rep);
    return j;
}

void write_verify(const DomainSpec& spec, const VerifyOptions& opt, const VerifyReport& rep, double wall,
                  const std::string& format, const std::string& out) {
    if (format == "json") {
        emit(verify_document(spec, opt, rep, wall), out);
        return;
    }
    if (out.empty()) {
        write_csv(std::cout, rep.records);
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out);
    write_csv(f, rep.records);
}

bool same_number(const json& a, const json& b) {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>(), y = b.get<double>();
        return std::memcmp(&x, &y, sizeof x) == 0;
    }
    return a == b;
}

/// Compares every record field of two verify results; reports the first mismatch.
bool records_identical(const json& a, const json& b, std::string& where) {
    const auto& ra = a.at("records");
    const auto& rb = b.at("records");
    if (ra.size() != rb.size()) {
        where = "record count";
        return false;
    }
    for (std::size_t i = 0; i < ra.size(); ++i) {
        for (const auto& [key, value] : ra[i].items()) {
            if (!rb[i].contains(key) || !(value.is_number() ? same_number(value, rb[i][key]) : value == rb[i][key])) {
                where = "record " + std::to_string(i) + " field " + key;
                return false;
            }
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turan-type inequalities on convex domains: certification, norms, bounds and falsification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::string spec_path, roots_arg, q_arg = "inf", format = "csv", out_path, out_dir, corpus = TURANLAB_CORPUS_DIR;
    std::string method = "nelder-mead";
    int n = 8, restarts = 4, trials = 50;
    long long budget = 20000;
    std::uint64_t seed = 1;
    double R = 0.0;

    auto* c_certify = app.add_subcommand("certify", "Extract E-domain parameters and constants");
    c_certify->add_option("spec", spec_path, "Domain specification (JSON)")->required();
    c_certify->add_option("--out", out_path, "Write the report here instead of stdout");

    auto* c_bounds = app.add_subcommand("bounds", "Table of known lower bounds for ||p'||/||p||");
    c_bounds->add_option("spec", spec_path)->required();
    c_bounds->add_option("--n", n, "Degree")->required()->check(CLI::PositiveNumber);
    auto* r_opt = c_bounds->add_option("--R", R, "Circularity radius of the domain")->check(CLI::PositiveNumber);
    c_bounds->add_option("--out", out_path);

    auto* c_norms = app.add_subcommand("norms", "Boundary norms of a polynomial given by its roots");
    c_norms->add_option("spec", spec_path)->required();
    c_norms->add_option("--roots", roots_arg, "File or inline list: [[x,y],...] or x,y;x,y")->required();
    c_norms->add_option("--q", q_arg, "1, 2, 4, ... or inf")->required();
    c_norms->add_option("--out", out_path);

    auto* c_estimate = app.add_subcommand("estimate", "Minimize ||p'||/||p|| over root configurations");
    c_estimate->add_option("spec", spec_path)->required();
    c_estimate->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    c_estimate->add_option("--q", q_arg)->required();
    c_estimate->add_option("--budget", budget, "Objective evaluations")->check(CLI::Range(100LL, 1LL << 40));
    c_estimate->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
    c_estimate->add_option("--seed", seed);
    c_estimate->add_option("--method", method)->check(CLI::IsMember({"nelder-mead", "random-perturbation"}));
    c_estimate->add_option("--out", out_path);

    auto* c_verify = app.add_subcommand("verify", "Run the property suites on random and optimized polynomials");
    c_verify->add_option("spec", spec_path)->required();
    c_verify->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    c_verify->add_option("--q", q_arg)->required();
    c_verify->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
    c_verify->add_option("--seed", seed);
    c_verify->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    c_verify->add_option("--out", out_path);

    auto* c_report = app.add_subcommand("report", "Certify, bound and verify every domain of a corpus");
    c_report->add_option("--out", out_dir, "Output directory")->required();
    c_report->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    c_report->add_option("--corpus", corpus, "Directory of domain specifications");
    c_report->add_option("--n", n)->check(CLI::PositiveNumber);
    std::string report_q = "2";
    c_report->add_option("--q", report_q);
    c_report->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
    c_report->add_option("--seed", seed);

    std::string replay_path;
    auto* c_replay = app.add_subcommand("replay", "Re-run a JSON verify report and compare every field bit-for-bit");
    c_replay->add_option("report", replay_path)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (*c_certify) {
            const auto spec = load_domain_spec(spec_path);
            auto outcome = certify_body(spec);
            auto j = report_envelope("certify", spec.name, json::object(), 0, seconds_since(t0));
            j["result"] = outcome.body;
            emit(j, out_path);
            return outcome.falsified ? exit_falsified : exit_ok;
        }
        if (*c_bounds) {
            const auto spec = load_domain_spec(spec_path);
            std::optional<double> r;
            if (r_opt->count()) r = R;
            auto body = bounds_body(spec, n, r);
            json params = {{"n", n}};
            params["R"] = r ? json(*r) : json(nullptr);
            auto j = report_envelope("bounds", spec.name, params, 0, seconds_since(t0));
            j["result"] = body;
            emit(j, out_path);
            return exit_ok;
        }
        if (*c_norms) {
            const auto spec = load_domain_spec(spec_path);
            const double q = parse_q(q_arg);
            const RootPolynomial p{parse_roots(roots_arg)};
            const auto& b = spec.decomposition.boundary;
            json body = {{"degree", p.degree()},
                         {"sup_p", norm_json(sup_norm(p, b, NormTarget::P))},
                         {"sup_dp", norm_json(sup_norm(p, b, NormTarget::Pprime))}};
            body["ratio"] = ratio(p, b, q);
            bool outside = false;
            for (const auto& z : p.roots) outside = outside || !contains(b, z, 1e-12 * diameter(b));
            body["roots_in_domain"] = !outside;
            if (!is_sup(q)) {
                body["lq_p"] = norm_json(lq_norm(NormTarget::P, p, b, q));
                body["lq_dp"] = norm_json(lq_norm(NormTarget::Pprime, p, b, q));
                const auto H = h_set(p, b, q);
                json intervals = json::array();
                for (const auto& [a, c] : H.intervals) intervals.push_back({a, c});
                body["h_set"] = {{"intervals", intervals},
                                 {"mass_fraction", H.mass_fraction},
                                 {"log_threshold", H.log_threshold},
                                 {"constant", h_set_constant(q)}};
                body["nikolskii_factor"] = nikolskii_bound(diameter(b), q, static_cast<int>(p.degree()));
            }
            auto j = report_envelope("norms", spec.name,
                                     {{"q", number_json(q)}, {"roots", roots_json(p.roots)}}, 0, seconds_since(t0));
            j["result"] = body;
            emit(j, out_path);
            return exit_ok;
        }
        if (*c_estimate) {
            const auto spec = load_domain_spec(spec_path);
            SearchConfig cfg;
            cfg.n = n;
            cfg.q = parse_q(q_arg);
            cfg.budget = budget;
            cfg.restarts = restarts;
            cfg.seed = seed;
            cfg.method = method == "nelder-mead" ? SearchMethod::NelderMead : SearchMethod::RandomPerturbation;
            const auto res = estimate_oscillation(spec.decomposition.boundary, cfg);
            const auto bounds = bounds_body(spec, n, std::nullopt);
            double lower = 0.0;
            for (const auto& row : bounds["rows"]) {
                if (row["kind"] == "lower" && row["applicable"].get<bool>()) lower = std::max(lower, row["value"].get<double>());
            }
            const bool falsified = res.best_ratio < lower * (1.0 - quadrature_slack);
            json params = {{"n", n},           {"q", number_json(cfg.q)}, {"budget", budget},
                           {"restarts", restarts}, {"method", method}};
            auto j = report_envelope("estimate", spec.name, params, seed, seconds_since(t0));
            j["result"] = search_json(res);
            j["result"]["best_lower_bound"] = lower;
            j["result"]["lower_bound_respected"] = !falsified;
            emit(j, out_path);
            return falsified ? exit_falsified : exit_ok;
        }
        if (*c_verify) {
            const auto spec = load_domain_spec(spec_path);
            VerifyOptions opt;
            opt.n = n;
            opt.q = parse_q(q_arg);
            opt.trials = trials;
            opt.seed = seed;
            const auto rep = verify_domain(spec, opt);
            write_verify(spec, opt, rep, seconds_since(t0), format, out_path);
            std::cerr << spec.name << ": " << rep.records.size() << " cases, " << rep.failures() << " failures\n";
            return rep.failures() ? exit_falsified : exit_ok;
        }
        if (*c_report) {
            fs::create_directories(out_dir);
            std::vector<fs::path> specs;
            for (const auto& e : fs::directory_iterator(corpus)) {
                if (e.path().extension() == ".json") specs.push_back(e.path());
            }
            std::sort(specs.begin(), specs.end());
            if (specs.empty()) throw Error(ErrorKind::InvalidArgument, "no domain specifications in " + corpus);
            bool falsified = false;
            json summary = json::array();
            for (const auto& path : specs) {
                const auto spec = load_domain_spec(path.string());
                const auto t1 = std::chrono::steady_clock::now();
                auto cert = certify_body(spec);
                auto cj = report_envelope("certify", spec.name, json::object(), 0, seconds_since(t1));
                cj["result"] = cert.body;
                emit(cj, (fs::path(out_dir) / (spec.name + ".certify.json")).string());

                VerifyOptions opt;
                opt.n = n;
                opt.q = parse_q(report_q);
                opt.trials = trials;
                opt.seed = seed;
                const auto t2 = std::chrono::steady_clock::now();
                const auto rep = verify_domain(spec, opt);
                const auto file = fs::path(out_dir) / (spec.name + ".verify." + format);
                write_verify(spec, opt, rep, seconds_since(t2), format, file.string());
                falsified = falsified || cert.falsified || rep.failures() > 0;
                summary.push_back({{"domain", spec.name},
                                   {"certified", rep.certified},
                                   {"cases", rep.records.size()},
                                   {"failures", rep.failures()},
                                   {"file", file.filename().string()}});
                std::cerr << spec.name << ": " << rep.records.size() << " cases, " << rep.failures() << " failures\n";
            }
            auto j = report_envelope("report", "corpus", {{"corpus", corpus}, {"n", n}, {"trials", trials}}, seed,
                                     seconds_since(t0));
            j["result"] = summary;
            emit(j, (fs::path(out_dir) / "summary.json").string());
            return falsified ? exit_falsified : exit_ok;
        }
        if (*c_replay) {
            std::ifstream in(replay_path);
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                throw Error(ErrorKind::ParseError, replay_path + ": " + e.what());
            }
            if (doc.value("command", "") != "verify") {
                throw Error(ErrorKind::ValidationError, "replay needs a JSON report written by verify");
            }
            const auto spec = parse_domain_spec(doc.at("domain_spec").dump(), replay_path);
            const auto opt = verify_parameters_from_json(doc.at("parameters"));
            const auto rerun = verify_json(verify_domain(spec, opt));
            std::string where;
            const bool same = records_identical(doc.at("result"), rerun, where);
            std::cout << (same ? "identical" : "mismatch at " + where) << '\n';
            return same ? exit_ok : exit_falsified;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

#pragma once

// Property suites: every inequality is evaluated on random and optimizer-produced
// polynomials and recorded with its witness so failures can be replayed.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turanlab/bounds.hpp"
#include "turanlab/certify.hpp"
#include "turanlab/domain_spec.hpp"
#include "turanlab/oscillation.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/polynomial.hpp"

namespace turanlab {

struct CaseRecord {
    std::string domain;
    std::string suite;
    std::string case_id;
    int n = 0;
    double q = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; ///< lhs - rhs, oriented so that a negative value beyond tolerance fails
    bool pass = true;
    std::uint64_t seed = 0;
    std::vector<PlanePoint> roots;     ///< witness polynomial
    std::optional<PlanePoint> sample;  ///< boundary point where the inequality was tightest
};

struct VerifyOptions {
    int n = 8;
    double q = 2.0;
    int trials = 50;
    std::uint64_t seed = 1;
    int optimizer_cases = 2;
    long long optimizer_budget = 400;
    int oracle_cases = 2;                   ///< polynomials compared against the Riemann reference
    std::size_t oracle_points = 1u << 20;
};

struct VerifyReport {
    std::string domain;
    VerifyOptions options;
    bool certified = false;
    std::string certification_error;
    std::vector<CaseRecord> records;

    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& r : records) f += !r.pass;
        return f;
    }
};

/// Relative slack granted to inequalities whose sides come from quadrature.
inline constexpr double quadrature_slack = 1e-6;

namespace detail {

struct SuiteContext {
    const DomainSpec& spec;
    const VerifyOptions& opt;
    const ConvexBoundary& b;
    double d = 0.0;
    double delta_lower = 0.0;
    std::optional<ECertificate> cert;
    std::optional<ErodConstants> constants;
    bool all_curved = false;
    std::vector<BoundRow> comparison;
};

inline CaseRecord make_record(const SuiteContext& ctx, const char* suite, const std::string& id, double lhs, double rhs,
                              double tolerance, std::uint64_t seed, const RootPolynomial& p) {
    CaseRecord r;
    r.domain = ctx.spec.name;
    r.suite = suite;
    r.case_id = id;
    r.n = static_cast<int>(p.degree());
    r.q = ctx.opt.q;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.pass = r.margin >= -tolerance;
    r.seed = seed;
    r.roots = p.roots;
    return r;
}

/// Suites evaluated on one polynomial p of P_n(K).
inline void polynomial_suites(const SuiteContext& ctx, const std::string& id, std::uint64_t seed,
                              const RootPolynomial& p, bool with_oracle, std::vector<CaseRecord>& out) {
    const auto& b = ctx.b;
    const double q = ctx.opt.q;
    const double n = static_cast<double>(p.degree());
    const bool finite_q = !is_sup(q);
    const auto sup = sup_norm(p, b);
    const double r = ratio(p, b, q);

    if (finite_q) {
        const auto norm = lq_norm(NormTarget::P, p, b, q);
        const double lhs = std::exp(norm.log_value - sup.log_value);
        const double rhs = nikolskii_bound(ctx.d, q, static_cast<int>(n));
        out.push_back(make_record(ctx, "nikolskii", id, lhs, rhs, quadrature_slack * rhs, seed, p));

        const auto H = h_set(p, b, q);
        out.push_back(make_record(ctx, "h_set_mass", id, H.mass_fraction, 0.5, 1e-9, seed, p));

        // Largest log(||p|| / |p(zeta)|) over H, sampled along each interval.
        double worst = -infinity;
        PlanePoint where{};
        for (const auto& [a, c] : H.intervals) {
            for (int i = 0; i <= 64; ++i) {
                const PlanePoint z = point_at(b, a + (c - a) * i / 64.0);
                const double v = sup.log_value - log_moduli(p, z).log_p;
                if (v > worst) {
                    worst = v;
                    where = z;
                }
            }
        }
        const double bound = std::log(16.0 * pi) + 2.0 * std::log(n);
        auto rec = make_record(ctx, "h_set_depth", id, bound, worst, 1e-9, seed, p);
        rec.sample = where;
        out.push_back(rec);

        if (with_oracle) {
            const double ref = riemann_lq_norm(NormTarget::P, p, b, q, ctx.opt.oracle_points);
            const double rel = std::abs(norm.value - ref) / ref;
            out.push_back(make_record(ctx, "quadrature_oracle", id, 1e-6, rel, 0.0, seed, p));
        }
    }

    out.push_back(make_record(ctx, "gabriel", id, r, 0.022 / ctx.d, quadrature_slack * r, seed, p));

    if (ctx.constants) {
        const double rhs = ctx.constants->cK * n;
        out.push_back(make_record(ctx, "e_domain", id, r, rhs, quadrature_slack * rhs, seed, p));
    }

    const double lower = best_lower_bound(ctx.comparison);
    out.push_back(make_record(ctx, "comparison_lower", id, r, lower, quadrature_slack * lower, seed, p));

    if (ctx.cert && ctx.all_curved) {
        // |p'/p| >= n / (2 R_K) pointwise on an R_K-circular boundary.
        const double rhs = n / (2.0 * ctx.constants->RK);
        double worst = infinity;
        PlanePoint where{};
        const double L = b.total_length();
        for (int i = 0; i < 256; ++i) {
            const PlanePoint z = point_at(b, L * i / 256.0);
            bool at_root = false;
            for (const auto& root : p.roots) at_root = at_root || std::abs(z - root) <= 1e-12 * ctx.d;
            if (at_root) continue;
            const double v = std::abs(log_derivative(p, z));
            if (v < worst) {
                worst = v;
                where = z;
            }
        }
        auto rec = make_record(ctx, "pointwise_turan", id, worst, rhs, 1e-12 * rhs, seed, p);
        rec.sample = where;
        out.push_back(rec);
    }

    if (ctx.cert && !ctx.all_curved) {
        const auto& td = ctx.spec.decomposition;
        double straight_fail_mass = 0.0;
        for (std::size_t j = 0; j < td.tags.size(); ++j) {
            if (td.tags[j] != PieceTag::Straight) continue;
            const auto alt = classify_segment_alternative(p, td, *ctx.cert, j);
            // Positive when the better branch holds at every sample.
            const double m_i = alt.fails_i.lhs - alt.fails_i.rhs;
            const double m_ii = alt.fails_ii.rhs - alt.fails_ii.lhs;
            const bool ok = alt.holds_i || alt.holds_ii;
            auto rec = make_record(ctx, "segment_alternative", id + "/piece" + std::to_string(j), std::max(m_i, m_ii),
                                   0.0, 0.0, seed, p);
            rec.pass = ok;
            rec.sample = alt.holds_i ? alt.fails_ii.point : alt.fails_i.point;
            out.push_back(rec);
            if (!alt.holds_i && finite_q && n >= ctx.constants->n0) {
                const double s0 = b.vertex_params()[j];
                straight_fail_mass +=
                    integrate_power(p, b, NormTarget::P, q, sup.log_value, s0, s0 + b.piece(j).length()).value;
            }
        }
        if (finite_q && n >= ctx.constants->n0) {
            const double total = integrate_power(p, b, NormTarget::P, q, sup.log_value, 0.0, b.total_length()).value;
            out.push_back(make_record(ctx, "assembly", id, 0.5, straight_fail_mass / total, 1e-12, seed, p));
        }
    }
}

} // namespace detail

/// Runs every applicable suite on one domain.
inline VerifyReport verify_domain(const DomainSpec& spec, const VerifyOptions& opt) {
    if (opt.n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (opt.trials < 0) throw Error(ErrorKind::InvalidArgument, "trials must be nonnegative");
    if (!(opt.q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "q must be at least 1 or inf");
    const auto& b = spec.decomposition.boundary;
    VerifyReport report;
    report.domain = spec.name;
    report.options = opt;

    detail::SuiteContext ctx{spec, opt, b, 0.0, 0.0, std::nullopt, std::nullopt, false, {}};
    ctx.d = diameter(b);
    ctx.delta_lower = transfinite_lower_bound(b, ctx.d);
    ctx.all_curved = true;
    for (auto t : spec.decomposition.tags) ctx.all_curved = ctx.all_curved && t == PieceTag::Curved;
    try {
        ctx.cert = certify(spec.decomposition);
        if (ctx.cert->status == CertificationStatus::Certified) {
            ctx.constants = erod_constants(*ctx.cert);
            report.certified = true;
        } else {
            ctx.cert.reset();
            report.certification_error = "only plausible: straight pieces exceed the guaranteed capacity bound";
        }
    } catch (const Error& e) {
        report.certification_error = e.what();
    }

    ComparisonInputs inputs;
    if (ctx.cert && ctx.all_curved && std::isfinite(ctx.cert->kappa)) {
        inputs.R = 1.0 / ctx.cert->kappa;
        inputs.kappa = ctx.cert->kappa;
    }
    if (ctx.constants) inputs.cK = ctx.constants->cK;
    const GeometrySummary g{ctx.d, width(b), perimeter(b), depth(b).depth, ctx.delta_lower, ctx.d / 2.0};
    ctx.comparison = comparison_bounds(g, inputs, opt.n);

    const std::size_t trials = static_cast<std::size_t>(opt.trials);
    const std::size_t jobs = trials + static_cast<std::size_t>(std::max(0, opt.optimizer_cases)) + 2;
    std::vector<std::vector<CaseRecord>> per_job(jobs);
    parallel_for(jobs, [&](std::size_t job) {
        auto& out = per_job[job];
        if (job < trials) {
            const std::uint64_t s = splitmix64(opt.seed ^ (0x1000 + job));
            const auto p = random_poly(b, opt.n, s);
            detail::polynomial_suites(ctx, "random/" + std::to_string(job), s, p,
                                      job < static_cast<std::size_t>(opt.oracle_cases), out);
        } else if (job < jobs - 2) {
            const std::size_t k = job - trials;
            SearchConfig cfg;
            cfg.n = opt.n;
            cfg.q = opt.q;
            cfg.budget = opt.optimizer_budget;
            cfg.restarts = 1;
            cfg.seed = splitmix64(opt.seed ^ (0x2000 + k));
            const auto res = estimate_oscillation(b, cfg);
            detail::polynomial_suites(ctx, "optimizer/" + std::to_string(k), cfg.seed, res.witness, false, out);
        } else if (job == jobs - 2) {
            // ||p|| >= (capacity lower bound)^n for monic p with roots anywhere.
            const auto box = bounding_box(b);
            const double span = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
            for (int t = 0; t < std::max(1, opt.trials / 4); ++t) {
                const std::uint64_t s = splitmix64(opt.seed ^ (0x3000 + t));
                std::mt19937_64 rng(s);
                std::uniform_real_distribution<double> u(-1.5 * span, 1.5 * span);
                RootPolynomial p;
                for (int i = 0; i < opt.n; ++i) p.roots.emplace_back(u(rng), u(rng));
                const double lhs = sup_norm(p, b).log_value;
                const double rhs = opt.n * std::log(ctx.delta_lower);
                out.push_back(detail::make_record(ctx, "capacity_sup", "anywhere/" + std::to_string(t), lhs, rhs,
                                                  1e-9 * std::max(1.0, std::abs(rhs)), s, p));
            }
        } else {
            const auto w = upper_bound_witness(b, opt.n, opt.q, opt.optimizer_budget, opt.seed);
            auto rec = detail::make_record(ctx, "witness_upper", w.family, 15.0 * opt.n / ctx.d, w.best_ratio, 0.0,
                                           opt.seed, w.witness);
            rec.pass = w.converged;
            out.push_back(rec);
        }
    });
    for (auto& v : per_job) {
        for (auto& r : v) report.records.push_back(std::move(r));
    }
    return report;
}

} // namespace turanlab

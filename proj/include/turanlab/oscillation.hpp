#pragma once

// Upper estimates of the inverse Markov factor by minimizing ||p'|| / ||p||
// over root configurations inside K, and witness search for the 15 n / d bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "turanlab/capacity.hpp"
#include "turanlab/geometry.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/polynomial.hpp"

namespace turanlab {

enum class SearchMethod { NelderMead, RandomPerturbation };

struct SearchConfig {
    int n = 4;
    double q = infinity;
    long long budget = 2000;
    int restarts = 4;
    std::uint64_t seed = 1;
    SearchMethod method = SearchMethod::NelderMead;
};

struct SearchResult {
    double best_ratio = infinity;
    RootPolynomial witness;
    long long evaluations = 0;
    bool converged = false;
    std::vector<double> trace; ///< best ratio after each improvement step, nonincreasing
    std::string family;        ///< candidate family that produced the witness
    std::uint64_t sub_seed = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline void validate(const SearchConfig& cfg) {
    if (cfg.n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (cfg.budget < 100) throw Error(ErrorKind::InvalidArgument, "budget must be at least 100 evaluations");
    if (cfg.restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be positive");
    if (!(cfg.q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "q must be at least 1 or inf");
}

inline PlanePoint random_point(const ConvexBoundary& b, std::mt19937_64& rng) {
    const auto box = bounding_box(b);
    std::uniform_real_distribution<double> ux(box.xmin, box.xmax), uy(box.ymin, box.ymax);
    for (;;) {
        const PlanePoint z{ux(rng), uy(rng)};
        if (contains(b, z)) return z;
    }
}

/// n roots drawn uniformly from K by rejection from its bounding box.
inline RootPolynomial random_poly(const ConvexBoundary& b, int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    std::mt19937_64 rng(seed);
    RootPolynomial p;
    p.roots.reserve(n);
    for (int i = 0; i < n; ++i) p.roots.push_back(random_point(b, rng));
    return p;
}

namespace detail {

class RatioObjective {
public:
    RatioObjective(const ConvexBoundary& b, double q, long long budget) : b_(b), q_(q), budget_(budget) {}

    /// Projects the coordinates into K in place and returns the ratio there.
    double operator()(std::vector<double>& x) {
        ++evaluations_;
        RootPolynomial p = to_poly(x);
        for (std::size_t i = 0; i < p.roots.size(); ++i) {
            p.roots[i] = project_into(b_, p.roots[i]);
            x[2 * i] = p.roots[i].real();
            x[2 * i + 1] = p.roots[i].imag();
        }
        const double r = ratio(p, b_, q_);
        if (r < best_) {
            best_ = r;
            best_x_ = x;
            trace_.push_back(r);
        }
        return r;
    }

    static RootPolynomial to_poly(const std::vector<double>& x) {
        RootPolynomial p;
        for (std::size_t i = 0; i + 1 < x.size(); i += 2) p.roots.emplace_back(x[i], x[i + 1]);
        return p;
    }

    bool exhausted() const { return evaluations_ >= budget_; }
    long long evaluations() const { return evaluations_; }
    double best() const { return best_; }
    const std::vector<double>& best_x() const { return best_x_; }
    std::vector<double>& trace() { return trace_; }

private:
    const ConvexBoundary& b_;
    double q_;
    long long budget_;
    long long evaluations_ = 0;
    double best_ = infinity;
    std::vector<double> best_x_;
    std::vector<double> trace_;
};

inline std::vector<double> to_coords(const RootPolynomial& p) {
    std::vector<double> x;
    for (const auto& r : p.roots) {
        x.push_back(r.real());
        x.push_back(r.imag());
    }
    return x;
}

/// Nelder-Mead with standard coefficients on projected coordinates.
/// Returns true when the simplex collapses before the budget runs out.
inline bool nelder_mead(RatioObjective& f, std::vector<double> x0, double step, double ftol) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> fx(dim + 1);
    fx[0] = f(simplex[0]);
    for (std::size_t i = 0; i < dim && !f.exhausted(); ++i) {
        simplex[i + 1][i] += step;
        fx[i + 1] = f(simplex[i + 1]);
    }
    if (f.exhausted()) return false;

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto blend = [&](double t, const std::vector<double>& worst, std::vector<double>& out) {
        for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
    };
    while (!f.exhausted()) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];
        if (fx[worst] - fx[best] <= ftol * std::max(1e-300, std::abs(fx[best]))) return true;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;
        }
        blend(-1.0, simplex[worst], trial);
        const double fr = f(trial);
        if (fr < fx[best]) {
            blend(-2.0, simplex[worst], trial2);
            const double fe = f.exhausted() ? infinity : f(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                fx[worst] = fe;
            } else {
                simplex[worst] = trial;
                fx[worst] = fr;
            }
            continue;
        }
        if (fr < fx[second]) {
            simplex[worst] = trial;
            fx[worst] = fr;
            continue;
        }
        const bool outside = fr < fx[worst];
        blend(outside ? -0.5 : 0.5, simplex[worst], trial2);
        const double fc = f.exhausted() ? infinity : f(trial2);
        if (fc < std::min(fr, fx[worst])) {
            simplex[worst] = trial2;
            fx[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim && !f.exhausted(); ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            fx[i] = f(simplex[i]);
        }
    }
    return false;
}

/// Moves one random root at a time by a shrinking Gaussian step, keeping improvements.
inline bool random_perturbation(RatioObjective& f, std::vector<double> x, double step, std::mt19937_64& rng) {
    double fx = f(x);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = x.size() / 2;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    int failures = 0;
    while (!f.exhausted()) {
        std::vector<double> y = x;
        const std::size_t i = pick(rng);
        y[2 * i] += step * gauss(rng);
        y[2 * i + 1] += step * gauss(rng);
        const double fy = f(y);
        if (fy < fx) {
            x = std::move(y);
            fx = fy;
            failures = 0;
        } else if (++failures >= 8 * static_cast<int>(n)) {
            step *= 0.5;
            failures = 0;
            if (step < 1e-10) return true;
        }
    }
    return false;
}

inline SearchResult run_restart(const ConvexBoundary& b, const SearchConfig& cfg, std::uint64_t sub_seed,
                                long long budget, double d) {
    RatioObjective f(b, cfg.q, budget);
    const auto start = to_coords(random_poly(b, cfg.n, sub_seed));
    std::mt19937_64 rng(splitmix64(sub_seed));
    bool converged = false;
    if (cfg.method == SearchMethod::NelderMead) {
        // Restart the simplex from the incumbent until it stops improving or the budget runs out.
        std::vector<double> x = start;
        double step = 0.1 * d;
        double previous = infinity;
        while (!f.exhausted()) {
            const bool collapsed = nelder_mead(f, x, step, 1e-12);
            x = f.best_x();
            if (collapsed && !(f.best() < previous * (1.0 - 1e-10))) {
                converged = true;
                break;
            }
            previous = f.best();
            step = std::max(step * 0.5, 1e-6 * d);
        }
    } else {
        converged = random_perturbation(f, start, 0.1 * d, rng);
    }
    SearchResult r;
    r.best_ratio = f.best();
    r.witness = RatioObjective::to_poly(f.best_x());
    r.evaluations = f.evaluations();
    r.converged = converged;
    r.trace = std::move(f.trace());
    r.sub_seed = sub_seed;
    r.family = "optimizer";
    return r;
}

} // namespace detail

/// Minimizes the ratio over n roots in K from `restarts` random starts (run concurrently).
/// The returned best ratio is an upper bound for the inverse Markov factor.
inline SearchResult estimate_oscillation(const ConvexBoundary& b, const SearchConfig& cfg) {
    validate(cfg);
    const double d = diameter(b);
    const long long per_restart = std::max<long long>(cfg.budget / cfg.restarts, 2 * cfg.n + 2);
    std::vector<SearchResult> runs(cfg.restarts);
    parallel_for(runs.size(), [&](std::size_t r) {
        runs[r] = detail::run_restart(b, cfg, splitmix64(cfg.seed + r), per_restart, d);
    });
    SearchResult best = runs.front();
    long long evaluations = 0;
    bool any_converged = false;
    for (const auto& r : runs) {
        evaluations += r.evaluations;
        any_converged = any_converged || r.converged;
        if (r.best_ratio < best.best_ratio || (r.best_ratio == best.best_ratio && r.sub_seed < best.sub_seed)) best = r;
    }
    best.evaluations = evaluations;
    best.converged = best.converged || any_converged;
    return best;
}

/// Center of a largest inscribed disk, by maximizing the distance to the boundary.
inline PlanePoint incenter(const ConvexBoundary& b) {
    const auto box = bounding_box(b);
    PlanePoint best{0.5 * (box.xmin + box.xmax), 0.5 * (box.ymin + box.ymax)};
    best = project_into(b, best);
    auto score = [&](PlanePoint z) { return contains(b, z) ? nearest_boundary_point(b, z).distance : -1.0; };
    double best_score = score(best);
    // Coarse grid then compass search.
    const int grid = 24;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            const PlanePoint z{box.xmin + (box.xmax - box.xmin) * i / grid, box.ymin + (box.ymax - box.ymin) * j / grid};
            const double s = score(z);
            if (s > best_score) {
                best_score = s;
                best = z;
            }
        }
    }
    double step = std::max(box.xmax - box.xmin, box.ymax - box.ymin) / grid;
    const PlanePoint dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0.7071067811865476, 0.7071067811865476},
                               {-0.7071067811865476, 0.7071067811865476}, {0.7071067811865476, -0.7071067811865476},
                               {-0.7071067811865476, -0.7071067811865476}};
    while (step > 1e-12 * (box.xmax - box.xmin)) {
        bool moved = false;
        for (const auto& dir : dirs) {
            const PlanePoint z = best + step * dir;
            const double s = score(z);
            if (s > best_score) {
                best_score = s;
                best = z;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

/// A polynomial in P_n(K) with ratio below 15 n / d. Candidates in order: all roots at the
/// incenter, roots at Fekete points, then the optimizer. converged is false if none qualifies.
inline SearchResult upper_bound_witness(const ConvexBoundary& b, int n, double q, long long budget = 4000,
                                        std::uint64_t seed = 1) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "q must be at least 1 or inf");
    const double target = 15.0 * n / diameter(b);
    SearchResult out;
    auto accept = [&](RootPolynomial p, const char* family) {
        ++out.evaluations;
        const double r = ratio(p, b, q);
        if (r < out.best_ratio) {
            out.best_ratio = r;
            out.witness = std::move(p);
            out.family = family;
            out.trace.push_back(r);
        }
        out.converged = out.best_ratio < target;
        return out.converged;
    };
    RootPolynomial centered;
    centered.roots.assign(n, incenter(b));
    if (accept(std::move(centered), "incenter")) return out;
    if (n >= 2) {
        RootPolynomial fk;
        fk.roots = fekete_points(b, n).points;
        if (accept(std::move(fk), "fekete")) return out;
    }
    SearchConfig cfg;
    cfg.n = n;
    cfg.q = q;
    cfg.budget = std::max<long long>(budget, 100);
    cfg.seed = seed;
    const auto opt = estimate_oscillation(b, cfg);
    accept(opt.witness, "optimizer");
    out.evaluations += opt.evaluations;
    return out;
}

} // namespace turanlab

#pragma once

// Fekete point sets, m-th diameters and the transfinite-diameter bracket.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "turanlab/geometry.hpp"

namespace turanlab {

struct FeketeOptions {
    int starts = 4;
    int max_sweeps = 400;
    double tolerance = 1e-13;
    std::uint64_t seed = 0x7f4a7c15u;
};

struct FeketeResult {
    std::vector<double> params;
    std::vector<PlanePoint> points;
    double log_vandermonde = 0.0; ///< sum over i<j of log|z_i - z_j|
    double mth_diameter = 0.0;
    int sweeps = 0;
    bool stalled = false;
};

namespace detail {

template <class Curve>
double log_vandermonde(const Curve& curve, const std::vector<double>& params) {
    std::vector<PlanePoint> z(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) z[i] = curve(params[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) sum += std::log(std::abs(z[i] - z[j]));
    }
    return sum;
}

/// Coordinate ascent on sorted periodic parameters; each point moves between its neighbours.
template <class Curve>
int fekete_ascent(const Curve& curve, double period, std::vector<double>& params, double tol, int max_sweeps,
                  double& energy) {
    const std::size_t m = params.size();
    std::vector<PlanePoint> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = curve(params[i]);
    auto partial = [&](std::size_t i, PlanePoint w) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) sum += 0.5 * std::log(std::norm(w - z[j]));
        }
        return sum;
    };
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double gain = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double lo = params[(i + m - 1) % m];
            double hi = params[(i + 1) % m];
            if (i == 0) lo -= period;
            if (i == m - 1) hi += period;
            if (m == 2) { lo = params[i] - period / 2; hi = params[i] + period / 2; }
            const double gap = hi - lo;
            const double a = lo + 1e-9 * gap, b = hi - 1e-9 * gap;
            const double current = partial(i, z[i]);
            const double s = golden_section_max([&](double x) { return partial(i, curve(x)); }, a, b,
                                                1e-11 * period);
            const PlanePoint w = curve(s);
            const double value = partial(i, w);
            if (value > current) {
                gain += value - current;
                params[i] = s;
                z[i] = w;
            }
        }
        // Keep parameters inside one period while preserving cyclic order.
        if (params.front() < 0.0 || params.back() >= period) {
            for (auto& p : params) {
                p = std::fmod(p, period);
                if (p < 0.0) p += period;
            }
            std::vector<std::size_t> order(m);
            for (std::size_t i = 0; i < m; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](auto x, auto y) { return params[x] < params[y]; });
            std::vector<double> p2(m);
            std::vector<PlanePoint> z2(m);
            for (std::size_t i = 0; i < m; ++i) { p2[i] = params[order[i]]; z2[i] = z[order[i]]; }
            params = std::move(p2);
            z = std::move(z2);
        }
        energy += gain;
        if (gain <= tol * std::max(1.0, std::abs(energy))) { ++sweep; break; }
    }
    return sweep;
}

} // namespace detail

/// Approximate Fekete points of a closed curve given as a periodic map s -> point.
/// The returned m-th diameter is a lower approximation of the true m-th diameter
/// of the curve (which itself decreases to the transfinite diameter).
template <class Curve>
FeketeResult fekete_points(const Curve& curve, double period, int m, const FeketeOptions& opt = {}) {
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "Fekete point count must be at least 2");
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    FeketeResult best;
    best.log_vandermonde = -infinity;
    bool any_progress = false;
    for (int start = 0; start < std::max(1, opt.starts); ++start) {
        std::vector<double> params(m);
        if (start == 0) {
            for (int i = 0; i < m; ++i) params[i] = period * i / m;
        } else if (start % 2 == 1) {
            const double offset = unif(rng) * period / m;
            for (int i = 0; i < m; ++i) params[i] = offset + period * (i + 0.25 * (unif(rng) - 0.5)) / m;
        } else {
            for (auto& p : params) p = unif(rng) * period;
            std::sort(params.begin(), params.end());
            for (int i = 1; i < m; ++i) params[i] = std::max(params[i], params[i - 1] + 1e-6 * period);
            if (params.back() >= period) {
                for (int i = 0; i < m; ++i) params[i] = period * i / m;
            }
        }
        double energy = detail::log_vandermonde(curve, params);
        const double initial = energy;
        const int sweeps = detail::fekete_ascent(curve, period, params, opt.tolerance, opt.max_sweeps, energy);
        energy = detail::log_vandermonde(curve, params);
        if (energy > initial) any_progress = true;
        if (energy > best.log_vandermonde) {
            best.log_vandermonde = energy;
            best.params = params;
            best.sweeps = sweeps;
        }
    }
    best.points.resize(m);
    for (int i = 0; i < m; ++i) best.points[i] = curve(best.params[i]);
    const double pairs = 0.5 * m * (m - 1.0);
    best.mth_diameter = std::exp(best.log_vandermonde / pairs);
    best.stalled = !any_progress;
    return best;
}

inline FeketeResult fekete_points(const ConvexBoundary& b, int m, const FeketeOptions& opt = {}) {
    return fekete_points([&b](double s) { return point_at(b, s); }, b.total_length(), m, opt);
}

struct TransfiniteBracket {
    double lower = 0.0;
    double upper = 0.0;
    double fekete_estimate = 0.0;
    int points = 0;
    bool stalled = false;
};

/// Guaranteed lower bound for the transfinite diameter:
/// max(d/4, sqrt(area/pi)), the second term being the capacity-area inequality.
inline double transfinite_lower_bound(const ConvexBoundary& b, double diam) {
    return std::max(diam / 4.0, std::sqrt(area(b) / pi));
}

inline TransfiniteBracket transfinite_diameter(const ConvexBoundary& b, int m = 48, const FeketeOptions& opt = {}) {
    if (m < 3) throw Error(ErrorKind::InvalidArgument, "transfinite_diameter needs m >= 3");
    const double d = diameter(b);
    const auto fk = fekete_points(b, m, opt);
    TransfiniteBracket out;
    out.fekete_estimate = fk.mth_diameter;
    out.lower = transfinite_lower_bound(b, d);
    out.upper = std::min(fk.mth_diameter, d / 2.0);
    out.points = m;
    out.stalled = fk.stalled;
    return out;
}

struct GeometrySummary {
    double diameter = 0.0;
    double width = 0.0;
    double perimeter = 0.0;
    double depth = 0.0;
    double transfinite_lower = 0.0;
    double transfinite_upper = 0.0;
};

inline GeometrySummary summarize(const ConvexBoundary& b, int fekete_m = 48) {
    GeometrySummary g;
    g.diameter = diameter(b);
    g.width = width(b);
    g.perimeter = perimeter(b);
    g.depth = depth(b).depth;
    const auto t = transfinite_diameter(b, fekete_m);
    g.transfinite_lower = t.lower;
    g.transfinite_upper = t.upper;
    return g;
}

} // namespace turanlab

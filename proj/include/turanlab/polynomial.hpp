#pragma once

// Monic polynomials stored by their roots; boundary sup and L^q norms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "turanlab/geometry.hpp"
#include "turanlab/quadrature.hpp"

namespace turanlab {

using Complex = std::complex<double>;

/// Monic polynomial prod (z - r_j).
struct RootPolynomial {
    std::vector<PlanePoint> roots;

    std::size_t degree() const { return roots.size(); }
};

struct Evaluation {
    Complex value;
    Complex derivative;
};

inline Evaluation evaluate(const RootPolynomial& p, PlanePoint z) {
    Complex value{1.0, 0.0};
    Complex inv_sum{0.0, 0.0};
    bool at_root = false;
    for (const auto& r : p.roots) {
        const Complex w = z - r;
        value *= w;
        if (w == Complex{}) at_root = true;
        else inv_sum += 1.0 / w;
    }
    if (!at_root) return {value, value * inv_sum};
    // Leave-one-out products: p'(z) = sum_k prod_{j != k} (z - r_j).
    Complex derivative{0.0, 0.0};
    for (std::size_t k = 0; k < p.roots.size(); ++k) {
        Complex prod{1.0, 0.0};
        for (std::size_t j = 0; j < p.roots.size(); ++j) {
            if (j != k) prod *= z - p.roots[j];
        }
        derivative += prod;
    }
    return {value, derivative};
}

/// p'(z)/p(z) = sum 1/(z - r_j).
inline Complex log_derivative(const RootPolynomial& p, PlanePoint z) {
    Complex sum{0.0, 0.0};
    for (const auto& r : p.roots) {
        const Complex w = z - r;
        if (w == Complex{}) throw Error(ErrorKind::AtRoot, "log_derivative evaluated at a root");
        sum += 1.0 / w;
    }
    return sum;
}

struct LogModuli {
    double log_p = 0.0;  ///< log|p(z)|
    double log_dp = 0.0; ///< log|p'(z)|
};

/// log|p| and log|p'| without forming the (possibly huge or tiny) products.
inline LogModuli log_moduli(const RootPolynomial& p, PlanePoint z) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    double log_p = 0.0;
    Complex inv_sum{0.0, 0.0};
    int hits = 0;
    for (const auto& r : p.roots) {
        const Complex w = z - r;
        const double n2 = std::norm(w);
        if (n2 == 0.0) {
            if (w == Complex{}) {
                ++hits;
                continue;
            }
            log_p += std::log(std::abs(w));
        } else {
            log_p += 0.5 * std::log(n2);
        }
        inv_sum += 1.0 / w;
    }
    if (hits == 0) {
        const double s = std::abs(inv_sum);
        return {log_p, s > 0.0 ? log_p + std::log(s) : neg_inf};
    }
    if (hits == 1) return {neg_inf, log_p};
    return {neg_inf, neg_inf};
}

enum class NormTarget { P, Pprime };

struct NormReport {
    double value = 0.0;
    double log_value = 0.0;
    double error_estimate = 0.0;
    double argmax_param = 0.0;
    std::size_t quadrature_nodes = 0;
    bool converged = true;
};

namespace detail {

inline double target_log(const RootPolynomial& p, PlanePoint z, NormTarget f) {
    const auto m = log_moduli(p, z);
    return f == NormTarget::P ? m.log_p : m.log_dp;
}

inline int sup_nodes_per_piece(const RootPolynomial& p) {
    return std::max(1024, 32 * static_cast<int>(p.degree()));
}

} // namespace detail

/// Sup of |p| (or |p'|) over the boundary: dense sampling per piece, then
/// golden-section refinement around the best sampled local maxima.
inline NormReport sup_norm(const RootPolynomial& p, const ConvexBoundary& b, NormTarget f = NormTarget::P) {
    const int nodes = detail::sup_nodes_per_piece(p);
    struct Candidate {
        double value;
        std::size_t piece;
        int index;
    };
    std::vector<Candidate> local_max;
    std::vector<std::vector<double>> values(b.size());
    std::size_t evaluations = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const auto& piece = b.piece(j);
        auto& v = values[j];
        v.resize(nodes);
        for (int i = 0; i < nodes; ++i) v[i] = detail::target_log(p, piece.point(piece.length() * i / (nodes - 1)), f);
        evaluations += nodes;
        for (int i = 0; i < nodes; ++i) {
            const double left = i > 0 ? v[i - 1] : -infinity;
            const double right = i + 1 < nodes ? v[i + 1] : -infinity;
            if (v[i] >= left && v[i] >= right) local_max.push_back({v[i], j, i});
        }
    }
    std::sort(local_max.begin(), local_max.end(), [](const Candidate& a, const Candidate& c) {
        if (a.value != c.value) return a.value > c.value;
        if (a.piece != c.piece) return a.piece < c.piece;
        return a.index < c.index;
    });
    constexpr std::size_t refine_count = 4;
    NormReport out;
    out.log_value = -infinity;
    for (std::size_t c = 0; c < std::min(refine_count, local_max.size()); ++c) {
        const auto& cand = local_max[c];
        const auto& piece = b.piece(cand.piece);
        const double h = piece.length() / (nodes - 1);
        const double t0 = std::max(0.0, (cand.index - 1) * h);
        const double t1 = std::min(piece.length(), (cand.index + 1) * h);
        auto g = [&](double t) {
            ++evaluations;
            return detail::target_log(p, piece.point(t), f);
        };
        double t = detail::golden_section_max(g, t0, t1, 1e-10 * std::max(h, 1e-300));
        double val = g(t);
        if (cand.value >= val) {
            val = cand.value;
            t = cand.index * h;
        }
        if (val > out.log_value) {
            out.log_value = val;
            out.argmax_param = b.global_param(cand.piece, t);
            const auto& v = values[cand.piece];
            const int i = cand.index;
            if (i > 0 && i + 1 < nodes && std::isfinite(v[i - 1]) && std::isfinite(v[i + 1])) {
                out.error_estimate = std::abs(v[i - 1] - 2.0 * v[i] + v[i + 1]) / 8.0;
            } else {
                out.error_estimate = 0.0;
            }
        }
    }
    out.value = std::exp(out.log_value);
    out.error_estimate *= out.value; // relative error in log -> absolute error in value
    out.quadrature_nodes = evaluations;
    out.argmax_param = b.wrap(out.argmax_param);
    return out;
}

namespace detail {

/// Breakpoints: vertices inside (s0, s1) plus parameters of roots lying on the boundary.
inline std::vector<double> boundary_breaks(const RootPolynomial& p, const ConvexBoundary& b, double s0, double s1) {
    const double L = b.total_length();
    std::vector<double> br{s0, s1};
    std::vector<double> marks = b.vertex_params();
    const double near = 1e-9 * L;
    for (const auto& r : p.roots) {
        const auto proj = nearest_boundary_point(b, r);
        if (proj.distance <= near) marks.push_back(proj.param);
    }
    for (double m : marks) {
        for (double shift : {0.0, L, 2.0 * L}) {
            const double x = m + shift;
            if (x > s0 && x < s1) br.push_back(x);
        }
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

} // namespace detail

/// Integral over the boundary range [s0, s1] (arc length, may exceed L once) of
/// exp(q * (log|f| - log_scale)).
inline QuadratureResult integrate_power(const RootPolynomial& p, const ConvexBoundary& b, NormTarget f, double q,
                                        double log_scale, double s0, double s1,
                                        const QuadratureOptions& opt = {}) {
    const auto breaks = detail::boundary_breaks(p, b, s0, s1);
    const double L = b.total_length();
    const double max_panel = L / std::max<double>(32.0, 2.0 * p.degree());
    auto integrand = [&](double s) {
        const double lg = detail::target_log(p, point_at(b, s), f);
        return std::exp(q * (lg - log_scale));
    };
    return integrate_adaptive(integrand, breaks, max_panel, opt);
}

namespace detail {

inline double coarse_log_max(const RootPolynomial& p, const ConvexBoundary& b, NormTarget f) {
    double best = -infinity;
    const int count = 256;
    for (int i = 0; i < count; ++i) {
        best = std::max(best, target_log(p, point_at(b, b.total_length() * (i + 0.5) / count), f));
    }
    return std::isfinite(best) ? best : 0.0;
}

} // namespace detail

/// (integral of |f|^q |dz|)^(1/q) over the boundary, f = p or p'.
inline NormReport lq_norm(NormTarget f, const RootPolynomial& p, const ConvexBoundary& b, double q,
                          const QuadratureOptions& opt = {}) {
    if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "lq_norm requires q >= 1");
    const double scale = detail::coarse_log_max(p, b, f);
    const auto r = integrate_power(p, b, f, q, scale, 0.0, b.total_length(), opt);
    NormReport out;
    out.log_value = scale + std::log(r.value) / q;
    out.value = std::exp(out.log_value);
    // d(I^(1/q)) = (1/q) I^(1/q - 1) dI
    out.error_estimate = r.value > 0.0 ? out.value * r.error_estimate / (q * r.value) : 0.0;
    out.quadrature_nodes = r.nodes;
    out.converged = r.converged;
    return out;
}

/// Reference value of lq_norm: uniform midpoint rule with `points` nodes in arc length.
inline double riemann_lq_norm(NormTarget f, const RootPolynomial& p, const ConvexBoundary& b, double q,
                              std::size_t points = std::size_t{1} << 20) {
    if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "riemann_lq_norm requires q >= 1");
    const double scale = detail::coarse_log_max(p, b, f);
    const double L = b.total_length(), h = L / static_cast<double>(points);
    CompensatedSum sum;
    for (std::size_t i = 0; i < points; ++i) {
        sum.add(std::exp(q * (detail::target_log(p, point_at(b, (i + 0.5) * h), f) - scale)));
    }
    return std::exp(scale + std::log(sum.value() * h) / q);
}

inline bool is_sup(double q) { return std::isinf(q) && q > 0.0; }

/// Log of the norm of p or p' on the boundary; q = +inf selects the sup norm.
inline NormReport boundary_norm(NormTarget f, const RootPolynomial& p, const ConvexBoundary& b, double q) {
    return is_sup(q) ? sup_norm(p, b, f) : lq_norm(f, p, b, q);
}

/// ||p'|| / ||p|| on the boundary.
inline double ratio(const RootPolynomial& p, const ConvexBoundary& b, double q) {
    const auto num = boundary_norm(NormTarget::Pprime, p, b, q);
    const auto den = boundary_norm(NormTarget::P, p, b, q);
    return std::exp(num.log_value - den.log_value);
}

/// Threshold constant c = (8 pi (q+1))^(-1/q) of the super-level set H.
inline double h_set_constant(double q) { return std::pow(8.0 * pi * (q + 1.0), -1.0 / q); }

struct HSet {
    std::vector<std::pair<double, double>> intervals; ///< arc-length ranges; an end may exceed L when wrapping
    double mass_fraction = 0.0;
    double log_threshold = 0.0;
    double log_sup = 0.0;
};

/// Boundary set where |p| > c n^(-2/q) ||p||_inf and the share of the L^q mass it carries.
inline HSet h_set(const RootPolynomial& p, const ConvexBoundary& b, double q) {
    if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "h_set requires q >= 1");
    const double n = static_cast<double>(p.degree());
    const auto sup = sup_norm(p, b);
    HSet out;
    out.log_sup = sup.log_value;
    out.log_threshold = std::log(h_set_constant(q)) - (2.0 / q) * std::log(n) + sup.log_value;
    auto excess = [&](double s) { return detail::target_log(p, point_at(b, s), NormTarget::P) - out.log_threshold; };

    const double L = b.total_length();
    const int nodes = detail::sup_nodes_per_piece(p);
    std::vector<double> grid;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double len = b.piece(j).length();
        for (int i = 0; i < nodes - 1; ++i) grid.push_back(b.vertex_params()[j] + len * i / (nodes - 1));
    }
    grid.push_back(L);
    std::vector<double> g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) g[i] = excess(grid[i]);

    auto crossing = [&](double a, double c) {
        // excess(a) and excess(c) have opposite signs
        const bool a_in = excess(a) > 0.0;
        for (int it = 0; it < 80 && c - a > 1e-14 * L; ++it) {
            const double mid = 0.5 * (a + c);
            if ((excess(mid) > 0.0) == a_in) a = mid;
            else c = mid;
        }
        return 0.5 * (a + c);
    };

    std::vector<std::pair<double, double>> raw;
    bool inside = g[0] > 0.0;
    double start = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool now = g[i] > 0.0;
        if (now == inside) continue;
        const double x = crossing(grid[i - 1], grid[i]);
        if (now) start = x;
        else raw.emplace_back(start, x);
        inside = now;
    }
    if (inside) raw.emplace_back(start, L);
    if (raw.size() >= 2 && raw.front().first == 0.0 && raw.back().second == L) {
        raw.front().first = raw.back().first;
        raw.front().second += L;
        raw.pop_back();
    }
    out.intervals = raw;

    const double total = integrate_power(p, b, NormTarget::P, q, sup.log_value, 0.0, L).value;
    CompensatedSum mass;
    for (const auto& [a, c] : out.intervals) mass.add(integrate_power(p, b, NormTarget::P, q, sup.log_value, a, c).value);
    out.mass_fraction = total > 0.0 ? mass.value() / total : 0.0;
    return out;
}

} // namespace turanlab

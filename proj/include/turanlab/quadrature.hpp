#pragma once

// Composite 16-node Gauss-Legendre quadrature with adaptive bisection,
// plus compensated summation so totals do not depend on accumulation noise.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace turanlab {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct GaussLegendreRule {
    std::array<double, 16> nodes{};
    std::array<double, 16> weights{};
};

/// Nodes and weights on [-1, 1], by Newton iteration on P_16.
inline const GaussLegendreRule& gauss_legendre_16() {
    static const GaussLegendreRule rule = [] {
        GaussLegendreRule r;
        constexpr int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            r.nodes[i] = -x;
            r.nodes[n - 1 - i] = x;
            r.weights[i] = w;
            r.weights[n - 1 - i] = w;
        }
        return r;
    }();
    return rule;
}

template <class F>
double gauss_legendre_panel(const F& f, double a, double b) {
    const auto& rule = gauss_legendre_16();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    CompensatedSum s;
    for (int i = 0; i < 16; ++i) s.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    return half * s.value();
}

struct QuadratureOptions {
    double relative_tolerance = 1e-9;
    int max_depth = 16;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t nodes = 0;
    bool converged = true;
};

namespace detail {

template <class F>
void adaptive_panel(const F& f, double a, double b, double whole, double floor_density, const QuadratureOptions& opt,
                    int depth, CompensatedSum& total, CompensatedSum& error, QuadratureResult& out) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_legendre_panel(f, a, mid);
    const double right = gauss_legendre_panel(f, mid, b);
    out.nodes += 32;
    const double refined = left + right;
    const double change = std::abs(refined - whole);
    const double scale = std::max(std::abs(refined), floor_density * (b - a));
    if (change <= opt.relative_tolerance * scale || depth >= opt.max_depth) {
        if (change > opt.relative_tolerance * scale) out.converged = false;
        total.add(refined);
        error.add(change);
        return;
    }
    adaptive_panel(f, a, mid, left, floor_density, opt, depth + 1, total, error, out);
    adaptive_panel(f, mid, b, right, floor_density, opt, depth + 1, total, error, out);
}

} // namespace detail

/// Integrates f over consecutive intervals [breaks[i], breaks[i+1]], each first cut
/// into panels no longer than `max_panel` and then refined adaptively. A panel is accepted
/// when halving changes it by less than the relative tolerance of the larger of its
/// own value and its share of the coarse global total.
template <class F>
QuadratureResult integrate_adaptive(const F& f, const std::vector<double>& breaks, double max_panel,
                                    const QuadratureOptions& opt = {}) {
    QuadratureResult out;
    struct Panel {
        double a, b, whole;
    };
    std::vector<Panel> panels;
    CompensatedSum coarse;
    double span = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (!(b > a)) continue;
        span += b - a;
        const int panels_per_interval = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel - 1e-9)));
        for (int p = 0; p < panels_per_interval; ++p) {
            const double pa = a + (b - a) * p / panels_per_interval;
            const double pb = (p + 1 == panels_per_interval) ? b : a + (b - a) * (p + 1) / panels_per_interval;
            const double whole = gauss_legendre_panel(f, pa, pb);
            out.nodes += 16;
            coarse.add(whole);
            panels.push_back({pa, pb, whole});
        }
    }
    if (panels.empty()) return out;
    const double floor_density = std::abs(coarse.value()) / span;
    CompensatedSum total, error;
    for (const auto& p : panels) {
        detail::adaptive_panel(f, p.a, p.b, p.whole, floor_density, opt, 0, total, error, out);
    }
    out.value = total.value();
    out.error_estimate = error.value();
    return out;
}

} // namespace turanlab

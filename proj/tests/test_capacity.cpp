#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace turanlab;
using namespace turanlab::testing;

namespace {

/// Zeros of (1 - x^2) P'_{m-1}(x): the Fekete points of [-1, 1], by Newton iteration.
std::vector<double> gauss_lobatto(int m) {
    const int N = m - 1;
    std::vector<double> x(m);
    for (int i = 0; i < m; ++i) x[i] = -std::cos(pi * i / N);
    for (int i = 1; i < N; ++i) {
        for (int it = 0; it < 100; ++it) {
            // P_N and its derivatives by recurrence
            double p0 = 1.0, p1 = x[i];
            for (int k = 2; k <= N; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x[i] * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double xx = x[i];
            const double dp = N * (xx * p1 - p0) / (xx * xx - 1.0);
            const double d2p = (2.0 * xx * dp - N * (N + 1.0) * p1) / (1.0 - xx * xx);
            const double dx = dp / d2p;
            x[i] -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
    }
    std::sort(x.begin(), x.end());
    return x;
}

} // namespace

TEST(Capacity, SegmentFeketePointsAreGaussLobatto) {
    // [-1, 1] traversed there and back as a closed curve of period 4.
    auto curve = [](double s) {
        s = std::fmod(s, 4.0);
        if (s < 0.0) s += 4.0;
        return PlanePoint{s <= 2.0 ? s - 1.0 : 3.0 - s, 0.0};
    };
    for (int m : {5, 8}) {
        const auto fk = fekete_points(curve, 4.0, m);
        std::vector<double> xs;
        for (const auto& z : fk.points) xs.push_back(z.real());
        std::sort(xs.begin(), xs.end());
        const auto oracle = gauss_lobatto(m);
        for (int i = 0; i < m; ++i) EXPECT_NEAR(xs[i], oracle[i], 1e-6) << "m=" << m << " i=" << i;
    }
}

TEST(Capacity, DiskMthDiameterClosedForm) {
    const auto b = unit_disk();
    for (int m : {8, 16, 40}) {
        const auto fk = fekete_points(b, m);
        EXPECT_NEAR(fk.mth_diameter, std::pow(m, 1.0 / (m - 1.0)), 1e-9) << m;
        EXPECT_FALSE(fk.stalled);
    }
}

TEST(Capacity, MthDiameterNonincreasingOnCorpus) {
    for (const auto& name : corpus_names()) {
        const auto spec = corpus(name);
        double prev = infinity;
        for (int m : {8, 16, 32, 48}) {
            const double v = fekete_points(spec.decomposition.boundary, m).mth_diameter;
            EXPECT_LE(v, prev * (1.0 + 1e-12)) << name << " m=" << m;
            prev = v;
        }
    }
}

TEST(Capacity, BracketRespectsDiameterBounds) {
    for (const auto& name : corpus_names()) {
        const auto spec = corpus(name);
        const auto& b = spec.decomposition.boundary;
        const double d = diameter(b);
        const auto t = transfinite_diameter(b, 32);
        EXPECT_GE(t.lower, d / 4.0) << name;
        EXPECT_LE(t.upper, d / 2.0) << name;
        EXPECT_LE(t.lower, t.upper + 1e-12) << name;
    }
}

TEST(Capacity, AreaBoundIsTightForTheDisk) {
    const auto b = unit_disk();
    EXPECT_NEAR(transfinite_lower_bound(b, 2.0), 1.0, 1e-15);
}

TEST(Capacity, RejectsTooFewPoints) {
    EXPECT_THROW(transfinite_diameter(unit_disk(), 2), Error);
    EXPECT_THROW(fekete_points(unit_disk(), 1), Error);
}

TEST(Capacity, SummaryOfSquare) {
    const auto g = summarize(unit_square(), 16);
    EXPECT_NEAR(g.diameter, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(g.width, 1.0, 1e-12);
    EXPECT_NEAR(g.perimeter, 4.0, 1e-15);
    EXPECT_NEAR(g.transfinite_lower, 1.0 / std::sqrt(pi), 1e-15);
    // Capacity of the unit square is about 0.5902.
    EXPECT_GT(g.transfinite_upper, 0.5902);
}

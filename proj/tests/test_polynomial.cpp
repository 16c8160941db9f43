#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace turanlab;
using namespace turanlab::testing;

TEST(Quadrature, GaussLegendreRuleIsExactForDegree31) {
    const auto& rule = gauss_legendre_16();
    double w = 0.0;
    for (double x : rule.weights) w += x;
    EXPECT_NEAR(w, 2.0, 1e-15);
    for (int k = 0; k <= 31; ++k) {
        const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1.0);
        EXPECT_NEAR(gauss_legendre_panel([k](double x) { return std::pow(x, k); }, -1.0, 1.0), exact, 1e-14) << k;
    }
}

TEST(Quadrature, AdaptiveHandlesKinks) {
    auto f = [](double x) { return std::sqrt(std::abs(x - 0.3)); };
    const double exact = (2.0 / 3.0) * (std::pow(0.3, 1.5) + std::pow(0.7, 1.5));
    const auto r = integrate_adaptive(f, {0.0, 1.0}, 0.25, {1e-12, 30});
    EXPECT_NEAR(r.value, exact, 1e-10);
}

TEST(Quadrature, CompensatedSumRecoversSmallTerms) {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1000.0 * 1e-16, 1e-25);
}

TEST(Polynomial, EvaluateExamples) {
    const RootPolynomial z2{{0.0, 0.0}};
    auto e = evaluate(z2, 1.0);
    EXPECT_EQ(e.value, PlanePoint(1.0));
    EXPECT_EQ(e.derivative, PlanePoint(2.0));
    e = evaluate(RootPolynomial{{1.0, -1.0}}, 0.0);
    EXPECT_EQ(e.value, PlanePoint(-1.0));
    EXPECT_EQ(e.derivative, PlanePoint(0.0));
    e = evaluate(RootPolynomial{{1.0, 1.0}}, 1.0);
    EXPECT_EQ(e.value, PlanePoint(0.0));
    EXPECT_EQ(e.derivative, PlanePoint(0.0));
    e = evaluate(RootPolynomial{{1.0, 2.0}}, 1.0);
    EXPECT_EQ(e.derivative, PlanePoint(-1.0));
}

TEST(Polynomial, LogDerivativeExamples) {
    EXPECT_EQ(log_derivative(RootPolynomial{{0.0, 0.0}}, 1.0), PlanePoint(2.0));
    EXPECT_EQ(log_derivative(RootPolynomial{{0.0, 2.0}}, 1.0), PlanePoint(0.0));
    EXPECT_NEAR(std::abs(log_derivative(repeated(-1.0, 10), 0.95) - 10.0 / 1.95), 0.0, 1e-14);
    EXPECT_THROW(log_derivative(RootPolynomial{{0.5}}, 0.5), Error);
}

TEST(Polynomial, LogModuliAtRoot) {
    const auto m = log_moduli(RootPolynomial{{0.0, 2.0}}, 0.0);
    EXPECT_EQ(m.log_p, -infinity);
    EXPECT_NEAR(m.log_dp, std::log(2.0), 1e-15);
}

TEST(Polynomial, SupNormExamples) {
    const auto disk = unit_disk();
    EXPECT_NEAR(sup_norm(repeated(0.0, 8), disk).value, 1.0, 1e-13);
    const auto r = sup_norm(repeated(-1.0, 4), disk);
    EXPECT_NEAR(r.value, 16.0, 1e-10);
    EXPECT_NEAR(std::abs(point_at(disk, r.argmax_param) - PlanePoint{1.0, 0.0}), 0.0, 1e-5);
    EXPECT_NEAR(sup_norm(repeated(0.0, 1), unit_square()).value, std::sqrt(2.0) / 2.0, 1e-14);
}

TEST(Polynomial, LqNormExamples) {
    const auto disk = unit_disk();
    EXPECT_NEAR(lq_norm(NormTarget::P, repeated(0.0, 8), disk, 2.0).value, std::sqrt(two_pi), 1e-12);
    EXPECT_NEAR(lq_norm(NormTarget::Pprime, repeated(0.0, 8), disk, 2.0).value, 8.0 * std::sqrt(two_pi), 1e-11);
    const double v = lq_norm(NormTarget::P, repeated(-1.0, 1), disk, 2.0).value;
    EXPECT_NEAR(v, std::sqrt(4.0 * pi), 1e-10);
    // Brute-force cross-check of the same integral.
    EXPECT_NEAR(riemann_lq_norm(NormTarget::P, repeated(-1.0, 1), disk, 2.0, 1 << 16), std::sqrt(4.0 * pi), 1e-9);
}

TEST(Polynomial, RatioExamples) {
    const auto disk = unit_disk();
    for (double q : {1.0, 2.0, 4.0, infinity}) EXPECT_NEAR(ratio(repeated(0.0, 5), disk, q), 5.0, 1e-11) << q;
    EXPECT_NEAR(ratio(repeated(-1.0, 4), disk, infinity), 2.0, 1e-9);
    EXPECT_NEAR(ratio(repeated(0.0, 1), unit_square(), infinity), std::sqrt(2.0), 1e-12);
}

TEST(Polynomial, HSetExamples) {
    const auto disk = unit_disk();
    const auto all = h_set(repeated(0.0, 8), disk, 2.0);
    EXPECT_NEAR(std::exp(all.log_threshold), std::pow(24.0 * pi, -0.5) / 8.0, 1e-15);
    EXPECT_NEAR(std::exp(all.log_threshold), 0.014399, 1e-5);
    EXPECT_NEAR(all.mass_fraction, 1.0, 1e-12);
    ASSERT_EQ(all.intervals.size(), 1u);

    const auto p = repeated(-1.0, 4);
    const auto h = h_set(p, disk, 1.0);
    EXPECT_NEAR(std::exp(h.log_threshold), 16.0 / (16.0 * pi * 16.0), 1e-12);
    EXPECT_GE(h.mass_fraction, 0.5);
    // Riemann oracle for the mass fraction.
    const int N = 1 << 16;
    double in = 0.0, total = 0.0;
    for (int i = 0; i < N; ++i) {
        const double v = std::pow(std::abs(evaluate(p, std::polar(1.0, two_pi * (i + 0.5) / N)).value), 1.0);
        total += v;
        if (std::log(v) > h.log_threshold) in += v;
    }
    EXPECT_NEAR(h.mass_fraction, in / total, 1e-6);
}

TEST(Polynomial, HSetConstantAtQOne) {
    EXPECT_NEAR(h_set_constant(1.0), 1.0 / (16.0 * pi), 1e-17);
    EXPECT_LT(h_set_constant(2.0), 1.0);
}

TEST(PolynomialProperty, QuadratureMatchesRiemannSums) {
    for (const auto& name : corpus_names()) {
        const auto spec = corpus(name);
        const auto& b = spec.decomposition.boundary;
        for (int t = 0; t < 4; ++t) {
            const auto p = random_poly(b, 3 + 3 * t, 100 + t);
            const double q = 1.0 + t;
            const double quad = lq_norm(NormTarget::P, p, b, q).value;
            const double ref = riemann_lq_norm(NormTarget::P, p, b, q, 1 << 18);
            EXPECT_NEAR(quad / ref, 1.0, 1e-6) << name << " t=" << t;
        }
    }
}

TEST(PolynomialProperty, NikolskiiHSetCapacityGabriel) {
    for (const auto& name : corpus_names()) {
        const auto spec = corpus(name);
        const auto& b = spec.decomposition.boundary;
        const double d = diameter(b);
        const double cap_lower = transfinite_lower_bound(b, d);
        for (int t = 0; t < 10; ++t) {
            const int n = 1 + (t * 5) % 17;
            const auto p = random_poly(b, n, 7000 + t);
            const auto sup = sup_norm(p, b);
            for (double q : {1.0, 2.0, 4.0}) {
                const double lq = lq_norm(NormTarget::P, p, b, q).value;
                EXPECT_GE(lq / sup.value, nikolskii_bound(d, q, n) * (1.0 - 1e-6)) << name << " n=" << n << " q=" << q;
                EXPECT_GE(h_set(p, b, q).mass_fraction, 0.5 - 1e-9) << name << " n=" << n << " q=" << q;
                EXPECT_GE(ratio(p, b, q), 0.022 / d) << name;
            }
            EXPECT_GE(sup.log_value, n * std::log(cap_lower) - 1e-12) << name;
            // Roots outside K as well.
            RootPolynomial far;
            for (int i = 0; i < n; ++i) far.roots.emplace_back(3.0 * std::cos(i + t), 2.0 * std::sin(2 * i - t));
            EXPECT_GE(sup_norm(far, b).log_value, n * std::log(cap_lower) - 1e-12) << name;
        }
    }
}

TEST(PolynomialProperty, PointwiseTuranOnTheDisk) {
    const auto b = unit_disk();
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t;
        const auto p = random_poly(b, n, 900 + t);
        for (int i = 0; i < 256; ++i) {
            const PlanePoint z = std::polar(1.0, two_pi * i / 256.0);
            EXPECT_GE(std::abs(log_derivative(p, z)), n / 2.0 * (1.0 - 1e-12));
        }
    }
}

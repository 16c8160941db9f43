#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace turanlab;
using namespace turanlab::testing;

namespace {

ErrorKind certify_error(const std::string& name) {
    try {
        certify(corpus(name).decomposition);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST(Certify, Disk) {
    const auto c = certify(corpus("disk").decomposition);
    EXPECT_EQ(c.status, CertificationStatus::Certified);
    EXPECT_EQ(c.k, 2);
    EXPECT_NEAR(c.d, 2.0, 1e-12);
    EXPECT_NEAR(c.delta_cap, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(c.kappa, 1.0);
    EXPECT_DOUBLE_EQ(c.xi, pi / 2.0);
    EXPECT_NEAR(c.delta_small, 0.5, 1e-15);
    EXPECT_EQ(c.lambdas, (std::vector<int>{0, 0}));
    EXPECT_NEAR(circularity_radius(c), 1.0, 1e-15);
}

TEST(Certify, Heptagon) {
    const auto c = certify(corpus("heptagon").decomposition);
    const double area = 7.0 / (4.0 * std::tan(pi / 7.0));
    const double cap = std::sqrt(area / pi);
    EXPECT_EQ(c.status, CertificationStatus::Certified);
    EXPECT_EQ(c.k, 7);
    EXPECT_NEAR(c.delta_cap, cap, 1e-13);
    EXPECT_NEAR(c.delta_small, cap - 1.0, 1e-12);
    EXPECT_NEAR(c.xi, pi / 7.0, 1e-13);
    EXPECT_TRUE(std::isinf(c.kappa));
    EXPECT_EQ(c.lambdas, std::vector<int>(7, 2));
    EXPECT_LE(c.delta_lower, c.delta_upper);
    EXPECT_NEAR(circularity_radius(c), cap / (2.0 * std::sin(pi / 7.0)), 1e-12);
}

TEST(Certify, TruncatedDisk) {
    const auto c = certify(corpus("truncated_disk").decomposition);
    const double phi = std::acos(0.95);
    const double area = pi - (phi - std::sin(phi) * std::cos(phi));
    const double cap = std::sqrt(area / pi);
    EXPECT_EQ(c.status, CertificationStatus::Certified);
    EXPECT_NEAR(c.delta_cap, cap, 1e-13);
    EXPECT_NEAR(c.delta_cap, 0.99666443, 1e-8);
    EXPECT_NEAR(c.xi, phi, 1e-12);
    EXPECT_NEAR(c.xi, 0.3175604292915215, 1e-12);
    EXPECT_NEAR(c.delta_small, cap - 2.0 * std::sin(phi), 1e-12);
    EXPECT_DOUBLE_EQ(c.kappa, 1.0);
    EXPECT_EQ(c.lambdas, (std::vector<int>{1, 1}));
}

TEST(Certify, NegativeControls) {
    EXPECT_EQ(certify_error("stadium"), ErrorKind::NoStraightCornerAngle);
    EXPECT_EQ(certify_error("square"), ErrorKind::StraightTooLong);
    EXPECT_EQ(certify_error("triangle"), ErrorKind::StraightTooLong);
}

TEST(Certify, TagsMustMatchPieceKinds) {
    auto b = unit_square();
    EXPECT_THROW(make_tagged(b, {PieceTag::Curved, PieceTag::Straight, PieceTag::Straight, PieceTag::Straight}), Error);
    EXPECT_THROW(make_tagged(b, {PieceTag::Straight}), Error);
}

TEST(Certify, ConstraintsHoldOnCertifiedCorpus) {
    for (const auto* name : {"disk", "heptagon", "truncated_disk"}) {
        const auto spec = corpus(name);
        const auto& td = spec.decomposition;
        const auto c = certify(td);
        double longest = 0.0;
        for (std::size_t j = 0; j < td.tags.size(); ++j) {
            if (td.tags[j] == PieceTag::Straight) longest = std::max(longest, td.boundary.piece(j).length());
            EXPECT_GE(td.boundary.outer_angle(j), c.lambdas[j] * c.xi - 1e-12) << name;
        }
        EXPECT_LE(longest, c.delta_cap - c.delta_small + 1e-12) << name;
        EXPECT_GT(c.delta_small, 0.0) << name;
        EXPECT_LE(c.delta_small, c.delta_cap / 2.0) << name;
        EXPECT_GT(c.xi, 0.0) << name;
        EXPECT_LE(c.xi, pi / 2.0) << name;
        EXPECT_GE(c.delta_cap, c.d / 4.0) << name;
        EXPECT_LE(c.delta_cap, c.d / 2.0 + 1e-15) << name;
    }
}

TEST(Convexify, TruncatedDiskBecomesTheCircle) {
    const auto spec = corpus("truncated_disk");
    const auto c = certify(spec.decomposition);
    const auto cv = convexify(spec.decomposition, c);
    EXPECT_NEAR(cv.replacement_radii[0], 1.0, 1e-12);
    EXPECT_EQ(cv.replacement_radii[1], 0.0);
    double far = 0.0;
    for (int i = 0; i < 2000; ++i) {
        far = std::max(far, std::abs(std::abs(point_at(cv.curve, cv.curve.total_length() * i / 2000.0)) - 1.0));
    }
    EXPECT_LT(far, 1e-12);
    EXPECT_DOUBLE_EQ(cv.kappa_star, std::min(c.kappa, 2.0 * std::sin(c.xi) / c.delta_cap));
}

TEST(Convexify, SquareWithQuarterPiIsAngleContinuous) {
    auto td = make_tagged(unit_square(), std::vector<PieceTag>(4, PieceTag::Straight));
    ECertificate c;
    c.k = 4;
    c.d = std::sqrt(2.0);
    c.delta_cap = 1.1;
    c.xi = pi / 4.0;
    c.delta_small = 0.1;
    c.lambdas.assign(4, 2);
    const auto cv = convexify(td, c);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(cv.curve.outer_angle(j), 0.0, 1e-9);
        EXPECT_NEAR(cv.replacement_radii[j], 1.0 / std::sqrt(2.0), 1e-15);
        EXPECT_NEAR(std::abs(cv.curve.piece(j).as_arc().center), 0.0, 1e-15);
    }
    EXPECT_DOUBLE_EQ(cv.kappa_star, 2.0 * std::sin(pi / 4.0) / 1.1);
}

TEST(Circularity, DiskIsOneCircular) {
    const auto b = unit_disk();
    EXPECT_TRUE(check_r_circular(b, 1.0));
    EXPECT_TRUE(check_r_circular(b, 3.0));
    EXPECT_FALSE(check_r_circular(b, 0.9));
    EXPECT_THROW(check_r_circular(b, 1.0, 10), Error);
}

TEST(Circularity, PolygonIsNeverCircular) {
    const auto b = unit_square();
    EXPECT_FALSE(check_r_circular(b, 0.6));
    EXPECT_FALSE(check_r_circular(b, 5.0));
    EXPECT_FALSE(check_r_circular(b, 1e3));
    const auto rep = r_circularity_report(b, 0.6);
    EXPECT_TRUE(rep.violation_found);
    EXPECT_GT(rep.max_violation, 0.0);
}

TEST(Circularity, PartialCheckPassesAtRK) {
    for (const auto* name : {"disk", "truncated_disk"}) {
        const auto spec = corpus(name);
        const auto c = certify(spec.decomposition);
        const auto rep = check_partial_r_circular(spec.decomposition, c, circularity_radius(c), 256);
        EXPECT_FALSE(rep.violation_found) << name << " violation " << rep.max_violation;
    }
    const auto spec = corpus("truncated_disk");
    const auto c = certify(spec.decomposition);
    EXPECT_TRUE(check_partial_r_circular(spec.decomposition, c, 0.5).violation_found);
}

#pragma once

// Explicit constants of the E-domain Turan-type inequality, the comparison
// table of known lower bounds, the trapezoid geometry B(theta), and the
// two-branch alternative for straight boundary pieces.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "turanlab/capacity.hpp"
#include "turanlab/certify.hpp"
#include "turanlab/polynomial.hpp"

namespace turanlab {

struct ErodConstants {
    double theta = 0.0;
    double eta = 0.0;
    long long n0 = 0;
    double RK = 0.0;
    double cK = 0.0;
};

/// theta_0(Delta, xi, delta) = delta xi / (4 Delta).
inline double theta_zero(double delta_cap, double xi, double delta_small) {
    return delta_small * xi / (4.0 * delta_cap);
}

/// ceil(x), tolerating a relative rounding excess of 1e-12 above an integer.
inline long long ceil_with_slack(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

inline ErodConstants erod_constants(const ECertificate& cert) {
    const double D = cert.delta_cap, dl = cert.delta_small, xi = cert.xi, d = cert.d;
    const double ratio2 = (dl / D) * (dl / D);
    ErodConstants c;
    c.theta = dl * xi / (two_pi * D);
    c.eta = dl / (8.0 * D);
    c.n0 = ceil_with_slack(100.0 * (D / dl) * (D / dl));
    c.RK = circularity_radius(cert);
    c.cK = std::min(0.00022 * ratio2 / d, 0.009 * ratio2 * xi / d);
    if (std::isfinite(cert.kappa)) c.cK = std::min(c.cK, cert.kappa / 4.0);
    return c;
}

enum class BoundKind { Lower, Upper };

struct BoundRow {
    std::string label;
    std::string source;
    BoundKind kind = BoundKind::Lower;
    bool applicable = true;
    double value = 0.0;
    std::string note;
};

struct ComparisonInputs {
    std::optional<double> R;     ///< K is R-circular
    std::optional<double> kappa; ///< boundary curvature is at least kappa everywhere
    std::optional<double> cK;    ///< constant of a certified E-domain
};

inline BoundRow make_row(std::string label, std::string source, BoundKind kind, double value = 0.0,
                         std::string note = {}) {
    return {std::move(label), std::move(source), kind, true, value, std::move(note)};
}

/// Known bounds on ||p'|| / ||p|| for degree-n polynomials with all roots in K.
inline std::vector<BoundRow> comparison_bounds(const GeometrySummary& g, const ComparisonInputs& in, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    const double d = g.diameter, nn = n;
    std::vector<BoundRow> rows;

    auto turan = make_row("r_circular", "n/(2R)", BoundKind::Lower);
    if (in.R) turan.value = nn / (2.0 * *in.R);
    else {
        turan.applicable = false;
        turan.note = "no circularity radius given";
    }
    rows.push_back(turan);

    rows.push_back(make_row("width_diameter", "0.0003 w n / d^2", BoundKind::Lower, 0.0003 * g.width / (d * d) * nn));

    auto depth = make_row("depth", "h^4 n / (3000 d^5)", BoundKind::Lower);
    if (g.depth > 0.0) depth.value = std::pow(g.depth, 4) / (3000.0 * std::pow(d, 5)) * nn;
    else {
        depth.applicable = false;
        depth.note = "depth is zero";
    }
    rows.push_back(depth);

    rows.push_back(make_row("diameter_only", "0.022 / d", BoundKind::Lower, 0.022 / d));

    auto curv = make_row("curvature", "kappa n / 2", BoundKind::Lower);
    if (in.kappa && std::isfinite(*in.kappa)) curv.value = *in.kappa * nn / 2.0;
    else {
        curv.applicable = false;
        curv.note = "no positive curvature bound";
    }
    rows.push_back(curv);

    auto edomain = make_row("e_domain", "cK n", BoundKind::Lower);
    if (in.cK) edomain.value = *in.cK * nn;
    else {
        edomain.applicable = false;
        edomain.note = "domain not certified";
    }
    rows.push_back(edomain);

    rows.push_back(make_row("witness_target", "15 n / d", BoundKind::Upper, 15.0 * nn / d,
                            "some p in P_n(K) has ratio below this"));
    return rows;
}

/// Largest applicable lower bound in a comparison table.
inline double best_lower_bound(const std::vector<BoundRow>& rows) {
    double best = 0.0;
    for (const auto& r : rows) {
        if (r.applicable && r.kind == BoundKind::Lower) best = std::max(best, r.value);
    }
    return best;
}

struct TrapezoidB {
    double a = 0.0;
    double xi = 0.0;
    double theta = 0.0;
    double u = 0.0;
    double v = 0.0;
    double b = 0.0;
    double c = 0.0;
    double diam = 0.0;
};

/// Trapezoid over a segment of half-length a whose slanted sides leave the
/// endpoints at angle xi and meet the rays at angle theta from the far endpoints.
inline TrapezoidB trapezoid(double a, double xi, double theta) {
    if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "half-length must be positive");
    if (!(xi > 0.0) || xi > pi / 2.0 + 1e-15) throw Error(ErrorKind::InvalidArgument, "xi must lie in (0, pi/2]");
    if (theta < 0.0 || theta >= xi) throw Error(ErrorKind::DegenerateAngles, "need 0 <= theta < xi");
    TrapezoidB t;
    t.a = a;
    t.xi = xi;
    t.theta = theta;
    t.c = 2.0 * a * std::sin(xi) / std::sin(xi - theta);
    t.u = 0.5 * t.c * std::sin(xi + theta) / std::sin(xi);
    t.v = t.c * std::sin(theta);
    t.b = t.v / std::sin(xi);
    t.diam = std::max(2.0 * t.u, t.c);
    return t;
}

struct AlternativeWitness {
    bool present = false;
    PlanePoint point{};
    double param = 0.0;
    double lhs = 0.0; ///< log of the tested quantity
    double rhs = 0.0; ///< log of the threshold
};

struct SegmentAlternative {
    bool holds_i = true;
    bool holds_ii = true;
    int samples = 0;
    int excluded = 0;
    AlternativeWitness fails_i;  ///< sample with the worst margin for branch (i)
    AlternativeWitness fails_ii; ///< sample with the worst margin for branch (ii)
    double log_sup = 0.0;
};

/// Checks both branches at `samples + 1` equispaced points of straight piece `piece`, endpoints included:
/// (i) |p'(z)| > eta sin(theta) n |p(z)| / d everywhere on the piece,
/// (ii) |p(z)| <= exp(-2 eta n) ||p|| everywhere on the piece, with ||p|| the computed sup norm.
/// Points within 1e-12 d of a root are skipped and counted.
inline SegmentAlternative classify_segment_alternative(const RootPolynomial& p, const TaggedDecomposition& td,
                                                       const ECertificate& cert, std::size_t piece, int samples = 256) {
    if (piece >= td.boundary.size()) throw Error(ErrorKind::InvalidArgument, "piece index out of range");
    if (td.tags[piece] != PieceTag::Straight) {
        throw Error(ErrorKind::NotStraight, "piece " + std::to_string(piece) + " is not straight");
    }
    if (samples < 64) throw Error(ErrorKind::InvalidArgument, "need at least 64 samples");
    const auto k = erod_constants(cert);
    const double n = static_cast<double>(p.degree());
    const double log_i = std::log(k.eta * std::sin(k.theta) * n / cert.d);
    const auto sup = sup_norm(p, td.boundary);
    const double log_ii = -2.0 * k.eta * n + sup.log_value;

    SegmentAlternative out;
    out.log_sup = sup.log_value;
    const auto& seg = td.boundary.piece(piece);
    double worst_i = infinity, worst_ii = infinity;
    for (int i = 0; i <= samples; ++i) {
        const double t = seg.length() * i / samples;
        const PlanePoint z = seg.point(t);
        bool near_root = false;
        for (const auto& r : p.roots) near_root = near_root || std::abs(z - r) <= 1e-12 * cert.d;
        if (near_root) {
            ++out.excluded;
            continue;
        }
        ++out.samples;
        const auto m = log_moduli(p, z);
        const double lhs_i = m.log_dp - m.log_p;
        const double margin_i = lhs_i - log_i;
        if (!(margin_i > 0.0)) out.holds_i = false;
        if (margin_i < worst_i) {
            worst_i = margin_i;
            out.fails_i = {!(margin_i > 0.0), z, td.boundary.global_param(piece, t), lhs_i, log_i};
        }
        const double margin_ii = log_ii - m.log_p;
        if (!(margin_ii >= 0.0)) out.holds_ii = false;
        if (margin_ii < worst_ii) {
            worst_ii = margin_ii;
            out.fails_ii = {!(margin_ii >= 0.0), z, td.boundary.global_param(piece, t), m.log_p, log_ii};
        }
    }
    return out;
}

/// Factor (d / (2(q+1)))^(1/q) n^(-2/q) with ||p||_q >= factor * ||p||_inf.
inline double nikolskii_bound(double d, double q, int n) {
    if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "nikolskii_bound requires q >= 1");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
    return std::pow(d / (2.0 * (q + 1.0)), 1.0 / q) * std::pow(static_cast<double>(n), -2.0 / q);
}

} // namespace turanlab

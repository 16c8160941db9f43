#pragma once

// E-domain certification: parameter extraction from a tagged boundary
// decomposition, the convexified curve, and rolling-disk containment checks.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "turanlab/capacity.hpp"
#include "turanlab/geometry.hpp"

namespace turanlab {

enum class PieceTag { Straight, Curved };

struct TaggedDecomposition {
    ConvexBoundary boundary;
    std::vector<PieceTag> tags;
};

inline TaggedDecomposition make_tagged(ConvexBoundary boundary, std::vector<PieceTag> tags) {
    if (tags.size() != boundary.size()) {
        throw Error(ErrorKind::ValidationError, "expected " + std::to_string(boundary.size()) + " tags, got " +
                                                    std::to_string(tags.size()));
    }
    for (std::size_t j = 0; j < tags.size(); ++j) {
        const bool seg = boundary.piece(j).is_segment();
        if (tags[j] == PieceTag::Straight && !seg) {
            throw Error(ErrorKind::ValidationError, "piece " + std::to_string(j) + " tagged straight but is an arc");
        }
        if (tags[j] == PieceTag::Curved && seg) {
            throw Error(ErrorKind::ValidationError, "piece " + std::to_string(j) + " tagged curved but is a segment");
        }
    }
    return {std::move(boundary), std::move(tags)};
}

/// Tags every segment straight and every arc curved.
inline TaggedDecomposition tag_by_kind(ConvexBoundary boundary) {
    std::vector<PieceTag> tags;
    for (const auto& p : boundary.pieces()) tags.push_back(p.is_segment() ? PieceTag::Straight : PieceTag::Curved);
    return make_tagged(std::move(boundary), std::move(tags));
}

enum class CertificationStatus {
    Certified,     ///< straight lengths checked against a guaranteed lower bound of the transfinite diameter
    PlausibleOnly, ///< only passes with the Fekete estimate, which overestimates the transfinite diameter
};

inline const char* to_string(CertificationStatus s) {
    return s == CertificationStatus::Certified ? "certified" : "plausible";
}

/// Parameters (k, d, Delta, kappa, xi, delta) of an E-domain.
struct ECertificate {
    int k = 0;
    double d = 0.0;
    double delta_cap = 0.0;   ///< transfinite diameter value used
    double kappa = infinity;  ///< min curvature over curved pieces
    double xi = 0.0;          ///< corner-angle budget per adjacent straight piece
    double delta_small = 0.0; ///< slack of straight pieces below delta_cap
    std::vector<int> lambdas; ///< straight pieces adjacent to each vertex
    CertificationStatus status = CertificationStatus::Certified;
    double delta_lower = 0.0;
    double delta_upper = 0.0;
    double fekete_estimate = 0.0;
};

struct CertifyOptions {
    /// Points for the Fekete estimate (upper end of the bracket); 0 skips it.
    int fekete_points = 48;
};

inline constexpr double angle_tolerance = 1e-12;

inline ECertificate certify(const TaggedDecomposition& td, const CertifyOptions& opt = {}) {
    const auto& b = td.boundary;
    const std::size_t k = b.size();
    if (k == 1 && td.tags[0] == PieceTag::Straight) {
        throw Error(ErrorKind::AllDegenerate, "a single straight piece cannot bound a domain");
    }

    ECertificate cert;
    cert.k = static_cast<int>(k);
    cert.d = diameter(b);

    cert.lambdas.resize(k);
    double xi_prime = infinity;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t prev = (j + k - 1) % k;
        const int lambda = (td.tags[prev] == PieceTag::Straight) + (td.tags[j] == PieceTag::Straight);
        cert.lambdas[j] = lambda;
        if (lambda == 0) continue;
        const double omega = b.outer_angle(j);
        if (omega <= angle_tolerance) {
            throw Error(ErrorKind::NoStraightCornerAngle,
                        "vertex " + std::to_string(j) + " meets a straight piece with zero outer angle");
        }
        xi_prime = std::min(xi_prime, omega / lambda);
    }
    cert.xi = std::min(xi_prime, pi / 2.0);

    for (std::size_t j = 0; j < k; ++j) {
        if (td.tags[j] == PieceTag::Curved) cert.kappa = std::min(cert.kappa, b.piece(j).curvature());
    }

    double longest = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (td.tags[j] == PieceTag::Straight) longest = std::max(longest, b.piece(j).length());
    }

    cert.delta_lower = transfinite_lower_bound(b, cert.d);
    cert.delta_upper = cert.d / 2.0;
    if (opt.fekete_points > 0) {
        const auto fk = fekete_points(b, opt.fekete_points);
        cert.fekete_estimate = fk.mth_diameter;
        cert.delta_upper = std::min(fk.mth_diameter, cert.d / 2.0);
    }

    if (cert.delta_lower - longest > 0.0) {
        cert.status = CertificationStatus::Certified;
        cert.delta_cap = cert.delta_lower;
    } else if (opt.fekete_points > 0 && cert.delta_upper - longest > 0.0) {
        cert.status = CertificationStatus::PlausibleOnly;
        cert.delta_cap = cert.delta_upper;
    } else {
        throw Error(ErrorKind::StraightTooLong, "straight piece of length " + std::to_string(longest) +
                                                    " is not shorter than the transfinite diameter bound " +
                                                    std::to_string(std::max(cert.delta_lower, cert.delta_upper)));
    }
    const double delta_prime = cert.delta_cap - longest; // +inf-like when no straight pieces
    cert.delta_small = longest > 0.0 ? std::min(delta_prime, cert.delta_cap / 2.0) : cert.delta_cap / 2.0;

    for (std::size_t j = 0; j < k; ++j) {
        if (b.outer_angle(j) < cert.lambdas[j] * cert.xi - angle_tolerance) {
            throw Error(ErrorKind::NoStraightCornerAngle, "outer angle condition fails at vertex " + std::to_string(j));
        }
    }
    return cert;
}

/// Radius R_K = max(1/kappa, Delta / (2 sin xi)) of the partial rolling disk.
inline double circularity_radius(const ECertificate& cert) {
    const double curved = std::isinf(cert.kappa) ? 0.0 : 1.0 / cert.kappa;
    return std::max(curved, cert.delta_cap / (2.0 * std::sin(cert.xi)));
}

struct Convexification {
    ConvexBoundary curve;
    double kappa_star = 0.0;
    std::vector<double> replacement_radii; ///< per piece; 0 for pieces kept as they were
};

/// Replaces every straight piece by the outward circular arc through its endpoints
/// meeting the segment at angle xi.
inline Convexification convexify(const TaggedDecomposition& td, const ECertificate& cert) {
    const auto& b = td.boundary;
    std::vector<BoundaryPiece> pieces;
    std::vector<double> radii(b.size(), 0.0);
    for (std::size_t j = 0; j < b.size(); ++j) {
        const auto& piece = b.piece(j);
        if (td.tags[j] == PieceTag::Curved) {
            pieces.push_back(piece);
            continue;
        }
        const PlanePoint a = piece.as_segment().from, c = piece.as_segment().to;
        const double len = std::abs(c - a);
        const double radius = len / (2.0 * std::sin(cert.xi));
        const PlanePoint dir = (c - a) / len;
        const PlanePoint inward = dir * PlanePoint{0.0, 1.0};
        const PlanePoint center = 0.5 * (a + c) + inward * (radius * std::cos(cert.xi));
        const double start = std::arg(a - center);
        pieces.push_back(BoundaryPiece::arc(center, radius, start, start + 2.0 * cert.xi));
        radii[j] = radius;
    }
    Convexification out;
    try {
        out.curve = build_boundary(std::move(pieces));
    } catch (const Error& e) {
        throw Error(ErrorKind::ConvexificationNotConvex, e.what());
    }
    out.kappa_star = std::min(cert.kappa, 2.0 * std::sin(cert.xi) / cert.delta_cap);
    out.replacement_radii = std::move(radii);
    return out;
}

struct CircularityReport {
    double max_violation = 0.0;
    bool violation_found = false;
    PlanePoint witness{};
    double witness_param = 0.0;
    std::size_t samples_checked = 0;
};

namespace detail {

/// How far the domain sticks out of the radius-R disk internally tangent at z with inward normal n.
inline double tangent_disk_violation(const ConvexBoundary& b, PlanePoint z, PlanePoint inward, double R) {
    const PlanePoint center = z + R * inward;
    double far = 0.0;
    for (const auto& p : b.pieces()) far = std::max(far, p.farthest_distance(center));
    return std::max(0.0, far - R);
}

/// Smallest violation over admissible normals at boundary parameter (piece j, t).
inline double best_violation(const ConvexBoundary& b, std::size_t j, double t, double R) {
    const auto& piece = b.piece(j);
    const PlanePoint z = piece.point(t);
    double best = tangent_disk_violation(b, z, -piece.outward_normal(t), R);
    const std::size_t k = b.size();
    std::size_t vertex = k;
    if (t <= 0.0) vertex = j;
    else if (t >= piece.length()) vertex = (j + 1) % k;
    if (vertex < k && b.outer_angle(vertex) > 0.0) {
        const auto& prev = b.piece((vertex + k - 1) % k);
        const double a0 = prev.tangent_angle(prev.length()) + pi / 2.0;
        for (int i = 0; i <= 64 && best > 0.0; ++i) {
            const double dir = a0 + b.outer_angle(vertex) * i / 64.0;
            best = std::min(best, tangent_disk_violation(b, z, detail::unit(dir), R));
        }
    }
    return best;
}

inline void sample_piece(const ConvexBoundary& b, std::size_t j, int samples, double R, CircularityReport& rep) {
    const auto& piece = b.piece(j);
    for (int i = 0; i < samples; ++i) {
        const double t = piece.length() * i / (samples - 1);
        const double v = best_violation(b, j, t, R);
        ++rep.samples_checked;
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.witness = piece.point(t);
            rep.witness_param = b.global_param(j, t);
        }
    }
}

} // namespace detail

/// Tangent-disk containment on every curved piece of the decomposition.
inline CircularityReport check_partial_r_circular(const TaggedDecomposition& td, const ECertificate& cert, double R,
                                                  int samples = 256) {
    if (samples < 16) throw Error(ErrorKind::InvalidArgument, "need at least 16 samples per curved piece");
    CircularityReport rep;
    for (std::size_t j = 0; j < td.boundary.size(); ++j) {
        if (td.tags[j] == PieceTag::Curved) detail::sample_piece(td.boundary, j, samples, R, rep);
    }
    rep.violation_found = rep.max_violation > 1e-9 * cert.d;
    return rep;
}

/// Tangent-disk containment at points spread over the whole boundary.
inline CircularityReport r_circularity_report(const ConvexBoundary& b, double R, int samples = 256) {
    if (samples < 64) throw Error(ErrorKind::InvalidArgument, "need at least 64 boundary samples");
    CircularityReport rep;
    const double L = b.total_length();
    for (std::size_t j = 0; j < b.size(); ++j) {
        const int count = std::max(3, static_cast<int>(std::ceil(samples * b.piece(j).length() / L)) + 1);
        detail::sample_piece(b, j, count, R, rep);
    }
    rep.violation_found = rep.max_violation > 1e-9 * diameter(b);
    return rep;
}

inline bool check_r_circular(const ConvexBoundary& b, double R, int samples = 256) {
    return !r_circularity_report(b, R, samples).violation_found;
}

} // namespace turanlab

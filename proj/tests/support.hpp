#pragma once

#include <string>

#include "turanlab/turanlab.hpp"

namespace turanlab::testing {

inline DomainSpec corpus(const std::string& name) {
    return load_domain_spec(std::string(TURANLAB_CORPUS_DIR) + "/" + name + ".json");
}

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names{"disk", "heptagon", "truncated_disk", "square", "stadium", "triangle"};
    return names;
}

inline ConvexBoundary unit_disk() {
    return build_boundary({BoundaryPiece::arc(0.0, 1.0, 0.0, pi), BoundaryPiece::arc(0.0, 1.0, pi, two_pi)});
}

inline ConvexBoundary polygon(const std::vector<PlanePoint>& v) {
    std::vector<BoundaryPiece> pieces;
    for (std::size_t i = 0; i < v.size(); ++i) pieces.push_back(BoundaryPiece::segment(v[i], v[(i + 1) % v.size()]));
    return build_boundary(std::move(pieces));
}

inline ConvexBoundary unit_square() { return polygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}); }

/// Disk of radius 1 cut by the vertical chord x = cut.
inline TaggedDecomposition truncated_disk(double cut) {
    const double y = std::sqrt(1.0 - cut * cut), phi = std::acos(cut);
    auto b = build_boundary({BoundaryPiece::segment({cut, -y}, {cut, y}), BoundaryPiece::arc(0.0, 1.0, phi, two_pi - phi)});
    return make_tagged(std::move(b), {PieceTag::Straight, PieceTag::Curved});
}

inline RootPolynomial repeated(PlanePoint z, int n) { return RootPolynomial{std::vector<PlanePoint>(n, z)}; }

} // namespace turanlab::testing

#pragma once

// Closed convex boundaries made of line segments and circular arcs,
// parametrized by arc length and traversed counterclockwise.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "turanlab/error.hpp"

namespace turanlab {

using PlanePoint = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

namespace detail {

inline double dot(PlanePoint a, PlanePoint b) { return a.real() * b.real() + a.imag() * b.imag(); }
inline double cross(PlanePoint a, PlanePoint b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline PlanePoint unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Wraps an angle into (-pi, pi].
inline double wrap_pi(double a) {
    a = std::remainder(a, two_pi);
    if (a <= -pi) a += two_pi;
    return a;
}

/// Wraps an angle into [0, 2pi).
inline double wrap_two_pi(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a -= two_pi;
    return a;
}

template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    constexpr double g = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc >= fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

} // namespace detail

struct Segment {
    PlanePoint from;
    PlanePoint to;
};

/// Counterclockwise arc from start_angle to end_angle.
struct CircularArc {
    PlanePoint center;
    double radius = 0.0;
    double start_angle = 0.0;
    double end_angle = 0.0;
};

class BoundaryPiece {
public:
    enum class Kind { Segment, CircularArc };

    BoundaryPiece(Segment s) : shape_(s) {}
    BoundaryPiece(CircularArc a) : shape_(a) {}

    static BoundaryPiece segment(PlanePoint from, PlanePoint to) { return Segment{from, to}; }
    static BoundaryPiece arc(PlanePoint center, double radius, double start, double end) {
        return CircularArc{center, radius, start, end};
    }

    Kind kind() const { return std::holds_alternative<Segment>(shape_) ? Kind::Segment : Kind::CircularArc; }
    bool is_segment() const { return kind() == Kind::Segment; }
    const Segment& as_segment() const { return std::get<Segment>(shape_); }
    const CircularArc& as_arc() const { return std::get<CircularArc>(shape_); }

    double sweep() const { return is_segment() ? 0.0 : as_arc().end_angle - as_arc().start_angle; }

    double length() const {
        if (is_segment()) return std::abs(as_segment().to - as_segment().from);
        return as_arc().radius * sweep();
    }

    /// Curvature along the piece; zero for segments.
    double curvature() const { return is_segment() ? 0.0 : 1.0 / as_arc().radius; }

    /// Point at local arc length t in [0, length()].
    PlanePoint point(double t) const {
        if (is_segment()) {
            const auto& s = as_segment();
            const double len = length();
            if (t >= len) return s.to;
            return s.from + (s.to - s.from) * (t / len);
        }
        const auto& a = as_arc();
        return a.center + a.radius * detail::unit(a.start_angle + t / a.radius);
    }

    PlanePoint start_point() const { return is_segment() ? as_segment().from : point(0.0); }
    PlanePoint end_point() const {
        if (is_segment()) return as_segment().to;
        const auto& a = as_arc();
        return a.center + a.radius * detail::unit(a.end_angle);
    }

    /// Direction angle of the unit tangent at local parameter t (not lifted).
    double tangent_angle(double t) const {
        if (is_segment()) return std::arg(as_segment().to - as_segment().from);
        const auto& a = as_arc();
        return a.start_angle + t / a.radius + pi / 2.0;
    }

    PlanePoint outward_normal(double t) const {
        return detail::unit(tangent_angle(t) - pi / 2.0);
    }

    /// Whether `angle` lies in the arc's angular range (arcs only).
    bool arc_contains_angle(double angle, double tol = 1e-12) const {
        const auto& a = as_arc();
        const double rel = detail::wrap_two_pi(angle - a.start_angle);
        const double sw = sweep();
        return rel <= sw + tol || rel >= two_pi - tol;
    }

    /// Support function max over the piece of <z, e^{i phi}>.
    double support(double phi) const {
        const PlanePoint u = detail::unit(phi);
        if (is_segment()) {
            return std::max(detail::dot(as_segment().from, u), detail::dot(as_segment().to, u));
        }
        const auto& a = as_arc();
        if (arc_contains_angle(phi, 0.0)) return detail::dot(a.center, u) + a.radius;
        return std::max(detail::dot(start_point(), u), detail::dot(end_point(), u));
    }

    struct Nearest {
        PlanePoint point;
        double t = 0.0;
        double distance = 0.0;
    };

    Nearest nearest(PlanePoint z) const {
        if (is_segment()) {
            const auto& s = as_segment();
            const PlanePoint d = s.to - s.from;
            const double len2 = std::norm(d);
            double u = detail::dot(z - s.from, d) / len2;
            u = std::clamp(u, 0.0, 1.0);
            const PlanePoint p = s.from + d * u;
            return {p, u * std::sqrt(len2), std::abs(z - p)};
        }
        const auto& a = as_arc();
        const PlanePoint rel = z - a.center;
        if (std::abs(rel) > 0.0) {
            const double ang = std::arg(rel);
            if (arc_contains_angle(ang, 0.0)) {
                const double t = detail::wrap_two_pi(ang - a.start_angle) * a.radius;
                const PlanePoint p = a.center + a.radius * rel / std::abs(rel);
                return {p, std::min(t, length()), std::abs(z - p)};
            }
        }
        const PlanePoint p0 = start_point(), p1 = end_point();
        const double d0 = std::abs(z - p0), d1 = std::abs(z - p1);
        if (d0 <= d1) return {p0, 0.0, d0};
        return {p1, length(), d1};
    }

    /// Largest distance from z to a point of the piece.
    double farthest_distance(PlanePoint z) const {
        const double ends = std::max(std::abs(z - start_point()), std::abs(z - end_point()));
        if (is_segment()) return ends;
        const auto& a = as_arc();
        const PlanePoint away = a.center - z;
        if (std::abs(away) == 0.0) return a.radius;
        if (arc_contains_angle(std::arg(away), 0.0)) return std::abs(away) + a.radius;
        return ends;
    }

    /// Parameters t >= 0 at which the ray origin + t*dir (|dir| = 1) meets the piece.
    void ray_hits(PlanePoint origin, PlanePoint dir, std::vector<double>& out) const {
        if (is_segment()) {
            const auto& s = as_segment();
            const PlanePoint e = s.to - s.from;
            const double denom = detail::cross(dir, e);
            const PlanePoint w = s.from - origin;
            const double scale = std::abs(e);
            if (std::abs(denom) <= 1e-14 * scale) {
                if (std::abs(detail::cross(w, dir)) <= 1e-12 * std::max(1.0, scale)) {
                    out.push_back(detail::dot(s.from - origin, dir));
                    out.push_back(detail::dot(s.to - origin, dir));
                }
                return;
            }
            const double t = detail::cross(w, e) / denom;
            const double u = detail::cross(w, dir) / denom;
            if (u >= -1e-12 && u <= 1.0 + 1e-12) out.push_back(t);
            return;
        }
        const auto& a = as_arc();
        const PlanePoint oc = origin - a.center;
        const double b = detail::dot(oc, dir);
        const double c = std::norm(oc) - a.radius * a.radius;
        const double disc = b * b - c;
        if (disc < 0.0) return;
        const double sq = std::sqrt(disc);
        for (double t : {-b - sq, -b + sq}) {
            const PlanePoint hit = origin + t * dir;
            if (arc_contains_angle(std::arg(hit - a.center), 1e-10)) out.push_back(t);
        }
    }

private:
    std::variant<Segment, CircularArc> shape_;
};

/// Validated closed convex chain of pieces, counterclockwise.
///
/// Vertex j is the join where piece j starts (so vertex 0 sits at parameter 0).
class ConvexBoundary {
public:
    const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    const BoundaryPiece& piece(std::size_t j) const { return pieces_[j]; }
    const std::vector<double>& vertex_params() const { return vertex_params_; }
    double total_length() const { return total_length_; }

    /// Outer angle at vertex j: jump of the tangent direction.
    double outer_angle(std::size_t j) const { return outer_angles_[j]; }
    /// Lifted tangent angle at the start of piece j.
    double alpha_start(std::size_t j) const { return alpha_start_[j]; }
    double alpha_end(std::size_t j) const { return alpha_start_[j] + pieces_[j].sweep(); }

    PlanePoint vertex(std::size_t j) const { return pieces_[j].start_point(); }

    struct Location {
        std::size_t piece = 0;
        double t = 0.0;
    };

    /// Piece index and local parameter for arc length s (taken modulo L).
    Location locate(double s) const {
        s = wrap(s);
        auto it = std::upper_bound(vertex_params_.begin(), vertex_params_.end(), s);
        std::size_t j = static_cast<std::size_t>(std::distance(vertex_params_.begin(), it)) - 1;
        const double t = std::clamp(s - vertex_params_[j], 0.0, pieces_[j].length());
        return {j, t};
    }

    double wrap(double s) const {
        if (s >= 0.0 && s < total_length_) return s;
        s = std::fmod(s, total_length_);
        if (s < 0.0) s += total_length_;
        if (s >= total_length_) s = 0.0;
        return s;
    }

    double global_param(std::size_t piece, double t) const { return vertex_params_[piece] + t; }

private:
    friend ConvexBoundary build_boundary(std::vector<BoundaryPiece> pieces);

    std::vector<BoundaryPiece> pieces_;
    std::vector<double> vertex_params_;
    std::vector<double> outer_angles_;
    std::vector<double> alpha_start_;
    double total_length_ = 0.0;
};

inline constexpr double convexity_tolerance = 1e-9;
inline constexpr double closure_tolerance = 1e-12;

namespace detail {

inline void validate_piece(const BoundaryPiece& p, std::size_t j) {
    const std::string where = "piece " + std::to_string(j);
    if (p.is_segment()) {
        const auto& s = p.as_segment();
        const bool finite = std::isfinite(s.from.real()) && std::isfinite(s.from.imag()) &&
                            std::isfinite(s.to.real()) && std::isfinite(s.to.imag());
        if (!finite) throw Error(ErrorKind::DegeneratePiece, where + ": non-finite segment endpoint");
        if (!(std::abs(s.to - s.from) > 0.0)) throw Error(ErrorKind::DegeneratePiece, where + ": zero-length segment");
        return;
    }
    const auto& a = p.as_arc();
    const bool finite = std::isfinite(a.center.real()) && std::isfinite(a.center.imag()) &&
                        std::isfinite(a.radius) && std::isfinite(a.start_angle) && std::isfinite(a.end_angle);
    if (!finite) throw Error(ErrorKind::DegeneratePiece, where + ": non-finite arc data");
    if (!(a.radius > 0.0)) throw Error(ErrorKind::DegeneratePiece, where + ": arc radius must be positive");
    const double sweep = a.end_angle - a.start_angle;
    if (!(sweep > 0.0) || !(sweep < two_pi)) {
        throw Error(ErrorKind::DegeneratePiece, where + ": arc sweep must lie in (0, 2pi)");
    }
}

} // namespace detail

/// Validates a counterclockwise chain of pieces and computes its parametrization.
/// A clockwise all-segment polygon is reversed.
inline ConvexBoundary build_boundary(std::vector<BoundaryPiece> pieces) {
    if (pieces.empty()) throw Error(ErrorKind::DegeneratePiece, "empty piece sequence");
    for (std::size_t j = 0; j < pieces.size(); ++j) detail::validate_piece(pieces[j], j);

    const std::size_t k = pieces.size();
    double total = 0.0;
    for (const auto& p : pieces) total += p.length();

    for (std::size_t j = 0; j < k; ++j) {
        const PlanePoint end = pieces[j].end_point();
        const PlanePoint next = pieces[(j + 1) % k].start_point();
        const double gap = std::abs(end - next);
        if (gap > closure_tolerance * total) {
            throw Error(ErrorKind::NotClosed, "gap of " + std::to_string(gap) + " after piece " + std::to_string(j));
        }
    }

    std::vector<double> omega(k);
    double turning = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const auto& prev = pieces[(j + k - 1) % k];
        const double incoming = prev.tangent_angle(prev.length());
        const double outgoing = pieces[j].tangent_angle(0.0);
        omega[j] = detail::wrap_pi(outgoing - incoming);
        turning += omega[j] + pieces[j].sweep();
    }

    const bool all_segments = std::all_of(pieces.begin(), pieces.end(), [](const auto& p) { return p.is_segment(); });
    if (all_segments && std::abs(turning + two_pi) <= convexity_tolerance) {
        std::vector<BoundaryPiece> reversed;
        reversed.reserve(k);
        for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
            reversed.push_back(BoundaryPiece::segment(it->as_segment().to, it->as_segment().from));
        }
        return build_boundary(std::move(reversed));
    }

    for (std::size_t j = 0; j < k; ++j) {
        if (omega[j] < -convexity_tolerance) {
            throw Error(ErrorKind::NotConvex, "tangent angle decreases by " + std::to_string(-omega[j]) + " at vertex " +
                                                  std::to_string(j));
        }
        if (omega[j] >= pi - convexity_tolerance) {
            throw Error(ErrorKind::NotConvex, "cusp (tangent reversal) at vertex " + std::to_string(j));
        }
    }
    if (std::abs(turning - two_pi) > convexity_tolerance) {
        throw Error(ErrorKind::NotConvex, "total tangent turning is " + std::to_string(turning) + ", expected 2pi");
    }

    ConvexBoundary b;
    b.pieces_ = std::move(pieces);
    b.total_length_ = total;
    b.vertex_params_.resize(k);
    b.outer_angles_.resize(k);
    b.alpha_start_.resize(k);
    double s = 0.0;
    double alpha = detail::wrap_pi(b.pieces_[0].tangent_angle(0.0));
    for (std::size_t j = 0; j < k; ++j) {
        b.vertex_params_[j] = s;
        s += b.pieces_[j].length();
        b.outer_angles_[j] = std::max(0.0, omega[j]);
        if (j > 0) alpha += b.outer_angles_[j];
        b.alpha_start_[j] = alpha;
        alpha += b.pieces_[j].sweep();
    }
    return b;
}

inline PlanePoint point_at(const ConvexBoundary& b, double s) {
    const auto loc = b.locate(s);
    return b.piece(loc.piece).point(loc.t);
}

struct TangentAngles {
    double minus = 0.0;
    double plus = 0.0;
};

/// Left and right limits of the lifted tangent angle at arc length s.
inline TangentAngles tangent_angles(const ConvexBoundary& b, double s) {
    const double L = b.total_length();
    const double snap = closure_tolerance * L;
    s = b.wrap(s);
    auto loc = b.locate(s);
    const std::size_t k = b.size();
    const auto& piece = b.piece(loc.piece);
    std::optional<std::size_t> vertex;
    if (loc.t <= snap) vertex = loc.piece;
    else if (piece.length() - loc.t <= snap) vertex = (loc.piece + 1) % k;
    if (s >= L - snap) vertex = 0;
    if (vertex) {
        const std::size_t j = *vertex;
        const std::size_t prev = (j + k - 1) % k;
        double minus = b.alpha_end(prev);
        if (j == 0) minus -= two_pi;
        return {minus, b.alpha_start(j)};
    }
    const double a = b.alpha_start(loc.piece) + loc.t * piece.curvature();
    return {a, a};
}

inline double outer_angle(const ConvexBoundary& b, std::size_t vertex) { return b.outer_angle(vertex); }

inline double perimeter(const ConvexBoundary& b) { return b.total_length(); }

inline double support_function(const ConvexBoundary& b, double phi) {
    double h = -infinity;
    for (const auto& p : b.pieces()) h = std::max(h, p.support(phi));
    return h;
}

/// Extent of the domain in direction phi: h(phi) + h(phi + pi).
inline double breadth(const ConvexBoundary& b, double phi) {
    return support_function(b, phi) + support_function(b, phi + pi);
}

inline constexpr int direction_grid_size = 2048;

inline double diameter(const ConvexBoundary& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i + 1; j < b.size(); ++j) best = std::max(best, std::abs(b.vertex(i) - b.vertex(j)));
    }
    const int n = direction_grid_size;
    const double step = pi / n;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = breadth(b, i * step);
    for (int i = 0; i < n; ++i) {
        const double prev = grid[(i + n - 1) % n], next = grid[(i + 1) % n];
        if (grid[i] < prev || grid[i] < next) continue;
        const double phi = detail::golden_section_max([&](double x) { return breadth(b, x); }, (i - 1) * step,
                                                      (i + 1) * step, 1e-12);
        best = std::max({best, grid[i], breadth(b, phi)});
    }
    return best;
}

inline double width(const ConvexBoundary& b) {
    const int n = direction_grid_size;
    const double step = pi / n;
    std::vector<double> grid(n);
    double best = infinity;
    for (int i = 0; i < n; ++i) {
        grid[i] = breadth(b, i * step);
        best = std::min(best, grid[i]);
    }
    for (int i = 0; i < n; ++i) {
        const double prev = grid[(i + n - 1) % n], next = grid[(i + 1) % n];
        if (grid[i] > prev || grid[i] > next) continue;
        const double phi = detail::golden_section_max([&](double x) { return -breadth(b, x); }, (i - 1) * step,
                                                      (i + 1) * step, 1e-12);
        best = std::min(best, breadth(b, phi));
    }
    // Minimal width of a polygon-like domain is attained orthogonally to an edge.
    for (const auto& p : b.pieces()) {
        if (p.is_segment()) best = std::min(best, breadth(b, p.tangent_angle(0.0) - pi / 2.0));
    }
    return best;
}

/// Enclosed area via the shoelace integral, exact per piece.
inline double area(const ConvexBoundary& b) {
    double twice = 0.0;
    for (const auto& p : b.pieces()) {
        if (p.is_segment()) {
            twice += detail::cross(p.as_segment().from, p.as_segment().to);
        } else {
            const auto& a = p.as_arc();
            twice += a.radius * (a.center.real() * (std::sin(a.end_angle) - std::sin(a.start_angle)) -
                                 a.center.imag() * (std::cos(a.end_angle) - std::cos(a.start_angle))) +
                     a.radius * a.radius * (a.end_angle - a.start_angle);
        }
    }
    return 0.5 * twice;
}

/// Length of the chord cut from the domain by the ray from a boundary point.
inline double exit_distance(const ConvexBoundary& b, PlanePoint origin, PlanePoint dir) {
    std::vector<double> hits;
    for (const auto& p : b.pieces()) p.ray_hits(origin, dir, hits);
    double best = 0.0;
    for (double t : hits) best = std::max(best, t);
    return best;
}

struct BoundaryProjection {
    PlanePoint point;
    double param = 0.0;
    double distance = 0.0;
    std::size_t piece = 0;
};

inline BoundaryProjection nearest_boundary_point(const ConvexBoundary& b, PlanePoint z) {
    BoundaryProjection best{{}, 0.0, infinity, 0};
    for (std::size_t j = 0; j < b.size(); ++j) {
        const auto n = b.piece(j).nearest(z);
        if (n.distance < best.distance) best = {n.point, b.global_param(j, n.t), n.distance, j};
    }
    best.param = b.wrap(best.param);
    return best;
}

/// True iff z lies in the closed region or within tol of it.
inline bool contains(const ConvexBoundary& b, PlanePoint z, double tol = 0.0) {
    const auto proj = nearest_boundary_point(b, z);
    if (proj.distance <= tol) return true;
    const PlanePoint w = z - proj.point;
    const auto& piece = b.piece(proj.piece);
    const auto loc = b.locate(proj.param);
    const double snap = 1e-14 * b.total_length();
    if (loc.t > snap && piece.length() - loc.t > snap) {
        return detail::dot(w, piece.outward_normal(loc.t)) <= 0.0;
    }
    // Nearest point is a vertex: outside iff w has positive component along an adjacent normal.
    const std::size_t k = b.size();
    const std::size_t j = (loc.t <= snap) ? loc.piece : (loc.piece + 1) % k;
    const std::size_t prev = (j + k - 1) % k;
    const double a = detail::dot(w, b.piece(j).outward_normal(0.0));
    const double c = detail::dot(w, b.piece(prev).outward_normal(b.piece(prev).length()));
    return std::max(a, c) <= 0.0;
}

/// Nearest point of the closed region: z itself when inside.
inline PlanePoint project_into(const ConvexBoundary& b, PlanePoint z) {
    if (contains(b, z, 0.0)) return z;
    return nearest_boundary_point(b, z).point;
}

struct BoundingBox {
    double xmin, xmax, ymin, ymax;
};

inline BoundingBox bounding_box(const ConvexBoundary& b) {
    return {-support_function(b, pi), support_function(b, 0.0), -support_function(b, -pi / 2.0),
            support_function(b, pi / 2.0)};
}

struct DepthResult {
    double depth = 0.0;
    double argmin_param = 0.0;
    std::size_t samples = 0;
};

inline constexpr int depth_cone_directions = 64;

/// Depth: infimum over boundary points of the longest normal chord.
/// Piece endpoints are evaluated with the piece's own normal (one-sided limit),
/// and vertices additionally with the full normal cone.
inline DepthResult depth(const ConvexBoundary& b, int samples = 2048) {
    const double L = b.total_length();
    const double zero_chord = 1e-12 * diameter(b);
    DepthResult out{infinity, 0.0, 0};
    auto consider = [&](double chord, double param) {
        if (chord <= zero_chord) chord = 0.0;
        if (chord < out.depth) {
            out.depth = chord;
            out.argmin_param = param;
        }
        ++out.samples;
    };
    for (std::size_t j = 0; j < b.size(); ++j) {
        const auto& piece = b.piece(j);
        const int count = std::max(2, static_cast<int>(std::ceil(samples * piece.length() / L)) + 1);
        for (int i = 0; i < count; ++i) {
            const double t = piece.length() * i / (count - 1);
            const PlanePoint z = piece.point(t);
            const PlanePoint inward = -piece.outward_normal(t);
            consider(exit_distance(b, z, inward), b.global_param(j, t));
        }
    }
    // At a vertex the sup runs over the whole normal cone.
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double omega = b.outer_angle(j);
        if (omega <= 0.0) continue;
        const auto& prev = b.piece((j + b.size() - 1) % b.size());
        const double a0 = prev.tangent_angle(prev.length()) + pi / 2.0;
        double best = 0.0;
        for (int i = 0; i <= depth_cone_directions; ++i) {
            const double dir = a0 + omega * i / depth_cone_directions;
            best = std::max(best, exit_distance(b, b.vertex(j), detail::unit(dir)));
        }
        consider(best, b.vertex_params()[j]);
    }
    return out;
}

} // namespace turanlab

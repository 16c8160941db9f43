#pragma once

// JSON domain specification documents:
//   {"name": "...", "pieces": [
//      {"kind": "segment", "tag": "straight", "segment": {"from": [x, y], "to": [x, y]}},
//      {"kind": "arc", "tag": "curved", "arc": {"center": [x, y], "radius": r, "start": a0, "end": a1}}]}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "turanlab/certify.hpp"

namespace turanlab {

struct DomainSpec {
    std::string name;
    TaggedDecomposition decomposition;
};

namespace detail {

using nlohmann::json;

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void invalid(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::ValidationError, field + ": " + what);
}

inline const json& require(const json& obj, const char* key, const std::string& field) {
    if (!obj.is_object()) invalid(field, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) invalid(field + "." + key, "missing");
    return *it;
}

inline double number(const json& v, const std::string& field) {
    if (!v.is_number()) invalid(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid(field, "not finite");
    return x;
}

inline PlanePoint point(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) invalid(field, "expected [x, y]");
    return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

} // namespace detail

/// Parses a domain document. `source` labels error messages.
inline DomainSpec parse_domain_spec(const std::string& text, const std::string& source = "<input>") {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, source + ": " + detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0) +
                                               ": " + e.what());
    }
    DomainSpec out;
    if (!doc.is_object()) detail::invalid("$", "expected an object");
    const auto& name = detail::require(doc, "name", "$");
    if (!name.is_string()) detail::invalid("name", "expected a string");
    out.name = name.get<std::string>();
    const auto& pieces = detail::require(doc, "pieces", "$");
    if (!pieces.is_array() || pieces.empty()) detail::invalid("pieces", "expected a nonempty array");

    std::vector<BoundaryPiece> built;
    std::vector<PieceTag> tags;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
        const std::string f = "pieces[" + std::to_string(j) + "]";
        const auto& rec = pieces[j];
        const auto& kind = detail::require(rec, "kind", f);
        if (!kind.is_string()) detail::invalid(f + ".kind", "expected a string");
        const std::string k = kind.get<std::string>();
        PieceTag tag;
        if (k == "segment") {
            const auto& s = detail::require(rec, "segment", f);
            const PlanePoint a = detail::point(detail::require(s, "from", f + ".segment"), f + ".segment.from");
            const PlanePoint b = detail::point(detail::require(s, "to", f + ".segment"), f + ".segment.to");
            if (a == b) detail::invalid(f + ".segment", "zero length");
            built.push_back(BoundaryPiece::segment(a, b));
            tag = PieceTag::Straight;
        } else if (k == "arc") {
            const auto& a = detail::require(rec, "arc", f);
            const PlanePoint c = detail::point(detail::require(a, "center", f + ".arc"), f + ".arc.center");
            const double r = detail::number(detail::require(a, "radius", f + ".arc"), f + ".arc.radius");
            const double a0 = detail::number(detail::require(a, "start", f + ".arc"), f + ".arc.start");
            const double a1 = detail::number(detail::require(a, "end", f + ".arc"), f + ".arc.end");
            if (!(r > 0.0)) detail::invalid(f + ".arc.radius", "must be positive");
            if (!(a1 > a0) || !(a1 - a0 < two_pi)) detail::invalid(f + ".arc", "need start < end < start + 2 pi");
            built.push_back(BoundaryPiece::arc(c, r, a0, a1));
            tag = PieceTag::Curved;
        } else {
            detail::invalid(f + ".kind", "expected \"segment\" or \"arc\", got \"" + k + "\"");
        }
        if (const auto it = rec.find("tag"); it != rec.end()) {
            if (!it->is_string()) detail::invalid(f + ".tag", "expected a string");
            const std::string t = it->get<std::string>();
            if (t == "straight") tag = PieceTag::Straight;
            else if (t == "curved") tag = PieceTag::Curved;
            else detail::invalid(f + ".tag", "expected \"straight\" or \"curved\", got \"" + t + "\"");
        }
        tags.push_back(tag);
    }

    try {
        // A clockwise chain is only reversed when every piece is a segment, so all tags agree.
        out.decomposition = make_tagged(build_boundary(built), std::move(tags));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ValidationError) throw;
        throw Error(ErrorKind::ValidationError, std::string("pieces: ") + e.what());
    }
    return out;
}

inline DomainSpec load_domain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_domain_spec(ss.str(), path);
}

inline nlohmann::json domain_spec_json(const DomainSpec& spec) {
    nlohmann::json pieces = nlohmann::json::array();
    const auto& td = spec.decomposition;
    for (std::size_t j = 0; j < td.boundary.size(); ++j) {
        const auto& p = td.boundary.piece(j);
        nlohmann::json rec;
        rec["tag"] = td.tags[j] == PieceTag::Straight ? "straight" : "curved";
        if (p.is_segment()) {
            const auto& s = p.as_segment();
            rec["kind"] = "segment";
            rec["segment"] = {{"from", {s.from.real(), s.from.imag()}}, {"to", {s.to.real(), s.to.imag()}}};
        } else {
            const auto& a = p.as_arc();
            rec["kind"] = "arc";
            rec["arc"] = {{"center", {a.center.real(), a.center.imag()}},
                          {"radius", a.radius},
                          {"start", a.start_angle},
                          {"end", a.end_angle}};
        }
        pieces.push_back(rec);
    }
    return {{"name", spec.name}, {"pieces", pieces}};
}

} // namespace turanlab

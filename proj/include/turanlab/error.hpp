#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turanlab {

enum class ErrorKind {
    NotClosed,
    NotConvex,
    DegeneratePiece,
    NoStraightCornerAngle,
    StraightTooLong,
    AllDegenerate,
    ConvexificationNotConvex,
    AtRoot,
    DegenerateAngles,
    NotStraight,
    InvalidArgument,
    ParseError,
    ValidationError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::DegeneratePiece: return "DegeneratePiece";
    case ErrorKind::NoStraightCornerAngle: return "NoStraightCornerAngle";
    case ErrorKind::StraightTooLong: return "StraightTooLong";
    case ErrorKind::AllDegenerate: return "AllDegenerate";
    case ErrorKind::ConvexificationNotConvex: return "ConvexificationNotConvex";
    case ErrorKind::AtRoot: return "AtRoot";
    case ErrorKind::DegenerateAngles: return "DegenerateAngles";
    case ErrorKind::NotStraight: return "NotStraight";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace turanlab

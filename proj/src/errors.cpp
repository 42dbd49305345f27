#include "shehu/errors.hpp"

namespace shehu {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::NonAffineArgument: return "NonAffineArgument";
        case ErrorKind::UnsupportedAtom: return "UnsupportedAtom";
        case ErrorKind::DeltaNotPointwise: return "DeltaNotPointwise";
        case ErrorKind::SymbolicOnly: return "SymbolicOnly";
        case ErrorKind::UnboundVariable: return "UnboundVariable";
        case ErrorKind::NonTransformable: return "NonTransformable";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::ImproperImage: return "ImproperImage";
        case ErrorKind::NonRationalImage: return "NonRationalImage";
        case ErrorKind::IrreducibleHighDegree: return "IrreducibleHighDegree";
        case ErrorKind::IrrationalRoot: return "IrrationalRoot";
        case ErrorKind::UPowerMismatch: return "UPowerMismatch";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::ROCViolation: return "ROCViolation";
        case ErrorKind::OscillationFailure: return "OscillationFailure";
        case ErrorKind::NonSineData: return "NonSineData";
        case ErrorKind::Schema: return "SchemaError";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> offset) {
    std::string out(to_string(kind));
    out += ": ";
    out += message;
    if (offset) out += " (at byte " + std::to_string(*offset) + ")";
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> offset)
    : std::runtime_error(decorate(kind, message, offset)), kind_(kind), offset_(offset) {}

}  // namespace shehu

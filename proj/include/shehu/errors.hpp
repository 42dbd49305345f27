#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shehu {

enum class ErrorKind {
    Syntax,
    UnknownIdentifier,
    NonAffineArgument,
    UnsupportedAtom,
    DeltaNotPointwise,
    SymbolicOnly,
    UnboundVariable,
    NonTransformable,
    ArityMismatch,
    InvalidArgument,
    NotHomogeneous,
    ImproperImage,
    NonRationalImage,
    IrreducibleHighDegree,
    IrrationalRoot,
    UPowerMismatch,
    ConvergenceFailure,
    ROCViolation,
    OscillationFailure,
    NonSineData,
    Schema,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI)
/// can map it to a stable identifier.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> offset = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    /// Byte offset into the parsed text, for syntax-level failures.
    std::optional<std::size_t> offset() const noexcept { return offset_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> offset_;
};

}  // namespace shehu

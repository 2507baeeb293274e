#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thompson {

enum class ErrorKind {
    NotALeaf,
    ArityMismatch,
    DepthExceeded,
    InvalidTree,
    LeafCountMismatch,
    PermKindMismatch,
    GroupMismatch,
    NameOutOfScope,
    TokenOutOfScope,
    ExceedsCap,
    MemoryBudgetExceeded,
    EmptySample,
    NotMaximal,
    WidthMismatch,
    IndexOrder,
    TooFewCarets,
    Omega3BudgetExceeded,
    NotPure,
    BallTooSmall,
    ParseError,
};

std::string_view error_name(ErrorKind kind);

// Every domain failure carries a stable machine-readable name (see error_name).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const { return error_name(kind_); }

private:
    ErrorKind kind_;
};

// Parse errors additionally report the byte offset where parsing failed.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorKind::ParseError, what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace thompson

#include "thompson/error.hpp"

namespace thompson {

std::string_view error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotALeaf: return "NotALeaf";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::DepthExceeded: return "DepthExceeded";
        case ErrorKind::InvalidTree: return "InvalidTree";
        case ErrorKind::LeafCountMismatch: return "LeafCountMismatch";
        case ErrorKind::PermKindMismatch: return "PermKindMismatch";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::NameOutOfScope: return "NameOutOfScope";
        case ErrorKind::TokenOutOfScope: return "TokenOutOfScope";
        case ErrorKind::ExceedsCap: return "ExceedsCap";
        case ErrorKind::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::NotMaximal: return "NotMaximal";
        case ErrorKind::WidthMismatch: return "WidthMismatch";
        case ErrorKind::IndexOrder: return "IndexOrder";
        case ErrorKind::TooFewCarets: return "TooFewCarets";
        case ErrorKind::Omega3BudgetExceeded: return "Omega3BudgetExceeded";
        case ErrorKind::NotPure: return "NotPure";
        case ErrorKind::BallTooSmall: return "BallTooSmall";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace thompson

#pragma once

#include <stdexcept>
#include <string>

namespace wellorder {

/// Error conditions surfaced by the library. Validation *reports* (regularity,
/// bijectivity, subset checks) are ordinary return values; exceptions are
/// reserved for contract violations and unusable inputs.
enum class Errc {
    EmptySubset,          ///< choice function applied to the empty set
    FullSet,              ///< fresh-element operator applied to the full ground set
    MissingTableEntry,    ///< table choice function has no entry for a subset
    MembershipViolation,  ///< table entry picks an atom outside its subset
    GroundTooLarge,       ///< ground set exceeds the cap of an exhaustive operation
    GroundMismatch,       ///< operands belong to different ground sets
    EmptyFamily,          ///< intersection/least requested on an empty family
    NotAChain,            ///< family has an incomparable pair where a chain is required
    AtomNotCovered,       ///< no family member contains the requested atom
    WitnessMismatch,      ///< a recomputed proof witness failed its defining identity
    UnknownAtom,          ///< atom index or label outside the ground set
    InvalidGround,        ///< duplicate/empty labels or more than 64 atoms
    InvalidInput,         ///< malformed problem document (parse/schema error)
    InternalInvariant,    ///< impossible state; indicates an implementation bug
};

inline const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::EmptySubset: return "EmptySubset";
        case Errc::FullSet: return "FullSet";
        case Errc::MissingTableEntry: return "MissingTableEntry";
        case Errc::MembershipViolation: return "MembershipViolation";
        case Errc::GroundTooLarge: return "GroundTooLarge";
        case Errc::GroundMismatch: return "GroundMismatch";
        case Errc::EmptyFamily: return "EmptyFamily";
        case Errc::NotAChain: return "NotAChain";
        case Errc::AtomNotCovered: return "AtomNotCovered";
        case Errc::WitnessMismatch: return "WitnessMismatch";
        case Errc::UnknownAtom: return "UnknownAtom";
        case Errc::InvalidGround: return "InvalidGround";
        case Errc::InvalidInput: return "InvalidInput";
        case Errc::InternalInvariant: return "InternalInvariant";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace wellorder

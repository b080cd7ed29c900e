#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wellorder/errors.hpp"
#include "wellorder/regular.hpp"
#include "wellorder/sets.hpp"

namespace wellorder {

enum class Relation { Equal, LeftIsInitialSegmentOfRight, RightIsInitialSegmentOfLeft };

inline const char* relation_name(Relation r) noexcept {
    switch (r) {
        case Relation::Equal: return "Equal";
        case Relation::LeftIsInitialSegmentOfRight: return "LeftIsInitialSegmentOfRight";
        case Relation::RightIsInitialSegmentOfLeft: return "RightIsInitialSegmentOfLeft";
    }
    return "Unknown";
}

struct ComparabilityVerdict {
    Relation relation;
    SubsetFamily core;  ///< the agreement core of the two inputs
};

/// One side of a pairwise comparison failed its regularity precondition.
class NotRegularError : public Error {
public:
    enum class Side { Left, Right };

    NotRegularError(Side side, RegularityReport report)
        : Error(Errc::InvalidInput, side == Side::Left ? "left family is not regular"
                                                       : "right family is not regular"),
          side_(side),
          report_(std::move(report)) {}

    Side side() const noexcept { return side_; }
    const RegularityReport& report() const noexcept { return report_; }

private:
    Side side_;
    RegularityReport report_;
};

/// The comparability dichotomy failed on inputs that passed verification.
/// This never happens for a correct implementation; the payload carries the
/// contradiction witnesses (the least members of each side's residue, which
/// the argument shows would have to coincide) for debugging.
class TheoremViolationError : public Error {
public:
    TheoremViolationError(SubsetFamily left, SubsetFamily right, SubsetFamily core, Subset r1, Subset r2)
        : Error(Errc::InternalInvariant,
                "comparability dichotomy failed: core " + core.text() + ", residue witnesses " +
                    r1.text() + " / " + r2.text()),
          left_(std::move(left)),
          right_(std::move(right)),
          core_(std::move(core)),
          r1_(std::move(r1)),
          r2_(std::move(r2)) {}

    const SubsetFamily& left() const noexcept { return left_; }
    const SubsetFamily& right() const noexcept { return right_; }
    const SubsetFamily& core() const noexcept { return core_; }
    const Subset& r1() const noexcept { return r1_; }
    const Subset& r2() const noexcept { return r2_; }

private:
    SubsetFamily left_, right_, core_;
    Subset r1_, r2_;
};

/// Members common to both families whose strict lower sets (within each
/// family) coincide as member sets. Defined for arbitrary families; no
/// regularity is required.
inline SubsetFamily agreement_core(const SubsetFamily& p1, const SubsetFamily& p2) {
    if (p1.ground().get() != p2.ground().get())
        throw Error(Errc::GroundMismatch, "families belong to different ground sets");
    const Ground& ground = p1.ground();
    const std::vector<std::uint64_t> masks1 = p1.member_masks();
    const std::vector<std::uint64_t> masks2 = p2.member_masks();

    auto strict_lower_set = [](const std::vector<std::uint64_t>& masks, std::uint64_t p) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t q : masks)
            if ((q & p) == q && q != p) out.push_back(q);
        return out;  // canonical order inherited from the family
    };

    std::vector<std::uint64_t> core;
    for (std::uint64_t p : masks1) {
        bool in_both = false;
        for (std::uint64_t q : masks2)
            if (q == p) { in_both = true; break; }
        if (!in_both) continue;
        if (strict_lower_set(masks1, p) == strict_lower_set(masks2, p)) core.push_back(p);
    }
    return SubsetFamily::of_masks(ground, core);
}

/// Compare two regular families: the agreement core always equals one side
/// (or both), yielding the equal / initial-segment trichotomy.
inline ComparabilityVerdict compare_regular(const SubsetFamily& p1, const SubsetFamily& p2,
                                            const ChoiceFunction& phi) {
    RegularityReport left_report = verify_regular(p1, phi);
    if (!left_report.overall) throw NotRegularError(NotRegularError::Side::Left, std::move(left_report));
    RegularityReport right_report = verify_regular(p2, phi);
    if (!right_report.overall)
        throw NotRegularError(NotRegularError::Side::Right, std::move(right_report));

    SubsetFamily core = agreement_core(p1, p2);
    const bool eq_left = core == p1;
    const bool eq_right = core == p2;
    if (eq_left && eq_right) return {Relation::Equal, std::move(core)};
    if (eq_left) return {Relation::LeftIsInitialSegmentOfRight, std::move(core)};
    if (eq_right) return {Relation::RightIsInitialSegmentOfLeft, std::move(core)};

    // Both residues are nonempty; report their least members. Regular
    // families are chains, so the canonical minimum is the inclusion-least.
    auto least_of_residue = [](const SubsetFamily& family, const SubsetFamily& sub) {
        for (const Subset& member : family.members())
            if (!sub.contains(member)) return member;
        throw Error(Errc::InternalInvariant, "residue is empty despite inequality");
    };
    throw TheoremViolationError(p1, p2, core, least_of_residue(p1, core), least_of_residue(p2, core));
}

}  // namespace wellorder

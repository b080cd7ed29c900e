#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wellorder/choice.hpp"
#include "wellorder/errors.hpp"
#include "wellorder/regular.hpp"
#include "wellorder/sets.hpp"

namespace wellorder {

/// Brute-force ground truth at desk scale: the result of filtering every
/// candidate family over the full powerset through verify_regular.
struct OracleRun {
    Ground ground;
    std::vector<SubsetFamily> regular_families;  ///< in candidate enumeration order
    std::uint64_t candidate_count = 0;           ///< 2^(2^|A|)
    std::uint64_t rejected_count = 0;
    /// How many rejected candidates failed each condition (a candidate may
    /// fail several and is tallied under each).
    std::array<std::uint64_t, 4> rejection_tallies{};
};

/// Enumerate all 2^(2^|A|) candidate families and keep the regular ones.
/// Candidates are bitmasks over the powerset positions taken in canonical
/// subset order, so the enumeration sequence is reproducible. Capped at
/// |A| <= 4 (65536 candidates).
inline OracleRun enumerate_regular_families(const Ground& ground, const ChoiceFunction& phi) {
    if (ground->size() > 4)
        throw Error(Errc::GroundTooLarge, "exhaustive family enumeration is capped at 4 atoms");
    if (ground.get() != phi.ground().get())
        throw Error(Errc::GroundMismatch, "choice rule is defined over a different ground set");

    const std::size_t subset_count = std::size_t{1} << ground->size();
    std::vector<std::uint64_t> positions;  // subsets of the ground set, canonical order
    positions.reserve(subset_count);
    for (std::uint64_t mask = 0; mask < subset_count; ++mask) positions.push_back(mask);
    std::sort(positions.begin(), positions.end(), canonical_mask_less);

    OracleRun run;
    run.ground = ground;
    run.candidate_count = std::uint64_t{1} << subset_count;

    for (std::uint64_t candidate = 0; candidate < run.candidate_count; ++candidate) {
        std::vector<std::uint64_t> masks;
        for (std::uint64_t c = candidate; c != 0; c &= c - 1)
            masks.push_back(positions[static_cast<std::size_t>(std::countr_zero(c))]);
        SubsetFamily family = SubsetFamily::of_masks(ground, masks);
        const RegularityReport report = verify_regular(family, phi);
        if (report.overall) {
            run.regular_families.push_back(std::move(family));
        } else {
            ++run.rejected_count;
            if (!report.cond1_linear.pass) ++run.rejection_tallies[0];
            if (!report.cond2_well.pass) ++run.rejection_tallies[1];
            if (!report.cond3_empty.pass) ++run.rejection_tallies[2];
            if (!report.cond4_successor.pass) ++run.rejection_tallies[3];
        }
    }
    return run;
}

/// Member-set union of every enumerated regular family.
inline SubsetFamily union_of_all_regular(const OracleRun& run) {
    std::vector<Subset> members;
    for (const SubsetFamily& family : run.regular_families)
        for (const Subset& member : family.members()) members.push_back(member);
    return SubsetFamily(run.ground, std::move(members));
}

/// Whether a regular family can be extended by one more stage.
struct MaximalityReport {
    bool maximal = false;
    Subset z;  ///< union of the family's members
    std::optional<SubsetFamily> extension;          ///< the one-stage extension, when it exists
    std::optional<RegularityReport> extension_regularity;
};

/// If the family's union already covers the ground set, no extension exists
/// (the fresh-element operator is undefined there). Otherwise adjoin the
/// successor of the union and verify the extended family is regular.
inline MaximalityReport maximality_check(const SubsetFamily& q, const ChoiceFunction& phi) {
    Subset z = family_union(q);
    if (z.is_full()) return {true, std::move(z), std::nullopt, std::nullopt};

    std::vector<Subset> extended = q.members();
    extended.push_back(successor(phi, z));
    SubsetFamily extension(q.ground(), std::move(extended));
    RegularityReport report = verify_regular(extension, phi);
    return {false, std::move(z), std::move(extension), std::move(report)};
}

}  // namespace wellorder

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wellorder/errors.hpp"
#include "wellorder/sets.hpp"

namespace wellorder {

/// splitmix64 finalizer. The one source of pseudorandomness in the library;
/// every seeded rule and every sampler derives from it, so identical inputs
/// reproduce bit-identically across platforms.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Index of the k-th set bit of mask, ascending. Requires k < popcount(mask).
inline std::size_t nth_set_bit(std::uint64_t mask, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) mask &= mask - 1;
    if (mask == 0) throw Error(Errc::InternalInvariant, "nth_set_bit: k out of range");
    return static_cast<std::size_t>(std::countr_zero(mask));
}

/// A deterministic total map from nonempty subsets to their own elements.
///
/// Three rules:
///   min    — the atom with the lowest ground-set index present;
///   table  — an explicit finite map mask -> atom index;
///   seeded — h = splitmix64_mix(seed ^ mask), pick the (h mod |X|)-th
///            set bit in ascending index order.
///
/// min and seeded are total and member-picking by construction; tables are
/// checked at use (and may be validated eagerly, see validate_table).
class ChoiceFunction {
public:
    enum class Kind { Min, Table, Seeded };

    static ChoiceFunction min_rule(Ground ground) {
        return ChoiceFunction(Kind::Min, std::move(ground), 0, {});
    }

    static ChoiceFunction seeded(Ground ground, std::uint64_t seed) {
        return ChoiceFunction(Kind::Seeded, std::move(ground), seed, {});
    }

    static ChoiceFunction from_table(Ground ground, std::unordered_map<std::uint64_t, std::size_t> entries) {
        return ChoiceFunction(Kind::Table, std::move(ground), 0, std::move(entries));
    }

    Kind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const Ground& ground() const noexcept { return ground_; }
    const std::unordered_map<std::uint64_t, std::size_t>& table() const noexcept { return table_; }

private:
    ChoiceFunction(Kind kind, Ground ground, std::uint64_t seed,
                   std::unordered_map<std::uint64_t, std::size_t> table)
        : kind_(kind), ground_(std::move(ground)), seed_(seed), table_(std::move(table)) {}

    Kind kind_;
    Ground ground_;
    std::uint64_t seed_;
    std::unordered_map<std::uint64_t, std::size_t> table_;
};

/// Apply the choice rule to a nonempty subset; the result is always a member.
inline std::size_t choose(const ChoiceFunction& phi, const Subset& x) {
    if (x.ground().get() != phi.ground().get())
        throw Error(Errc::GroundMismatch, "subset belongs to a different ground set than the choice rule");
    if (x.is_empty())
        throw Error(Errc::EmptySubset, "choice is undefined on the empty set");
    switch (phi.kind()) {
        case ChoiceFunction::Kind::Min:
            return static_cast<std::size_t>(std::countr_zero(x.mask()));
        case ChoiceFunction::Kind::Seeded: {
            const std::uint64_t h = splitmix64_mix(phi.seed() ^ x.mask());
            const std::size_t n = x.count();
            return nth_set_bit(x.mask(), static_cast<std::size_t>(h % n));
        }
        case ChoiceFunction::Kind::Table: {
            auto it = phi.table().find(x.mask());
            if (it == phi.table().end())
                throw Error(Errc::MissingTableEntry, "no table entry for subset " + x.text());
            const std::size_t pick = it->second;
            if (pick >= x.ground()->size() || !x.contains(pick))
                throw Error(Errc::MembershipViolation,
                            "table entry for " + x.text() + " picks an atom outside the subset");
            return pick;
        }
    }
    throw Error(Errc::InternalInvariant, "unhandled choice kind");
}

/// The fresh-element operator: pick from the complement of x. Undefined at
/// the full set, whose complement is empty.
inline std::size_t alpha(const ChoiceFunction& phi, const Subset& x) {
    if (x.ground().get() != phi.ground().get())
        throw Error(Errc::GroundMismatch, "subset belongs to a different ground set than the choice rule");
    if (x.is_full())
        throw Error(Errc::FullSet, "no fresh element exists for the full ground set");
    return choose(phi, complement(x));
}

/// Result of eagerly checking a table rule for totality and membership.
struct TableValidation {
    std::vector<Subset> missing;                          ///< nonempty subsets lacking an entry
    std::vector<std::pair<Subset, std::size_t>> violations;  ///< entries picking outside their subset
    bool valid() const noexcept { return missing.empty() && violations.empty(); }
};

/// Enumerate every nonempty subset and check the table against it. Only
/// offered for |A| <= 16 (65535 entries); larger tables are checked lazily,
/// erroring on first use.
inline TableValidation validate_table(const ChoiceFunction& phi) {
    if (phi.kind() != ChoiceFunction::Kind::Table)
        throw Error(Errc::InvalidInput, "validate_table requires a table choice rule");
    const Ground& ground = phi.ground();
    if (ground->size() > 16)
        throw Error(Errc::GroundTooLarge, "eager table validation is capped at 16 atoms");
    TableValidation result;
    const std::uint64_t full = ground->full_mask();
    for (std::uint64_t mask = 1; mask <= full && full != 0; ++mask) {
        auto it = phi.table().find(mask);
        if (it == phi.table().end()) {
            result.missing.emplace_back(ground, mask);
        } else if (it->second >= ground->size() || ((mask >> it->second) & 1u) == 0) {
            result.violations.emplace_back(Subset(ground, mask), it->second);
        }
        if (mask == full) break;
    }
    return result;
}

}  // namespace wellorder

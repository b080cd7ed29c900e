#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wellorder/choice.hpp"
#include "wellorder/errors.hpp"
#include "wellorder/regular.hpp"
#include "wellorder/sets.hpp"

namespace wellorder {

/// The enumeration of the ground set induced by the canonical chain, plus
/// the stage each atom first appears at. position is the inverse of sequence.
struct WellOrder {
    Ground ground;
    std::vector<std::size_t> sequence;  ///< atom indices in enumeration order
    std::vector<std::size_t> position;  ///< position[atom] = rank in sequence
    std::vector<Subset> stages;         ///< stages[k] is the stage whose fresh element is sequence[k]
};

/// Witness record tying one atom to its stage: r is the least member
/// containing the atom, r1 the union of members strictly below r, and the
/// fresh element of r1 is the atom itself.
struct StageRecord {
    std::size_t atom;
    Subset r;
    Subset r1;
    bool verified = false;
};

/// Locate the stage of one atom inside the canonical chain and verify the
/// defining identity. Throws AtomNotCovered when no member contains the
/// atom, NotAChain when the containing members are not nested (a caller
/// precondition violation), and WitnessMismatch when a recomputed identity
/// fails.
inline StageRecord stage_of(const SubsetFamily& q, const ChoiceFunction& phi, std::size_t atom) {
    const Ground& ground = q.ground();
    if (ground.get() != phi.ground().get())
        throw Error(Errc::GroundMismatch, "family and choice rule have different ground sets");
    if (atom >= ground->size())
        throw Error(Errc::UnknownAtom, "atom index " + std::to_string(atom) + " out of range");

    // members containing the atom, canonical order
    std::optional<Subset> least;
    for (const Subset& member : q.members()) {
        if (!member.contains(atom)) continue;
        if (!least) {
            least = member;
        } else if (!is_subset(*least, member)) {
            throw Error(Errc::NotAChain, "members containing " + ground->label(atom) +
                                             " are not nested: " + least->text() + " vs " + member.text());
        }
    }
    if (!least)
        throw Error(Errc::AtomNotCovered, "no family member contains atom " + ground->label(atom));

    const Subset r = *least;
    const Subset r1 = strict_lower_union(q, r);
    if (r1.contains(atom))
        throw Error(Errc::WitnessMismatch,
                    "atom " + ground->label(atom) + " already lies below its least containing member");
    if (!q.contains(r1))
        throw Error(Errc::WitnessMismatch, "strict lower union " + r1.text() + " is not a member");
    if (r1.count() + 1 != r.count())
        throw Error(Errc::WitnessMismatch, "stage " + r.text() + " is not one atom above " + r1.text());
    if (alpha(phi, r1) != atom)
        throw Error(Errc::WitnessMismatch, "fresh element of " + r1.text() + " is not " + ground->label(atom));
    return {atom, r, r1, true};
}

/// Build the enumeration of the ground set two independent ways — reading
/// fresh elements off the chain stages, and ranking each atom by the size of
/// its stage — and insist they agree.
inline WellOrder induced_order(const Ground& ground, const ChoiceFunction& phi) {
    const Chain chain = build_chain(ground, phi);
    const std::size_t n = ground->size();

    WellOrder order;
    order.ground = ground;
    order.sequence.reserve(n);
    order.position.assign(n, 0);
    order.stages.assign(chain.stages.begin(), chain.stages.end() - 1);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t atom = alpha(phi, chain.stages[k]);
        order.sequence.push_back(atom);
        order.position[atom] = k;
    }

    const SubsetFamily family = chain.as_family();
    for (std::size_t atom = 0; atom < n; ++atom) {
        const StageRecord record = stage_of(family, phi, atom);
        if (record.r1.count() != order.position[atom])
            throw Error(Errc::InternalInvariant,
                        "stage rank and enumeration rank disagree for atom " + ground->label(atom));
    }
    return order;
}

struct InjectivityReport {
    std::uint64_t pairs_checked = 0;
    std::vector<std::string> failures;  ///< human-readable witnesses
    bool pass = true;
};

/// Mechanize the injectivity argument over every pair of non-top members:
/// the fresh element of the smaller stage lands inside the larger one, the
/// fresh element of the larger stage does not, so they differ. Also checks
/// the image of the chain is globally duplicate-free.
inline InjectivityReport check_injective(const SubsetFamily& q, const ChoiceFunction& phi) {
    InjectivityReport report;
    std::vector<Subset> nontop;
    for (const Subset& member : q.members())
        if (!member.is_full()) nontop.push_back(member);

    std::vector<std::size_t> picks;
    picks.reserve(nontop.size());
    for (const Subset& member : nontop) picks.push_back(alpha(phi, member));

    for (std::size_t i = 0; i < nontop.size(); ++i) {
        for (std::size_t j = i + 1; j < nontop.size(); ++j) {
            ++report.pairs_checked;
            const Subset& q1 = nontop[i];
            const Subset& q2 = nontop[j];
            if (!is_strict_subset(q1, q2)) {
                report.failures.push_back("members " + q1.text() + " and " + q2.text() +
                                          " are not strictly nested");
                continue;
            }
            if (!q2.contains(picks[i]))
                report.failures.push_back("fresh element of " + q1.text() + " is missing from " + q2.text());
            if (q2.contains(picks[j]))
                report.failures.push_back("fresh element of " + q2.text() + " already lies inside it");
            if (picks[i] == picks[j])
                report.failures.push_back("stages " + q1.text() + " and " + q2.text() +
                                          " share a fresh element");
        }
    }

    std::vector<std::size_t> sorted = picks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        report.failures.push_back("chain image contains a duplicate atom");

    report.pass = report.failures.empty();
    return report;
}

struct SurjectivityReport {
    std::uint64_t atoms_checked = 0;
    std::vector<StageRecord> records;   ///< one witness per covered atom
    std::vector<std::string> failures;  ///< per-atom diagnostics
    bool pass = true;
};

/// Every ground atom must be the fresh element of exactly one stage; locate
/// and verify that stage atom by atom.
inline SurjectivityReport check_surjective(const SubsetFamily& q, const ChoiceFunction& phi) {
    SurjectivityReport report;
    const Ground& ground = q.ground();
    for (std::size_t atom = 0; atom < ground->size(); ++atom) {
        ++report.atoms_checked;
        try {
            report.records.push_back(stage_of(q, phi, atom));
        } catch (const Error& e) {
            if (e.code() == Errc::AtomNotCovered || e.code() == Errc::WitnessMismatch) {
                report.failures.push_back(e.what());
            } else {
                throw;
            }
        }
    }
    report.pass = report.failures.empty();
    return report;
}

enum class VerifyMode { Exhaustive, Sampled };

struct WellOrderCheck {
    VerifyMode mode = VerifyMode::Exhaustive;
    std::uint64_t sample_seed = 0;  ///< meaningful only when sampled
    std::uint64_t subsets_checked = 0;
    std::vector<Subset> failures;  ///< subsets lacking a unique least member
    bool pass = true;
};

/// Check the defining property of a well-order on the induced enumeration:
/// every nonempty subset has a unique position-least element, which is its
/// earliest-enumerated member. Exhaustive mode sweeps all 2^|A|-1 subsets
/// (capped at 16 atoms); sampled mode draws subsets from the splitmix stream
/// and records the seed.
inline WellOrderCheck verify_wellorder(const WellOrder& order, VerifyMode mode,
                                       std::uint64_t sample_count = 1000, std::uint64_t sample_seed = 0) {
    const Ground& ground = order.ground;
    const std::size_t n = ground->size();
    WellOrderCheck check;
    check.mode = mode;
    if (mode == VerifyMode::Sampled) check.sample_seed = sample_seed;

    auto inspect = [&](std::uint64_t mask) {
        ++check.subsets_checked;
        // least by position map
        std::size_t best_atom = 0;
        std::size_t best_pos = n;
        std::size_t ties = 0;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
            const std::size_t atom = static_cast<std::size_t>(std::countr_zero(m));
            if (order.position[atom] < best_pos) {
                best_pos = order.position[atom];
                best_atom = atom;
                ties = 1;
            } else if (order.position[atom] == best_pos) {
                ++ties;
            }
        }
        // least by walking the enumeration
        std::size_t first_enumerated = n;
        for (std::size_t k = 0; k < n; ++k) {
            if ((mask >> order.sequence[k]) & 1u) {
                first_enumerated = order.sequence[k];
                break;
            }
        }
        const bool ok = ties == 1 && ((mask >> best_atom) & 1u) != 0 && best_atom == first_enumerated;
        if (!ok) check.failures.emplace_back(ground, mask);
    };

    if (mode == VerifyMode::Exhaustive) {
        if (n > 16)
            throw Error(Errc::GroundTooLarge, "exhaustive subset verification is capped at 16 atoms");
        const std::uint64_t full = ground->full_mask();
        for (std::uint64_t mask = 1; full != 0 && mask <= full; ++mask) {
            inspect(mask);
            if (mask == full) break;
        }
    } else {
        const std::uint64_t full = ground->full_mask();
        if (full != 0) {
            std::uint64_t produced = 0;
            for (std::uint64_t counter = 0; produced < sample_count; ++counter) {
                const std::uint64_t mask = splitmix64_mix(sample_seed ^ counter) & full;
                if (mask == 0) continue;
                inspect(mask);
                ++produced;
            }
        }
    }

    check.pass = check.failures.empty();
    return check;
}

enum class Ordering { Less, Equal, Greater };

/// Compare two atoms in the induced order; equivalent to comparing the
/// stages at which they first appear.
inline Ordering compare_atoms(const WellOrder& order, std::size_t a, std::size_t b) {
    const std::size_t n = order.ground->size();
    if (a >= n || b >= n)
        throw Error(Errc::UnknownAtom, "atom index out of range for this order");
    if (order.position[a] < order.position[b]) return Ordering::Less;
    if (order.position[a] > order.position[b]) return Ordering::Greater;
    return Ordering::Equal;
}

}  // namespace wellorder

#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "wellorder/choice.hpp"
#include "wellorder/regular.hpp"
#include "wellorder/sets.hpp"

namespace testsupport {

/// Deterministic test randomness; one splitmix stream per generator.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() { return state = wellorder::splitmix64_mix(state); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

inline std::vector<std::string> make_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
    return labels;
}

/// A complete, valid table rule whose picks come from a stream distinct from
/// the seeded kind, so table-based runs exercise genuinely different choices.
inline wellorder::ChoiceFunction random_table(const wellorder::Ground& ground, std::uint64_t seed) {
    std::unordered_map<std::uint64_t, std::size_t> entries;
    const std::uint64_t full = ground->full_mask();
    const std::uint64_t salt = wellorder::splitmix64_mix(seed ^ 0xA5A5A5A5A5A5A5A5ull);
    for (std::uint64_t mask = 1; full != 0 && mask <= full; ++mask) {
        const std::uint64_t h = wellorder::splitmix64_mix(salt ^ (mask * 0xD1B54A32D192ED03ull));
        const std::size_t n = static_cast<std::size_t>(std::popcount(mask));
        entries[mask] = wellorder::nth_set_bit(mask, static_cast<std::size_t>(h % n));
        if (mask == full) break;
    }
    return wellorder::ChoiceFunction::from_table(ground, std::move(entries));
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

inline std::uint64_t apply_permutation(const std::vector<std::size_t>& perm, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1)
        out |= std::uint64_t{1} << perm[static_cast<std::size_t>(std::countr_zero(m))];
    return out;
}

inline std::vector<std::size_t> invert_permutation(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inverse(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
    return inverse;
}

/// Conjugated choice rule: relabel the subset backwards, choose, relabel the
/// pick forwards. Materialized as a table over every nonempty subset.
inline wellorder::ChoiceFunction conjugate_table(const wellorder::ChoiceFunction& phi,
                                                 const std::vector<std::size_t>& perm) {
    const wellorder::Ground& ground = phi.ground();
    const std::vector<std::size_t> inverse = invert_permutation(perm);
    std::unordered_map<std::uint64_t, std::size_t> entries;
    const std::uint64_t full = ground->full_mask();
    for (std::uint64_t mask = 1; full != 0 && mask <= full; ++mask) {
        const std::uint64_t pre = apply_permutation(inverse, mask);
        entries[mask] = perm[wellorder::choose(phi, wellorder::Subset(ground, pre))];
        if (mask == full) break;
    }
    return wellorder::ChoiceFunction::from_table(ground, std::move(entries));
}

/// Naive regularity verdict computed with set-of-int machinery and explicit
/// recursion; deliberately shares no code with the library implementation.
struct NaiveVerdict {
    bool cond1 = true;
    bool cond2 = true;
    bool cond3 = true;
    bool cond4 = true;
    bool overall() const { return cond1 && cond2 && cond3 && cond4; }
};

inline NaiveVerdict naive_verify(const std::vector<std::set<int>>& members,
                                 const wellorder::ChoiceFunction& phi) {
    const wellorder::Ground& ground = phi.ground();
    NaiveVerdict verdict;

    auto subset_of = [](const std::set<int>& a, const std::set<int>& b) {
        for (int x : a)
            if (!b.count(x)) return false;
        return true;
    };

    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!subset_of(members[i], members[j]) && !subset_of(members[j], members[i]))
                verdict.cond1 = false;

    // every nonempty subfamily needs a member below all others, equal to the
    // overall intersection
    const std::size_t m = members.size();
    for (std::uint64_t pick = 1; m > 0 && pick < (std::uint64_t{1} << m); ++pick) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < m; ++i)
            if ((pick >> i) & 1u) chosen.push_back(i);
        std::set<int> inter = members[chosen.front()];
        for (std::size_t i : chosen) {
            std::set<int> next;
            for (int x : inter)
                if (members[i].count(x)) next.insert(x);
            inter = next;
        }
        bool found_least = false;
        for (std::size_t i : chosen) {
            bool below_all = true;
            for (std::size_t j : chosen)
                if (!subset_of(members[i], members[j])) below_all = false;
            if (below_all && members[i] == inter) found_least = true;
        }
        if (!found_least) verdict.cond2 = false;
    }

    bool has_empty = false;
    for (const std::set<int>& member : members)
        if (member.empty()) has_empty = true;
    verdict.cond3 = has_empty;

    for (const std::set<int>& p : members) {
        if (p.empty()) continue;
        std::set<int> lower;
        for (const std::set<int>& q : members)
            if (subset_of(q, p) && q != p)
                for (int x : q) lower.insert(x);
        if (lower == p) {
            verdict.cond4 = false;
            continue;
        }
        std::uint64_t lower_mask = 0;
        for (int x : lower) lower_mask |= std::uint64_t{1} << x;
        std::set<int> expected = lower;
        expected.insert(static_cast<int>(wellorder::alpha(phi, wellorder::Subset(ground, lower_mask))));
        if (expected != p) verdict.cond4 = false;
    }

    return verdict;
}

inline std::vector<std::set<int>> masks_to_sets(const std::vector<std::uint64_t>& masks) {
    std::vector<std::set<int>> out;
    for (std::uint64_t mask : masks) {
        std::set<int> s;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) s.insert(std::countr_zero(m));
        out.push_back(s);
    }
    return out;
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

/// Run the built command-line binary and capture stdout.
inline CliResult run_cli(const std::string& args) {
    const std::string command = std::string(WO_CLI_BIN) + " " + args + " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace testsupport

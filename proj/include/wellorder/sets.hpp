#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wellorder/errors.hpp"

namespace wellorder {

/// The finite universe: an ordered list of distinct, nonempty atom labels.
/// An atom's index is its position in the declared order and never changes.
/// Capacity is 64 so every subset fits in one machine word.
class GroundSet {
public:
    static constexpr std::size_t kCapacity = 64;

    explicit GroundSet(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.size() > kCapacity)
            throw Error(Errc::InvalidGround,
                        "ground set has " + std::to_string(atoms_.size()) + " atoms, capacity is 64");
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (atoms_[i].empty())
                throw Error(Errc::InvalidGround, "atom label at index " + std::to_string(i) + " is empty");
            for (std::size_t j = i + 1; j < atoms_.size(); ++j)
                if (atoms_[i] == atoms_[j])
                    throw Error(Errc::InvalidGround, "duplicate atom label \"" + atoms_[i] + "\"");
        }
    }

    std::size_t size() const noexcept { return atoms_.size(); }

    const std::string& label(std::size_t index) const {
        if (index >= atoms_.size())
            throw Error(Errc::UnknownAtom, "atom index " + std::to_string(index) + " out of range");
        return atoms_[index];
    }

    const std::vector<std::string>& atoms() const noexcept { return atoms_; }

    std::optional<std::size_t> index_of(std::string_view label) const noexcept {
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            if (atoms_[i] == label) return i;
        return std::nullopt;
    }

    /// Mask with one bit per atom; the universe as a bit pattern.
    std::uint64_t full_mask() const noexcept {
        return atoms_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atoms_.size()) - 1;
    }

private:
    std::vector<std::string> atoms_;
};

/// Shared handle to an immutable ground set. Identity (the pointer) is what
/// ties subsets and families together; equal labels under different handles
/// are distinct universes.
using Ground = std::shared_ptr<const GroundSet>;

inline Ground make_ground(std::vector<std::string> atoms) {
    return std::make_shared<const GroundSet>(std::move(atoms));
}

/// One element of the powerset: a bitmask over its ground set, bit i = atom i.
class Subset {
public:
    Subset(Ground ground, std::uint64_t mask) : ground_(std::move(ground)), mask_(mask) {
        if ((mask_ & ~ground_->full_mask()) != 0)
            throw Error(Errc::UnknownAtom, "subset mask has bits outside the ground set");
    }

    static Subset empty(Ground ground) { return Subset(std::move(ground), 0); }
    static Subset full(Ground ground) {
        const std::uint64_t m = ground->full_mask();
        return Subset(std::move(ground), m);
    }

    std::uint64_t mask() const noexcept { return mask_; }
    const Ground& ground() const noexcept { return ground_; }

    std::size_t count() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool is_empty() const noexcept { return mask_ == 0; }
    bool is_full() const noexcept { return mask_ == ground_->full_mask(); }

    bool contains(std::size_t atom) const {
        if (atom >= ground_->size())
            throw Error(Errc::UnknownAtom, "atom index " + std::to_string(atom) + " out of range");
        return (mask_ >> atom) & 1u;
    }

    Subset with_atom(std::size_t atom) const {
        if (atom >= ground_->size())
            throw Error(Errc::UnknownAtom, "atom index " + std::to_string(atom) + " out of range");
        return Subset(ground_, mask_ | (std::uint64_t{1} << atom));
    }

    /// Atom indices present, ascending.
    std::vector<std::size_t> atom_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::uint64_t m = mask_; m != 0; m &= m - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    }

    /// Canonical textual form: labels in ground-set index order, e.g. "{a,b}".
    std::string text() const {
        std::string out = "{";
        bool first = true;
        for (std::size_t i : atom_indices()) {
            if (!first) out += ",";
            out += ground_->label(i);
            first = false;
        }
        out += "}";
        return out;
    }

    friend bool operator==(const Subset& a, const Subset& b) noexcept {
        return a.ground_.get() == b.ground_.get() && a.mask_ == b.mask_;
    }
    friend bool operator!=(const Subset& a, const Subset& b) noexcept { return !(a == b); }

private:
    Ground ground_;
    std::uint64_t mask_;
};

inline void require_same_ground(const Subset& a, const Subset& b) {
    if (a.ground().get() != b.ground().get())
        throw Error(Errc::GroundMismatch, "subsets belong to different ground sets");
}

/// Canonical member order: ascending cardinality, ties by ascending mask.
/// On chains this coincides with the inclusion order.
inline bool canonical_mask_less(std::uint64_t a, std::uint64_t b) noexcept {
    const int ca = std::popcount(a);
    const int cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
}

inline bool canonical_less(const Subset& a, const Subset& b) noexcept {
    return canonical_mask_less(a.mask(), b.mask());
}

inline Subset complement(const Subset& x) {
    return Subset(x.ground(), x.ground()->full_mask() & ~x.mask());
}

/// Weak inclusion a ⊆ b.
inline bool is_subset(const Subset& a, const Subset& b) {
    require_same_ground(a, b);
    return (a.mask() & b.mask()) == a.mask();
}

/// Strict inclusion a ⊂ b.
inline bool is_strict_subset(const Subset& a, const Subset& b) {
    require_same_ground(a, b);
    return (a.mask() & b.mask()) == a.mask() && a.mask() != b.mask();
}

/// A finite set of distinct subsets of one ground set, kept in canonical
/// order. Construction canonicalizes, so the stored order never depends on
/// insertion order.
class SubsetFamily {
public:
    SubsetFamily(Ground ground, std::vector<Subset> members)
        : ground_(std::move(ground)), members_(std::move(members)) {
        for (const Subset& m : members_)
            if (m.ground().get() != ground_.get())
                throw Error(Errc::GroundMismatch, "family member belongs to a different ground set");
        std::sort(members_.begin(), members_.end(), canonical_less);
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    static SubsetFamily empty(Ground ground) { return SubsetFamily(std::move(ground), {}); }

    static SubsetFamily of_masks(const Ground& ground, const std::vector<std::uint64_t>& masks) {
        std::vector<Subset> members;
        members.reserve(masks.size());
        for (std::uint64_t m : masks) members.emplace_back(ground, m);
        return SubsetFamily(ground, std::move(members));
    }

    const Ground& ground() const noexcept { return ground_; }
    const std::vector<Subset>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool is_empty() const noexcept { return members_.empty(); }

    bool contains(const Subset& x) const {
        if (x.ground().get() != ground_.get()) return false;
        auto it = std::lower_bound(members_.begin(), members_.end(), x, canonical_less);
        return it != members_.end() && *it == x;
    }

    std::vector<std::uint64_t> member_masks() const {
        std::vector<std::uint64_t> out;
        out.reserve(members_.size());
        for (const Subset& m : members_) out.push_back(m.mask());
        return out;
    }

    /// Members' textual forms in canonical order, e.g. "{{},{a},{a,b}}".
    std::string text() const {
        std::string out = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i > 0) out += ",";
            out += members_[i].text();
        }
        out += "}";
        return out;
    }

    friend bool operator==(const SubsetFamily& a, const SubsetFamily& b) noexcept {
        if (a.ground_.get() != b.ground_.get() || a.members_.size() != b.members_.size()) return false;
        for (std::size_t i = 0; i < a.members_.size(); ++i)
            if (a.members_[i].mask() != b.members_[i].mask()) return false;
        return true;
    }
    friend bool operator!=(const SubsetFamily& a, const SubsetFamily& b) noexcept { return !(a == b); }

private:
    Ground ground_;
    std::vector<Subset> members_;
};

/// Union of all members; the empty family unions to the empty set.
inline Subset family_union(const SubsetFamily& family) {
    std::uint64_t acc = 0;
    for (const Subset& m : family.members()) acc |= m.mask();
    return Subset(family.ground(), acc);
}

/// Intersection of all members. Undefined (an error) on the empty family:
/// there is no universe convention here.
inline Subset family_intersection(const SubsetFamily& family) {
    if (family.is_empty())
        throw Error(Errc::EmptyFamily, "intersection of an empty family is undefined");
    std::uint64_t acc = ~std::uint64_t{0};
    for (const Subset& m : family.members()) acc &= m.mask();
    return Subset(family.ground(), acc & family.ground()->full_mask());
}

/// Union of exactly the members strictly below p; empty when none are.
/// p need not itself be a member.
inline Subset strict_lower_union(const SubsetFamily& family, const Subset& p) {
    if (p.ground().get() != family.ground().get())
        throw Error(Errc::GroundMismatch, "probe subset belongs to a different ground set");
    std::uint64_t acc = 0;
    for (const Subset& q : family.members())
        if ((q.mask() & p.mask()) == q.mask() && q.mask() != p.mask()) acc |= q.mask();
    return Subset(family.ground(), acc);
}

}  // namespace wellorder

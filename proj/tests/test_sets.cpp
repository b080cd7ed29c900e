#include <catch2/catch.hpp>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "wellorder/sets.hpp"

using namespace wellorder;
using testsupport::Rng;

namespace {

Ground abc() { return make_ground({"a", "b", "c"}); }

}  // namespace

TEST_CASE("ground set validates its labels") {
    CHECK_THROWS_WITH(make_ground({"a", "a"}), Catch::Contains("duplicate atom label \"a\""));
    CHECK_THROWS_AS(make_ground({"a", ""}), Error);
    CHECK_THROWS_AS(make_ground(testsupport::make_labels(65)), Error);
    CHECK_NOTHROW(make_ground(testsupport::make_labels(64)));
    CHECK_NOTHROW(make_ground({}));

    const Ground g = abc();
    CHECK(g->size() == 3);
    CHECK(g->index_of("b") == 1);
    CHECK(!g->index_of("z").has_value());
    CHECK(g->full_mask() == 0b111);
}

TEST_CASE("subset construction and textual form") {
    const Ground g = abc();
    CHECK(Subset(g, 0b101).text() == "{a,c}");
    CHECK(Subset::empty(g).text() == "{}");
    CHECK(Subset::full(g).text() == "{a,b,c}");
    CHECK(Subset(g, 0b011).count() == 2);
    CHECK_THROWS_AS(Subset(g, 0b1000), Error);

    // equality needs the same ground identity, not just equal labels
    const Ground g2 = abc();
    CHECK(Subset(g, 1) != Subset(g2, 1));
    CHECK(Subset(g, 1) == Subset(g, 1));
}

TEST_CASE("complement on the three-atom universe") {
    const Ground g = abc();
    CHECK(complement(Subset::empty(g)) == Subset::full(g));
    CHECK(complement(Subset::full(g)) == Subset::empty(g));
    CHECK(complement(Subset(g, 0b010)) == Subset(g, 0b101));  // {b} -> {a,c}
}

TEST_CASE("complement is an involution and partitions the universe") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.below(65);
        const Ground g = make_ground(testsupport::make_labels(n));
        const Subset x(g, rng.next() & g->full_mask());
        const Subset co = complement(x);
        CHECK(complement(co) == x);
        CHECK((x.mask() | co.mask()) == g->full_mask());
        CHECK((x.mask() & co.mask()) == 0);
    }
}

TEST_CASE("strict subset relation") {
    const Ground g = abc();
    CHECK(is_strict_subset(Subset::empty(g), Subset(g, 0b001)));
    CHECK(!is_strict_subset(Subset(g, 0b001), Subset(g, 0b001)));
    CHECK(!is_strict_subset(Subset(g, 0b101), Subset(g, 0b011)));  // {a,c} vs {a,b}

    const Ground g2 = abc();
    CHECK_THROWS_AS(is_strict_subset(Subset(g, 1), Subset(g2, 1)), Error);
}

TEST_CASE("strict subset is a strict partial order, exhaustively to four atoms") {
    for (std::size_t n = 0; n <= 4; ++n) {
        const Ground g = make_ground(testsupport::make_labels(n));
        const std::uint64_t count = std::uint64_t{1} << n;
        for (std::uint64_t a = 0; a < count; ++a) {
            CHECK(!is_strict_subset(Subset(g, a), Subset(g, a)));  // irreflexive
            for (std::uint64_t b = 0; b < count; ++b) {
                const bool ab = is_strict_subset(Subset(g, a), Subset(g, b));
                const bool ba = is_strict_subset(Subset(g, b), Subset(g, a));
                CHECK(!(ab && ba));  // asymmetric
                for (std::uint64_t c = 0; c < count; ++c)
                    if (ab && is_strict_subset(Subset(g, b), Subset(g, c)))
                        CHECK(is_strict_subset(Subset(g, a), Subset(g, c)));  // transitive
            }
        }
    }
}

TEST_CASE("family union") {
    const Ground g = abc();
    CHECK(family_union(SubsetFamily::of_masks(g, {0, 0b001, 0b011})) == Subset(g, 0b011));
    CHECK(family_union(SubsetFamily::empty(g)) == Subset::empty(g));
    CHECK(family_union(SubsetFamily::of_masks(g, {0b001, 0b100})) == Subset(g, 0b101));
}

TEST_CASE("family union is monotone in the member set") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(10);
        const Ground g = make_ground(testsupport::make_labels(n));
        std::vector<std::uint64_t> smaller, larger;
        for (int i = 0; i < 6; ++i) larger.push_back(rng.next() & g->full_mask());
        for (std::uint64_t mask : larger)
            if (rng.below(2) == 0) smaller.push_back(mask);
        const Subset u1 = family_union(SubsetFamily::of_masks(g, smaller));
        const Subset u2 = family_union(SubsetFamily::of_masks(g, larger));
        CHECK(is_subset(u1, u2));
    }
}

TEST_CASE("family intersection") {
    const Ground g = abc();
    CHECK(family_intersection(SubsetFamily::of_masks(g, {0b001, 0b011})) == Subset(g, 0b001));
    CHECK(family_intersection(SubsetFamily::of_masks(g, {0b111})) == Subset(g, 0b111));
    CHECK(family_intersection(SubsetFamily::of_masks(g, {0b001, 0b010})) == Subset::empty(g));

    try {
        family_intersection(SubsetFamily::empty(g));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyFamily);
    }
}

TEST_CASE("intersection of a nonempty chain is its least member") {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        const Ground g = make_ground(testsupport::make_labels(n));
        // grow a random nested sequence, then keep a random nonempty subset of it
        std::vector<std::uint64_t> chain{rng.next() & g->full_mask()};
        while (chain.back() != g->full_mask() && rng.below(4) != 0)
            chain.push_back(chain.back() | (rng.next() & g->full_mask()));
        std::vector<std::uint64_t> gamma;
        for (std::uint64_t mask : chain)
            if (rng.below(2) == 0) gamma.push_back(mask);
        if (gamma.empty()) gamma.push_back(chain.front());

        const SubsetFamily family = SubsetFamily::of_masks(g, gamma);
        const Subset least = family_intersection(family);
        CHECK(family.contains(least));
        for (const Subset& member : family.members()) CHECK(is_subset(least, member));
    }
}

TEST_CASE("strict lower union") {
    const Ground g = abc();
    const SubsetFamily chain = SubsetFamily::of_masks(g, {0, 0b001, 0b011, 0b111});
    CHECK(strict_lower_union(chain, Subset(g, 0b011)) == Subset(g, 0b001));

    const Ground g1 = make_ground({"a"});
    CHECK(strict_lower_union(SubsetFamily::of_masks(g1, {0}), Subset::empty(g1)) ==
          Subset::empty(g1));

    CHECK(strict_lower_union(SubsetFamily::of_masks(g, {0, 0b011}), Subset(g, 0b011)) ==
          Subset::empty(g));

    const Ground g2 = abc();
    CHECK_THROWS_AS(strict_lower_union(chain, Subset(g2, 1)), Error);
}

TEST_CASE("canonical member order is insertion-order independent") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const Ground g = make_ground(testsupport::make_labels(n));
        std::vector<std::uint64_t> masks;
        for (int i = 0; i < 10; ++i) masks.push_back(rng.next() & g->full_mask());

        std::vector<std::uint64_t> shuffled = masks;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);

        CHECK(SubsetFamily::of_masks(g, masks) == SubsetFamily::of_masks(g, shuffled));
    }

    // the canonical order itself: ascending cardinality, ties by mask
    const Ground g = abc();
    const SubsetFamily family = SubsetFamily::of_masks(g, {0b111, 0b010, 0b001, 0});
    const std::vector<std::uint64_t> masks = family.member_masks();
    CHECK(masks == std::vector<std::uint64_t>{0, 0b001, 0b010, 0b111});
    CHECK(family.text() == "{{},{a},{b},{a,b,c}}");
}

TEST_CASE("families reject members of a different ground set") {
    const Ground g = abc();
    const Ground g2 = abc();
    std::vector<Subset> members{Subset(g, 1), Subset(g2, 2)};
    CHECK_THROWS_AS(SubsetFamily(g, members), Error);
}

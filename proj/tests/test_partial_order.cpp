#include "doctest.h"

#include <random>
#include <set>

#include "pop/arch.hpp"
#include "pop/partial_order.hpp"
#include "support.hpp"

using namespace pop;
using testsupport::all_codes;
using testsupport::random_code;
using testsupport::random_shrink_walk;
using testsupport::reachable_by_shrinks;

TEST_CASE("worked precedence examples") {
    auto x = parse_code("[(128),(256),(256)]");
    CHECK(precedes(x, parse_code("[(128),(256),(512)]")));      // narrower, same depth
    CHECK(precedes(x, parse_code("[(128),(256,256),(256)]")));  // shallower, same width
}

TEST_CASE("precedence is strict") {
    auto x = parse_code("[(64),(64),(64)]");
    CHECK_FALSE(precedes(x, x));
}

TEST_CASE("interleaved stage sequences are incomparable") {
    auto x = parse_code("[(64,128),(128),(128)]");
    auto y = parse_code("[(64),(128,128),(128)]");
    CHECK_FALSE(precedes(x, y));
    CHECK_FALSE(precedes(y, x));
    Alphabet alphabet{64, 128};
    CHECK_FALSE(reachable_by_shrinks(x, y, alphabet));
}

TEST_CASE("different block kinds are incomparable") {
    auto x = parse_code("[(64),(64),(64)]");
    auto y = parse_code("[(64),(64),(64,64)]@bottleneck");
    CHECK_FALSE(precedes(x, y));
}

TEST_CASE("elementary_shrinks at the lattice bottom") {
    Alphabet alphabet{64, 128};
    CHECK(elementary_shrinks(parse_code("[(64),(64),(64)]", alphabet), alphabet).empty());
}

TEST_CASE("elementary_shrinks single legal moves") {
    Alphabet alphabet{64, 128};
    auto lowered = elementary_shrinks(parse_code("[(64),(64),(128)]", alphabet), alphabet);
    REQUIRE(lowered.size() == 1);
    CHECK(format_code(lowered[0]) == "[(64),(64),(64)]");

    auto deleted = elementary_shrinks(parse_code("[(64,64),(64),(64)]", alphabet), alphabet);
    REQUIRE(deleted.size() == 1);
    CHECK(format_code(deleted[0]) == "[(64),(64),(64)]");
}

TEST_CASE("every elementary shrink precedes its source") {
    std::mt19937_64 rng(3);
    Alphabet alphabet{64, 128, 256};
    for (int i = 0; i < 200; ++i) {
        auto x = random_code(rng, alphabet, 3);
        for (const auto& m : elementary_shrinks(x, alphabet)) CHECK(precedes(m, x));
    }
}

TEST_CASE("order axioms on seeded samples") {
    std::mt19937_64 rng(17);
    Alphabet alphabet{64, 128, 256};

    for (int i = 0; i < 2000; ++i) {
        auto z = random_code(rng, alphabet, 3);
        auto y = random_shrink_walk(rng, z, alphabet, 3);
        auto x = random_shrink_walk(rng, y, alphabet, 3);

        CHECK_FALSE(precedes(z, z)); // irreflexivity
        if (precedes(x, y)) CHECK_FALSE(precedes(y, x)); // antisymmetry
        if (precedes(x, y) && precedes(y, z)) CHECK(precedes(x, z)); // transitivity
    }
}

TEST_CASE("precedence implies monotone depth and block count") {
    std::mt19937_64 rng(23);
    Alphabet alphabet{64, 128, 256};
    for (int i = 0; i < 500; ++i) {
        auto y = random_code(rng, alphabet, 3);
        auto x = random_shrink_walk(rng, y, alphabet, 4);
        if (!precedes(x, y)) continue;
        CHECK(depth(x) <= depth(y));
        CHECK(x.total_blocks() <= y.total_blocks());
    }
}

TEST_CASE("closure equivalence against the BFS oracle") {
    // exhaustive over <= 2 blocks/stage, alphabet {64,128,256}
    Alphabet alphabet{64, 128, 256};
    auto space = all_codes(alphabet, BlockKind::basic, 2);
    REQUIRE(space.size() == 146);
    for (const auto& y : space) {
        auto down_set = testsupport::shrink_down_set(y, alphabet);
        for (const auto& x : space)
            CHECK(precedes(x, y) == (down_set.count(format_code(x)) != 0));
    }
}

TEST_CASE("count_precedents over the one-block space") {
    Alphabet alphabet{64, 128};
    auto space = all_codes(alphabet, BlockKind::basic, 1);
    REQUIRE(space.size() == 4);
    CHECK(count_precedents(parse_code("[(128),(128),(128)]", alphabet), space) == 3);
    CHECK(count_precedents(parse_code("[(64),(64),(64)]", alphabet), space) == 0);
    CHECK(count_precedents(parse_code("[(64),(64),(128)]", alphabet), space) == 1);
}

#include "doctest.h"

#include <random>

#include "pop/arch.hpp"
#include "pop/errors.hpp"
#include "support.hpp"

using namespace pop;

namespace {

const char* kRef23 = "[(64,64,64),(128,128,128),(256,256,256,512)]";
const char* kRef43 =
    "[(64,64,128),(128,128,128,128,128,128,128,128,128,128,256),(256,256,256,256,512,512)]";
const char* kRef60 =
    "[(64,64,128),(128,128,128,128,128,128,128,128,128,128,256),(256,256,256,256,512,512)]"
    "@basic,bottleneck,bottleneck";

} // namespace

TEST_CASE("parse_code accepts a full-size backbone") {
    auto code = parse_code(kRef23);
    CHECK(code.stages[0] == std::vector<int>{64, 64, 64});
    CHECK(code.stages[1] == std::vector<int>{128, 128, 128});
    CHECK(code.stages[2] == std::vector<int>{256, 256, 256, 512});
    CHECK(code.uniform_kind(BlockKind::basic));
}

TEST_CASE("parse_code accepts the minimal code and whitespace") {
    auto code = parse_code(" [ (64) , (64), (64) ] ");
    CHECK(code.total_blocks() == 3);
}

TEST_CASE("parse_code rejects invalid inputs") {
    CHECK_THROWS_AS(parse_code("[(128),(64),(64)]"), ParseError);     // monotonicity
    CHECK_THROWS_AS(parse_code("[(65),(128),(256)]"), ParseError);    // alphabet
    CHECK_THROWS_AS(parse_code("[(),(64),(64)]"), ParseError);        // empty stage
    CHECK_THROWS_AS(parse_code("[(64),(64)]"), ParseError);           // missing stage
    CHECK_THROWS_AS(parse_code("[(64),(64),(64)"), ParseError);       // syntax
    CHECK_THROWS_AS(parse_code("[(64),(64),(64)]@huge"), ParseError); // kind
    CHECK_THROWS_AS(parse_code("[(64),(64),(64)]junk"), ParseError);  // trailing
}

TEST_CASE("parse_code respects a restricted alphabet") {
    Alphabet small{64, 128};
    CHECK_NOTHROW(parse_code("[(64),(64),(128)]", small));
    CHECK_THROWS_AS(parse_code("[(64),(64),(256)]", small), ParseError);
}

TEST_CASE("block kind suffixes") {
    CHECK(parse_code("[(64),(64),(64)]@bottleneck").uniform_kind(BlockKind::bottleneck));
    auto mixed = parse_code("[(64),(64),(64)]@basic,bottleneck,bottleneck");
    CHECK(mixed.kinds[0] == BlockKind::basic);
    CHECK(mixed.kinds[2] == BlockKind::bottleneck);
    CHECK(format_code(mixed) == "[(64),(64),(64)]@basic,bottleneck,bottleneck");
}

TEST_CASE("format/parse round-trip on random codes") {
    std::mt19937_64 rng(7);
    Alphabet alphabet{64, 128, 256, 512, 1024};
    for (int i = 0; i < 500; ++i) {
        auto kind = (rng() & 1) ? BlockKind::bottleneck : BlockKind::basic;
        auto code = testsupport::random_code(rng, alphabet, 4, kind);
        CHECK(parse_code(format_code(code)) == code);
    }
}

TEST_CASE("depth matches the reference networks") {
    CHECK(depth(parse_code(kRef23)) == 23);
    CHECK(depth(parse_code(kRef43)) == 43);
    CHECK(depth(parse_code(kRef60)) == 60);
    CHECK(depth(parse_code("[(64),(64),(64)]")) == 9);
}

TEST_CASE("depth grows with blocks, not with widths") {
    auto base = parse_code("[(64),(64),(64)]");
    auto deeper = parse_code("[(64,64),(64),(64)]");
    auto wider = parse_code("[(128),(128),(128)]");
    CHECK(depth(deeper) == depth(base) + 2);
    CHECK(depth(wider) == depth(base));
}

TEST_CASE("block_configs produces the stem/stage/head chain") {
    auto code = parse_code(kRef23);
    auto configs = block_configs(code, 224, 1000);
    REQUIRE(configs.size() == 2 + 10 + 1);

    // the named TX2 stem entry
    CHECK(configs[1] == BlockConfig{LayerKind::stem_conv, 32, 112, 112, 64, 56, 56});

    // stage-5 blocks run at 7x7
    CHECK(configs[8].h_out == 7);
    CHECK(configs[11].h_out == 7);

    // channel chain is consistent
    for (std::size_t i = 1; i < configs.size(); ++i)
        CHECK(configs[i].c_in == configs[i - 1].c_out);

    CHECK(configs.back().kind == LayerKind::head);
    CHECK(configs.back().c_out == 1000);
}

TEST_CASE("block_configs at the minimal resolution") {
    auto code = parse_code("[(64),(64),(64)]");
    auto configs = block_configs(code, 32, 10);
    REQUIRE(configs.size() == 6);
    CHECK(configs[2].h_in == 8);  // stage 3 input
    CHECK(configs[3].h_in == 4);  // stage 4 input
    CHECK(configs[4].h_in == 2);  // stage 5 input
    CHECK(configs[5].h_in == 1);  // head
    CHECK(configs[5].h_out == 1);
}

TEST_CASE("block_configs applies the bottleneck 4x expansion") {
    auto code = parse_code("[(64),(128),(256)]@bottleneck");
    auto configs = block_configs(code, 224, 1000);
    CHECK(configs[2].c_out == 256);   // 4 * 64
    CHECK(configs[3].c_in == 256);
    CHECK(configs[3].c_out == 512);   // 4 * 128
    CHECK(configs[4].c_out == 1024);  // 4 * 256
}

TEST_CASE("block_configs rejects resolutions not divisible by 32") {
    CHECK_THROWS_AS(block_configs(parse_code(kRef23), 100, 1000), DataError);
}

TEST_CASE("block_configs length invariant on random codes") {
    std::mt19937_64 rng(11);
    Alphabet alphabet{64, 128, 256};
    for (int i = 0; i < 200; ++i) {
        auto code = testsupport::random_code(rng, alphabet, 3);
        CHECK(block_configs(code, 224, 1000).size() ==
              static_cast<std::size_t>(code.total_blocks()) + 3);
    }
}

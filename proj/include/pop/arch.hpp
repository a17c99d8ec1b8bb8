#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace pop {

enum class BlockKind { basic, bottleneck };

std::string to_string(BlockKind kind);
BlockKind block_kind_from_string(std::string_view text);

// Allowed per-block channel counts, sorted ascending, unique.
using Alphabet = std::vector<int>;

const Alphabet& default_alphabet(); // {64, 128, 256, 512, 1024}

// Fixed early-stage convolution widths (one conv per stage 1 and 2).
struct StemConfig {
    int conv1_width = 32;
    int conv2_width = 64;
    bool operator==(const StemConfig&) const = default;
};

// A backbone architecture: listed residual-block widths for stages 3/4/5
// plus the residual block kind used in each stage. For bottleneck stages
// the listed width is the 3x3 width; the block output is 4x the listed
// width. The concatenated width sequence must be non-decreasing.
struct ArchitectureCode {
    std::array<std::vector<int>, 3> stages;
    std::array<BlockKind, 3> kinds{BlockKind::basic, BlockKind::basic, BlockKind::basic};
    StemConfig stem;

    bool operator==(const ArchitectureCode&) const = default;

    int total_blocks() const {
        return static_cast<int>(stages[0].size() + stages[1].size() + stages[2].size());
    }
    bool uniform_kind(BlockKind k) const {
        return kinds[0] == k && kinds[1] == k && kinds[2] == k;
    }
};

// Block output channel count: listed width for basic, 4x for bottleneck.
int block_out_channels(int listed_width, BlockKind kind);

// Throws ParseError if the code violates any invariant (empty stage,
// width outside the alphabet, decreasing widths).
void validate_code(const ArchitectureCode& code, const Alphabet& alphabet);

// Grammar: [(w,...),(w,...),(w,...)] with optional suffix @basic,
// @bottleneck, or a per-stage list @k3,k4,k5. Whitespace is ignored.
ArchitectureCode parse_code(std::string_view text, const Alphabet& alphabet = default_alphabet());

std::string format_code(const ArchitectureCode& code);

// Convolution layer count: 2 stem convs + per-block convs (2 basic,
// 3 bottleneck) + final FC.
int depth(const ArchitectureCode& code);

enum class LayerKind { stem_conv, basic_block, bottleneck_block, head };

std::string to_string(LayerKind kind);
LayerKind layer_kind_from_string(std::string_view text);

// One profileable layer configuration, the latency-table key shape.
struct BlockConfig {
    LayerKind kind;
    int c_in, h_in, w_in;
    int c_out, h_out, w_out;
    bool operator==(const BlockConfig&) const = default;
    auto operator<=>(const BlockConfig&) const = default;
};

std::string to_string(const BlockConfig& cfg);

// Expands a code into its ordered layer configurations: two stem convs,
// every residual block (the first block of each stage halves resolution),
// and the classification head. Throws DataError if input_resolution is
// not divisible by 32.
std::vector<BlockConfig> block_configs(const ArchitectureCode& code,
                                       int input_resolution,
                                       int num_classes);

} // namespace pop

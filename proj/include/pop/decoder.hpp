#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace pop {

// Channel-controller widths [C3,C4,C5] of a segmentation decoder for a
// K-class task. Each width comes from {K, 32, 64, 128, 256, 512}.
struct DecoderCode {
    int num_classes = 0;
    std::array<int, 3> cc{};
    bool operator==(const DecoderCode&) const = default;
    auto operator<=>(const DecoderCode&) const = default;
};

// Sorted, deduplicated {K, 32, 64, 128, 256, 512}.
std::vector<int> decoder_alphabet(int num_classes);

// Text format: K:[C3,C4,C5], e.g. 19:[19,32,128].
std::string format_decoder(const DecoderCode& code);
DecoderCode parse_decoder(std::string_view text);

// Strict product order: same K, x != y, elementwise Cs(x) <= Cs(y).
bool decoder_precedes(const DecoderCode& x, const DecoderCode& y);

// All CC triples over the alphabet (216 when K is not one of the fixed
// widths, fewer after deduplication). Sorted.
std::vector<DecoderCode> enumerate_decoder_space(int num_classes);

} // namespace pop

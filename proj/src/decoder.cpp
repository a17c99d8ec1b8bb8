#include "pop/decoder.hpp"

#include <algorithm>
#include <sstream>

#include "pop/errors.hpp"
#include "pop/text_util.hpp"

namespace pop {

std::vector<int> decoder_alphabet(int num_classes) {
    if (num_classes < 1) throw DataError("number of classes must be >= 1");
    std::vector<int> a{num_classes, 32, 64, 128, 256, 512};
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::string format_decoder(const DecoderCode& code) {
    std::ostringstream out;
    out << code.num_classes << ":[" << code.cc[0] << ',' << code.cc[1] << ',' << code.cc[2] << ']';
    return out.str();
}

DecoderCode parse_decoder(std::string_view text) {
    std::string t = trim(text);
    auto colon = t.find(':');
    if (colon == std::string::npos)
        throw ParseError("decoder code must look like K:[C3,C4,C5], got '" + t + "'");
    DecoderCode code;
    code.num_classes = parse_int(t.substr(0, colon), "class count");
    std::string rest = trim(t.substr(colon + 1));
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
        throw ParseError("decoder CC list must be bracketed, got '" + rest + "'");
    auto fields = split(rest.substr(1, rest.size() - 2), ',');
    if (fields.size() != 3)
        throw ParseError("decoder code needs exactly three CC widths");
    for (int s = 0; s < 3; ++s) code.cc[s] = parse_int(fields[s], "CC width");

    auto alphabet = decoder_alphabet(code.num_classes);
    for (int w : code.cc)
        if (!std::binary_search(alphabet.begin(), alphabet.end(), w))
            throw ParseError("CC width " + std::to_string(w) +
                             " not allowed for K=" + std::to_string(code.num_classes));
    return code;
}

bool decoder_precedes(const DecoderCode& x, const DecoderCode& y) {
    if (x.num_classes != y.num_classes || x == y) return false;
    for (int s = 0; s < 3; ++s)
        if (x.cc[s] > y.cc[s]) return false;
    return true;
}

std::vector<DecoderCode> enumerate_decoder_space(int num_classes) {
    auto alphabet = decoder_alphabet(num_classes);
    std::vector<DecoderCode> out;
    out.reserve(alphabet.size() * alphabet.size() * alphabet.size());
    for (int c3 : alphabet)
        for (int c4 : alphabet)
            for (int c5 : alphabet)
                out.push_back({num_classes, {c3, c4, c5}});
    return out;
}

} // namespace pop

#include "pop/arch.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pop/errors.hpp"

namespace pop {

std::string to_string(BlockKind kind) {
    return kind == BlockKind::basic ? "basic" : "bottleneck";
}

BlockKind block_kind_from_string(std::string_view text) {
    if (text == "basic") return BlockKind::basic;
    if (text == "bottleneck") return BlockKind::bottleneck;
    throw ParseError("unknown block kind '" + std::string(text) + "'");
}

const Alphabet& default_alphabet() {
    static const Alphabet a{64, 128, 256, 512, 1024};
    return a;
}

int block_out_channels(int listed_width, BlockKind kind) {
    return kind == BlockKind::bottleneck ? 4 * listed_width : listed_width;
}

void validate_code(const ArchitectureCode& code, const Alphabet& alphabet) {
    int prev = 0;
    for (int s = 0; s < 3; ++s) {
        if (code.stages[s].empty())
            throw ParseError("stage " + std::to_string(s + 3) + " has no blocks");
        for (int w : code.stages[s]) {
            if (!std::binary_search(alphabet.begin(), alphabet.end(), w))
                throw ParseError("width " + std::to_string(w) + " not in alphabet");
            if (w < prev)
                throw ParseError("width " + std::to_string(w) +
                                 " narrower than preceding block width " + std::to_string(prev));
            prev = w;
        }
    }
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of architecture code");
        return text[pos];
    }
    void expect(char c) {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos) + " in architecture code");
        ++pos;
    }
    bool consume(char c) {
        if (!done() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a width at position " + std::to_string(start));
        return std::stoi(std::string(text.substr(start, pos - start)));
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(start, pos - start));
    }
};

} // namespace

ArchitectureCode parse_code(std::string_view text, const Alphabet& alphabet) {
    Cursor cur{text};
    ArchitectureCode code;

    cur.expect('[');
    for (int s = 0; s < 3; ++s) {
        cur.expect('(');
        do {
            code.stages[s].push_back(cur.integer());
        } while (cur.consume(','));
        cur.expect(')');
        if (s < 2) cur.expect(',');
    }
    cur.expect(']');

    if (cur.consume('@')) {
        std::array<std::string, 3> kinds;
        kinds[0] = cur.word();
        if (cur.consume(',')) {
            kinds[1] = cur.word();
            cur.expect(',');
            kinds[2] = cur.word();
        } else {
            kinds[1] = kinds[2] = kinds[0];
        }
        for (int s = 0; s < 3; ++s) code.kinds[s] = block_kind_from_string(kinds[s]);
    }
    if (!cur.done())
        throw ParseError("trailing characters after architecture code: '" +
                         std::string(text.substr(cur.pos)) + "'");

    validate_code(code, alphabet);
    return code;
}

std::string format_code(const ArchitectureCode& code) {
    std::ostringstream out;
    out << '[';
    for (int s = 0; s < 3; ++s) {
        if (s) out << ',';
        out << '(';
        for (std::size_t i = 0; i < code.stages[s].size(); ++i) {
            if (i) out << ',';
            out << code.stages[s][i];
        }
        out << ')';
    }
    out << ']';
    if (code.uniform_kind(BlockKind::bottleneck)) {
        out << "@bottleneck";
    } else if (!code.uniform_kind(BlockKind::basic)) {
        out << '@' << to_string(code.kinds[0]) << ',' << to_string(code.kinds[1]) << ','
            << to_string(code.kinds[2]);
    }
    return out.str();
}

int depth(const ArchitectureCode& code) {
    int convs = 2; // stem
    for (int s = 0; s < 3; ++s) {
        int per_block = code.kinds[s] == BlockKind::bottleneck ? 3 : 2;
        convs += per_block * static_cast<int>(code.stages[s].size());
    }
    return convs + 1; // final FC
}

std::string to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::stem_conv: return "stem_conv";
        case LayerKind::basic_block: return "basic_block";
        case LayerKind::bottleneck_block: return "bottleneck_block";
        case LayerKind::head: return "head";
    }
    return "?";
}

LayerKind layer_kind_from_string(std::string_view text) {
    if (text == "stem_conv") return LayerKind::stem_conv;
    if (text == "basic_block") return LayerKind::basic_block;
    if (text == "bottleneck_block") return LayerKind::bottleneck_block;
    if (text == "head") return LayerKind::head;
    throw ParseError("unknown layer kind '" + std::string(text) + "'");
}

std::string to_string(const BlockConfig& cfg) {
    std::ostringstream out;
    out << to_string(cfg.kind) << ',' << cfg.c_in << ',' << cfg.h_in << ',' << cfg.w_in << ','
        << cfg.c_out << ',' << cfg.h_out << ',' << cfg.w_out;
    return out.str();
}

std::vector<BlockConfig> block_configs(const ArchitectureCode& code,
                                       int input_resolution,
                                       int num_classes) {
    if (input_resolution <= 0 || input_resolution % 32 != 0)
        throw DataError("input resolution " + std::to_string(input_resolution) +
                        " is not divisible by 32");

    std::vector<BlockConfig> configs;
    configs.reserve(static_cast<std::size_t>(code.total_blocks()) + 3);

    const int r = input_resolution;
    configs.push_back({LayerKind::stem_conv, 3, r, r, code.stem.conv1_width, r / 2, r / 2});
    configs.push_back({LayerKind::stem_conv, code.stem.conv1_width, r / 2, r / 2,
                       code.stem.conv2_width, r / 4, r / 4});

    int c_prev = code.stem.conv2_width;
    int res = r / 4;
    for (int s = 0; s < 3; ++s) {
        LayerKind block_kind = code.kinds[s] == BlockKind::bottleneck
                                   ? LayerKind::bottleneck_block
                                   : LayerKind::basic_block;
        for (std::size_t i = 0; i < code.stages[s].size(); ++i) {
            int c_out = block_out_channels(code.stages[s][i], code.kinds[s]);
            int h_in = res;
            if (i == 0) res /= 2; // first block of the stage has stride 2
            configs.push_back({block_kind, c_prev, h_in, h_in, c_out, res, res});
            c_prev = c_out;
        }
    }

    configs.push_back({LayerKind::head, c_prev, res, res, num_classes, 1, 1});
    return configs;
}

} // namespace pop

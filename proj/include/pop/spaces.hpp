#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pop/arch.hpp"
#include "pop/decoder.hpp"
#include "pop/errors.hpp"
#include "pop/latency.hpp"
#include "pop/partial_order.hpp"

namespace pop {

// A finite search space with deterministic enumeration: element list,
// latency per element, strict precedence and canonical text. Latencies are
// cached per element at construction.
template <class Code>
class MaterializedSpace {
public:
    using code_type = Code;
    using LatencyFn = std::function<double(const Code&)>;
    using PrecedesFn = std::function<bool(const Code&, const Code&)>;
    using TextFn = std::function<std::string(const Code&)>;

    MaterializedSpace(std::vector<Code> codes, LatencyFn latency, PrecedesFn precedes,
                      TextFn text)
        : codes_(std::move(codes)),
          precedes_(std::move(precedes)),
          text_(std::move(text)) {
        for (const auto& c : codes_) latency_by_text_.emplace(text_(c), latency(c));
    }

    const std::vector<Code>& codes() const { return codes_; }

    double latency(const Code& code) const {
        auto it = latency_by_text_.find(text_(code));
        if (it == latency_by_text_.end())
            throw DataError("no latency for " + text_(code));
        return it->second;
    }

    bool precedes(const Code& a, const Code& b) const { return precedes_(a, b); }
    std::string text(const Code& code) const { return text_(code); }

private:
    std::vector<Code> codes_;
    PrecedesFn precedes_;
    TextFn text_;
    std::unordered_map<std::string, double> latency_by_text_;
};

using BackboneSpace = MaterializedSpace<ArchitectureCode>;
using DecoderSpace = MaterializedSpace<DecoderCode>;

// Backbone subspace: codes in the latency band, priced by the table.
inline BackboneSpace make_backbone_space(const LatencyBand& band, const LatencyTable& table,
                                         const EnumerationParams& params) {
    auto codes = enumerate_subspace(band, table, params);
    auto latency = [&table, params](const ArchitectureCode& c) {
        return estimate_latency(c, table, params.resolution, params.num_classes);
    };
    return BackboneSpace(std::move(codes), latency,
                         [](const ArchitectureCode& a, const ArchitectureCode& b) {
                             return precedes(a, b);
                         },
                         [](const ArchitectureCode& c) { return format_code(c); });
}

// Decoder space priced by a per-code latency map (code text -> ms).
inline DecoderSpace make_decoder_space(int num_classes,
                                       const std::unordered_map<std::string, double>& latency_ms) {
    auto codes = enumerate_decoder_space(num_classes);
    auto latency = [&latency_ms](const DecoderCode& c) {
        auto it = latency_ms.find(format_decoder(c));
        if (it == latency_ms.end())
            throw DataError("no latency record for decoder code " + format_decoder(c));
        return it->second;
    };
    return DecoderSpace(std::move(codes), latency,
                        [](const DecoderCode& a, const DecoderCode& b) {
                            return decoder_precedes(a, b);
                        },
                        [](const DecoderCode& c) { return format_decoder(c); });
}

} // namespace pop

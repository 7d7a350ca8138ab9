#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "ltmv/lt_graph.hpp"

namespace ltmv {

// Incremental peeling decoder. Symbols are ingested one at a time; each
// ingest reduces the symbol by already-decoded sources and then peels
// degree-one symbols to exhaustion (FIFO ripple). The decoder keeps a
// reference to the graph, which must outlive it.
class PeelingDecoder {
public:
    enum class Ingest {
        Accepted,   // symbol ingested (possibly already redundant)
        Duplicate,  // encoded index seen before; state unchanged
        Ignored,    // decode already complete; state unchanged
    };

    explicit PeelingDecoder(const EncodingGraph& graph);

    // Throws std::out_of_range for an encoded index outside the graph.
    Ingest ingest(std::uint64_t encoded_index, double value);

    bool complete() const { return decoded_count_ == m_; }
    std::uint64_t m() const { return m_; }
    std::uint64_t received() const { return received_; }
    std::uint64_t decoded_count() const { return decoded_count_; }

    bool is_decoded(std::uint64_t source) const { return is_decoded_[source]; }
    // Entry `source` is meaningful once is_decoded(source) holds.
    const std::vector<double>& values() const { return values_; }

private:
    struct Symbol {
        double value;
        std::uint64_t residual_sum;  // sum of undecoded neighbor indices
        std::uint32_t residual_degree;
        bool active;
    };

    void peel();

    const EncodingGraph& graph_;
    std::uint64_t m_;
    std::uint64_t received_ = 0;
    std::uint64_t decoded_count_ = 0;
    std::vector<bool> seen_;
    std::vector<Symbol> symbols_;
    std::vector<std::vector<std::uint32_t>> source_members_;
    std::queue<std::uint32_t> ripple_;
    std::vector<double> values_;
    std::vector<bool> is_decoded_;
};

struct DecodeOutcome {
    bool complete = false;
    std::vector<double> values;     // full source vector when complete
    std::uint64_t symbols_used = 0;  // symbols ingested at completion (M')
    std::uint64_t decoded_count = 0;
};

// Feeds symbols in order, stopping at the first completion. When the
// sequence runs out first, returns complete = false with the partial count.
DecodeOutcome decode_full(std::span<const std::pair<std::uint64_t, double>> symbols,
                          const EncodingGraph& graph);

// One synthetic decode: fresh graph from `seed`, uniformly shuffled arrival
// order, zero-valued symbols (only the structure matters). Returns the
// number of symbols needed for a full decode, or nullopt if all ceil(alpha*m)
// symbols were exhausted without completing.
std::optional<std::uint64_t> sample_decode_threshold(const DegreeDistribution& dist,
                                                     double alpha, std::uint64_t seed);

struct OverheadTrial {
    bool completed = false;
    std::uint64_t symbols_used = 0;           // M' when completed, else symbols fed
    std::vector<std::uint32_t> trajectory;    // decoded count after each symbol
};

struct OverheadStats {
    std::vector<OverheadTrial> trials;
    std::uint64_t completed_trials = 0;
    double mean_symbols = 0.0;   // over completed trials
    std::uint64_t max_symbols = 0;
    double epsilon_hat = 0.0;    // mean_symbols / m - 1
};

// Decode-overhead study: `trials` independent synthetic decodes recording
// the full decoded-count trajectory of each.
OverheadStats estimate_overhead(const DegreeDistribution& dist, double alpha,
                                std::uint64_t trials, std::uint64_t seed);

}  // namespace ltmv

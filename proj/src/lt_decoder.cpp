#include "ltmv/lt_decoder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ltmv/rng.hpp"

namespace ltmv {

PeelingDecoder::PeelingDecoder(const EncodingGraph& graph)
    : graph_(graph),
      m_(graph.m()),
      seen_(graph.encoded_count(), false),
      source_members_(graph.m()),
      values_(graph.m(), 0.0),
      is_decoded_(graph.m(), false) {}

PeelingDecoder::Ingest PeelingDecoder::ingest(std::uint64_t encoded_index, double value) {
    if (encoded_index >= seen_.size())
        throw std::out_of_range("encoded index outside graph");
    if (complete()) return Ingest::Ignored;
    if (seen_[encoded_index]) return Ingest::Duplicate;
    seen_[encoded_index] = true;
    ++received_;

    double residual = value;
    std::uint64_t sum = 0;
    std::uint32_t degree = 0;
    for (std::uint32_t src : graph_.neighbors(encoded_index)) {
        if (is_decoded_[src]) {
            residual -= values_[src];
        } else {
            sum += src;
            ++degree;
        }
    }
    if (degree == 0) return Ingest::Accepted;  // redundant; nothing new

    auto id = static_cast<std::uint32_t>(symbols_.size());
    symbols_.push_back(Symbol{residual, sum, degree, true});
    for (std::uint32_t src : graph_.neighbors(encoded_index))
        if (!is_decoded_[src]) source_members_[src].push_back(id);
    if (degree == 1) ripple_.push(id);
    peel();
    return Ingest::Accepted;
}

void PeelingDecoder::peel() {
    while (!ripple_.empty()) {
        std::uint32_t id = ripple_.front();
        ripple_.pop();
        Symbol& sym = symbols_[id];
        if (!sym.active) continue;  // retired while queued
        auto src = static_cast<std::uint32_t>(sym.residual_sum);
        sym.active = false;
        values_[src] = sym.value;
        is_decoded_[src] = true;
        ++decoded_count_;
        for (std::uint32_t member : source_members_[src]) {
            Symbol& other = symbols_[member];
            if (!other.active) continue;
            other.value -= values_[src];
            other.residual_sum -= src;
            --other.residual_degree;
            if (other.residual_degree == 1)
                ripple_.push(member);
            else if (other.residual_degree == 0)
                other.active = false;
        }
        source_members_[src].clear();
        source_members_[src].shrink_to_fit();
    }
}

DecodeOutcome decode_full(std::span<const std::pair<std::uint64_t, double>> symbols,
                          const EncodingGraph& graph) {
    PeelingDecoder dec(graph);
    DecodeOutcome out;
    for (const auto& [index, value] : symbols) {
        dec.ingest(index, value);
        if (dec.complete()) break;
    }
    out.complete = dec.complete();
    out.symbols_used = dec.received();
    out.decoded_count = dec.decoded_count();
    if (out.complete) out.values = dec.values();
    return out;
}

std::optional<std::uint64_t> sample_decode_threshold(const DegreeDistribution& dist,
                                                     double alpha, std::uint64_t seed) {
    EncodingGraph graph = generate_graph(dist.m(), alpha, dist, derive_seed(seed, 0));
    std::vector<std::uint64_t> order(graph.encoded_count());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, 1));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_below(i)]);

    PeelingDecoder dec(graph);
    for (std::uint64_t index : order) {
        dec.ingest(index, 0.0);
        if (dec.complete()) return dec.received();
    }
    return std::nullopt;
}

OverheadStats estimate_overhead(const DegreeDistribution& dist, double alpha,
                                std::uint64_t trials, std::uint64_t seed) {
    OverheadStats stats;
    stats.trials.reserve(trials);
    double total = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = derive_seed(seed, t);
        EncodingGraph graph =
            generate_graph(dist.m(), alpha, dist, derive_seed(trial_seed, 0));
        std::vector<std::uint64_t> order(graph.encoded_count());
        std::iota(order.begin(), order.end(), 0);
        Rng rng(derive_seed(trial_seed, 1));
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform_below(i)]);

        OverheadTrial trial;
        trial.trajectory.reserve(order.size());
        PeelingDecoder dec(graph);
        for (std::uint64_t index : order) {
            dec.ingest(index, 0.0);
            trial.trajectory.push_back(static_cast<std::uint32_t>(dec.decoded_count()));
            if (dec.complete()) break;
        }
        trial.completed = dec.complete();
        trial.symbols_used = dec.received();
        if (trial.completed) {
            ++stats.completed_trials;
            total += static_cast<double>(trial.symbols_used);
            stats.max_symbols = std::max(stats.max_symbols, trial.symbols_used);
        }
        stats.trials.push_back(std::move(trial));
    }
    if (stats.completed_trials > 0) {
        stats.mean_symbols = total / static_cast<double>(stats.completed_trials);
        stats.epsilon_hat =
            stats.mean_symbols / static_cast<double>(dist.m()) - 1.0;
    }
    return stats;
}

}  // namespace ltmv

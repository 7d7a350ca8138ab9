#pragma once

#include <cstdint>
#include <span>

#include "ltmv/matrix.hpp"
#include "ltmv/soliton.hpp"

namespace ltmv {

// Bipartite encoding structure: encoded row j is the sum of the source rows
// in neighbors(j). Stored in CSR form. The graph is a pure function of
// (m, m_e, degree distribution, seed); regenerating with the same inputs
// yields identical neighbor sets.
class EncodingGraph {
public:
    EncodingGraph() = default;

    // Hand-built graph from explicit neighbor rows (validated, sorted,
    // deduplicated). Mainly for tests and small worked examples.
    static EncodingGraph from_rows(std::uint64_t m,
                                   const std::vector<std::vector<std::uint32_t>>& rows);

    std::uint64_t m() const { return m_; }
    std::uint64_t encoded_count() const { return encoded_count_; }
    std::uint64_t seed() const { return seed_; }

    std::span<const std::uint32_t> neighbors(std::uint64_t j) const {
        return {indices_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
    }
    std::uint64_t degree(std::uint64_t j) const { return offsets_[j + 1] - offsets_[j]; }

    bool operator==(const EncodingGraph& other) const = default;

private:
    friend EncodingGraph generate_graph(std::uint64_t, double, const DegreeDistribution&,
                                        std::uint64_t);
    std::uint64_t m_ = 0;
    std::uint64_t encoded_count_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> indices_;
};

// ceil(v) with a small nudge so that products like 1.1 * 10 that land a few
// ulps above an integer do not round up an extra step.
std::uint64_t ceil_count(double v);

// Samples ceil(alpha * m) encoded rows: degree from `dist`, then that many
// distinct source indices uniformly at random. Requires alpha * m >= m + 1.
EncodingGraph generate_graph(std::uint64_t m, double alpha, const DegreeDistribution& dist,
                             std::uint64_t seed);

// Sums source rows per the graph: output row j = sum of A rows in S_j.
Matrix encode_matrix(const Matrix& a, const EncodingGraph& graph);

}  // namespace ltmv

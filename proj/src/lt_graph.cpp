#include "ltmv/lt_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace ltmv {

std::uint64_t ceil_count(double v) {
    return static_cast<std::uint64_t>(std::ceil(v - 1e-9));
}

EncodingGraph EncodingGraph::from_rows(std::uint64_t m,
                                       const std::vector<std::vector<std::uint32_t>>& rows) {
    if (m < 1) throw std::invalid_argument("graph needs at least one source row");
    EncodingGraph graph;
    graph.m_ = m;
    graph.encoded_count_ = rows.size();
    graph.offsets_.reserve(rows.size() + 1);
    graph.offsets_.push_back(0);
    for (const auto& in : rows) {
        std::vector<std::uint32_t> row(in);
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        if (row.empty()) throw std::invalid_argument("encoded row with no neighbors");
        if (row.back() >= m) throw std::invalid_argument("neighbor index out of range");
        graph.indices_.insert(graph.indices_.end(), row.begin(), row.end());
        graph.offsets_.push_back(graph.indices_.size());
    }
    return graph;
}

EncodingGraph generate_graph(std::uint64_t m, double alpha, const DegreeDistribution& dist,
                             std::uint64_t seed) {
    if (dist.m() != m) throw std::invalid_argument("degree distribution built for different m");
    if (m > UINT32_MAX) throw std::invalid_argument("source row count exceeds index width");
    const std::uint64_t encoded_count = ceil_count(alpha * static_cast<double>(m));
    if (encoded_count < m + 1)
        throw std::invalid_argument("generate_graph requires alpha * m >= m + 1");

    EncodingGraph graph;
    graph.m_ = m;
    graph.encoded_count_ = encoded_count;
    graph.seed_ = seed;
    graph.offsets_.reserve(encoded_count + 1);
    graph.offsets_.push_back(0);

    Rng rng(seed);
    std::unordered_set<std::uint64_t> picked;
    std::vector<std::uint32_t> row;
    for (std::uint64_t j = 0; j < encoded_count; ++j) {
        const std::uint64_t d = dist.sample_degree(rng);
        picked.clear();
        row.clear();
        // Floyd's sampling: d distinct values from [0, m) in O(d) draws.
        for (std::uint64_t t = m - d; t < m; ++t) {
            const std::uint64_t v = rng.uniform_below(t + 1);
            if (!picked.insert(v).second) picked.insert(t);
        }
        for (std::uint64_t v : picked) row.push_back(static_cast<std::uint32_t>(v));
        std::sort(row.begin(), row.end());
        graph.indices_.insert(graph.indices_.end(), row.begin(), row.end());
        graph.offsets_.push_back(graph.indices_.size());
    }
    return graph;
}

Matrix encode_matrix(const Matrix& a, const EncodingGraph& graph) {
    if (a.rows() != graph.m())
        throw std::invalid_argument("encode_matrix: matrix row count does not match graph");
    Matrix out(graph.encoded_count(), a.cols());
    for (std::uint64_t j = 0; j < graph.encoded_count(); ++j) {
        auto dst = out.row(j);
        for (std::uint32_t src : graph.neighbors(j)) {
            auto row = a.row(src);
            for (std::uint64_t k = 0; k < a.cols(); ++k) dst[k] += row[k];
        }
    }
    return out;
}

}  // namespace ltmv

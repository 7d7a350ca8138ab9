#include "ltmv/strategies.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <set>
#include <stdexcept>

#include "ltmv/rng.hpp"

namespace ltmv {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

StrategySpec StrategySpec::uncoded(unsigned p) {
    StrategySpec s;
    s.kind = Kind::Uncoded;
    s.p = p;
    s.r = 1;
    return s;
}

StrategySpec StrategySpec::replication(unsigned p, unsigned r) {
    StrategySpec s;
    s.kind = Kind::Replication;
    s.p = p;
    s.r = r;
    return s;
}

StrategySpec StrategySpec::mds(unsigned p, unsigned k) {
    StrategySpec s;
    s.kind = Kind::Mds;
    s.p = p;
    s.k = k;
    return s;
}

StrategySpec StrategySpec::lt(unsigned p, double alpha, double c, double delta) {
    StrategySpec s;
    s.kind = Kind::Lt;
    s.p = p;
    s.alpha = alpha;
    s.c = c;
    s.delta = delta;
    return s;
}

void StrategySpec::validate() const {
    require(p >= 1, "worker count must be >= 1");
    switch (kind) {
        case Kind::Uncoded:
            break;
        case Kind::Replication:
            require(r >= 1, "replication factor must be >= 1");
            require(p % r == 0, "replication factor must divide worker count");
            break;
        case Kind::Mds:
            require(k >= 1 && k <= p, "mds k must satisfy 1 <= k <= p");
            break;
        case Kind::Lt:
            require(alpha > 1.0, "lt alpha must exceed 1");
            require(c > 0.0, "lt c must be positive");
            require(delta > 0.0 && delta <= 1.0, "lt delta must lie in (0, 1]");
            break;
    }
}

std::string StrategySpec::name() const {
    switch (kind) {
        case Kind::Uncoded: return "uncoded";
        case Kind::Replication: return "rep";
        case Kind::Mds: return "mds";
        case Kind::Lt: return "lt";
    }
    return "?";
}

Assignment contiguous_plan(std::uint64_t m_e, unsigned p) {
    require(p >= 1, "worker count must be >= 1");
    require(m_e % p == 0, "worker count must divide encoded row count");
    Assignment a;
    a.rows_per_worker = m_e / p;
    a.blocks.reserve(p);
    for (unsigned w = 0; w < p; ++w)
        a.blocks.emplace_back(static_cast<std::uint64_t>(w) * a.rows_per_worker,
                              a.rows_per_worker);
    return a;
}

Assignment replication_plan(std::uint64_t m, unsigned p, unsigned r) {
    require(r >= 1, "replication factor must be >= 1");
    require(p % r == 0, "replication factor must divide worker count");
    unsigned groups = p / r;
    require(m % groups == 0, "group count must divide row count");
    Assignment a;
    a.rows_per_worker = m / groups;
    a.blocks.reserve(p);
    for (unsigned w = 0; w < p; ++w)
        a.blocks.emplace_back(static_cast<std::uint64_t>(w / r) * a.rows_per_worker,
                              a.rows_per_worker);
    return a;
}

Matrix mds_generator(unsigned p, unsigned k, std::uint64_t seed) {
    require(k >= 1 && k <= p, "mds k must satisfy 1 <= k <= p");
    Matrix g(p, k);
    for (unsigned i = 0; i < k; ++i) g.at(i, i) = 1.0;
    Rng rng(seed);
    for (unsigned i = k; i < p; ++i)
        for (unsigned j = 0; j < k; ++j) g.at(i, j) = rng.normal();
    return g;
}

Matrix mds_encode_rows(const Matrix& a, const Matrix& generator) {
    std::uint64_t p = generator.rows();
    std::uint64_t k = generator.cols();
    require(k >= 1 && k <= p, "generator must be p x k with k <= p");
    require(a.rows() % k == 0, "mds k must divide row count");
    for (std::uint64_t i = 0; i < k; ++i)
        for (std::uint64_t j = 0; j < k; ++j)
            require(generator.at(i, j) == (i == j ? 1.0 : 0.0),
                    "generator must be systematic ([I_k ; P])");

    std::uint64_t block_rows = a.rows() / k;
    Matrix out(block_rows * p, a.cols());
    for (std::uint64_t i = 0; i < a.rows(); ++i)
        std::copy(a.row(i).begin(), a.row(i).end(), out.row(i).begin());
    for (std::uint64_t b = k; b < p; ++b) {
        for (std::uint64_t rr = 0; rr < block_rows; ++rr) {
            auto dst = out.row(b * block_rows + rr);
            for (std::uint64_t j = 0; j < k; ++j) {
                double coeff = generator.at(b, j);
                auto src = a.row(j * block_rows + rr);
                for (std::uint64_t col = 0; col < a.cols(); ++col)
                    dst[col] += coeff * src[col];
            }
        }
    }
    return out;
}

MdsCode mds_encode(const Matrix& a, unsigned p, unsigned k, std::uint64_t seed) {
    Matrix g = mds_generator(p, k, seed);
    return MdsCode{mds_encode_rows(a, g), std::move(g)};
}

std::vector<double> mds_decode(const std::vector<std::vector<double>>& block_results,
                               const std::vector<unsigned>& block_ids,
                               const Matrix& generator) {
    std::uint64_t p = generator.rows();
    auto k = static_cast<std::uint64_t>(generator.cols());
    require(block_ids.size() == k, "need exactly k block results");
    require(block_results.size() == block_ids.size(),
            "block results and ids must pair up");
    std::set<unsigned> distinct(block_ids.begin(), block_ids.end());
    require(distinct.size() == k, "block ids must be distinct");
    for (unsigned id : block_ids) require(id < p, "block id out of range");
    std::uint64_t block_len = block_results.front().size();
    require(block_len >= 1, "empty block result");
    for (const auto& blk : block_results)
        require(blk.size() == block_len, "block results must have equal length");

    std::vector<double> b(k * block_len);
    bool systematic = std::all_of(block_ids.begin(), block_ids.end(),
                                  [&](unsigned id) { return id < k; });
    if (systematic) {
        for (std::size_t i = 0; i < block_ids.size(); ++i)
            std::copy(block_results[i].begin(), block_results[i].end(),
                      b.begin() + static_cast<std::ptrdiff_t>(block_ids[i] * block_len));
        return b;
    }

    Eigen::MatrixXd sys(k, k);
    Eigen::MatrixXd rhs(k, block_len);
    for (std::uint64_t i = 0; i < k; ++i) {
        for (std::uint64_t j = 0; j < k; ++j)
            sys(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                generator.at(block_ids[i], j);
        for (std::uint64_t t = 0; t < block_len; ++t)
            rhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
                block_results[i][t];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (!lu.isInvertible())
        throw std::runtime_error("mds decode: singular block system");
    Eigen::MatrixXd sol = lu.solve(rhs);
    for (std::uint64_t j = 0; j < k; ++j)
        for (std::uint64_t t = 0; t < block_len; ++t)
            b[j * block_len + t] =
                sol(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(t));
    return b;
}

}  // namespace ltmv

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltmv/matrix.hpp"

namespace ltmv {

struct StrategySpec {
    enum class Kind { Uncoded, Replication, Mds, Lt };

    Kind kind = Kind::Uncoded;
    unsigned p = 1;      // worker count
    unsigned r = 1;      // Replication only
    unsigned k = 1;      // Mds only
    double alpha = 2.0;  // Lt only
    double c = 0.03;
    double delta = 0.5;

    static StrategySpec uncoded(unsigned p);
    static StrategySpec replication(unsigned p, unsigned r);
    static StrategySpec mds(unsigned p, unsigned k);
    static StrategySpec lt(unsigned p, double alpha, double c = 0.03, double delta = 0.5);

    // Checks the invariants that do not depend on m (ranges, divisibility
    // among the fields themselves). Throws std::invalid_argument.
    void validate() const;
    std::string name() const;  // "uncoded" | "rep" | "mds" | "lt"
};

// Per-worker contiguous blocks of encoded-row indices.
struct Assignment {
    std::uint64_t rows_per_worker = 0;
    // (first encoded-row index, count) per worker; count == rows_per_worker.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> blocks;
};

// Even split of [0, m_e) across p workers; requires p | m_e.
Assignment contiguous_plan(std::uint64_t m_e, unsigned p);

// r-replication over the plain rows of A (m_e = m): source rows are split
// into p/r blocks and each block is assigned to r consecutive workers.
// Requires r | p and (p/r) | m.
Assignment replication_plan(std::uint64_t m, unsigned p, unsigned r);

struct MdsCode {
    Matrix rows;       // m*p/k x n encoded rows
    Matrix generator;  // p x k, [I_k ; P]
};

// Systematic generator [I_k ; P] with P drawn from a seeded standard normal.
Matrix mds_generator(unsigned p, unsigned k, std::uint64_t seed);

// Encodes A's k row-blocks through an explicit generator (any p x k matrix
// whose top k x k part is the identity).
Matrix mds_encode_rows(const Matrix& a, const Matrix& generator);

// (p,k) MDS code over row-blocks: blocks 0..k-1 are A itself, the p-k parity
// blocks are Gaussian linear combinations. Requires k | m and k <= p.
MdsCode mds_encode(const Matrix& a, unsigned p, unsigned k, std::uint64_t seed);

// Recovers b = A·x from any k distinct block results (each of length m/k).
// Solves the k x k system given by the corresponding generator rows; the
// all-systematic case is a straight concatenation.
std::vector<double> mds_decode(const std::vector<std::vector<double>>& block_results,
                               const std::vector<unsigned>& block_ids,
                               const Matrix& generator);

}  // namespace ltmv

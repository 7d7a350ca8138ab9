#pragma once

#include <cstdint>
#include <vector>

#include "ltmv/rng.hpp"

namespace ltmv {

// Degree distribution for fountain encoding over m source rows.
// pmf[d-1] is the probability of degree d, support exactly 1..m.
class DegreeDistribution {
public:
    // Robust soliton: ideal soliton rho plus the spike/boost term tau,
    // normalized. R = c * ln(m/delta) * sqrt(m), spike at ceil(m/R).
    static DegreeDistribution robust(std::uint64_t m, double c, double delta);

    // Ideal soliton only (the c -> 0 limit). Used as a testing mode.
    static DegreeDistribution ideal(std::uint64_t m);

    std::uint64_t m() const { return m_; }
    double c() const { return c_; }
    double delta() const { return delta_; }
    double spike_parameter() const { return r_; }  // R; 0 in ideal mode
    std::uint64_t spike_degree() const { return spike_; }  // 0 in ideal mode

    const std::vector<double>& pmf() const { return pmf_; }
    double mean_degree() const;

    // Inverse-CDF sample; returns a degree in [1, m].
    std::uint64_t sample_degree(Rng& rng) const;

private:
    DegreeDistribution() = default;
    void finalize(std::vector<double> weights);

    std::uint64_t m_ = 0;
    double c_ = 0.0;
    double delta_ = 1.0;
    double r_ = 0.0;
    std::uint64_t spike_ = 0;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

}  // namespace ltmv

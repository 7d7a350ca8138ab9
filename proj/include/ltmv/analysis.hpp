#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ltmv/delay_params.hpp"

namespace ltmv {

// Cached harmonic numbers H_0..H_max.
class HarmonicTable {
public:
    explicit HarmonicTable(unsigned max_j);
    double h(unsigned j) const;
    unsigned max_j() const { return static_cast<unsigned>(values_.size() - 1); }

private:
    std::vector<double> values_;
};

// H_j = sum_{v=1..j} 1/v, H_0 = 0.
double harmonic(unsigned j);

// Expected latency sandwich for the LT strategy at decode threshold m_d:
// lower = tau*m_d/p + 1/(p*mu), upper = tau*m_d/p + 1/mu + tau.
std::pair<double, double> lt_latency_bounds(std::uint64_t m_d, const DelayParams& params);

// E[T_rep] = tau*m*r/p + H_{p/r}/(r*mu). Exact harmonic form.
double rep_latency_mean(std::uint64_t m, const DelayParams& params, unsigned r);
// Display-only log approximation of the straggling term.
double rep_latency_mean_approx(std::uint64_t m, const DelayParams& params, unsigned r);

// E[T_MDS] = tau*m/k + (H_p - H_{p-k})/mu. Exact harmonic form.
double mds_latency_mean(std::uint64_t m, const DelayParams& params, unsigned k);
double mds_latency_mean_approx(std::uint64_t m, const DelayParams& params, unsigned k);

// Lower bound on Pr(C_MDS >= m*p/k - C0): 1 - exp(-mu*theta) with
// theta = tau*C0/(p-k)^2 - tau/(p-k). Returns 0 when theta <= 0 (vacuous).
double mds_comp_tail_bound(std::uint64_t m, const DelayParams& params, unsigned k,
                           double c0);

// Lower bound on Pr(C_rep >= r*m - C0): Erlang(p/r, mu) tail complement at
// theta = tau*C0/(r-1)^2 - tau*p/(r*(r-1)). Returns 0 when theta <= 0.
double rep_comp_tail_bound(std::uint64_t m, const DelayParams& params, unsigned r,
                           double c0);

// E[X_{j:p}] for X ~ Exp(mu): (H_p - H_{p-j})/mu.
double exp_order_stat_mean(unsigned p, unsigned j, double mu);

}  // namespace ltmv

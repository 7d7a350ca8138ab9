#include "ltmv/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace ltmv {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_rep(const DelayParams& params, std::uint64_t m, unsigned r) {
    params.validate();
    require(r >= 1, "replication factor must be >= 1");
    require(params.p % r == 0, "replication factor must divide worker count");
    require(m % (params.p / r) == 0, "group count must divide row count");
}

void check_mds(const DelayParams& params, std::uint64_t m, unsigned k) {
    params.validate();
    require(k >= 1 && k <= params.p, "mds k must satisfy 1 <= k <= p");
    require(m % k == 0, "mds k must divide row count");
}

}  // namespace

HarmonicTable::HarmonicTable(unsigned max_j) : values_(max_j + 1) {
    long double acc = 0.0L;
    values_[0] = 0.0;
    for (unsigned j = 1; j <= max_j; ++j) {
        acc += 1.0L / j;
        values_[j] = static_cast<double>(acc);
    }
}

double HarmonicTable::h(unsigned j) const {
    if (j >= values_.size()) throw std::out_of_range("harmonic index beyond table");
    return values_[j];
}

double harmonic(unsigned j) {
    // Sum ascending-magnitude terms for accuracy.
    long double acc = 0.0L;
    for (unsigned v = j; v >= 1; --v) acc += 1.0L / v;
    return static_cast<double>(acc);
}

std::pair<double, double> lt_latency_bounds(std::uint64_t m_d, const DelayParams& params) {
    params.validate();
    require(m_d >= 1, "decode threshold must be >= 1");
    double base = params.tau * static_cast<double>(m_d) / params.p;
    return {base + 1.0 / (params.p * params.mu), base + 1.0 / params.mu + params.tau};
}

double rep_latency_mean(std::uint64_t m, const DelayParams& params, unsigned r) {
    check_rep(params, m, r);
    return params.tau * static_cast<double>(m) * r / params.p +
           harmonic(params.p / r) / (r * params.mu);
}

double rep_latency_mean_approx(std::uint64_t m, const DelayParams& params, unsigned r) {
    check_rep(params, m, r);
    return params.tau * static_cast<double>(m) * r / params.p +
           std::log(static_cast<double>(params.p) / r) / (r * params.mu);
}

double mds_latency_mean(std::uint64_t m, const DelayParams& params, unsigned k) {
    check_mds(params, m, k);
    return params.tau * static_cast<double>(m) / k +
           (harmonic(params.p) - harmonic(params.p - k)) / params.mu;
}

double mds_latency_mean_approx(std::uint64_t m, const DelayParams& params, unsigned k) {
    check_mds(params, m, k);
    return params.tau * static_cast<double>(m) / k +
           std::log(static_cast<double>(params.p) / (params.p - k)) / params.mu;
}

double mds_comp_tail_bound(std::uint64_t m, const DelayParams& params, unsigned k,
                           double c0) {
    check_mds(params, m, k);
    require(k < params.p, "tail bound undefined at k = p");
    double gap = params.p - k;
    double theta = params.tau * c0 / (gap * gap) - params.tau / gap;
    if (theta <= 0.0) return 0.0;
    return 1.0 - std::exp(-params.mu * theta);
}

double rep_comp_tail_bound(std::uint64_t m, const DelayParams& params, unsigned r,
                           double c0) {
    check_rep(params, m, r);
    require(r >= 2, "tail bound undefined at r = 1");
    double rm1 = r - 1.0;
    double theta = params.tau * c0 / (rm1 * rm1) -
                   params.tau * params.p / (static_cast<double>(r) * rm1);
    if (theta <= 0.0) return 0.0;
    // Erlang(p/r, mu) CDF at theta, i.e. the Poisson upper tail
    // sum_{i >= p/r} e^{-x} x^i / i!. Summing the tail directly keeps tiny
    // probabilities from cancelling to zero.
    double x = params.mu * theta;
    unsigned stages = params.p / r;
    double term = std::exp(-x + stages * std::log(x) - std::lgamma(stages + 1.0));
    double tail = term;
    for (unsigned i = stages; term > tail * 1e-18 + 1e-320; ++i) {
        term *= x / (i + 1);
        tail += term;
    }
    return std::min(tail, 1.0);
}

double exp_order_stat_mean(unsigned p, unsigned j, double mu) {
    require(mu > 0.0, "mu must be positive");
    require(j >= 1 && j <= p, "order statistic index must satisfy 1 <= j <= p");
    return (harmonic(p) - harmonic(p - j)) / mu;
}

}  // namespace ltmv

#include "ltmv/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltmv {

namespace {

// Ideal soliton weights: rho(1) = 1/m, rho(d) = 1/(d(d-1)). Sums to 1.
std::vector<double> ideal_weights(std::uint64_t m) {
    std::vector<double> w(m);
    w[0] = 1.0 / static_cast<double>(m);
    for (std::uint64_t d = 2; d <= m; ++d)
        w[d - 1] = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
    return w;
}

}  // namespace

DegreeDistribution DegreeDistribution::robust(std::uint64_t m, double c, double delta) {
    if (m < 2) throw std::invalid_argument("degree distribution requires m >= 2");
    if (c <= 0.0) throw std::invalid_argument("robust soliton requires c > 0");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("robust soliton requires delta in (0, 1]");

    const double md = static_cast<double>(m);
    const double r = c * std::log(md / delta) * std::sqrt(md);
    if (r >= md)
        throw std::invalid_argument("spike index out of range: R >= m");
    const auto spike = static_cast<std::uint64_t>(std::ceil(md / r));
    if (spike < 1 || spike > m)
        throw std::invalid_argument("spike index out of range: ceil(m/R) > m");

    std::vector<double> w = ideal_weights(m);
    for (std::uint64_t d = 1; d < spike; ++d) w[d - 1] += r / (static_cast<double>(d) * md);
    w[spike - 1] += r * std::log(r / delta) / md;

    DegreeDistribution dist;
    dist.m_ = m;
    dist.c_ = c;
    dist.delta_ = delta;
    dist.r_ = r;
    dist.spike_ = spike;
    dist.finalize(std::move(w));
    return dist;
}

DegreeDistribution DegreeDistribution::ideal(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("degree distribution requires m >= 2");
    DegreeDistribution dist;
    dist.m_ = m;
    dist.c_ = 0.0;
    dist.delta_ = 1.0;
    dist.r_ = 0.0;
    dist.spike_ = 0;
    dist.finalize(ideal_weights(m));
    return dist;
}

void DegreeDistribution::finalize(std::vector<double> weights) {
    long double total = 0.0L;
    for (double w : weights) total += w;
    pmf_.resize(weights.size());
    cdf_.resize(weights.size());
    long double running = 0.0L;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        pmf_[i] = static_cast<double>(weights[i] / total);
        running += weights[i] / total;
        cdf_[i] = static_cast<double>(running);
    }
    cdf_.back() = 1.0;
}

double DegreeDistribution::mean_degree() const {
    double mean = 0.0;
    for (std::size_t i = 0; i < pmf_.size(); ++i)
        mean += static_cast<double>(i + 1) * pmf_[i];
    return mean;
}

std::uint64_t DegreeDistribution::sample_degree(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return m_;
    return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
}

}  // namespace ltmv

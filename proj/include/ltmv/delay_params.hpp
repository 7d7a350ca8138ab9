#pragma once

#include <stdexcept>

namespace ltmv {

// Shifted-exponential worker delay model: worker i finishes its j-th task at
// X_i + j*tau with X_i ~ Exp(mu).
struct DelayParams {
    double mu = 1.0;   // exponential rate of the initial delay
    double tau = 1.0;  // time per row-vector product
    unsigned p = 1;    // worker count

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
        if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
        if (p < 1) throw std::invalid_argument("worker count must be >= 1");
    }
};

}  // namespace ltmv

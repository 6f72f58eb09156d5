#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "lpt/ad/tensor.hpp"

namespace lpt::ad {

// Central-difference gradient check. `fn` recomputes the scalar loss from the
// live values of `inputs`; the backward pass is compared element by element
// against (f(x+h) - f(x-h)) / 2h. Returns the worst relative error, where the
// denominator is floored at 1 so near-zero gradients are compared absolutely.
template <typename T>
double gradcheck_rel_err(const std::function<TensorT<T>()>& fn,
                         std::vector<TensorT<T>> inputs, T h = T(1e-5)) {
    for (auto& in : inputs) {
        in.set_requires_grad(true);
        in.zero_grad();
    }
    TensorT<T> loss = fn();
    loss.backward();

    std::vector<std::vector<T>> analytic;
    analytic.reserve(inputs.size());
    for (auto& in : inputs) analytic.push_back(in.grad());

    double worst = 0.0;
    NoGradGuard ng;
    for (size_t t = 0; t < inputs.size(); ++t) {
        auto& vals = inputs[t].value();
        for (size_t j = 0; j < vals.size(); ++j) {
            const T orig = vals[j];
            vals[j] = orig + h;
            const double lp = static_cast<double>(fn().item());
            vals[j] = orig - h;
            const double lm = static_cast<double>(fn().item());
            vals[j] = orig;
            const double numeric = (lp - lm) / (2.0 * static_cast<double>(h));
            const double a = static_cast<double>(analytic[t][j]);
            const double denom = std::max({1.0, std::abs(a), std::abs(numeric)});
            worst = std::max(worst, std::abs(a - numeric) / denom);
        }
    }
    return worst;
}

}  // namespace lpt::ad

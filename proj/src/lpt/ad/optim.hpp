#pragma once

#include <limits>
#include <vector>

#include "lpt/ad/tensor.hpp"
#include "lpt/kernels/kernels.hpp"

namespace lpt::ad {

// Bias-corrected Adam over an ordered parameter list. Moments are kept by
// index, so the list must stay stable across steps.
template <typename T>
class Adam {
  public:
    explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    double learning_rate() const { return lr_; }
    void set_learning_rate(double lr) { lr_ = lr; }
    int64_t step_count() const { return t_; }

    void step(std::vector<TensorT<T>>& params) {
        if (m_.empty()) {
            for (const auto& p : params) {
                m_.emplace_back(p.size(), T(0));
                v_.emplace_back(p.size(), T(0));
            }
        }
        if (m_.size() != params.size()) {
            throw ShapeMismatchError("Adam: parameter list changed size");
        }
        ++t_;
        const auto& kt = kernels::table<T>();
        for (size_t i = 0; i < params.size(); ++i) {
            auto& p = params[i];
            if (static_cast<int64_t>(m_[i].size()) != p.size()) {
                throw ShapeMismatchError("Adam: parameter shape changed");
            }
            kt.adam_step(p.size(), p.value().data(), p.grad().data(), m_[i].data(),
                         v_[i].data(), static_cast<T>(lr_), static_cast<T>(beta1_),
                         static_cast<T>(beta2_), static_cast<T>(eps_), t_);
        }
    }

  private:
    double lr_;
    double beta1_, beta2_, eps_;
    int64_t t_ = 0;
    std::vector<std::vector<T>> m_, v_;
};

// Reduce-on-plateau: when the watched metric has not strictly improved for
// more than `patience` consecutive epochs, multiply the rate by `factor` and
// restart the count.
struct PlateauScheduler {
    double factor = 0.1;
    int patience = 3;

    double best = std::numeric_limits<double>::infinity();
    int epochs_since_improvement = 0;

    double step(double metric, double lr) {
        if (metric < best) {
            best = metric;
            epochs_since_improvement = 0;
            return lr;
        }
        if (++epochs_since_improvement > patience) {
            epochs_since_improvement = 0;
            return lr * factor;
        }
        return lr;
    }
};

}  // namespace lpt::ad

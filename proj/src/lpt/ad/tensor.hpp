#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace lpt::ad {

struct ShapeMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Shape = std::vector<int>;

inline int64_t numel(const Shape& s) {
    int64_t n = 1;
    for (int d : s) n *= d;
    return n;
}

inline std::string shape_str(const Shape& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

// Thread-local tape switch so inference can run concurrently with shared
// weights and without graph bookkeeping.
inline bool& grad_recording_flag() {
    thread_local bool enabled = true;
    return enabled;
}
inline bool grad_enabled() { return grad_recording_flag(); }

struct NoGradGuard {
    bool prev;
    NoGradGuard() : prev(grad_recording_flag()) { grad_recording_flag() = false; }
    ~NoGradGuard() { grad_recording_flag() = prev; }
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;
};

template <typename T>
struct Node {
    Shape shape;
    std::vector<T> value;
    std::vector<T> grad;  // allocated on first use
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backward_fn;  // pushes this node's grad into the parents

    void ensure_grad() {
        if (grad.empty()) grad.assign(value.size(), T(0));
    }
};

// Value-semantic handle onto a graph node. Copies share the node.
template <typename T>
class TensorT {
  public:
    TensorT() = default;
    explicit TensorT(std::shared_ptr<Node<T>> n) : node_(std::move(n)) {}

    static TensorT zeros(const Shape& shape, bool requires_grad = false) {
        return filled(shape, T(0), requires_grad);
    }

    static TensorT filled(const Shape& shape, T fill, bool requires_grad = false) {
        auto n = std::make_shared<Node<T>>();
        n->shape = shape;
        n->value.assign(static_cast<size_t>(numel(shape)), fill);
        n->requires_grad = requires_grad;
        return TensorT(std::move(n));
    }

    static TensorT from_data(const Shape& shape, std::vector<T> data,
                             bool requires_grad = false) {
        if (static_cast<int64_t>(data.size()) != numel(shape)) {
            throw ShapeMismatchError("from_data: " + std::to_string(data.size()) +
                                     " values for shape " + shape_str(shape));
        }
        auto n = std::make_shared<Node<T>>();
        n->shape = shape;
        n->value = std::move(data);
        n->requires_grad = requires_grad;
        return TensorT(std::move(n));
    }

    static TensorT scalar(T v) { return from_data({1}, {v}); }

    bool defined() const { return node_ != nullptr; }
    const Shape& shape() const { return node_->shape; }
    int ndim() const { return static_cast<int>(node_->shape.size()); }
    int dim(int i) const { return node_->shape[static_cast<size_t>(i)]; }
    int64_t size() const { return static_cast<int64_t>(node_->value.size()); }

    // 2-D conveniences; 1-D tensors count as a single row
    int rows() const { return ndim() == 1 ? 1 : dim(0); }
    int cols() const { return ndim() == 1 ? dim(0) : dim(1); }

    std::vector<T>& value() { return node_->value; }
    const std::vector<T>& value() const { return node_->value; }

    bool has_grad() const { return !node_->grad.empty(); }
    std::vector<T>& grad() {
        node_->ensure_grad();
        return node_->grad;
    }
    const std::vector<T>& grad() const {
        node_->ensure_grad();
        return node_->grad;
    }

    T item() const {
        if (size() != 1) throw ShapeMismatchError("item: tensor is not scalar");
        return node_->value[0];
    }

    bool requires_grad() const { return node_->requires_grad; }
    void set_requires_grad(bool rg) { node_->requires_grad = rg; }

    void zero_grad() {
        if (!node_->grad.empty()) node_->grad.assign(node_->value.size(), T(0));
    }

    // Reverse pass from this (scalar) node; seed scales the whole gradient.
    void backward(T seed = T(1)) {
        if (size() != 1) throw ShapeMismatchError("backward: output must be scalar");
        std::vector<Node<T>*> order = topo_order();
        node_->ensure_grad();
        node_->grad[0] += seed;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            Node<T>* n = *it;
            if (n->backward_fn) n->backward_fn(*n);
        }
    }

    std::shared_ptr<Node<T>> node() const { return node_; }

  private:
    std::vector<Node<T>*> topo_order() const {
        // iterative DFS post-order; reversed it yields loss -> leaves
        std::vector<Node<T>*> order;
        std::unordered_set<Node<T>*> seen;
        std::vector<std::pair<Node<T>*, size_t>> stack;
        stack.emplace_back(node_.get(), 0);
        seen.insert(node_.get());
        while (!stack.empty()) {
            auto& [n, idx] = stack.back();
            if (idx < n->parents.size()) {
                Node<T>* p = n->parents[idx++].get();
                if (p->requires_grad && seen.insert(p).second) {
                    stack.emplace_back(p, 0);
                }
            } else {
                order.push_back(n);
                stack.pop_back();
            }
        }
        return order;
    }

    std::shared_ptr<Node<T>> node_;
};

using Tensor = TensorT<double>;

}  // namespace lpt::ad

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpt/ad/tensor.hpp"
#include "lpt/kernels/kernels.hpp"
#include "lpt/rng.hpp"

namespace lpt::ad {

struct EmptyBatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OddDModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

template <typename T>
TensorT<T> make_result(Shape shape, std::vector<T> value) {
    auto n = std::make_shared<Node<T>>();
    n->shape = std::move(shape);
    n->value = std::move(value);
    return TensorT<T>(std::move(n));
}

// wires parents + backward only when the tape is live
template <typename T, typename Fn>
void record(TensorT<T>& out, std::vector<TensorT<T>> parents, Fn&& backward) {
    bool any = false;
    for (const auto& p : parents) any = any || p.requires_grad();
    if (!grad_enabled() || !any) return;
    auto n = out.node();
    n->requires_grad = true;
    for (auto& p : parents) n->parents.push_back(p.node());
    n->backward_fn = std::forward<Fn>(backward);
}

template <typename T>
void require_2d(const TensorT<T>& t, const char* who) {
    if (t.ndim() != 2) {
        throw ShapeMismatchError(std::string(who) + ": expected 2-D, got " +
                                 shape_str(t.shape()));
    }
}

}  // namespace detail

// ---------------------------------------------------------------- algebra --

template <typename T>
TensorT<T> matmul(const TensorT<T>& a, const TensorT<T>& b) {
    detail::require_2d(a, "matmul");
    detail::require_2d(b, "matmul");
    const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
    if (b.dim(0) != k) {
        throw ShapeMismatchError("matmul: " + shape_str(a.shape()) + " x " +
                                 shape_str(b.shape()));
    }
    std::vector<T> out(static_cast<size_t>(m) * n);
    const auto& kt = kernels::table<T>();
    kt.gemm_nn(m, n, k, a.value().data(), b.value().data(), out.data(), false);
    TensorT<T> result = detail::make_result<T>({m, n}, std::move(out));
    auto an = a.node();
    auto bn = b.node();
    detail::record(result, {a, b}, [an, bn, m, n, k](Node<T>& self) {
        const auto& kt2 = kernels::table<T>();
        if (an->requires_grad) {
            an->ensure_grad();
            kt2.gemm_nt(m, k, n, self.grad.data(), bn->value.data(), an->grad.data(), true);
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            kt2.gemm_tn(k, n, m, an->value.data(), self.grad.data(), bn->grad.data(), true);
        }
    });
    return result;
}

template <typename T>
TensorT<T> add(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.shape() != b.shape()) {
        throw ShapeMismatchError("add: " + shape_str(a.shape()) + " vs " +
                                 shape_str(b.shape()));
    }
    std::vector<T> out = a.value();
    const auto& kt = kernels::table<T>();
    kt.axpy(static_cast<int64_t>(out.size()), T(1), b.value().data(), out.data());
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    auto bn = b.node();
    detail::record(result, {a, b}, [an, bn](Node<T>& self) {
        const auto& kt2 = kernels::table<T>();
        const int64_t n = static_cast<int64_t>(self.grad.size());
        if (an->requires_grad) {
            an->ensure_grad();
            kt2.axpy(n, T(1), self.grad.data(), an->grad.data());
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            kt2.axpy(n, T(1), self.grad.data(), bn->grad.data());
        }
    });
    return result;
}

// a (m x n) + v broadcast over rows; v is 1-D of length n (or 1 x n)
template <typename T>
TensorT<T> add_rowvec(const TensorT<T>& a, const TensorT<T>& v) {
    detail::require_2d(a, "add_rowvec");
    const int m = a.dim(0), n = a.dim(1);
    if (v.size() != n) {
        throw ShapeMismatchError("add_rowvec: vector of " + std::to_string(v.size()) +
                                 " for " + shape_str(a.shape()));
    }
    std::vector<T> out = a.value();
    for (int i = 0; i < m; ++i) {
        T* row = out.data() + static_cast<size_t>(i) * n;
        const T* vv = v.value().data();
        for (int j = 0; j < n; ++j) row[j] += vv[j];
    }
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    auto vn = v.node();
    detail::record(result, {a, v}, [an, vn, m, n](Node<T>& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            kernels::table<T>().axpy(static_cast<int64_t>(self.grad.size()), T(1),
                                     self.grad.data(), an->grad.data());
        }
        if (vn->requires_grad) {
            vn->ensure_grad();
            for (int i = 0; i < m; ++i) {
                const T* row = self.grad.data() + static_cast<size_t>(i) * n;
                for (int j = 0; j < n; ++j) vn->grad[static_cast<size_t>(j)] += row[j];
            }
        }
    });
    return result;
}

template <typename T>
TensorT<T> scale(const TensorT<T>& a, T s) {
    std::vector<T> out = a.value();
    for (auto& x : out) x *= s;
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    detail::record(result, {a}, [an, s](Node<T>& self) {
        an->ensure_grad();
        kernels::table<T>().axpy(static_cast<int64_t>(self.grad.size()), s,
                                 self.grad.data(), an->grad.data());
    });
    return result;
}

// elementwise product
template <typename T>
TensorT<T> mul(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.shape() != b.shape()) {
        throw ShapeMismatchError("mul: " + shape_str(a.shape()) + " vs " +
                                 shape_str(b.shape()));
    }
    std::vector<T> out(a.value().size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.value()[i] * b.value()[i];
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    auto bn = b.node();
    detail::record(result, {a, b}, [an, bn](Node<T>& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            for (size_t i = 0; i < self.grad.size(); ++i) {
                an->grad[i] += self.grad[i] * bn->value[i];
            }
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            for (size_t i = 0; i < self.grad.size(); ++i) {
                bn->grad[i] += self.grad[i] * an->value[i];
            }
        }
    });
    return result;
}

template <typename T>
TensorT<T> transpose(const TensorT<T>& a) {
    detail::require_2d(a, "transpose");
    const int m = a.dim(0), n = a.dim(1);
    std::vector<T> out(a.value().size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            out[static_cast<size_t>(j) * m + i] = a.value()[static_cast<size_t>(i) * n + j];
        }
    }
    TensorT<T> result = detail::make_result<T>({n, m}, std::move(out));
    auto an = a.node();
    detail::record(result, {a}, [an, m, n](Node<T>& self) {
        an->ensure_grad();
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < m; ++i) {
                an->grad[static_cast<size_t>(i) * n + j] +=
                    self.grad[static_cast<size_t>(j) * m + i];
            }
        }
    });
    return result;
}

// concatenation of 2-D tensors along axis 0 (rows) or 1 (columns)
template <typename T>
TensorT<T> concat(const std::vector<TensorT<T>>& parts, int axis) {
    if (parts.empty()) throw ShapeMismatchError("concat: no parts");
    if (axis != 0 && axis != 1) throw ShapeMismatchError("concat: axis must be 0 or 1");
    for (const auto& p : parts) detail::require_2d(p, "concat");

    const int fixed = axis == 0 ? parts[0].dim(1) : parts[0].dim(0);
    int total = 0;
    for (const auto& p : parts) {
        if ((axis == 0 ? p.dim(1) : p.dim(0)) != fixed) {
            throw ShapeMismatchError("concat: inconsistent shapes");
        }
        total += p.dim(axis);
    }
    const int m = axis == 0 ? total : fixed;
    const int n = axis == 0 ? fixed : total;

    std::vector<T> out(static_cast<size_t>(m) * n);
    int offset = 0;
    for (const auto& p : parts) {
        const int pm = p.dim(0), pn = p.dim(1);
        for (int i = 0; i < pm; ++i) {
            for (int j = 0; j < pn; ++j) {
                const int oi = axis == 0 ? offset + i : i;
                const int oj = axis == 0 ? j : offset + j;
                out[static_cast<size_t>(oi) * n + oj] =
                    p.value()[static_cast<size_t>(i) * pn + j];
            }
        }
        offset += p.dim(axis);
    }
    TensorT<T> result = detail::make_result<T>({m, n}, std::move(out));

    std::vector<std::shared_ptr<Node<T>>> pnodes;
    for (const auto& p : parts) pnodes.push_back(p.node());
    detail::record(result, parts, [pnodes, axis, n](Node<T>& self) {
        int offset2 = 0;
        for (auto& pn : pnodes) {
            const int pm = pn->shape[0], pcols = pn->shape[1];
            if (pn->requires_grad) {
                pn->ensure_grad();
                for (int i = 0; i < pm; ++i) {
                    for (int j = 0; j < pcols; ++j) {
                        const int oi = axis == 0 ? offset2 + i : i;
                        const int oj = axis == 0 ? j : offset2 + j;
                        pn->grad[static_cast<size_t>(i) * pcols + j] +=
                            self.grad[static_cast<size_t>(oi) * n + oj];
                    }
                }
            }
            offset2 += axis == 0 ? pm : pcols;
        }
    });
    return result;
}

// half-open [i0, i1) range of rows (axis 0) or columns (axis 1)
template <typename T>
TensorT<T> slice(const TensorT<T>& a, int axis, int i0, int i1) {
    detail::require_2d(a, "slice");
    if (axis != 0 && axis != 1) throw ShapeMismatchError("slice: axis must be 0 or 1");
    const int extent = a.dim(axis);
    if (i0 < 0 || i1 > extent || i0 >= i1) {
        throw ShapeMismatchError("slice: bad range [" + std::to_string(i0) + "," +
                                 std::to_string(i1) + ") of " + std::to_string(extent));
    }
    const int m = a.dim(0), n = a.dim(1);
    const int om = axis == 0 ? i1 - i0 : m;
    const int on = axis == 0 ? n : i1 - i0;
    std::vector<T> out(static_cast<size_t>(om) * on);
    for (int i = 0; i < om; ++i) {
        for (int j = 0; j < on; ++j) {
            const int si = axis == 0 ? i + i0 : i;
            const int sj = axis == 0 ? j : j + i0;
            out[static_cast<size_t>(i) * on + j] = a.value()[static_cast<size_t>(si) * n + sj];
        }
    }
    TensorT<T> result = detail::make_result<T>({om, on}, std::move(out));
    auto an = a.node();
    detail::record(result, {a}, [an, axis, i0, om, on, n](Node<T>& self) {
        an->ensure_grad();
        for (int i = 0; i < om; ++i) {
            for (int j = 0; j < on; ++j) {
                const int si = axis == 0 ? i + i0 : i;
                const int sj = axis == 0 ? j : j + i0;
                an->grad[static_cast<size_t>(si) * n + sj] +=
                    self.grad[static_cast<size_t>(i) * on + j];
            }
        }
    });
    return result;
}

template <typename T>
TensorT<T> relu(const TensorT<T>& a) {
    std::vector<T> out = a.value();
    for (auto& x : out) x = x > T(0) ? x : T(0);
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    detail::record(result, {a}, [an](Node<T>& self) {
        an->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
            if (an->value[i] > T(0)) an->grad[i] += self.grad[i];
        }
    });
    return result;
}

template <typename T>
TensorT<T> sum(const TensorT<T>& a) {
    T s = 0;
    for (T x : a.value()) s += x;
    TensorT<T> result = detail::make_result<T>({1}, {s});
    auto an = a.node();
    detail::record(result, {a}, [an](Node<T>& self) {
        an->ensure_grad();
        const T g = self.grad[0];
        for (auto& x : an->grad) x += g;
    });
    return result;
}

// ------------------------------------------------------------- neural ops --

// numerically stable softmax along rows (axis 1) or columns (axis 0) of a
// 2-D tensor; 1-D tensors are treated as one row
template <typename T>
TensorT<T> softmax(const TensorT<T>& a, int axis = 1) {
    const bool one_d = a.ndim() == 1;
    if (!one_d) detail::require_2d(a, "softmax");
    const int m = a.rows(), n = a.cols();
    if (axis != 0 && axis != 1) throw ShapeMismatchError("softmax: axis must be 0 or 1");
    if (one_d) axis = 1;

    const int lanes = axis == 1 ? m : n;
    const int width = axis == 1 ? n : m;
    auto idx = [axis, n](int lane, int i) {
        return axis == 1 ? static_cast<size_t>(lane) * n + i
                         : static_cast<size_t>(i) * n + lane;
    };

    std::vector<T> out(a.value().size());
    for (int lane = 0; lane < lanes; ++lane) {
        T mx = a.value()[idx(lane, 0)];
        for (int i = 1; i < width; ++i) mx = std::max(mx, a.value()[idx(lane, i)]);
        T denom = 0;
        for (int i = 0; i < width; ++i) {
            const T e = std::exp(a.value()[idx(lane, i)] - mx);
            out[idx(lane, i)] = e;
            denom += e;
        }
        for (int i = 0; i < width; ++i) out[idx(lane, i)] /= denom;
    }
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    auto rn = result.node();
    detail::record(result, {a}, [an, rn, lanes, width, idx](Node<T>& self) {
        an->ensure_grad();
        for (int lane = 0; lane < lanes; ++lane) {
            T dot = 0;
            for (int i = 0; i < width; ++i) {
                dot += self.grad[idx(lane, i)] * rn->value[idx(lane, i)];
            }
            for (int i = 0; i < width; ++i) {
                const size_t p = idx(lane, i);
                an->grad[p] += rn->value[p] * (self.grad[p] - dot);
            }
        }
    });
    return result;
}

// normalizes the last axis to zero mean / unit variance, then applies the
// affine gain/bias (both 1-D of the row width)
template <typename T>
TensorT<T> layer_norm(const TensorT<T>& x, const TensorT<T>& gain, const TensorT<T>& bias,
                      T eps = T(1e-5)) {
    const int m = x.rows(), n = x.cols();
    if (gain.size() != n || bias.size() != n) {
        throw ShapeMismatchError("layer_norm: gain/bias of width " +
                                 std::to_string(gain.size()) + " for " +
                                 shape_str(x.shape()));
    }
    std::vector<T> out(x.value().size());
    std::vector<T> xhat(x.value().size());
    std::vector<T> inv_std(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const T* row = x.value().data() + static_cast<size_t>(i) * n;
        T mean = 0;
        for (int j = 0; j < n; ++j) mean += row[j];
        mean /= static_cast<T>(n);
        T var = 0;
        for (int j = 0; j < n; ++j) var += (row[j] - mean) * (row[j] - mean);
        var /= static_cast<T>(n);
        const T is = T(1) / std::sqrt(var + eps);
        inv_std[static_cast<size_t>(i)] = is;
        for (int j = 0; j < n; ++j) {
            const size_t p = static_cast<size_t>(i) * n + j;
            xhat[p] = (row[j] - mean) * is;
            out[p] = gain.value()[static_cast<size_t>(j)] * xhat[p] +
                     bias.value()[static_cast<size_t>(j)];
        }
    }
    TensorT<T> result = detail::make_result<T>(x.shape(), std::move(out));
    auto xn = x.node();
    auto gn = gain.node();
    auto bn = bias.node();
    auto xh = std::make_shared<std::vector<T>>(std::move(xhat));
    auto is = std::make_shared<std::vector<T>>(std::move(inv_std));
    detail::record(result, {x, gain, bias}, [xn, gn, bn, xh, is, m, n](Node<T>& self) {
        for (int i = 0; i < m; ++i) {
            const T* g = self.grad.data() + static_cast<size_t>(i) * n;
            const T* xhr = xh->data() + static_cast<size_t>(i) * n;
            if (gn->requires_grad) {
                gn->ensure_grad();
                for (int j = 0; j < n; ++j) gn->grad[static_cast<size_t>(j)] += g[j] * xhr[j];
            }
            if (bn->requires_grad) {
                bn->ensure_grad();
                for (int j = 0; j < n; ++j) bn->grad[static_cast<size_t>(j)] += g[j];
            }
            if (xn->requires_grad) {
                xn->ensure_grad();
                // dxhat = g * gain; dx = inv_std * (dxhat - mean(dxhat) - xhat * mean(dxhat*xhat))
                T mean_dxhat = 0, mean_dxhat_xhat = 0;
                for (int j = 0; j < n; ++j) {
                    const T dxh = g[j] * gn->value[static_cast<size_t>(j)];
                    mean_dxhat += dxh;
                    mean_dxhat_xhat += dxh * xhr[j];
                }
                mean_dxhat /= static_cast<T>(n);
                mean_dxhat_xhat /= static_cast<T>(n);
                const T isv = (*is)[static_cast<size_t>(i)];
                for (int j = 0; j < n; ++j) {
                    const T dxh = g[j] * gn->value[static_cast<size_t>(j)];
                    xn->grad[static_cast<size_t>(i) * n + j] +=
                        isv * (dxh - mean_dxhat - xhr[j] * mean_dxhat_xhat);
                }
            }
        }
    });
    return result;
}

// inverted dropout: zero with probability p, scale survivors by 1/(1-p).
// Identity in eval mode (train=false) and for p=0. The mask comes from the
// counter-based stream so a forward replays exactly for a given stream state.
template <typename T>
TensorT<T> dropout(const TensorT<T>& a, double p, bool train, RngStream* rng) {
    if (p < 0.0 || p >= 1.0) throw std::invalid_argument("dropout: p must be in [0,1)");
    if (!train || p == 0.0) return a;
    if (!rng) throw std::invalid_argument("dropout: training mode needs an rng stream");
    const T keep_scale = T(1.0 / (1.0 - p));
    std::vector<T> mask(a.value().size());
    std::vector<T> out(a.value().size());
    for (size_t i = 0; i < out.size(); ++i) {
        const bool keep = rng->u01() >= p;
        mask[i] = keep ? keep_scale : T(0);
        out[i] = a.value()[i] * mask[i];
    }
    TensorT<T> result = detail::make_result<T>(a.shape(), std::move(out));
    auto an = a.node();
    auto mk = std::make_shared<std::vector<T>>(std::move(mask));
    detail::record(result, {a}, [an, mk](Node<T>& self) {
        an->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
            an->grad[i] += self.grad[i] * (*mk)[i];
        }
    });
    return result;
}

// gathers rows of table (V x d) by id; gradient scatter-adds into the table
template <typename T>
TensorT<T> embedding_lookup(const TensorT<T>& table, const std::vector<int>& ids) {
    detail::require_2d(table, "embedding_lookup");
    const int v = table.dim(0), d = table.dim(1);
    for (int id : ids) {
        if (id < 0 || id >= v) {
            throw std::out_of_range("embedding_lookup: id " + std::to_string(id) +
                                    " outside table of " + std::to_string(v));
        }
    }
    const int m = static_cast<int>(ids.size());
    std::vector<T> out(static_cast<size_t>(m) * d);
    for (int i = 0; i < m; ++i) {
        const T* src = table.value().data() + static_cast<size_t>(ids[static_cast<size_t>(i)]) * d;
        std::copy(src, src + d, out.data() + static_cast<size_t>(i) * d);
    }
    TensorT<T> result = detail::make_result<T>({m, d}, std::move(out));
    auto tn = table.node();
    detail::record(result, {table}, [tn, ids, d](Node<T>& self) {
        tn->ensure_grad();
        for (size_t i = 0; i < ids.size(); ++i) {
            kernels::table<T>().axpy(d, T(1), self.grad.data() + i * static_cast<size_t>(d),
                                     tn->grad.data() +
                                         static_cast<size_t>(ids[i]) * static_cast<size_t>(d));
        }
    });
    return result;
}

// x (m x k) * w (k x n) + b (n), the fused affine map
template <typename T>
TensorT<T> linear(const TensorT<T>& x, const TensorT<T>& w, const TensorT<T>& b) {
    detail::require_2d(x, "linear");
    detail::require_2d(w, "linear");
    const int m = x.dim(0), k = x.dim(1), n = w.dim(1);
    if (w.dim(0) != k || b.size() != n) {
        throw ShapeMismatchError("linear: x" + shape_str(x.shape()) + " w" +
                                 shape_str(w.shape()) + " b(" + std::to_string(b.size()) + ")");
    }
    std::vector<T> out(static_cast<size_t>(m) * n);
    const auto& kt = kernels::table<T>();
    kt.gemm_nn(m, n, k, x.value().data(), w.value().data(), out.data(), false);
    for (int i = 0; i < m; ++i) {
        T* row = out.data() + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) row[j] += b.value()[static_cast<size_t>(j)];
    }
    TensorT<T> result = detail::make_result<T>({m, n}, std::move(out));
    auto xn = x.node();
    auto wn = w.node();
    auto bn = b.node();
    detail::record(result, {x, w, b}, [xn, wn, bn, m, n, k](Node<T>& self) {
        const auto& kt2 = kernels::table<T>();
        if (xn->requires_grad) {
            xn->ensure_grad();
            kt2.gemm_nt(m, k, n, self.grad.data(), wn->value.data(), xn->grad.data(), true);
        }
        if (wn->requires_grad) {
            wn->ensure_grad();
            kt2.gemm_tn(k, n, m, xn->value.data(), self.grad.data(), wn->grad.data(), true);
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            for (int i = 0; i < m; ++i) {
                const T* row = self.grad.data() + static_cast<size_t>(i) * n;
                for (int j = 0; j < n; ++j) bn->grad[static_cast<size_t>(j)] += row[j];
            }
        }
    });
    return result;
}

// mean negative log-softmax over the non-ignored positions of logits (N x V)
template <typename T>
TensorT<T> cross_entropy(const TensorT<T>& logits, const std::vector<int>& targets,
                         int ignore_id = -1) {
    detail::require_2d(logits, "cross_entropy");
    const int n = logits.dim(0), v = logits.dim(1);
    if (static_cast<int>(targets.size()) != n) {
        throw ShapeMismatchError("cross_entropy: " + std::to_string(targets.size()) +
                                 " targets for " + std::to_string(n) + " rows");
    }
    int active = 0;
    for (int t : targets) {
        if (t == ignore_id) continue;
        if (t < 0 || t >= v) {
            throw std::out_of_range("cross_entropy: target " + std::to_string(t) +
                                    " outside vocabulary of " + std::to_string(v));
        }
        ++active;
    }
    if (active == 0) throw EmptyBatchError("cross_entropy: every position ignored");

    // keep the softmax probabilities for the backward pass
    auto probs = std::make_shared<std::vector<T>>(logits.value());
    T loss = 0;
    for (int i = 0; i < n; ++i) {
        T* row = probs->data() + static_cast<size_t>(i) * v;
        T mx = row[0];
        for (int j = 1; j < v; ++j) mx = std::max(mx, row[j]);
        T denom = 0;
        for (int j = 0; j < v; ++j) {
            row[j] = std::exp(row[j] - mx);
            denom += row[j];
        }
        for (int j = 0; j < v; ++j) row[j] /= denom;
        if (targets[static_cast<size_t>(i)] != ignore_id) {
            loss -= std::log(std::max(row[targets[static_cast<size_t>(i)]],
                                      std::numeric_limits<T>::min()));
        }
    }
    loss /= static_cast<T>(active);

    TensorT<T> result = detail::make_result<T>({1}, {loss});
    auto ln = logits.node();
    detail::record(result, {logits}, [ln, probs, targets, ignore_id, n, v,
                                      active](Node<T>& self) {
        ln->ensure_grad();
        const T g = self.grad[0] / static_cast<T>(active);
        for (int i = 0; i < n; ++i) {
            const int t = targets[static_cast<size_t>(i)];
            if (t == ignore_id) continue;
            const T* p = probs->data() + static_cast<size_t>(i) * v;
            T* gr = ln->grad.data() + static_cast<size_t>(i) * v;
            for (int j = 0; j < v; ++j) gr[j] += g * p[j];
            gr[t] -= g;
        }
    });
    return result;
}

// sinusoidal position table (Vaswani form, wavelength base 10000), constant
template <typename T>
TensorT<T> positional_encoding(int seq_len, int d_model) {
    if (d_model % 2 != 0) {
        throw OddDModelError("positional_encoding: d_model must be even, got " +
                             std::to_string(d_model));
    }
    std::vector<T> pe(static_cast<size_t>(seq_len) * d_model);
    for (int pos = 0; pos < seq_len; ++pos) {
        for (int i = 0; i < d_model / 2; ++i) {
            const double angle =
                static_cast<double>(pos) /
                std::pow(10000.0, (2.0 * i) / static_cast<double>(d_model));
            pe[static_cast<size_t>(pos) * d_model + 2 * i] = static_cast<T>(std::sin(angle));
            pe[static_cast<size_t>(pos) * d_model + 2 * i + 1] =
                static_cast<T>(std::cos(angle));
        }
    }
    return detail::make_result<T>({seq_len, d_model}, std::move(pe));
}

}  // namespace lpt::ad

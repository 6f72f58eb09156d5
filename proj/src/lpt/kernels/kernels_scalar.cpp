// Reference kernels. Plain loops, same accumulation order the SIMD variants
// follow per lane, used both as the portable fallback and as the equivalence
// baseline in tests.

#include <cmath>
#include <cstring>

#include "lpt/kernels/kernels_detail.hpp"

namespace lpt::kernels::detail {

namespace {

template <typename T>
void gemm_nn_scalar(int m, int n, int k, const T* a, const T* b, T* c, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        T* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(T) * static_cast<size_t>(n));
        const T* arow = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const T av = arow[p];
            const T* brow = b + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <typename T>
void gemm_nt_scalar(int m, int n, int k, const T* a, const T* b, T* c, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        const T* arow = a + static_cast<size_t>(i) * k;
        T* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const T* brow = b + static_cast<size_t>(j) * k;
            T s = 0;
            for (int p = 0; p < k; ++p) s += arow[p] * brow[p];
            crow[j] = accumulate ? crow[j] + s : s;
        }
    }
}

template <typename T>
void gemm_tn_scalar(int m, int n, int k, const T* a, const T* b, T* c, bool accumulate) {
    if (!accumulate) std::memset(c, 0, sizeof(T) * static_cast<size_t>(m) * n);
    for (int p = 0; p < k; ++p) {
        const T* arow = a + static_cast<size_t>(p) * m;
        const T* brow = b + static_cast<size_t>(p) * n;
        for (int i = 0; i < m; ++i) {
            const T av = arow[i];
            T* crow = c + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <typename T>
void axpy_scalar(int64_t n, T alpha, const T* x, T* y) {
    for (int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
T dot_scalar(int64_t n, const T* x, const T* y) {
    T s = 0;
    for (int64_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

template <typename T>
void adam_step_scalar(int64_t n, T* p, const T* g, T* m, T* v, T lr, T beta1, T beta2,
                      T eps, int64_t t) {
    const T bc1 = T(1) - std::pow(beta1, static_cast<T>(t));
    const T bc2 = T(1) - std::pow(beta2, static_cast<T>(t));
    for (int64_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (T(1) - beta1) * g[i];
        v[i] = beta2 * v[i] + (T(1) - beta2) * g[i] * g[i];
        const T mhat = m[i] / bc1;
        const T vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

template <typename T>
Table<T> make_scalar_table() {
    Table<T> t;
    t.gemm_nn = &gemm_nn_scalar<T>;
    t.gemm_nt = &gemm_nt_scalar<T>;
    t.gemm_tn = &gemm_tn_scalar<T>;
    t.axpy = &axpy_scalar<T>;
    t.dot = &dot_scalar<T>;
    t.adam_step = &adam_step_scalar<T>;
    return t;
}

}  // namespace

template <>
const Table<float>& scalar_table<float>() {
    static const Table<float> t = make_scalar_table<float>();
    return t;
}

template <>
const Table<double>& scalar_table<double>() {
    static const Table<double> t = make_scalar_table<double>();
    return t;
}

}  // namespace lpt::kernels::detail

// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma and must be
// entered only through the dispatch table after the CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "lpt/kernels/kernels_detail.hpp"

namespace lpt::kernels::detail {

namespace {

// ---------------------------------------------------------------- float ----

void gemm_nn_avx2_f32(int m, int n, int k, const float* a, const float* b, float* c,
                      bool accumulate) {
    for (int i = 0; i < m; ++i) {
        float* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(float) * static_cast<size_t>(n));
        const float* arow = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const float av = arow[p];
            const float* brow = b + static_cast<size_t>(p) * n;
            const __m256 avv = _mm256_set1_ps(av);
            int j = 0;
            for (; j + 16 <= n; j += 16) {
                __m256 c0 = _mm256_loadu_ps(crow + j);
                __m256 c1 = _mm256_loadu_ps(crow + j + 8);
                c0 = _mm256_fmadd_ps(avv, _mm256_loadu_ps(brow + j), c0);
                c1 = _mm256_fmadd_ps(avv, _mm256_loadu_ps(brow + j + 8), c1);
                _mm256_storeu_ps(crow + j, c0);
                _mm256_storeu_ps(crow + j + 8, c1);
            }
            for (; j + 8 <= n; j += 8) {
                __m256 c0 = _mm256_loadu_ps(crow + j);
                c0 = _mm256_fmadd_ps(avv, _mm256_loadu_ps(brow + j), c0);
                _mm256_storeu_ps(crow + j, c0);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

inline float hsum256_ps(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    lo = _mm_hadd_ps(lo, lo);
    lo = _mm_hadd_ps(lo, lo);
    return _mm_cvtss_f32(lo);
}

void gemm_nt_avx2_f32(int m, int n, int k, const float* a, const float* b, float* c,
                      bool accumulate) {
    for (int i = 0; i < m; ++i) {
        const float* arow = a + static_cast<size_t>(i) * k;
        float* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const float* brow = b + static_cast<size_t>(j) * k;
            __m256 acc0 = _mm256_setzero_ps();
            __m256 acc1 = _mm256_setzero_ps();
            int p = 0;
            for (; p + 16 <= k; p += 16) {
                acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p),
                                       _mm256_loadu_ps(brow + p), acc0);
                acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p + 8),
                                       _mm256_loadu_ps(brow + p + 8), acc1);
            }
            for (; p + 8 <= k; p += 8) {
                acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p),
                                       _mm256_loadu_ps(brow + p), acc0);
            }
            float s = hsum256_ps(_mm256_add_ps(acc0, acc1));
            for (; p < k; ++p) s += arow[p] * brow[p];
            crow[j] = accumulate ? crow[j] + s : s;
        }
    }
}

void gemm_tn_avx2_f32(int m, int n, int k, const float* a, const float* b, float* c,
                      bool accumulate) {
    if (!accumulate) {
        std::memset(c, 0, sizeof(float) * static_cast<size_t>(m) * n);
    }
    for (int p = 0; p < k; ++p) {
        const float* arow = a + static_cast<size_t>(p) * m;
        const float* brow = b + static_cast<size_t>(p) * n;
        for (int i = 0; i < m; ++i) {
            const float av = arow[i];
            float* crow = c + static_cast<size_t>(i) * n;
            const __m256 avv = _mm256_set1_ps(av);
            int j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256 c0 = _mm256_loadu_ps(crow + j);
                c0 = _mm256_fmadd_ps(avv, _mm256_loadu_ps(brow + j), c0);
                _mm256_storeu_ps(crow + j, c0);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void axpy_avx2_f32(int64_t n, float alpha, const float* x, float* y) {
    const __m256 av = _mm256_set1_ps(alpha);
    int64_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 yv = _mm256_loadu_ps(y + i);
        yv = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), yv);
        _mm256_storeu_ps(y + i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

float dot_avx2_f32(int64_t n, const float* x, const float* y) {
    __m256 acc = _mm256_setzero_ps();
    int64_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), acc);
    }
    float s = hsum256_ps(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void adam_step_avx2_f32(int64_t n, float* p, const float* g, float* m, float* v,
                        float lr, float beta1, float beta2, float eps, int64_t t) {
    const float bc1 = 1.0f - std::pow(beta1, static_cast<float>(t));
    const float bc2 = 1.0f - std::pow(beta2, static_cast<float>(t));
    const __m256 b1 = _mm256_set1_ps(beta1);
    const __m256 b2 = _mm256_set1_ps(beta2);
    const __m256 ob1 = _mm256_set1_ps(1.0f - beta1);
    const __m256 ob2 = _mm256_set1_ps(1.0f - beta2);
    const __m256 inv_bc1 = _mm256_set1_ps(1.0f / bc1);
    const __m256 inv_bc2 = _mm256_set1_ps(1.0f / bc2);
    const __m256 lrv = _mm256_set1_ps(lr);
    const __m256 epsv = _mm256_set1_ps(eps);
    int64_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 gv = _mm256_loadu_ps(g + i);
        __m256 mv = _mm256_loadu_ps(m + i);
        __m256 vv = _mm256_loadu_ps(v + i);
        mv = _mm256_fmadd_ps(ob1, gv, _mm256_mul_ps(b1, mv));
        vv = _mm256_fmadd_ps(ob2, _mm256_mul_ps(gv, gv), _mm256_mul_ps(b2, vv));
        _mm256_storeu_ps(m + i, mv);
        _mm256_storeu_ps(v + i, vv);
        const __m256 mhat = _mm256_mul_ps(mv, inv_bc1);
        const __m256 vhat = _mm256_mul_ps(vv, inv_bc2);
        const __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), epsv);
        __m256 pv = _mm256_loadu_ps(p + i);
        pv = _mm256_sub_ps(pv, _mm256_div_ps(_mm256_mul_ps(lrv, mhat), denom));
        _mm256_storeu_ps(p + i, pv);
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0f - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0f - beta2) * g[i] * g[i];
        const float mhat = m[i] / bc1;
        const float vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

// --------------------------------------------------------------- double ----

void gemm_nn_avx2_f64(int m, int n, int k, const double* a, const double* b, double* c,
                      bool accumulate) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * static_cast<size_t>(n));
        const double* arow = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double av = arow[p];
            const double* brow = b + static_cast<size_t>(p) * n;
            const __m256d avv = _mm256_set1_pd(av);
            int j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256d c0 = _mm256_loadu_pd(crow + j);
                __m256d c1 = _mm256_loadu_pd(crow + j + 4);
                c0 = _mm256_fmadd_pd(avv, _mm256_loadu_pd(brow + j), c0);
                c1 = _mm256_fmadd_pd(avv, _mm256_loadu_pd(brow + j + 4), c1);
                _mm256_storeu_pd(crow + j, c0);
                _mm256_storeu_pd(crow + j + 4, c1);
            }
            for (; j + 4 <= n; j += 4) {
                __m256d c0 = _mm256_loadu_pd(crow + j);
                c0 = _mm256_fmadd_pd(avv, _mm256_loadu_pd(brow + j), c0);
                _mm256_storeu_pd(crow + j, c0);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

inline double hsum256_pd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    lo = _mm_hadd_pd(lo, lo);
    return _mm_cvtsd_f64(lo);
}

void gemm_nt_avx2_f64(int m, int n, int k, const double* a, const double* b, double* c,
                      bool accumulate) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + static_cast<size_t>(i) * k;
        double* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double* brow = b + static_cast<size_t>(j) * k;
            __m256d acc0 = _mm256_setzero_pd();
            __m256d acc1 = _mm256_setzero_pd();
            int p = 0;
            for (; p + 8 <= k; p += 8) {
                acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(arow + p),
                                       _mm256_loadu_pd(brow + p), acc0);
                acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(arow + p + 4),
                                       _mm256_loadu_pd(brow + p + 4), acc1);
            }
            for (; p + 4 <= k; p += 4) {
                acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(arow + p),
                                       _mm256_loadu_pd(brow + p), acc0);
            }
            double s = hsum256_pd(_mm256_add_pd(acc0, acc1));
            for (; p < k; ++p) s += arow[p] * brow[p];
            crow[j] = accumulate ? crow[j] + s : s;
        }
    }
}

void gemm_tn_avx2_f64(int m, int n, int k, const double* a, const double* b, double* c,
                      bool accumulate) {
    if (!accumulate) {
        std::memset(c, 0, sizeof(double) * static_cast<size_t>(m) * n);
    }
    for (int p = 0; p < k; ++p) {
        const double* arow = a + static_cast<size_t>(p) * m;
        const double* brow = b + static_cast<size_t>(p) * n;
        for (int i = 0; i < m; ++i) {
            const double av = arow[i];
            double* crow = c + static_cast<size_t>(i) * n;
            const __m256d avv = _mm256_set1_pd(av);
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d c0 = _mm256_loadu_pd(crow + j);
                c0 = _mm256_fmadd_pd(avv, _mm256_loadu_pd(brow + j), c0);
                _mm256_storeu_pd(crow + j, c0);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void axpy_avx2_f64(int64_t n, double alpha, const double* x, double* y) {
    const __m256d av = _mm256_set1_pd(alpha);
    int64_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double dot_avx2_f64(int64_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    int64_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    double s = hsum256_pd(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void adam_step_avx2_f64(int64_t n, double* p, const double* g, double* m, double* v,
                        double lr, double beta1, double beta2, double eps, int64_t t) {
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    const __m256d b1 = _mm256_set1_pd(beta1);
    const __m256d b2 = _mm256_set1_pd(beta2);
    const __m256d ob1 = _mm256_set1_pd(1.0 - beta1);
    const __m256d ob2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d inv_bc1 = _mm256_set1_pd(1.0 / bc1);
    const __m256d inv_bc2 = _mm256_set1_pd(1.0 / bc2);
    const __m256d lrv = _mm256_set1_pd(lr);
    const __m256d epsv = _mm256_set1_pd(eps);
    int64_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_loadu_pd(m + i);
        __m256d vv = _mm256_loadu_pd(v + i);
        mv = _mm256_fmadd_pd(ob1, gv, _mm256_mul_pd(b1, mv));
        vv = _mm256_fmadd_pd(ob2, _mm256_mul_pd(gv, gv), _mm256_mul_pd(b2, vv));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_mul_pd(mv, inv_bc1);
        const __m256d vhat = _mm256_mul_pd(vv, inv_bc2);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), epsv);
        __m256d pv = _mm256_loadu_pd(p + i);
        pv = _mm256_sub_pd(pv, _mm256_div_pd(_mm256_mul_pd(lrv, mhat), denom));
        _mm256_storeu_pd(p + i, pv);
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

}  // namespace

template <>
const Table<float>& avx2_table<float>() {
    static const Table<float> t = {&gemm_nn_avx2_f32, &gemm_nt_avx2_f32,
                                   &gemm_tn_avx2_f32, &axpy_avx2_f32,
                                   &dot_avx2_f32,     &adam_step_avx2_f32};
    return t;
}

template <>
const Table<double>& avx2_table<double>() {
    static const Table<double> t = {&gemm_nn_avx2_f64, &gemm_nt_avx2_f64,
                                    &gemm_tn_avx2_f64, &axpy_avx2_f64,
                                    &dot_avx2_f64,     &adam_step_avx2_f64};
    return t;
}

}  // namespace lpt::kernels::detail

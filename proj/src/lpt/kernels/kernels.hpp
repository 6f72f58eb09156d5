#pragma once

#include <cstdint>

namespace lpt::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);

// Resolved once per process. LPT_KERNELS=scalar|avx2 overrides CPU detection;
// an unavailable request falls back to scalar.
Isa active_isa();

// Dense row-major kernels. The gemm variants compute C = A*B (plus C when
// accumulate is set) with the transpose baked into the name:
//   gemm_nn: A is m*k, B is k*n
//   gemm_nt: A is m*k, B is n*k   (C[i][j] = dot of row i of A and row j of B)
//   gemm_tn: A is k*m, B is k*n   (C[i][j] = dot of col i of A and col j of B)
// Leading dimensions are the natural packed row lengths.
template <typename T>
struct Table {
    void (*gemm_nn)(int m, int n, int k, const T* a, const T* b, T* c, bool accumulate);
    void (*gemm_nt)(int m, int n, int k, const T* a, const T* b, T* c, bool accumulate);
    void (*gemm_tn)(int m, int n, int k, const T* a, const T* b, T* c, bool accumulate);
    // y += alpha * x
    void (*axpy)(int64_t n, T alpha, const T* x, T* y);
    T (*dot)(int64_t n, const T* x, const T* y);
    // bias-corrected Adam update over a parameter block; t is the step
    // counter after increment (t >= 1)
    void (*adam_step)(int64_t n, T* p, const T* g, T* m, T* v, T lr, T beta1, T beta2,
                      T eps, int64_t t);
};

template <typename T>
const Table<T>& table(Isa isa);

template <typename T>
inline const Table<T>& table() {
    return table<T>(active_isa());
}

}  // namespace lpt::kernels

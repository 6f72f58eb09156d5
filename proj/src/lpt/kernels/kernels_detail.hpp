#pragma once

#include "lpt/kernels/kernels.hpp"

namespace lpt::kernels::detail {

template <typename T>
const Table<T>& scalar_table();

#ifdef LPT_HAVE_AVX2_KERNELS
template <typename T>
const Table<T>& avx2_table();
#endif

}  // namespace lpt::kernels::detail

#pragma once

// Inner loops over chain-index vectors (Boolean and chain(K) lattices).
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled in on x86-64 and picked at runtime when the CPU supports it. The
// two must agree exactly, which tests/kernels_test.cpp checks on random data.
// Setting FUZZYDET_KERNELS=scalar in the environment forces the reference
// path.

#include <cstddef>
#include <span>

#include "fuzzydet/lattice.hpp"

namespace fuzzydet::kernels {

using IndexSpan = std::span<const ChainIndex>;
using MutIndexSpan = std::span<ChainIndex>;

struct ChainKernels {
  const char* name;

  /// max_i (f_i ⊗ g_i) with a ⊗ b = max(a + b - K, 0).
  ChainIndex (*sup_tmul)(ChainIndex top, IndexSpan f, IndexSpan g);

  /// min_i (f_i → g_i) with a → b = min(K - a + b, K).
  ChainIndex (*inf_resid)(ChainIndex top, IndexSpan f, IndexSpan g);

  /// acc_j = max(acc_j, s ⊗ row_j). One row of a vector-matrix product.
  void (*accumulate_sup_tmul)(ChainIndex top, ChainIndex s, IndexSpan row,
                              MutIndexSpan acc);

  /// acc_j = min(acc_j, mu_j → s). One term of an inclusion-degree meet.
  void (*accumulate_inf_resid)(ChainIndex top, IndexSpan mu, ChainIndex s,
                               MutIndexSpan acc);

  /// f_i <= g_i for all i.
  bool (*all_leq)(IndexSpan f, IndexSpan g);
};

const ChainKernels& scalar_kernels();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2.
const ChainKernels* avx2_kernels();

/// The kernels used by the library: AVX2 when available, else scalar.
const ChainKernels& active();

}  // namespace fuzzydet::kernels

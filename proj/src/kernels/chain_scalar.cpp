#include <algorithm>

#include "fuzzydet/kernels.hpp"

namespace fuzzydet::kernels {
namespace {

ChainIndex sup_tmul(ChainIndex top, IndexSpan f, IndexSpan g) {
  ChainIndex best = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    best = std::max(best, f[i] + g[i] - top);
  return best;
}

ChainIndex inf_resid(ChainIndex top, IndexSpan f, IndexSpan g) {
  ChainIndex worst = top;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::min(worst, top - f[i] + g[i]);
  return worst;
}

void accumulate_sup_tmul(ChainIndex top, ChainIndex s, IndexSpan row,
                         MutIndexSpan acc) {
  const ChainIndex shift = s - top;
  for (std::size_t j = 0; j < row.size(); ++j)
    acc[j] = std::max(acc[j], row[j] + shift);
}

void accumulate_inf_resid(ChainIndex top, IndexSpan mu, ChainIndex s,
                          MutIndexSpan acc) {
  const ChainIndex shift = top + s;
  for (std::size_t j = 0; j < mu.size(); ++j)
    acc[j] = std::min(acc[j], shift - mu[j]);
}

bool all_leq(IndexSpan f, IndexSpan g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > g[i]) return false;
  return true;
}

}  // namespace

// Accumulators start at 0 (join) or top (meet), so clamping the individual
// terms to [0, top] is implied by the running max/min.
const ChainKernels& scalar_kernels() {
  static const ChainKernels k{"scalar", sup_tmul, inf_resid,
                              accumulate_sup_tmul, accumulate_inf_resid,
                              all_leq};
  return k;
}

}  // namespace fuzzydet::kernels

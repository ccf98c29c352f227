#include <immintrin.h>

#include <algorithm>

#include "fuzzydet/kernels.hpp"

namespace fuzzydet::kernels {
namespace {

constexpr std::size_t kLanes = 8;

inline __m256i load(const ChainIndex* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline ChainIndex hmax(__m256i v) {
  __m128i m = _mm_max_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  m = _mm_max_epi32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(1, 0, 3, 2)));
  m = _mm_max_epi32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(2, 3, 0, 1)));
  return _mm_cvtsi128_si32(m);
}

inline ChainIndex hmin(__m256i v) {
  __m128i m = _mm_min_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  m = _mm_min_epi32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(1, 0, 3, 2)));
  m = _mm_min_epi32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(2, 3, 0, 1)));
  return _mm_cvtsi128_si32(m);
}

ChainIndex sup_tmul(ChainIndex top, IndexSpan f, IndexSpan g) {
  const std::size_t n = f.size();
  const __m256i vtop = _mm256_set1_epi32(top);
  __m256i best = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i s = _mm256_sub_epi32(_mm256_add_epi32(load(&f[i]), load(&g[i])), vtop);
    best = _mm256_max_epi32(best, s);
  }
  ChainIndex r = hmax(best);
  for (; i < n; ++i) r = std::max(r, f[i] + g[i] - top);
  return r;
}

ChainIndex inf_resid(ChainIndex top, IndexSpan f, IndexSpan g) {
  const std::size_t n = f.size();
  const __m256i vtop = _mm256_set1_epi32(top);
  __m256i worst = vtop;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i r = _mm256_add_epi32(_mm256_sub_epi32(vtop, load(&f[i])), load(&g[i]));
    worst = _mm256_min_epi32(worst, r);
  }
  ChainIndex r = hmin(worst);
  for (; i < n; ++i) r = std::min(r, top - f[i] + g[i]);
  return r;
}

void accumulate_sup_tmul(ChainIndex top, ChainIndex s, IndexSpan row,
                         MutIndexSpan acc) {
  const std::size_t n = row.size();
  const ChainIndex shift = s - top;
  const __m256i vshift = _mm256_set1_epi32(shift);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    __m256i a = load(&acc[j]);
    a = _mm256_max_epi32(a, _mm256_add_epi32(load(&row[j]), vshift));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(&acc[j]), a);
  }
  for (; j < n; ++j) acc[j] = std::max(acc[j], row[j] + shift);
}

void accumulate_inf_resid(ChainIndex top, IndexSpan mu, ChainIndex s,
                          MutIndexSpan acc) {
  const std::size_t n = mu.size();
  const ChainIndex shift = top + s;
  const __m256i vshift = _mm256_set1_epi32(shift);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    __m256i a = load(&acc[j]);
    a = _mm256_min_epi32(a, _mm256_sub_epi32(vshift, load(&mu[j])));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(&acc[j]), a);
  }
  for (; j < n; ++j) acc[j] = std::min(acc[j], shift - mu[j]);
}

bool all_leq(IndexSpan f, IndexSpan g) {
  const std::size_t n = f.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i gt = _mm256_cmpgt_epi32(load(&f[i]), load(&g[i]));
    if (!_mm256_testz_si256(gt, gt)) return false;
  }
  for (; i < n; ++i)
    if (f[i] > g[i]) return false;
  return true;
}

}  // namespace

const ChainKernels& avx2_kernels_impl() {
  static const ChainKernels k{"avx2", sup_tmul, inf_resid,
                              accumulate_sup_tmul, accumulate_inf_resid,
                              all_leq};
  return k;
}

}  // namespace fuzzydet::kernels

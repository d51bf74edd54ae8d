#include "socnav/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace socnav::kernels {

namespace {
// Below this many multiply-adds the fork/join overhead dominates.
constexpr int64_t kParallelGrain = 1 << 15;
}  // namespace

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

SegmentCsr SegmentCsr::build(const std::vector<int>& destination, int num_segments) {
  SegmentCsr csr;
  csr.offsets.assign(static_cast<size_t>(num_segments) + 1, 0);
  for (int dst : destination) csr.offsets[static_cast<size_t>(dst) + 1]++;
  for (int i = 0; i < num_segments; ++i) csr.offsets[i + 1] += csr.offsets[i];
  csr.edges.resize(destination.size());
  std::vector<int> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (int k = 0; k < static_cast<int>(destination.size()); ++k)
    csr.edges[cursor[destination[k]]++] = k;  // ascending edge ids per segment
  return csr;
}

// ---------------------------------------------------------------------------
// matmul: c[m x n] = a[m x k] * b[k x n]

void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  std::memset(c, 0, sizeof(double) * static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * k;
    double* crow = c + static_cast<int64_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      const double* brow = b + static_cast<int64_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * k;
    double* crow = c + static_cast<int64_t>(i) * n;
    for (int j = 0; j < n; ++j) crow[j] = 0.0;
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      const double* brow = b + static_cast<int64_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul(const double* a, const double* b, double* c, int m, int k, int n) {
#ifdef _OPENMP
  if (static_cast<int64_t>(m) * k * n >= kParallelGrain && m > 1) {
    matmul_omp(a, b, c, m, k, n);
    return;
  }
#endif
  matmul_serial(a, b, c, m, k, n);
}

// ---------------------------------------------------------------------------
// matmul_nt: c[m x n] = a[m x k] * b[n x k]^T

void matmul_nt_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * k;
    double* crow = c + static_cast<int64_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = b + static_cast<int64_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] = acc;
    }
  }
}

void matmul_nt_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * k;
    double* crow = c + static_cast<int64_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = b + static_cast<int64_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] = acc;
    }
  }
}

void matmul_nt(const double* a, const double* b, double* c, int m, int k, int n) {
#ifdef _OPENMP
  if (static_cast<int64_t>(m) * k * n >= kParallelGrain && m > 1) {
    matmul_nt_omp(a, b, c, m, k, n);
    return;
  }
#endif
  matmul_nt_serial(a, b, c, m, k, n);
}

// ---------------------------------------------------------------------------
// matmul_tn: c[m x n] = a[k x m]^T * b[k x n]
// Each c element accumulates over rows p = 0..k-1 in ascending order in both
// variants.

void matmul_tn_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  std::memset(c, 0, sizeof(double) * static_cast<size_t>(m) * n);
  for (int p = 0; p < k; ++p) {
    const double* arow = a + static_cast<int64_t>(p) * m;
    const double* brow = b + static_cast<int64_t>(p) * n;
    for (int i = 0; i < m; ++i) {
      const double av = arow[i];
      double* crow = c + static_cast<int64_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul_tn_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* crow = c + static_cast<int64_t>(i) * n;
    for (int j = 0; j < n; ++j) crow[j] = 0.0;
    for (int p = 0; p < k; ++p) {
      const double av = a[static_cast<int64_t>(p) * m + i];
      const double* brow = b + static_cast<int64_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul_tn(const double* a, const double* b, double* c, int m, int k, int n) {
#ifdef _OPENMP
  if (static_cast<int64_t>(m) * k * n >= kParallelGrain && m > 1) {
    matmul_tn_omp(a, b, c, m, k, n);
    return;
  }
#endif
  matmul_tn_serial(a, b, c, m, k, n);
}

// ---------------------------------------------------------------------------
// segment_sum

void segment_sum_serial(const double* values, int /*num_edges*/, int d,
                        const SegmentCsr& csr, double* out) {
  const int num_segments = static_cast<int>(csr.offsets.size()) - 1;
  for (int i = 0; i < num_segments; ++i) {
    double* orow = out + static_cast<int64_t>(i) * d;
    for (int j = 0; j < d; ++j) orow[j] = 0.0;
    for (int e = csr.offsets[i]; e < csr.offsets[i + 1]; ++e) {
      const double* vrow = values + static_cast<int64_t>(csr.edges[e]) * d;
      for (int j = 0; j < d; ++j) orow[j] += vrow[j];
    }
  }
}

void segment_sum_omp(const double* values, int /*num_edges*/, int d,
                     const SegmentCsr& csr, double* out) {
  const int num_segments = static_cast<int>(csr.offsets.size()) - 1;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < num_segments; ++i) {
    double* orow = out + static_cast<int64_t>(i) * d;
    for (int j = 0; j < d; ++j) orow[j] = 0.0;
    for (int e = csr.offsets[i]; e < csr.offsets[i + 1]; ++e) {
      const double* vrow = values + static_cast<int64_t>(csr.edges[e]) * d;
      for (int j = 0; j < d; ++j) orow[j] += vrow[j];
    }
  }
}

void segment_sum(const double* values, int num_edges, int d,
                 const SegmentCsr& csr, double* out) {
#ifdef _OPENMP
  if (static_cast<int64_t>(num_edges) * d >= kParallelGrain) {
    segment_sum_omp(values, num_edges, d, csr, out);
    return;
  }
#endif
  segment_sum_serial(values, num_edges, d, csr, out);
}

// ---------------------------------------------------------------------------
// segment_softmax

namespace {
inline void softmax_one_segment(const double* scores, int d, const int* edges,
                                int count, double* out) {
  for (int j = 0; j < d; ++j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (int e = 0; e < count; ++e)
      mx = std::max(mx, scores[static_cast<int64_t>(edges[e]) * d + j]);
    double z = 0.0;
    for (int e = 0; e < count; ++e) {
      const double v = std::exp(scores[static_cast<int64_t>(edges[e]) * d + j] - mx);
      out[static_cast<int64_t>(edges[e]) * d + j] = v;
      z += v;
    }
    for (int e = 0; e < count; ++e)
      out[static_cast<int64_t>(edges[e]) * d + j] /= z;
  }
}
}  // namespace

void segment_softmax_serial(const double* scores, int /*num_edges*/, int d,
                            const SegmentCsr& csr, double* out) {
  const int num_segments = static_cast<int>(csr.offsets.size()) - 1;
  for (int i = 0; i < num_segments; ++i) {
    const int lo = csr.offsets[i];
    softmax_one_segment(scores, d, csr.edges.data() + lo, csr.offsets[i + 1] - lo, out);
  }
}

void segment_softmax_omp(const double* scores, int /*num_edges*/, int d,
                         const SegmentCsr& csr, double* out) {
  const int num_segments = static_cast<int>(csr.offsets.size()) - 1;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < num_segments; ++i) {
    const int lo = csr.offsets[i];
    softmax_one_segment(scores, d, csr.edges.data() + lo, csr.offsets[i + 1] - lo, out);
  }
}

void segment_softmax(const double* scores, int num_edges, int d,
                     const SegmentCsr& csr, double* out) {
#ifdef _OPENMP
  if (static_cast<int64_t>(num_edges) * d >= kParallelGrain) {
    segment_softmax_omp(scores, num_edges, d, csr, out);
    return;
  }
#endif
  segment_softmax_serial(scores, num_edges, d, csr, out);
}

// ---------------------------------------------------------------------------
// gather_rows

void gather_rows_serial(const double* src, int d, const std::vector<int>& idx, double* out) {
  for (size_t r = 0; r < idx.size(); ++r)
    std::memcpy(out + r * d, src + static_cast<int64_t>(idx[r]) * d, sizeof(double) * d);
}

void gather_rows_omp(const double* src, int d, const std::vector<int>& idx, double* out) {
  const int n = static_cast<int>(idx.size());
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n; ++r)
    std::memcpy(out + static_cast<int64_t>(r) * d,
                src + static_cast<int64_t>(idx[r]) * d, sizeof(double) * d);
}

void gather_rows(const double* src, int d, const std::vector<int>& idx, double* out) {
#ifdef _OPENMP
  if (static_cast<int64_t>(idx.size()) * d >= kParallelGrain) {
    gather_rows_omp(src, d, idx, out);
    return;
  }
#endif
  gather_rows_serial(src, d, idx, out);
}

}  // namespace socnav::kernels

#pragma once

#include <cstdint>
#include <vector>

namespace socnav::kernels {

// Dense numeric inner loops. Every kernel has a serial reference variant and
// an OpenMP variant parallelised over output rows/segments. Both variants
// accumulate each output element in the same fixed order, so their results
// are bitwise identical and independent of the thread count. The unsuffixed
// entry points dispatch on problem size.
//
// All matrices are row-major double.

// In-edge adjacency in CSR form: for node i, edges offsets[i]..offsets[i+1]
// (ascending edge ids) point at it.
struct SegmentCsr {
  std::vector<int> offsets;  // size num_segments + 1
  std::vector<int> edges;    // size num_edges

  static SegmentCsr build(const std::vector<int>& destination, int num_segments);
};

// c[m x n] = a[m x k] * b[k x n]
void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_omp(const double* a, const double* b, double* c, int m, int k, int n);
void matmul(const double* a, const double* b, double* c, int m, int k, int n);

// c[m x n] = a[m x k] * b[n x k]^T
void matmul_nt_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_nt_omp(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_nt(const double* a, const double* b, double* c, int m, int k, int n);

// c[m x n] = a[k x m]^T * b[k x n]
void matmul_tn_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_tn_omp(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_tn(const double* a, const double* b, double* c, int m, int k, int n);

// out[num_segments x d]: row i = sum of value rows whose destination is i,
// contributions added in ascending edge order.
void segment_sum_serial(const double* values, int num_edges, int d,
                        const SegmentCsr& csr, double* out);
void segment_sum_omp(const double* values, int num_edges, int d,
                     const SegmentCsr& csr, double* out);
void segment_sum(const double* values, int num_edges, int d,
                 const SegmentCsr& csr, double* out);

// Per destination segment and per column: softmax with max subtraction.
// scores and out are [num_edges x d].
void segment_softmax_serial(const double* scores, int num_edges, int d,
                            const SegmentCsr& csr, double* out);
void segment_softmax_omp(const double* scores, int num_edges, int d,
                         const SegmentCsr& csr, double* out);
void segment_softmax(const double* scores, int num_edges, int d,
                     const SegmentCsr& csr, double* out);

// out[idx.size() x d]: row r = src[idx[r], :]
void gather_rows_serial(const double* src, int d, const std::vector<int>& idx, double* out);
void gather_rows_omp(const double* src, int d, const std::vector<int>& idx, double* out);
void gather_rows(const double* src, int d, const std::vector<int>& idx, double* out);

// Elementwise map, y = f(x); parallel over elements.
template <typename F>
void map_serial(const double* x, double* y, int64_t n, F f) {
  for (int64_t i = 0; i < n; ++i) y[i] = f(x[i]);
}

bool openmp_enabled();
int thread_count();

}  // namespace socnav::kernels

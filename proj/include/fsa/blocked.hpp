#pragma once

#include "fsa/types.hpp"

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fsa {

/// Tiling of an N x M matrix into fixed-size blocks. A size of 0 means one
/// block spans the whole extent. The tiling depends only on the block sizes,
/// never on the worker count, so every reduction below is reproducible at any
/// parallelism level.
struct BlockGrid {
  int row_block = 0;
  int col_block = 0;

  int row_blocks(long n) const;
  int col_blocks(long m) const;
  // [begin, end) extents of block b
  static void extent(long total, int block, int b, long* begin, long* end);
};

/// Minimal in-process pool. parallel_for dispatches indices 0..count-1 to the
/// workers and blocks until all complete; the calling thread participates.
class ThreadPool {
 public:
  explicit ThreadPool(int workers = 1);
  ~ThreadPool();
  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int workers() const { return n_workers_; }
  void parallel_for(int count, const std::function<void(int)>& fn);

 private:
  void worker_loop();
  void drain();

  int n_workers_ = 1;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_work_;
  std::condition_variable cv_done_;
  const std::function<void(int)>* job_ = nullptr;
  int job_count_ = 0;
  int next_ = 0;
  int done_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

/// X*beta. Each row is a fixed-order sum of per-column-block partial dot
/// products; with a single column block this is bitwise identical to the
/// direct ascending-index product. Parallel over row blocks.
Vector blocked_response(const Matrix& X, const Vector& beta, const BlockGrid& grid,
                        ThreadPool* pool = nullptr);

/// X^T * r. Each output column is a fixed-order sum of per-row-block partial
/// sums; a single row block is bitwise identical to the direct product.
/// Parallel over column blocks.
Vector blocked_gradient(const Matrix& X, const Vector& r, const BlockGrid& grid,
                        ThreadPool* pool = nullptr);

}  // namespace fsa

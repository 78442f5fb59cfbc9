#include "fsa/blocked.hpp"

#include <cstdint>

namespace fsa {

int BlockGrid::row_blocks(long n) const {
  if (row_block <= 0) return 1;
  return static_cast<int>((n + row_block - 1) / row_block);
}

int BlockGrid::col_blocks(long m) const {
  if (col_block <= 0) return 1;
  return static_cast<int>((m + col_block - 1) / col_block);
}

void BlockGrid::extent(long total, int block, int b, long* begin, long* end) {
  if (block <= 0) {
    *begin = 0;
    *end = total;
    return;
  }
  *begin = static_cast<long>(b) * block;
  *end = std::min(total, *begin + block);
}

ThreadPool::ThreadPool(int workers) : n_workers_(workers < 1 ? 1 : workers) {
  for (int t = 0; t < n_workers_ - 1; ++t)
    threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lk(mu_);
    stop_ = true;
  }
  cv_work_.notify_all();
  for (std::thread& t : threads_) t.join();
}

void ThreadPool::drain() {
  while (true) {
    const std::function<void(int)>* fn;
    int idx;
    {
      std::lock_guard<std::mutex> lk(mu_);
      if (!job_ || next_ >= job_count_) return;
      fn = job_;
      idx = next_++;
    }
    (*fn)(idx);
    {
      std::lock_guard<std::mutex> lk(mu_);
      if (++done_ == job_count_) cv_done_.notify_all();
    }
  }
}

void ThreadPool::worker_loop() {
  std::uint64_t seen = 0;
  while (true) {
    {
      std::unique_lock<std::mutex> lk(mu_);
      cv_work_.wait(lk, [&] {
        return stop_ || (job_ && generation_ != seen && next_ < job_count_);
      });
      if (stop_) return;
      seen = generation_;
    }
    drain();
  }
}

void ThreadPool::parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (threads_.empty()) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    job_ = &fn;
    job_count_ = count;
    next_ = 0;
    done_ = 0;
    ++generation_;
  }
  cv_work_.notify_all();
  drain();
  {
    std::unique_lock<std::mutex> lk(mu_);
    cv_done_.wait(lk, [&] { return done_ == job_count_; });
    job_ = nullptr;
  }
}

// Scalar kernels on the raw row-major buffer. Eigen's products may fuse or
// reorder reductions depending on vector width; these never do, which is what
// makes the block decomposition reproducible bit for bit.

Vector blocked_response(const Matrix& X, const Vector& beta, const BlockGrid& grid,
                        ThreadPool* pool) {
  if (beta.size() != X.cols()) throw ContractError("beta length does not match columns");
  const long n = X.rows(), m = X.cols();
  Vector out(n);
  const double* xd = X.data();
  const double* bd = beta.data();
  const int n_rb = grid.row_blocks(n);
  const int n_cb = grid.col_blocks(m);

  auto task = [&](int rb) {
    long r0, r1;
    BlockGrid::extent(n, grid.row_block, rb, &r0, &r1);
    for (long i = r0; i < r1; ++i) {
      const double* row = xd + i * m;
      double total = 0.0;
      for (int cb = 0; cb < n_cb; ++cb) {
        long c0, c1;
        BlockGrid::extent(m, grid.col_block, cb, &c0, &c1);
        double partial = 0.0;
        for (long j = c0; j < c1; ++j) partial += row[j] * bd[j];
        if (cb == 0)
          total = partial;  // single col block == plain ascending dot product
        else
          total += partial;
      }
      out[i] = total;
    }
  };
  if (pool)
    pool->parallel_for(n_rb, task);
  else
    for (int rb = 0; rb < n_rb; ++rb) task(rb);
  return out;
}

Vector blocked_gradient(const Matrix& X, const Vector& r, const BlockGrid& grid,
                        ThreadPool* pool) {
  if (r.size() != X.rows()) throw ContractError("residual length does not match rows");
  const long n = X.rows(), m = X.cols();
  Vector out(m);
  const double* xd = X.data();
  const double* rd = r.data();
  const int n_rb = grid.row_blocks(n);
  const int n_cb = grid.col_blocks(m);

  auto task = [&](int cb) {
    long c0, c1;
    BlockGrid::extent(m, grid.col_block, cb, &c0, &c1);
    const long width = c1 - c0;
    std::vector<double> partial(static_cast<std::size_t>(width));
    for (int rb = 0; rb < n_rb; ++rb) {
      long r0, r1;
      BlockGrid::extent(n, grid.row_block, rb, &r0, &r1);
      for (long j = 0; j < width; ++j) partial[j] = 0.0;
      for (long i = r0; i < r1; ++i) {
        const double* row = xd + i * m + c0;
        const double ri = rd[i];
        for (long j = 0; j < width; ++j) partial[j] += row[j] * ri;
      }
      if (rb == 0)  // single row block == plain ascending per-column sum
        for (long j = 0; j < width; ++j) out[c0 + j] = partial[j];
      else
        for (long j = 0; j < width; ++j) out[c0 + j] += partial[j];
    }
  };
  if (pool)
    pool->parallel_for(n_cb, task);
  else
    for (int cb = 0; cb < n_cb; ++cb) task(cb);
  return out;
}

}  // namespace fsa

#include "fsa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

namespace fsa {
namespace {

// max per-term curvature of the data-fit losses
double curvature_c(const LossSpec& spec) {
  switch (spec.kind) {
    case LossKind::squared_error: return 1.0;
    case LossKind::logistic: return 0.25;
    case LossKind::rank_logistic: return 0.25;
    case LossKind::svm_huber: return 1.0 / (2.0 * spec.huber_h);
    case LossKind::lorenz: return 2.0;
  }
  return 1.0;
}

// upper bound on the prior's Hessian norm per group
double prior_curvature(const PriorSpec& p) {
  return 2.0 * p.ridge + 32.0 * p.smooth2 + 4.0 * p.tv_q / p.tv_huber_h;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double spectral_norm(const Matrix& X, double tol, SpectralInfo* info) {
  const long n = X.rows(), m = X.cols();
  if (n == 0 || m == 0) {
    if (info) *info = {0.0, 0.0, 0, true};
    return 0.0;
  }
  // iterate in the smaller dimension
  const bool tall = n >= m;
  const long dim = tall ? m : n;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (long i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();

  const int cap = 1000;
  double lambda = 0.0, residual = 0.0;
  int it = 0;
  bool converged = false;
  for (it = 1; it <= cap; ++it) {
    Vector w = tall ? Vector(X.transpose() * (X * v)) : Vector(X * (X.transpose() * v));
    double nw = w.norm();
    if (nw == 0.0) {
      lambda = 0.0;
      residual = 0.0;
      converged = true;
      break;
    }
    double next = v.dot(w);  // Rayleigh quotient for X^T X (v is unit)
    residual = std::abs(next - lambda) / std::max(next, 1e-300);
    lambda = next;
    v = w / nw;
    if (it > 1 && residual <= tol) {
      converged = true;
      break;
    }
  }
  if (info) *info = {std::sqrt(std::max(lambda, 0.0)), residual, std::min(it, cap), converged};
  return std::sqrt(std::max(lambda, 0.0));
}

std::vector<int> select_top_k(const Vector& values, int k,
                              std::optional<std::uint64_t> tie_seed) {
  const int n = static_cast<int>(values.size());
  if (!values.allFinite()) throw ContractError("selection values must be finite");
  if (k >= n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  if (k <= 0) return {};

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });

  std::vector<int> keep;
  keep.reserve(k);
  const double boundary = values[order[k - 1]];
  if (!tie_seed || values[order[k]] != boundary) {
    keep.assign(order.begin(), order.begin() + k);  // stable sort: lowest index wins ties
  } else {
    std::vector<int> tied;
    for (int i : order) {
      if (values[i] > boundary)
        keep.push_back(i);
      else if (values[i] == boundary)
        tied.push_back(i);
    }
    std::mt19937_64 rng(*tie_seed);
    std::shuffle(tied.begin(), tied.end(), rng);
    keep.insert(keep.end(), tied.begin(), tied.begin() + (k - keep.size()));
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

Vector quantile_threshold(const Vector& v, int k, double lambda,
                          std::optional<std::uint64_t> tie_seed) {
  if (lambda < 0) throw ContractError("lambda must be nonnegative");
  std::vector<int> keep = select_top_k(v.cwiseAbs(), k, tie_seed);
  Vector out = Vector::Zero(v.size());
  for (int i : keep) out[i] = v[i] / (1.0 + lambda);
  return out;
}

double stable_step_bound(double spectral_norm_sq, long n_terms, const LossSpec& spec) {
  if (n_terms < 1) throw ContractError("n_terms must be positive");
  if (spectral_norm_sq <= 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(n_terms) / (curvature_c(spec) * spectral_norm_sq);
}

std::pair<ActiveModel, FitTrace> fit_on(const Matrix& X0, const std::vector<int>& group_vars,
                                        int group_size, bool fit_intercept, const Dataset& data,
                                        const LossSpec& spec, const Hyperparams& hp,
                                        const Schedule& sched, const ExecConfig& exec) {
  data.validate();
  spec.validate(data.task);
  if (group_size < 1 || X0.cols() % group_size != 0)
    throw ContractError("design columns must be a multiple of group_size");
  const int n_groups = static_cast<int>(X0.cols() / group_size);
  if (static_cast<int>(group_vars.size()) != n_groups)
    throw ContractError("group_vars must name one variable per group");
  if (X0.rows() != data.n()) throw ContractError("design row count does not match dataset");
  if (!X0.allFinite()) throw ContractError("design contains non-finite values");
  hp.validate(n_groups);
  if (sched.M != n_groups || sched.k != hp.k || sched.n_iter != hp.n_iter)
    throw ContractError("schedule (M, k, n_iter) disagrees with the design and hyperparameters");
  if (exec.standardize && group_size != 1)
    throw ContractError("standardize applies to plain columns, not grouped designs");

  Matrix X = X0;
  Vector col_mu, col_sigma;
  if (exec.standardize) {
    const double n = static_cast<double>(X.rows());
    col_mu = X.colwise().mean();
    col_sigma.resize(X.cols());
    for (long j = 0; j < X.cols(); ++j) {
      double s2 = (X.col(j).array() - col_mu[j]).square().sum() / n;
      col_sigma[j] = s2 > 0 ? std::sqrt(s2) : 1.0;
      X.col(j) = (X.col(j).array() - col_mu[j]) / col_sigma[j];
    }
  }

  const long n_terms =
      data.task == Task::ranking ? static_cast<long>(data.pairs.size()) : data.n();

  FitTrace trace;
  trace.eta_requested = hp.eta;
  trace.eta_used = hp.eta;
  if (exec.validate_step && spec.kind == LossKind::squared_error) {
    double s = spectral_norm(X);
    // the prior's curvature adds to the data term's, so it tightens the bound
    double curv = curvature_c(spec) * s * s + prior_curvature(spec.prior);
    trace.eta_bound = curv > 0 ? static_cast<double>(n_terms) / curv
                               : std::numeric_limits<double>::infinity();
    if (hp.eta > trace.eta_bound) {
      trace.eta_used = 0.99 * trace.eta_bound;
      trace.step_fallback = true;
    }
  }
  const double step = trace.eta_used / static_cast<double>(n_terms);

  std::unique_ptr<ThreadPool> pool;
  if (exec.workers > 1) pool = std::make_unique<ThreadPool>(exec.workers);

  Vector beta = Vector::Zero(X.cols());
  double intercept = 0.0;
  std::vector<int> vars = group_vars;
  Vector dual(data.n());
  double initial = 0.0;
  long long touches = 0;
  trace.iters.reserve(sched.n_iter);

  for (int e = 1; e <= sched.n_iter; ++e) {
    Vector f = blocked_response(X, beta, exec.grid, pool.get());
    f.array() += intercept;
    double value = data_fit_terms(data, f, spec, &dual) +
                   prior_total(beta, group_size, spec.prior, nullptr);
    if (e == 1) initial = value;
    if (!std::isfinite(value) ||
        (initial > 0 && value > exec.divergence_factor * initial)) {
      double s = spectral_norm(X);
      double curv = curvature_c(spec) * s * s + prior_curvature(spec.prior);
      double b = curv > 0 ? static_cast<double>(n_terms) / curv
                          : std::numeric_limits<double>::infinity();
      throw DivergenceError("loss grew from " + fmt(initial) + " to " + fmt(value) +
                            " by iteration " + std::to_string(e) + "; eta=" + fmt(trace.eta_used) +
                            " is past the stable-descent bound (about " + fmt(b) +
                            " for the current active design). Reduce eta.");
    }

    Vector g = blocked_gradient(X, dual, exec.grid, pool.get());
    if (spec.prior.any()) {
      Vector pg = Vector::Zero(g.size());
      prior_total(beta, group_size, spec.prior, &pg);
      g += pg;
    }
    beta -= step * g;
    if (fit_intercept) intercept -= step * dual.sum();

    const int target = sched.seq[e - 1];
    const int cur = static_cast<int>(beta.size() / group_size);
    if (target < cur) {
      Vector norms(cur);
      if (group_size == 1)
        norms = beta.cwiseAbs();
      else
        for (int gidx = 0; gidx < cur; ++gidx)
          norms[gidx] = beta.segment(static_cast<long>(gidx) * group_size, group_size).norm();
      std::vector<int> keep = select_top_k(norms, target, exec.tie_seed);

      Vector nb(static_cast<long>(target) * group_size);
      Matrix nX(X.rows(), static_cast<long>(target) * group_size);
      std::vector<int> nv(target);
      for (int t = 0; t < target; ++t) {
        const long src = static_cast<long>(keep[t]) * group_size;
        const long dst = static_cast<long>(t) * group_size;
        nb.segment(dst, group_size) = beta.segment(src, group_size);
        nX.middleCols(dst, group_size) = X.middleCols(src, group_size);
        nv[t] = vars[keep[t]];
      }
      beta.swap(nb);
      X.swap(nX);
      vars.swap(nv);
    }

    touches += target;
    trace.iters.push_back({e, target, value, touches});
  }
  trace.total_touches = touches;
  trace.selected = vars;

  ActiveModel model;
  model.group_size = group_size;
  model.active_index = vars;
  model.coeffs = beta;
  model.intercept = intercept;
  if (exec.standardize) {
    double offset = 0.0;
    for (std::size_t t = 0; t < vars.size(); ++t) {
      offset -= model.coeffs[t] * col_mu[vars[t]] / col_sigma[vars[t]];
      model.coeffs[t] /= col_sigma[vars[t]];
    }
    model.intercept += offset;
  }
  model.validate();
  return {std::move(model), std::move(trace)};
}

std::pair<ActiveModel, FitTrace> fit(const Dataset& data, const LossSpec& spec,
                                     const Hyperparams& hp, const Schedule& sched,
                                     const ExecConfig& exec) {
  std::vector<int> vars(data.m());
  std::iota(vars.begin(), vars.end(), 0);
  return fit_on(data.X, vars, 1, data.task == Task::classification, data, spec, hp, sched,
                exec);
}

ActiveModel refit(const Dataset& data, const ActiveModel& model, const LossSpec& spec,
                  const Hyperparams& hp, const ExecConfig&) {
  data.validate();
  spec.validate(data.task);
  model.validate();
  if (model.group_size != 1)
    throw ContractError("refit expects plain columns; polish grouped fits on their expansion");

  Matrix Xa = gather_columns(data.X, model.active_index);
  const long n_terms =
      data.task == Task::ranking ? static_cast<long>(data.pairs.size()) : data.n();
  const double s = spectral_norm(Xa);
  const double lip = curvature_c(spec) * s * s + prior_curvature(spec.prior);
  double eta = hp.eta;
  if (lip > 0) eta = std::min(eta, 0.99 * static_cast<double>(n_terms) / lip);
  const double step = eta / static_cast<double>(n_terms);
  const bool fit_int = data.task == Task::classification;

  ActiveModel out = model;
  const long p = out.coeffs.size();
  for (int it = 0; it < hp.n_iter; ++it) {
    Vector g = loss_gradient_on(Xa, out, data, spec);
    const double gnorm = fit_int ? g.norm() : g.head(p).norm();
    if (gnorm <= 1e-8) break;
    out.coeffs -= step * g.head(p);
    if (fit_int) out.intercept -= step * g[p];
  }
  return out;
}

}  // namespace fsa

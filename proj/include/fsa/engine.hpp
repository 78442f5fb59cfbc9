#pragma once

#include "fsa/blocked.hpp"
#include "fsa/losses.hpp"
#include "fsa/schedule.hpp"

#include <optional>
#include <utility>

namespace fsa {

struct IterRecord {
  int e = 0;          // 1-based iteration
  int m_e = 0;        // groups kept at the end of this iteration
  double loss = 0.0;  // loss at the start of the iteration (pre-step)
  long long touches = 0;  // cumulative coefficient touches
};

struct FitTrace {
  std::vector<IterRecord> iters;
  std::vector<int> selected;  // final original columns (variables for grouped fits)
  long long total_touches = 0;

  // step-size bookkeeping: when validation replaces the requested step the
  // fallback is recorded here so callers can report which eta actually ran
  double eta_requested = 0.0;
  double eta_used = 0.0;
  double eta_bound = 0.0;  // stable-descent bound in caller units (0 = not computed)
  bool step_fallback = false;
};

struct ExecConfig {
  int workers = 1;
  BlockGrid grid;             // default: single block
  bool validate_step = true;  // cap squared-error steps at the stable bound
  bool standardize = false;   // fit on per-column standardized features, report
                              // coefficients in the original scale
  double divergence_factor = 1e3;
  std::optional<std::uint64_t> tie_seed;  // seeded tie-breaking in selection
};

struct SpectralInfo {
  double value = 0.0;
  double residual = 0.0;  // relative change at the last iteration
  int iters = 0;
  bool converged = false;
};

/// Largest singular value via power iteration on X^T X. On hitting the
/// iteration cap the best approximation is returned and info (if given)
/// carries the residual.
double spectral_norm(const Matrix& X, double tol = 1e-10, SpectralInfo* info = nullptr);

/// Keep the k largest-magnitude entries scaled by 1/(1+lambda), zero the
/// rest. Boundary ties go to the lowest index unless tie_seed is given, in
/// which case the tied candidates are chosen by a seeded draw.
Vector quantile_threshold(const Vector& v, int k, double lambda,
                          std::optional<std::uint64_t> tie_seed = {});

/// Indices of the k largest entries of `values` (assumed nonnegative),
/// returned ascending. Tie policy as in quantile_threshold.
std::vector<int> select_top_k(const Vector& values, int k,
                              std::optional<std::uint64_t> tie_seed = {});

/// Largest step (in fit()'s per-term-normalized eta units) for which one
/// full-gradient step cannot increase the loss: n_terms / (c * ||X||_2^2)
/// where c bounds the per-term curvature (1 for squared error, 1/4 for
/// logistic and pairwise logistic, 1/(2h) for svm_huber, 2 for lorenz).
double stable_step_bound(double spectral_norm_sq, long n_terms, const LossSpec& spec);

/// Train by annealed elimination: start from beta = 0 over all feature
/// groups, and each iteration take one gradient step, then keep only the
/// schedule's M_e groups with the largest coefficient magnitudes (Euclidean
/// group norms when group_size > 1) and physically shrink the working
/// matrix to the survivors. The step applied is eta divided by the number
/// of loss terms (rows, or pairs for ranking), so eta transfers across
/// dataset sizes. Classification fits an intercept, which is never subject
/// to elimination; regression and ranking do not.
///
/// With validate_step on, squared-error fits whose eta exceeds the stable
/// bound (prior curvature included) fall back to 0.99x the bound (recorded
/// in the trace). If the loss
/// still grows past divergence_factor times its initial value the fit
/// aborts with a DivergenceError naming the bound.
std::pair<ActiveModel, FitTrace> fit(const Dataset& data, const LossSpec& spec,
                                     const Hyperparams& hp, const Schedule& sched,
                                     const ExecConfig& exec = {});

/// Polish a model on its fixed support: plain gradient descent until the
/// gradient norm falls below 1e-8 or hp.n_iter steps elapse. The step is
/// min(hp.eta, 0.99x the stable bound for the active design), so refit never
/// increases the loss. Support is unchanged.
ActiveModel refit(const Dataset& data, const ActiveModel& model, const LossSpec& spec,
                  const Hyperparams& hp, const ExecConfig& exec = {});

/// Engine core over an explicit working design (used by the piecewise-linear
/// expansion path). group_vars names the variable behind each group; the
/// returned model's active_index contains the surviving entries of it.
std::pair<ActiveModel, FitTrace> fit_on(const Matrix& X0, const std::vector<int>& group_vars,
                                        int group_size, bool fit_intercept, const Dataset& data,
                                        const LossSpec& spec, const Hyperparams& hp,
                                        const Schedule& sched, const ExecConfig& exec = {});

}  // namespace fsa

#pragma once

#include "fsa/types.hpp"

#include <utility>

namespace fsa {

enum class LossKind { squared_error, logistic, svm_huber, lorenz, rank_logistic };

const char* to_string(LossKind k);
LossKind loss_from_string(const std::string& s);

/// Differentiable hinge: 0 for x > 1+h, linear 1-x for x < 1-h, quadratic
/// blend (1+h-x)^2/(4h) in between; C^1 at both knots.
double huber_hinge(double x, double h);
double huber_hinge_deriv(double x, double h);

/// Margin loss that saturates logarithmically: 0 for x >= 1, ln(1+(x-1)^2)
/// below. Non-convex; misclassified points far from the margin contribute
/// little extra, which buys label-noise robustness.
double lorenz(double x);
double lorenz_deriv(double x);

struct PriorSpec {
  double ridge = 0.0;        // weight on squared group norm
  double smooth2 = 0.0;      // weight on squared second differences within a group
  double tv_q = 0.0;         // weight on huberized first differences
  double tv_huber_h = 0.01;  // huber width used by tv_q

  bool any() const { return ridge > 0 || smooth2 > 0 || tv_q > 0; }
  void validate() const;  // nonnegative; smooth2 and tv_q are alternatives
};

struct LossSpec {
  LossKind kind = LossKind::squared_error;
  double huber_h = 0.5;  // transition width of svm_huber
  PriorSpec prior;

  void validate(Task task) const;
};

/// Penalty on one coefficient group (length B+1 for piecewise-linear groups,
/// length 1 for plain coefficients): ridge * ||g||^2, plus smooth2 times the
/// squared second differences over interior knots 1..B-2, plus tv_q times
/// huberized consecutive differences. Returns value and gradient.
std::pair<double, Vector> prior_value_and_gradient(const Vector& group, const PriorSpec& spec);

/// Data-fit term given per-row responses f. For pointwise losses fills
/// dual[i] = d(term_i)/d(f_i) including example weights; for rank_logistic
/// the pair terms are scattered into dual. Stable for margins out to +-1e4.
double data_fit_terms(const Dataset& data, const Vector& f, const LossSpec& spec, Vector* dual);

/// Prior summed over the groups of coeffs; gradient accumulated into *grad
/// (same length as coeffs) when non-null.
double prior_total(const Vector& coeffs, int group_size, const PriorSpec& spec, Vector* grad);

/// Loss (data fit + prior) of a linear model over its active columns of data.X.
double loss_value(const ActiveModel& model, const Dataset& data, const LossSpec& spec);

/// Analytic gradient; one trailing slot holds d/d(intercept).
Vector loss_gradient(const ActiveModel& model, const Dataset& data, const LossSpec& spec);

/// Same evaluations against an explicit design matrix (columns already
/// gathered or basis-expanded); Xa must have model.coeffs.size() columns.
double loss_value_on(const Matrix& Xa, const ActiveModel& model, const Dataset& data,
                     const LossSpec& spec);
Vector loss_gradient_on(const Matrix& Xa, const ActiveModel& model, const Dataset& data,
                        const LossSpec& spec);

}  // namespace fsa

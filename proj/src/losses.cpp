#include "fsa/losses.hpp"

#include <cmath>

namespace fsa {
namespace {

// ln(1+e^t) without overflow for |t| up to ~1e4 margins
double softplus(double t) {
  return (t > 0 ? t : 0.0) + std::log1p(std::exp(-std::abs(t)));
}

// 1/(1+e^{-t})
double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

double huber(double t, double h) {
  double a = std::abs(t);
  return a <= h ? t * t / (2.0 * h) : a - h / 2.0;
}

double huber_deriv(double t, double h) {
  if (std::abs(t) <= h) return t / h;
  return t > 0 ? 1.0 : -1.0;
}

}  // namespace

const char* to_string(LossKind k) {
  switch (k) {
    case LossKind::squared_error: return "squared_error";
    case LossKind::logistic: return "logistic";
    case LossKind::svm_huber: return "svm_huber";
    case LossKind::lorenz: return "lorenz";
    case LossKind::rank_logistic: return "rank_logistic";
  }
  return "?";
}

LossKind loss_from_string(const std::string& s) {
  if (s == "squared_error") return LossKind::squared_error;
  if (s == "logistic") return LossKind::logistic;
  if (s == "svm_huber") return LossKind::svm_huber;
  if (s == "lorenz") return LossKind::lorenz;
  if (s == "rank_logistic") return LossKind::rank_logistic;
  throw ContractError("unknown loss '" + s + "'");
}

double huber_hinge(double x, double h) {
  if (x > 1.0 + h) return 0.0;
  if (x < 1.0 - h) return 1.0 - x;
  double t = 1.0 + h - x;
  return t * t / (4.0 * h);
}

double huber_hinge_deriv(double x, double h) {
  if (x > 1.0 + h) return 0.0;
  if (x < 1.0 - h) return -1.0;
  return -(1.0 + h - x) / (2.0 * h);
}

double lorenz(double x) {
  if (x >= 1.0) return 0.0;
  double t = x - 1.0;
  return std::log1p(t * t);
}

double lorenz_deriv(double x) {
  if (x >= 1.0) return 0.0;
  double t = x - 1.0;
  return 2.0 * t / (1.0 + t * t);
}

void PriorSpec::validate() const {
  if (ridge < 0 || smooth2 < 0 || tv_q < 0)
    throw ContractError("prior weights must be nonnegative");
  if (!(tv_huber_h > 0)) throw ContractError("tv_huber_h must be positive");
  if (smooth2 > 0 && tv_q > 0)
    throw ContractError("smooth2 and tv_q are alternative priors; use one");
}

void LossSpec::validate(Task task) const {
  if (!(huber_h > 0)) throw ContractError("huber_h must be positive");
  prior.validate();
  const bool is_rank = kind == LossKind::rank_logistic;
  if (is_rank != (task == Task::ranking))
    throw ContractError("rank_logistic pairs with the ranking task only");
  if (task == Task::regression && kind != LossKind::squared_error)
    throw ContractError("margin losses need +-1 labels; regression uses squared_error");
}

std::pair<double, Vector> prior_value_and_gradient(const Vector& group, const PriorSpec& spec) {
  spec.validate();
  const long L = group.size();
  double val = 0.0;
  Vector grad = Vector::Zero(L);
  if (!spec.any()) return {val, grad};

  if (spec.ridge > 0) {
    val += spec.ridge * group.squaredNorm();
    grad += 2.0 * spec.ridge * group;
  }
  if (spec.smooth2 > 0) {
    for (long p = 1; p + 2 <= L - 1; ++p) {  // interior knots only; empty when L < 4
      double d = group[p - 1] - 2.0 * group[p] + group[p + 1];
      val += spec.smooth2 * d * d;
      grad[p - 1] += 2.0 * spec.smooth2 * d;
      grad[p] -= 4.0 * spec.smooth2 * d;
      grad[p + 1] += 2.0 * spec.smooth2 * d;
    }
  }
  if (spec.tv_q > 0) {
    for (long p = 1; p < L; ++p) {
      double d = group[p] - group[p - 1];
      val += spec.tv_q * huber(d, spec.tv_huber_h);
      double g = spec.tv_q * huber_deriv(d, spec.tv_huber_h);
      grad[p] += g;
      grad[p - 1] -= g;
    }
  }
  return {val, grad};
}

double prior_total(const Vector& coeffs, int group_size, const PriorSpec& spec, Vector* grad) {
  if (group_size < 1 || coeffs.size() % group_size != 0)
    throw ContractError("coeffs length must be a multiple of group_size");
  if (!spec.any()) return 0.0;
  double total = 0.0;
  const long n_groups = coeffs.size() / group_size;
  for (long g = 0; g < n_groups; ++g) {
    Vector block = coeffs.segment(g * group_size, group_size);
    auto [v, gr] = prior_value_and_gradient(block, spec);
    total += v;
    if (grad) grad->segment(g * group_size, group_size) += gr;
  }
  return total;
}

double data_fit_terms(const Dataset& data, const Vector& f, const LossSpec& spec, Vector* dual) {
  const long n = data.n();
  if (f.size() != n) throw ContractError("response length does not match row count");
  if (dual) dual->setZero(n);
  double val = 0.0;

  switch (spec.kind) {
    case LossKind::squared_error:
      for (long i = 0; i < n; ++i) {
        double w = data.weight(i);
        double r = f[i] - data.y[i];
        val += 0.5 * w * r * r;
        if (dual) (*dual)[i] = w * r;
      }
      break;
    case LossKind::logistic:
      for (long i = 0; i < n; ++i) {
        double w = data.weight(i);
        double m = data.y[i] * f[i];
        val += w * softplus(-m);
        if (dual) (*dual)[i] = -w * data.y[i] * sigmoid(-m);
      }
      break;
    case LossKind::svm_huber:
      for (long i = 0; i < n; ++i) {
        double w = data.weight(i);
        double m = data.y[i] * f[i];
        val += w * huber_hinge(m, spec.huber_h);
        if (dual) (*dual)[i] = w * data.y[i] * huber_hinge_deriv(m, spec.huber_h);
      }
      break;
    case LossKind::lorenz:
      for (long i = 0; i < n; ++i) {
        double w = data.weight(i);
        double m = data.y[i] * f[i];
        val += w * lorenz(m);
        if (dual) (*dual)[i] = w * data.y[i] * lorenz_deriv(m);
      }
      break;
    case LossKind::rank_logistic:
      // pair terms; example weights deliberately ignored here
      for (const RankPair& p : data.pairs.pairs) {
        double d = f[p.i] - f[p.j];
        val += softplus(d) - p.r * d;
        if (dual) {
          double c = sigmoid(d) - p.r;
          (*dual)[p.i] += c;
          (*dual)[p.j] -= c;
        }
      }
      break;
  }
  return val;
}

double loss_value_on(const Matrix& Xa, const ActiveModel& model, const Dataset& data,
                     const LossSpec& spec) {
  if (Xa.cols() != model.coeffs.size())
    throw ContractError("design has " + std::to_string(Xa.cols()) + " columns, model has " +
                        std::to_string(model.coeffs.size()) + " coefficients");
  if (Xa.rows() != data.n()) throw ContractError("design row count does not match dataset");
  Vector f = Xa * model.coeffs;
  f.array() += model.intercept;
  return data_fit_terms(data, f, spec, nullptr) +
         prior_total(model.coeffs, model.group_size, spec.prior, nullptr);
}

Vector loss_gradient_on(const Matrix& Xa, const ActiveModel& model, const Dataset& data,
                        const LossSpec& spec) {
  if (Xa.cols() != model.coeffs.size())
    throw ContractError("design has " + std::to_string(Xa.cols()) + " columns, model has " +
                        std::to_string(model.coeffs.size()) + " coefficients");
  if (Xa.rows() != data.n()) throw ContractError("design row count does not match dataset");
  Vector f = Xa * model.coeffs;
  f.array() += model.intercept;
  Vector dual(data.n());
  data_fit_terms(data, f, spec, &dual);

  Vector grad = Vector::Zero(model.coeffs.size() + 1);
  grad.head(model.coeffs.size()) = Xa.transpose() * dual;
  if (spec.prior.any()) {
    Vector pg = Vector::Zero(model.coeffs.size());
    prior_total(model.coeffs, model.group_size, spec.prior, &pg);
    grad.head(model.coeffs.size()) += pg;
  }
  grad[model.coeffs.size()] = dual.sum();
  return grad;
}

double loss_value(const ActiveModel& model, const Dataset& data, const LossSpec& spec) {
  if (model.group_size != 1)
    throw ContractError("grouped models need an expanded design; use loss_value_on");
  Matrix Xa = gather_columns(data.X, model.active_index);
  return loss_value_on(Xa, model, data, spec);
}

Vector loss_gradient(const ActiveModel& model, const Dataset& data, const LossSpec& spec) {
  if (model.group_size != 1)
    throw ContractError("grouped models need an expanded design; use loss_gradient_on");
  Matrix Xa = gather_columns(data.X, model.active_index);
  return loss_gradient_on(Xa, model, data, spec);
}

}  // namespace fsa

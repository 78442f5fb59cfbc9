#include "fsa/plinear.hpp"

#include <cmath>
#include <numeric>

namespace fsa {
namespace {

// complementary weights that sum to exactly 1.0 (1-a alone can be off by an ulp)
struct Hat {
  int j;
  double w0, w1;
};

Hat hat_weights(double x, const BinSpec& spec) {
  auto [j, a] = basis_coords(x, spec);
  double w0 = 1.0 - a;
  return {j, w0, 1.0 - w0};
}

}  // namespace

std::pair<int, double> basis_coords(double x, const BinSpec& spec) {
  if (spec.B < 1) throw ContractError("B must be >= 1");
  if (!(spec.x_max > spec.x_min)) throw ContractError("bin range must have positive width");
  if (x <= spec.x_min) return {0, 0.0};
  if (x >= spec.x_max) return {spec.B - 1, 1.0};
  double t = (x - spec.x_min) / spec.width();
  int j = static_cast<int>(std::floor(t));
  if (j > spec.B - 1) j = spec.B - 1;  // floating point edge at the top knot
  double a = t - j;
  if (a > 1.0) a = 1.0;
  return {j, a};
}

Vector basis_response(double x, const BinSpec& spec) {
  Hat h = hat_weights(x, spec);
  Vector u = Vector::Zero(spec.B + 1);
  u[h.j] = h.w0;
  u[h.j + 1] = h.w1;
  return u;
}

BinSpec fit_bins(const Vector& column, int B) {
  if (B < 1) throw ContractError("B must be >= 1");
  if (column.size() == 0) throw ContractError("cannot fit bins on an empty column");
  BinSpec spec;
  spec.B = B;
  spec.x_min = column.minCoeff();
  spec.x_max = column.maxCoeff();
  if (!(spec.x_max > spec.x_min)) {
    spec.x_min -= 0.5;
    spec.x_max += 0.5;
  }
  return spec;
}

double pl_predict(const PLModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  double f = model.intercept;
  const int L = model.B + 1;
  for (int g = 0; g < model.n_groups(); ++g) {
    int col = model.active_index[g];
    if (col < 0 || col >= x.size())
      throw ContractError("model references column " + std::to_string(col) +
                          " beyond the given row");
    Hat h = hat_weights(x[col], model.bins[g]);
    const long base = static_cast<long>(g) * L;
    f += h.w0 * model.coeffs[base + h.j] + h.w1 * model.coeffs[base + h.j + 1];
  }
  return f;
}

Vector pl_predict_all(const PLModel& model, const Matrix& X) {
  Vector out(X.rows());
  for (long i = 0; i < X.rows(); ++i) out[i] = pl_predict(model, X.row(i));
  return out;
}

Matrix pl_expand(const Matrix& X, const std::vector<int>& vars,
                 const std::vector<BinSpec>& bins) {
  if (vars.size() != bins.size()) throw ContractError("vars and bins must be parallel");
  if (vars.empty()) throw ContractError("nothing to expand");
  const int L = bins[0].B + 1;
  for (const BinSpec& b : bins)
    if (b.B != bins[0].B) throw ContractError("all groups must share one B");
  Matrix out = Matrix::Zero(X.rows(), static_cast<long>(vars.size()) * L);
  for (std::size_t g = 0; g < vars.size(); ++g) {
    if (vars[g] < 0 || vars[g] >= X.cols())
      throw ContractError("variable index " + std::to_string(vars[g]) + " out of range");
    const long base = static_cast<long>(g) * L;
    for (long i = 0; i < X.rows(); ++i) {
      Hat h = hat_weights(X(i, vars[g]), bins[g]);
      out(i, base + h.j) = h.w0;
      out(i, base + h.j + 1) = h.w1;
    }
  }
  return out;
}

std::pair<PLModel, FitTrace> pl_fit(const Dataset& data, const LossSpec& spec,
                                    const Hyperparams& hp, const Schedule& sched, int B,
                                    const ExecConfig& exec) {
  data.validate();
  if (B < 1) throw ContractError("B must be >= 1");

  std::vector<int> vars(data.m());
  std::iota(vars.begin(), vars.end(), 0);
  std::vector<BinSpec> bins;
  bins.reserve(vars.size());
  for (int j = 0; j < data.m(); ++j) bins.push_back(fit_bins(data.X.col(j), B));

  Matrix X0 = pl_expand(data.X, vars, bins);
  auto [flat, trace] =
      fit_on(X0, vars, B + 1, data.task == Task::classification, data, spec, hp, sched, exec);

  PLModel model;
  model.B = B;
  model.task = data.task;
  model.active_index = flat.active_index;
  model.coeffs = flat.coeffs;
  model.intercept = flat.intercept;
  model.bins.reserve(flat.active_index.size());
  for (int v : flat.active_index) model.bins.push_back(bins[v]);
  return {std::move(model), std::move(trace)};
}

double pl_loss_value(const PLModel& model, const Dataset& data, const LossSpec& spec) {
  Matrix Xa = pl_expand(data.X, model.active_index, model.bins);
  ActiveModel flat;
  flat.group_size = model.B + 1;
  flat.active_index = model.active_index;
  flat.coeffs = model.coeffs;
  flat.intercept = model.intercept;
  return loss_value_on(Xa, flat, data, spec);
}

Vector pl_loss_gradient(const PLModel& model, const Dataset& data, const LossSpec& spec) {
  Matrix Xa = pl_expand(data.X, model.active_index, model.bins);
  ActiveModel flat;
  flat.group_size = model.B + 1;
  flat.active_index = model.active_index;
  flat.coeffs = model.coeffs;
  flat.intercept = model.intercept;
  return loss_gradient_on(Xa, flat, data, spec);
}

}  // namespace fsa

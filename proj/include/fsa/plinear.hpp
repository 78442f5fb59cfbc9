#pragma once

#include "fsa/engine.hpp"

namespace fsa {

/// Equal-width binning of one variable: B bins over [x_min, x_max], giving
/// B+1 knots. Out-of-range inputs are clamped to the range.
struct BinSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int B = 1;

  double width() const { return (x_max - x_min) / B; }
};

/// Hat-function coordinates of x: bin index j in [0, B-1] and the fractional
/// position a in [0, 1] within it, so the response puts 1-a on knot j and a
/// on knot j+1. x = x_max lands on the top knot (j = B-1, a = 1).
std::pair<int, double> basis_coords(double x, const BinSpec& spec);

/// Dense length-(B+1) response vector with at most two nonzeros; components
/// are nonnegative and sum to exactly 1 (a partition of unity over knots).
Vector basis_response(double x, const BinSpec& spec);

/// Bin range from observed data; a constant column is widened to +-0.5 so
/// the width stays positive.
BinSpec fit_bins(const Vector& column, int B);

/// Additive piecewise-linear model: per surviving variable a BinSpec and B+1
/// knot coefficients; prediction is the sum of linear interpolations plus an
/// intercept (ranking models keep the intercept at 0).
struct PLModel {
  std::vector<int> active_index;  // original variable ids, ascending
  std::vector<BinSpec> bins;      // parallel to active_index
  Vector coeffs;                  // group-major, (B+1) per variable
  double intercept = 0.0;
  int B = 1;
  Task task = Task::classification;

  int n_groups() const { return static_cast<int>(active_index.size()); }
};

double pl_predict(const PLModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x);
Vector pl_predict_all(const PLModel& model, const Matrix& X);

/// Basis expansion of the given variables: N x (vars * (B+1)), group-major.
Matrix pl_expand(const Matrix& X, const std::vector<int>& vars, const std::vector<BinSpec>& bins);

/// Train an additive piecewise-linear model: expand every variable over bins
/// fit from the training range, then run the annealed-elimination engine
/// with group_size B+1, ranking groups by Euclidean norm. Priors from
/// spec.prior apply per group (ranking fits typically add a small ridge,
/// e.g. 0.01, to keep knot values tame).
std::pair<PLModel, FitTrace> pl_fit(const Dataset& data, const LossSpec& spec,
                                    const Hyperparams& hp, const Schedule& sched, int B,
                                    const ExecConfig& exec = {});

/// Loss/gradient of a PL model through the expansion (the reference surface
/// for finite-difference checks; gradient has a trailing intercept slot).
double pl_loss_value(const PLModel& model, const Dataset& data, const LossSpec& spec);
Vector pl_loss_gradient(const PLModel& model, const Dataset& data, const LossSpec& spec);

}  // namespace fsa

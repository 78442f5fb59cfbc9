#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsa {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class Task { regression, classification, ranking };

const char* to_string(Task t);
Task task_from_string(const std::string& s);

// Error taxonomy. The CLI maps these onto exit codes: contract/usage -> 2,
// divergence -> 3, I/O and parse failures -> 4.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankPair {
  int i = 0;
  int j = 0;
  double r = 0.0;  // in [0,1]; 1 means row i should score above row j
};

struct RankPairSet {
  std::vector<RankPair> pairs;
  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
  void validate(long n_rows) const;
};

/// Training data, immutable once loaded. X is a dense row-major N x M matrix.
/// Classification labels are stored as +-1 (inputs in {0,1} are remapped on
/// load). Ranking tasks keep their supervision in `pairs` and leave y empty.
struct Dataset {
  Matrix X;
  Vector y;
  RankPairSet pairs;
  Vector weights;  // per-example weights; empty means all ones
  Task task = Task::regression;
  std::vector<std::string> feature_names;  // empty = positional names
  std::string target_name = "y";

  long n() const { return X.rows(); }
  long m() const { return X.cols(); }
  double weight(long i) const { return weights.size() > 0 ? weights[i] : 1.0; }
  void validate() const;
};

/// Coefficients over the surviving feature groups. active_index holds one
/// entry per group: the original column for linear models (group_size 1) or
/// the original variable id for grouped piecewise-linear models. coeffs holds
/// group_size consecutive values per group, in active_index order, so final
/// models always report selections in the caller's column numbering.
struct ActiveModel {
  Vector coeffs;
  double intercept = 0.0;
  std::vector<int> active_index;
  int group_size = 1;

  int n_groups() const { return static_cast<int>(active_index.size()); }
  void validate() const;
};

/// Restrict a model to `keep`, a set of coefficient positions. On grouped
/// models keep must cover whole groups. Kept coefficients are unchanged;
/// active_index composes (new index = old index restricted to kept groups).
ActiveModel compact(const ActiveModel& model, const std::vector<int>& keep);

struct Hyperparams {
  double eta = 20.0;
  int n_iter = 500;
  double mu = 300.0;
  int k = 1;
  std::uint64_t seed = 0;

  void validate(long m) const;
};

// gather the listed columns of X into a dense working copy, in list order
Matrix gather_columns(const Matrix& X, const std::vector<int>& cols);

}  // namespace fsa

#include "fsa/types.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fsa {

const char* to_string(Task t) {
  switch (t) {
    case Task::regression: return "regression";
    case Task::classification: return "classification";
    case Task::ranking: return "ranking";
  }
  return "?";
}

Task task_from_string(const std::string& s) {
  if (s == "regression") return Task::regression;
  if (s == "classification") return Task::classification;
  if (s == "ranking") return Task::ranking;
  throw ContractError("unknown task '" + s + "' (expected regression, classification or ranking)");
}

void RankPairSet::validate(long n_rows) const {
  std::set<std::pair<int, int>> seen;
  for (const RankPair& p : pairs) {
    if (p.i == p.j) throw ContractError("rank pair with i == j (" + std::to_string(p.i) + ")");
    if (p.i < 0 || p.j < 0 || p.i >= n_rows || p.j >= n_rows)
      throw ContractError("rank pair (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                          ") out of range for " + std::to_string(n_rows) + " rows");
    if (!(p.r >= 0.0 && p.r <= 1.0))
      throw ContractError("rank value " + std::to_string(p.r) + " outside [0,1]");
    if (!seen.insert({p.i, p.j}).second)
      throw ContractError("duplicate rank pair (" + std::to_string(p.i) + "," +
                          std::to_string(p.j) + ")");
  }
}

void Dataset::validate() const {
  if (n() < 1 || m() < 1) throw ContractError("dataset must have at least one row and column");
  if (!X.allFinite()) throw ContractError("dataset contains non-finite feature values");
  if (task == Task::ranking) {
    if (pairs.empty()) throw ContractError("ranking dataset has no rank pairs");
    pairs.validate(n());
  } else {
    if (y.size() != n()) throw ContractError("target length does not match row count");
    if (!y.allFinite()) throw ContractError("dataset contains non-finite target values");
    if (task == Task::classification) {
      for (long i = 0; i < y.size(); ++i)
        if (y[i] != 1.0 && y[i] != -1.0)
          throw ContractError("classification label at row " + std::to_string(i) +
                              " is not +-1: " + std::to_string(y[i]));
    }
  }
  if (weights.size() > 0) {
    if (weights.size() != n()) throw ContractError("weights length does not match row count");
    if (!weights.allFinite() || (weights.array() < 0).any())
      throw ContractError("weights must be finite and nonnegative");
  }
}

void ActiveModel::validate() const {
  if (group_size < 1) throw ContractError("group_size must be >= 1");
  if (coeffs.size() != static_cast<long>(active_index.size()) * group_size)
    throw ContractError("coeffs length must equal group count times group_size");
  for (std::size_t g = 1; g < active_index.size(); ++g)
    if (active_index[g] <= active_index[g - 1])
      throw ContractError("active_index must be strictly increasing");
  if (!active_index.empty() && active_index.front() < 0)
    throw ContractError("active_index entries must be nonnegative");
}

ActiveModel compact(const ActiveModel& model, const std::vector<int>& keep) {
  model.validate();
  std::vector<int> positions(keep);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  if (positions.size() != keep.size())
    throw ContractError("compact: keep positions must be distinct");
  for (int p : positions)
    if (p < 0 || p >= model.coeffs.size())
      throw ContractError("compact: keep position " + std::to_string(p) + " out of range");

  const int gs = model.group_size;
  // whole groups only: every group is either fully kept or fully dropped
  std::vector<int> kept_groups;
  for (std::size_t t = 0; t < positions.size();) {
    int g = positions[t] / gs;
    for (int off = 0; off < gs; ++off, ++t)
      if (t >= positions.size() || positions[t] != g * gs + off)
        throw ContractError("compact: keep set does not cover group " + std::to_string(g) +
                            " atomically");
    kept_groups.push_back(g);
  }

  ActiveModel out;
  out.group_size = gs;
  out.intercept = model.intercept;
  out.coeffs.resize(static_cast<long>(kept_groups.size()) * gs);
  out.active_index.reserve(kept_groups.size());
  long w = 0;
  for (int g : kept_groups) {
    out.active_index.push_back(model.active_index[g]);
    for (int off = 0; off < gs; ++off) out.coeffs[w++] = model.coeffs[g * gs + off];
  }
  return out;
}

void Hyperparams::validate(long m) const {
  if (!(eta > 0)) throw ContractError("eta must be positive");
  if (n_iter < 1) throw ContractError("n_iter must be >= 1");
  if (mu < 0) throw ContractError("mu must be nonnegative");
  if (k < 1 || k > m)
    throw ContractError("k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
}

Matrix gather_columns(const Matrix& X, const std::vector<int>& cols) {
  Matrix out(X.rows(), static_cast<long>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t) {
    if (cols[t] < 0 || cols[t] >= X.cols())
      throw ContractError("column index " + std::to_string(cols[t]) + " out of range");
    out.col(static_cast<long>(t)) = X.col(cols[t]);
  }
  return out;
}

}  // namespace fsa

#pragma once

#include "fsa/losses.hpp"
#include "fsa/plinear.hpp"

namespace fsa {

inline constexpr int kModelSchemaVersion = 1;

/// Persistable model: either a linear ActiveModel (group_size 1) or a
/// piecewise-linear PLModel (group_size B+1). n_features is the width of
/// the training feature matrix, used to validate prediction inputs.
struct SavedModel {
  Task task = Task::classification;
  LossKind loss = LossKind::logistic;
  int group_size = 1;
  long n_features = 0;
  std::string target_name = "y";
  ActiveModel linear;
  PLModel pl;

  bool is_pl() const { return group_size > 1; }
};

/// JSON round-trip. Files written under a different schema_version are
/// rejected with a clear error, never misread.
void save_model(const SavedModel& model, const std::string& path);
SavedModel load_model(const std::string& path);

/// Scores over rows of a feature matrix laid out as at training time.
/// Throws ContractError naming the missing columns when X is too narrow.
Vector model_scores(const SavedModel& model, const Matrix& X);

}  // namespace fsa

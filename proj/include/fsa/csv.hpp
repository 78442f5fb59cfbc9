#pragma once

#include "fsa/types.hpp"

namespace fsa {

struct RawCsv {
  std::vector<std::string> header;  // synthesized x0..x{M-1} when the file has none
  Matrix X;                         // may have zero rows
  bool had_header = false;
};

/// Numeric CSV with an optional header row (detected: a first line whose
/// cells all parse as numbers is data). Parse failures and non-finite cells
/// raise ParseError naming the row and column. An empty file yields a 0x0
/// matrix rather than an error.
RawCsv load_matrix_csv(const std::string& path);

/// Dataset from a CSV. target_column selects the target by header name; for
/// ranking the target is ignored and pairs_path (columns i,j,r) supplies the
/// supervision. Classification targets in {0,1} are remapped to +-1.
Dataset load_csv(const std::string& path, const std::string& target_column, Task task,
                 const std::string& pairs_path = "");

RankPairSet load_pairs_csv(const std::string& path, long n_rows);

/// Write features plus target (named data.target_name); ranking datasets are
/// written without a target column. Round-trips through load_csv exactly.
void save_csv(const Dataset& data, const std::string& path);

void save_pairs_csv(const RankPairSet& pairs, const std::string& path);

// shortest exact decimal representation (round-trips through parsing)
std::string format_double(double v);

}  // namespace fsa

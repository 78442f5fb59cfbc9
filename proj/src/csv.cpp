#include "fsa/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fsa {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

RawCsv load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (!t.empty()) lines.push_back(t);
  }
  RawCsv raw;
  if (lines.empty()) return raw;  // empty file: zero rows, zero columns

  std::vector<std::string> first = split_line(lines[0]);
  const std::size_t m = first.size();
  double v;
  for (const std::string& cell : first)
    if (!parse_double(cell, v)) {
      raw.had_header = true;
      break;
    }
  std::size_t data_start = 0;
  if (raw.had_header) {
    raw.header = first;
    data_start = 1;
  } else {
    raw.header.reserve(m);
    for (std::size_t j = 0; j < m; ++j) raw.header.push_back("x" + std::to_string(j));
  }

  const std::size_t n = lines.size() - data_start;
  raw.X.resize(static_cast<long>(n), static_cast<long>(m));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> cells = split_line(lines[data_start + i]);
    if (cells.size() != m)
      throw ParseError("'" + path + "' row " + std::to_string(i + 1) + " has " +
                       std::to_string(cells.size()) + " cells, expected " + std::to_string(m));
    for (std::size_t j = 0; j < m; ++j) {
      if (!parse_double(cells[j], v) || !std::isfinite(v))
        throw ParseError("'" + path + "' row " + std::to_string(i + 1) + " column " +
                         std::to_string(j + 1) + ": bad number '" + cells[j] + "'");
      raw.X(static_cast<long>(i), static_cast<long>(j)) = v;
    }
  }
  return raw;
}

Dataset load_csv(const std::string& path, const std::string& target_column, Task task,
                 const std::string& pairs_path) {
  RawCsv raw = load_matrix_csv(path);
  Dataset data;
  data.task = task;

  if (task == Task::ranking) {
    if (pairs_path.empty()) throw ContractError("ranking data needs a pairs file");
    data.X = std::move(raw.X);
    data.feature_names = std::move(raw.header);
    data.pairs = load_pairs_csv(pairs_path, data.n());
    data.validate();
    return data;
  }

  if (target_column.empty()) throw ContractError("a target column name is required");
  long target_idx = -1;
  for (std::size_t j = 0; j < raw.header.size(); ++j)
    if (raw.header[j] == target_column) {
      target_idx = static_cast<long>(j);
      break;
    }
  if (target_idx < 0) {
    std::string names;
    for (std::size_t j = 0; j < raw.header.size(); ++j)
      names += (j ? ", " : "") + raw.header[j];
    throw ContractError("target column '" + target_column + "' not found (columns: " + names +
                        ")");
  }
  if (raw.X.cols() < 2) throw ContractError("'" + path + "' has a target but no features");

  data.target_name = target_column;
  data.y = raw.X.col(target_idx);
  data.X.resize(raw.X.rows(), raw.X.cols() - 1);
  long w = 0;
  for (long j = 0; j < raw.X.cols(); ++j) {
    if (j == target_idx) continue;
    data.X.col(w++) = raw.X.col(j);
    data.feature_names.push_back(raw.header[j]);
  }
  if (task == Task::classification)
    for (long i = 0; i < data.y.size(); ++i)
      if (data.y[i] == 0.0) data.y[i] = -1.0;  // accept 0/1 labels
  data.validate();
  return data;
}

RankPairSet load_pairs_csv(const std::string& path, long n_rows) {
  RawCsv raw = load_matrix_csv(path);
  if (raw.X.cols() != 3)
    throw ParseError("'" + path + "' must have exactly 3 columns (i, j, r)");
  RankPairSet set;
  set.pairs.reserve(raw.X.rows());
  for (long t = 0; t < raw.X.rows(); ++t) {
    double di = raw.X(t, 0), dj = raw.X(t, 1);
    if (di != std::floor(di) || dj != std::floor(dj))
      throw ParseError("'" + path + "' row " + std::to_string(t + 1) +
                       ": pair indices must be integers");
    set.pairs.push_back({static_cast<int>(di), static_cast<int>(dj), raw.X(t, 2)});
  }
  set.validate(n_rows);
  return set;
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const bool with_target = data.task != Task::ranking;
  for (std::size_t j = 0; j < data.feature_names.size(); ++j)
    out << (j ? "," : "") << data.feature_names[j];
  if (with_target) out << (data.feature_names.empty() ? "" : ",") << data.target_name;
  out << "\n";
  for (long i = 0; i < data.n(); ++i) {
    for (long j = 0; j < data.m(); ++j) out << (j ? "," : "") << format_double(data.X(i, j));
    if (with_target) out << "," << format_double(data.y[i]);
    out << "\n";
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

void save_pairs_csv(const RankPairSet& pairs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "i,j,r\n";
  for (const RankPair& p : pairs.pairs)
    out << p.i << "," << p.j << "," << format_double(p.r) << "\n";
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string format_double(double v) {
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;  // %.17g always round-trips
}

}  // namespace fsa

#include "fsa/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fsa/csv.hpp"
#include "fsa/engine.hpp"
#include "fsa/metrics.hpp"
#include "fsa/model_io.hpp"
#include "fsa/plinear.hpp"
#include "fsa/synth.hpp"

namespace fsa {
namespace {

constexpr std::uint64_t kHeldOutSeedOffset = 777777;

struct TrainOpts {
  std::string data, pairs, target = "y", model, trace;
  std::string task = "classification", loss;
  double eta = 20.0, mu = 300.0;
  int iters = 500, k = 1, bins = 0;
  double ridge = 0.0, smooth2 = 0.0, tv = 0.0, tv_h = 0.01, huber_h = 0.5;
  bool standardize = false, no_validate = false;
  std::uint64_t seed = 0, tie_seed = 0;
  int workers = 0;
  int block_rows = 0, block_cols = 0;
  bool ridge_given = false, workers_given = false, tie_seed_given = false;
};

LossKind default_loss(Task task) {
  switch (task) {
    case Task::regression: return LossKind::squared_error;
    case Task::classification: return LossKind::logistic;
    case Task::ranking: return LossKind::rank_logistic;
  }
  return LossKind::logistic;
}

int resolve_workers(int flag_value, bool flag_given) {
  if (flag_given) {
    if (flag_value < 1) throw ContractError("--workers must be >= 1");
    return flag_value;
  }
  const char* env = std::getenv("FSA_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ContractError("FSA_WORKERS must be a positive integer");
  return static_cast<int>(v);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

void write_trace_csv(const FitTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "e,m_e,loss\n";
  for (const IterRecord& r : trace.iters)
    out << r.e << "," << r.m_e << "," << format_double(r.loss) << "\n";
  if (!out) throw IoError("write to '" + path + "' failed");
}

void report_eta(const FitTrace& trace) {
  if (trace.step_fallback)
    std::cout << "eta requested=" << format_double(trace.eta_requested)
              << " used=" << format_double(trace.eta_used)
              << " (stable-descent fallback; bound=" << format_double(trace.eta_bound) << ")\n";
  else
    std::cout << "eta used=" << format_double(trace.eta_used) << "\n";
}

void cmd_train(const TrainOpts& o) {
  Task task = task_from_string(o.task);
  Dataset data = load_csv(o.data, o.target, task, o.pairs);

  LossSpec spec;
  spec.kind = o.loss.empty() ? default_loss(task) : loss_from_string(o.loss);
  spec.huber_h = o.huber_h;
  spec.prior.ridge = o.ridge;
  spec.prior.smooth2 = o.smooth2;
  spec.prior.tv_q = o.tv;
  spec.prior.tv_huber_h = o.tv_h;
  // piecewise-linear ranking defaults to a light ridge so knot values stay tame
  if (o.bins > 0 && task == Task::ranking && !o.ridge_given && o.smooth2 == 0 && o.tv == 0)
    spec.prior.ridge = 0.01;
  spec.validate(task);

  if (o.standardize && o.bins > 0)
    throw ContractError("--standardize applies to linear fits; drop it or drop --bins");

  Hyperparams hp;
  hp.eta = o.eta;
  hp.n_iter = o.iters;
  hp.mu = o.mu;
  hp.k = o.k;
  hp.seed = o.seed;

  ExecConfig exec;
  exec.workers = resolve_workers(o.workers, o.workers_given);
  exec.grid.row_block = o.block_rows;
  exec.grid.col_block = o.block_cols;
  exec.validate_step = !o.no_validate;
  exec.standardize = o.standardize;
  if (o.tie_seed_given) exec.tie_seed = o.tie_seed;

  if (o.k == data.m())
    std::cerr << "warning: k equals the number of feature groups; "
                 "no elimination will occur (dense model)\n";

  Schedule sched(static_cast<int>(data.m()), o.k, o.mu, o.iters);

  SavedModel saved;
  saved.task = task;
  saved.loss = spec.kind;
  saved.n_features = data.m();
  saved.target_name = data.target_name;

  FitTrace trace;
  if (o.bins > 0) {
    auto [model, tr] = pl_fit(data, spec, hp, sched, o.bins, exec);
    saved.group_size = o.bins + 1;
    saved.pl = std::move(model);
    trace = std::move(tr);
  } else {
    auto [model, tr] = fit(data, spec, hp, sched, exec);
    saved.group_size = 1;
    saved.linear = std::move(model);
    trace = std::move(tr);
  }

  if (o.model.empty()) throw ContractError("--model output path is required");
  save_model(saved, o.model);
  if (!o.trace.empty()) write_trace_csv(trace, o.trace);

  std::cout << "task=" << to_string(task) << " loss=" << to_string(spec.kind)
            << " n=" << data.n() << " m=" << data.m() << " k=" << o.k << "\n";
  report_eta(trace);
  std::cout << "selected:";
  for (int c : trace.selected) std::cout << " " << c;
  std::cout << "\nmodel written to " << o.model;
  if (!o.trace.empty()) std::cout << ", trace to " << o.trace;
  std::cout << "\n";
}

struct PredictOpts {
  std::string model, data, out;
};

void cmd_predict(const PredictOpts& o) {
  SavedModel model = load_model(o.model);
  RawCsv raw = load_matrix_csv(o.data);

  Matrix X = raw.X;
  if (raw.had_header) {
    for (std::size_t j = 0; j < raw.header.size(); ++j)
      if (raw.header[j] == model.target_name) {
        Matrix trimmed(X.rows(), X.cols() - 1);
        long w = 0;
        for (long c = 0; c < X.cols(); ++c)
          if (c != static_cast<long>(j)) trimmed.col(w++) = X.col(c);
        X = std::move(trimmed);
        break;
      }
  }

  std::ofstream file;
  std::ostream& out = open_out(file, o.out);
  const bool classify = model.task == Task::classification;
  out << (classify ? "score,label\n" : "score\n");
  if (X.rows() > 0) {
    Vector scores = model_scores(model, X);
    for (long i = 0; i < scores.size(); ++i) {
      out << format_double(scores[i]);
      if (classify) out << "," << (scores[i] >= 0 ? 1 : -1);
      out << "\n";
    }
  }
  if (!out) throw IoError("writing predictions failed");
}

struct EvaluateOpts {
  std::string model, data, pairs, target = "y";
};

void cmd_evaluate(const EvaluateOpts& o) {
  SavedModel model = load_model(o.model);
  Dataset data = load_csv(o.data, o.target, model.task, o.pairs);
  Vector scores = model_scores(model, data.X);
  switch (model.task) {
    case Task::classification:
      std::cout << "auc=" << format_double(auc(scores, data.y)) << "\n"
                << "misclassification_error="
                << format_double(misclassification_error(scores, data.y)) << "\n";
      break;
    case Task::regression:
      std::cout << "rmse=" << format_double(rmse(scores, data.y)) << "\n";
      break;
    case Task::ranking:
      std::cout << "rank_disagreement=" << format_double(rank_disagreement(scores, data.pairs))
                << "\n";
      break;
  }
}

struct GenerateOpts {
  std::string task = "classification", out, pairs_out;
  long N = 1000, M = 1000;
  int k_star = 10, n_pairs = 0;
  double delta = 0.9, noise = 0.0, sigma = 1.0;
  std::uint64_t seed = 0;
};

void cmd_generate(const GenerateOpts& o) {
  SynthConfig cfg;
  cfg.N = o.N;
  cfg.M = o.M;
  cfg.k_star = o.k_star;
  cfg.delta = o.delta;
  cfg.noise_fraction = o.noise;
  cfg.sigma = o.sigma;
  cfg.seed = o.seed;

  Task task = task_from_string(o.task);
  if (o.out.empty()) throw ContractError("--out path is required");
  Dataset data;
  switch (task) {
    case Task::classification: data = gen_classification(cfg); break;
    case Task::regression: data = gen_regression(cfg); break;
    case Task::ranking: {
      if (o.n_pairs < 1) throw ContractError("ranking data needs --n-pairs");
      if (o.pairs_out.empty()) throw ContractError("ranking data needs --pairs-out");
      data = gen_rank_pairs(cfg, o.n_pairs);
      break;
    }
  }
  save_csv(data, o.out);
  if (task == Task::ranking) save_pairs_csv(data.pairs, o.pairs_out);

  std::cout << "wrote " << data.n() << "x" << data.m() << " " << to_string(task) << " data to "
            << o.out;
  if (task == Task::ranking)
    std::cout << " (" << data.pairs.size() << " oriented pairs to " << o.pairs_out << ")";
  std::cout << "\ntrue columns:";
  for (int c : cfg.true_columns()) std::cout << " " << c;
  std::cout << "\n";
}

// ---- bench ----------------------------------------------------------------

struct BenchRow {
  std::string name = "row";
  std::string task = "classification", loss;
  long N = 1000, M = 1000;
  int k = 10, k_star = 0;  // 0: follow k
  int iters = 500, runs = 20, bins = 0, workers = 1;
  double eta = 20.0, mu = 300.0, noise = 0.0, sigma = 1.0, delta = 0.9;
  std::uint64_t seed = 0;
};

struct BenchResult {
  BenchRow row;
  double dr = 0.0, pcd_mean = 0.0, metric_mean = 0.0, seconds_mean = 0.0;
  int failed = 0;
  bool is_auc = true;
};

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ParseError("bench key '" + key + "': not an integer: '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ParseError("bench key '" + key + "': not a number: '" + v + "'");
  }
}

void apply_bench_key(BenchRow& row, const std::string& key, const std::string& v) {
  if (key == "task") row.task = v;
  else if (key == "loss") row.loss = v;
  else if (key == "N") row.N = to_long(key, v);
  else if (key == "M") row.M = to_long(key, v);
  else if (key == "k") row.k = static_cast<int>(to_long(key, v));
  else if (key == "k_star") row.k_star = static_cast<int>(to_long(key, v));
  else if (key == "iters") row.iters = static_cast<int>(to_long(key, v));
  else if (key == "runs") row.runs = static_cast<int>(to_long(key, v));
  else if (key == "bins") row.bins = static_cast<int>(to_long(key, v));
  else if (key == "workers") row.workers = static_cast<int>(to_long(key, v));
  else if (key == "eta") row.eta = to_double(key, v);
  else if (key == "mu") row.mu = to_double(key, v);
  else if (key == "noise") row.noise = to_double(key, v);
  else if (key == "sigma") row.sigma = to_double(key, v);
  else if (key == "delta") row.delta = to_double(key, v);
  else if (key == "seed") row.seed = static_cast<std::uint64_t>(to_long(key, v));
  else throw ParseError("unknown bench key '" + key + "'");
}

std::vector<BenchRow> parse_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  BenchRow globals;
  std::vector<BenchRow> rows;
  bool in_section = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = line;
    if (std::size_t hash = t.find('#'); hash != std::string::npos) t = t.substr(0, hash);
    std::size_t a = t.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = t.find_last_not_of(" \t\r");
    t = t.substr(a, b - a + 1);

    if (t.front() == '[') {
      if (t.back() != ']')
        throw ParseError("'" + path + "' line " + std::to_string(lineno) + ": unclosed [section]");
      BenchRow row = globals;  // sections inherit everything set above them
      row.name = t.substr(1, t.size() - 2);
      rows.push_back(row);
      in_section = true;
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("'" + path + "' line " + std::to_string(lineno) + ": expected key=value");
    std::string key = t.substr(0, eq);
    std::string val = t.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    apply_bench_key(in_section ? rows.back() : globals, key, val);
  }
  if (rows.empty()) {
    globals.name = "default";
    rows.push_back(globals);
  }
  return rows;
}

BenchResult run_bench_row(const BenchRow& row, int* first_fail_kind) {
  Task task = task_from_string(row.task);
  if (task == Task::ranking)
    throw ContractError("bench rows cover classification and regression");
  if (row.runs < 1) throw ContractError("bench row needs runs >= 1");

  BenchResult res;
  res.row = row;
  res.is_auc = task == Task::classification;

  SynthConfig cfg;
  cfg.N = row.N;
  cfg.M = row.M;
  cfg.k_star = row.k_star > 0 ? row.k_star : row.k;
  cfg.delta = row.delta;
  cfg.noise_fraction = row.noise;
  cfg.sigma = row.sigma;

  LossSpec spec;
  spec.kind = row.loss.empty() ? default_loss(task) : loss_from_string(row.loss);

  Hyperparams hp;
  hp.eta = row.eta;
  hp.n_iter = row.iters;
  hp.mu = row.mu;
  hp.k = row.k;

  ExecConfig exec;
  exec.workers = row.workers;

  std::vector<std::pair<std::vector<int>, std::vector<int>>> supports;
  double pcd_sum = 0, metric_sum = 0, sec_sum = 0;
  int ok = 0;

  for (int t = 0; t < row.runs; ++t) {
    cfg.seed = row.seed + static_cast<std::uint64_t>(t);
    SynthConfig test_cfg = cfg;
    test_cfg.seed = cfg.seed + kHeldOutSeedOffset;
    try {
      Dataset train = task == Task::classification ? gen_classification(cfg)
                                                   : gen_regression(cfg);
      Dataset test = task == Task::classification ? gen_classification(test_cfg)
                                                  : gen_regression(test_cfg);
      hp.seed = cfg.seed;
      Schedule sched(static_cast<int>(train.m()), row.k, row.mu, row.iters);

      auto t0 = std::chrono::steady_clock::now();
      std::vector<int> selected;
      Vector scores;
      if (row.bins > 0) {
        auto [model, trace] = pl_fit(train, spec, hp, sched, row.bins, exec);
        sec_sum += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        selected = model.active_index;
        scores = pl_predict_all(model, test.X);
      } else {
        auto [model, trace] = fit(train, spec, hp, sched, exec);
        ActiveModel polished = refit(train, model, spec, hp, exec);
        sec_sum += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        selected = polished.active_index;
        Matrix Xa = gather_columns(test.X, polished.active_index);
        scores = Xa * polished.coeffs;
        scores.array() += polished.intercept;
      }

      supports.push_back({selected, cfg.true_columns()});
      pcd_sum += pcd(selected, cfg.true_columns());
      metric_sum += res.is_auc ? auc(scores, test.y) : rmse(scores, test.y);
      ++ok;
    } catch (const DivergenceError&) {
      ++res.failed;
      if (*first_fail_kind == 0) *first_fail_kind = 3;
    } catch (const IoError&) {
      ++res.failed;
      if (*first_fail_kind == 0) *first_fail_kind = 4;
    } catch (const std::exception&) {
      ++res.failed;
      if (*first_fail_kind == 0) *first_fail_kind = 2;
    }
  }

  if (ok > 0) {
    res.dr = detection_rate(supports);
    res.pcd_mean = pcd_sum / ok;
    res.metric_mean = metric_sum / ok;
    res.seconds_mean = sec_sum / ok;
  }
  return res;
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct BenchOpts {
  std::string config, csv_path, text_path;
};

int cmd_bench(const BenchOpts& o) {
  std::vector<BenchRow> rows = parse_bench_config(o.config);
  std::vector<BenchResult> results;
  int first_fail_kind = 0;
  long total_runs = 0, total_failed = 0;
  for (const BenchRow& row : rows) {
    results.push_back(run_bench_row(row, &first_fail_kind));
    total_runs += row.runs;
    total_failed += results.back().failed;
  }

  std::ostringstream csv;
  csv << "name,task,loss,N,M,k,runs,failed,dr,pcd,auc,rmse,seconds\n";
  for (const BenchResult& r : results) {
    csv << r.row.name << "," << r.row.task << ","
        << (r.row.loss.empty() ? to_string(default_loss(task_from_string(r.row.task)))
                               : r.row.loss)
        << "," << r.row.N << "," << r.row.M << "," << r.row.k << "," << r.row.runs << ","
        << r.failed << "," << fixed3(r.dr) << "," << fixed3(r.pcd_mean) << ",";
    if (r.is_auc)
      csv << fixed3(r.metric_mean) << ",,";
    else
      csv << "," << fixed3(r.metric_mean) << ",";
    csv << fixed3(r.seconds_mean) << "\n";
  }

  std::ostringstream text;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %-14s %7s %6s %4s %5s %7s %7s %7s %8s %s\n", "name",
                "task", "N", "M", "k", "runs", "DR", "PCD", "metric", "s/run", "status");
  text << buf;
  for (const BenchResult& r : results) {
    std::string status = r.failed == 0 ? "ok" : std::to_string(r.failed) + " failed";
    std::snprintf(buf, sizeof buf, "%-12s %-14s %7ld %6ld %4d %5d %7.1f %7.1f %7.3f %8.3f %s\n",
                  r.row.name.c_str(), r.row.task.c_str(), r.row.N, r.row.M, r.row.k, r.row.runs,
                  r.dr, r.pcd_mean, r.metric_mean, r.seconds_mean, status.c_str());
    text << buf;
  }

  std::cout << text.str();
  if (!o.csv_path.empty()) {
    std::ofstream f(o.csv_path);
    if (!f) throw IoError("cannot open '" + o.csv_path + "' for writing");
    f << csv.str();
  }
  if (!o.text_path.empty()) {
    std::ofstream f(o.text_path);
    if (!f) throw IoError("cannot open '" + o.text_path + "' for writing");
    f << text.str();
  }

  if (total_runs > 0 && total_failed == total_runs)
    return first_fail_kind == 0 ? 1 : first_fail_kind;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"feature selection with annealed elimination"};
  app.require_subcommand(1);

  TrainOpts train_o;
  CLI::App* train = app.add_subcommand("train", "fit a model on a CSV dataset");
  train->add_option("--data", train_o.data, "training CSV")->required();
  train->add_option("--target", train_o.target, "target column name (default y)");
  train->add_option("--pairs", train_o.pairs, "rank-pair CSV (ranking task)");
  train->add_option("--task", train_o.task, "regression|classification|ranking");
  train->add_option("--loss", train_o.loss,
                    "squared_error|logistic|svm_huber|lorenz|rank_logistic");
  train->add_option("--k", train_o.k, "features (groups) to keep")->required();
  train->add_option("--eta", train_o.eta, "step size, per-term units (default 20)");
  train->add_option("--mu", train_o.mu, "annealing rate (default 300)");
  train->add_option("--iters", train_o.iters, "iterations (default 500)");
  train->add_option("--bins", train_o.bins, "piecewise-linear bins per variable");
  train->add_option("--ridge", train_o.ridge, "squared-norm prior weight");
  train->add_option("--smooth2", train_o.smooth2, "second-difference prior weight");
  train->add_option("--tv", train_o.tv, "huberized first-difference prior weight");
  train->add_option("--tv-h", train_o.tv_h, "huber width of --tv (default 0.01)");
  train->add_option("--huber-h", train_o.huber_h, "svm_huber transition width (default 0.5)");
  train->add_flag("--standardize", train_o.standardize,
                  "fit on standardized columns, report original-scale coefficients");
  train->add_flag("--no-validate-step", train_o.no_validate,
                  "skip the stable-step check on squared error");
  train->add_option("--seed", train_o.seed, "run seed");
  train->add_option("--tie-seed", train_o.tie_seed, "seeded tie-breaking in elimination");
  train->add_option("--workers", train_o.workers, "worker threads (or FSA_WORKERS)");
  train->add_option("--block-rows", train_o.block_rows, "row block size (0 = whole extent)");
  train->add_option("--block-cols", train_o.block_cols, "column block size");
  train->add_option("--model", train_o.model, "output model JSON")->required();
  train->add_option("--trace", train_o.trace, "output trace CSV (e,m_e,loss)");

  PredictOpts pred_o;
  CLI::App* predict = app.add_subcommand("predict", "score rows with a saved model");
  predict->add_option("--model", pred_o.model, "model JSON")->required();
  predict->add_option("--data", pred_o.data, "feature CSV")->required();
  predict->add_option("--out", pred_o.out, "output CSV (default stdout)");

  EvaluateOpts eval_o;
  CLI::App* evaluate = app.add_subcommand("evaluate", "metrics of a model on labeled data");
  evaluate->add_option("--model", eval_o.model, "model JSON")->required();
  evaluate->add_option("--data", eval_o.data, "labeled CSV")->required();
  evaluate->add_option("--target", eval_o.target, "target column name (default y)");
  evaluate->add_option("--pairs", eval_o.pairs, "rank-pair CSV (ranking models)");

  GenerateOpts gen_o;
  CLI::App* generate = app.add_subcommand("generate", "write synthetic benchmark data");
  generate->add_option("--task", gen_o.task, "regression|classification|ranking");
  generate->add_option("--N", gen_o.N, "rows");
  generate->add_option("--M", gen_o.M, "columns");
  generate->add_option("--k-star", gen_o.k_star, "true support size (columns 10,20,...)");
  generate->add_option("--delta", gen_o.delta, "neighbor correlation (default 0.9)");
  generate->add_option("--noise", gen_o.noise, "label noise fraction (classification)");
  generate->add_option("--sigma", gen_o.sigma, "target noise scale (regression)");
  generate->add_option("--seed", gen_o.seed, "generator seed");
  generate->add_option("--n-pairs", gen_o.n_pairs, "unordered pairs to sample (ranking)");
  generate->add_option("--out", gen_o.out, "output CSV")->required();
  generate->add_option("--pairs-out", gen_o.pairs_out, "pair CSV (ranking)");

  BenchOpts bench_o;
  CLI::App* bench = app.add_subcommand("bench", "run a config of seeded experiment rows");
  bench->add_option("--config", bench_o.config, "key=value config with [row] sections")
      ->required();
  bench->add_option("--csv", bench_o.csv_path, "write results CSV here");
  bench->add_option("--text", bench_o.text_path, "write the aligned table here");

  int bench_rc = 0;
  train->callback([&] {
    train_o.ridge_given = train->count("--ridge") > 0;
    train_o.workers_given = train->count("--workers") > 0;
    train_o.tie_seed_given = train->count("--tie-seed") > 0;
    cmd_train(train_o);
  });
  predict->callback([&] { cmd_predict(pred_o); });
  evaluate->callback([&] { cmd_evaluate(eval_o); });
  generate->callback([&] { cmd_generate(gen_o); });
  bench->callback([&] { bench_rc = cmd_bench(bench_o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return bench_rc;
}

}  // namespace fsa

#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"
#include "spgomp/errors.hpp"
#include "spgomp/matrix.hpp"
#include "spgomp/recovery.hpp"
#include "spgomp/rng.hpp"
#include "spgomp/sensing.hpp"
#include "spgomp/signal.hpp"

namespace spgomp::bench {

enum class SignalKind { gaussian, pam };
enum class Algorithm { gomp, omp, cosamp };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::gomp: return "gomp";
    case Algorithm::omp: return "omp";
    case Algorithm::cosamp: return "cosamp";
  }
  return "?";
}

// Stable ids folded into per-trial seeds; frozen, like the RNG itself.
inline std::uint64_t algorithm_seed_id(Algorithm a) {
  switch (a) {
    case Algorithm::gomp: return 1;
    case Algorithm::omp: return 2;
    case Algorithm::cosamp: return 3;
  }
  return 0;
}

// Random sparse signal: support is a uniform K-subset (partial Fisher-Yates),
// then one value per support index in ascending index order. Gaussian values
// are standard normal (redrawn in the zero-probability event of an exact
// 0.0); pam values map two uniform bits to {+1, -1, +3, -3}.
inline recovery::SparseSignal generate_signal(std::size_t n, std::size_t sparsity_k,
                                              SignalKind kind, Xoshiro256pp& rng) {
  if (sparsity_k < 1 || sparsity_k > n)
    throw DimensionError("generate_signal: sparsity_k out of range");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < sparsity_k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  recovery::SparseSignal x;
  x.n = n;
  x.support.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(sparsity_k));
  std::sort(x.support.begin(), x.support.end());
  x.values.resize(sparsity_k);
  for (double& v : x.values) {
    if (kind == SignalKind::gaussian) {
      do {
        v = rng.gaussian();
      } while (v == 0.0);
    } else {
      const std::uint64_t bits = rng.uniform_below(4);
      v = (bits & 1 ? -1.0 : 1.0) * (bits & 2 ? 3.0 : 1.0);
    }
  }
  return x;
}

using MatrixFactory =
    std::function<linalg::DenseMatrix(std::size_t m, std::size_t n, std::uint64_t seed)>;

struct BenchConfig {
  std::size_t m = 128;
  std::size_t n = 256;
  std::vector<std::size_t> k_values;
  std::size_t big_n = 5;
  std::size_t trials = 200;
  SignalKind signal_kind = SignalKind::gaussian;
  std::vector<Algorithm> algorithms{Algorithm::gomp, Algorithm::omp, Algorithm::cosamp};
  std::uint64_t master_seed = 1;
  double tol = 1e-4;
  std::size_t threads = 0;        // 0 means hardware concurrency
  MatrixFactory matrix_factory;   // test hook; default is gaussian_sensing_matrix
};

struct TrialResult {
  bool success = false;
  std::size_t iterations = 0;
  std::int64_t modeled_flops = 0;
  double wall_seconds = 0.0;
};

struct SummaryRow {
  Algorithm algorithm = Algorithm::gomp;
  std::size_t k = 0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double success_frequency = 0.0;
  double mean_iterations = 0.0;
  double mean_modeled_flops = 0.0;
  double mean_wall_seconds = 0.0;
};

// Fresh matrix and signal every trial, both derived purely from
// (master_seed, algorithm id, K, trial_index):
//   trial_seed  = derive(derive(derive(master, alg_id), K), trial_index)
//   matrix seed = derive(trial_seed, 1), signal stream seed = derive(trial_seed, 2)
// so results never depend on which trials ran, or in what order, or on how
// many threads the sweep used. Only wall_seconds is nondeterministic.
inline TrialResult run_trial(const BenchConfig& cfg, Algorithm algorithm, std::size_t sparsity_k,
                             std::size_t trial_index) {
  const std::uint64_t trial_seed = derive_seed(
      derive_seed(derive_seed(cfg.master_seed, algorithm_seed_id(algorithm)), sparsity_k),
      trial_index);
  const linalg::DenseMatrix phi =
      cfg.matrix_factory ? cfg.matrix_factory(cfg.m, cfg.n, derive_seed(trial_seed, 1))
                         : linalg::gaussian_sensing_matrix(cfg.m, cfg.n, derive_seed(trial_seed, 1));
  Xoshiro256pp signal_rng(derive_seed(trial_seed, 2));
  const recovery::SparseSignal x = generate_signal(cfg.n, sparsity_k, cfg.signal_kind, signal_rng);
  const linalg::DenseVector y = linalg::multiply(phi, x.dense());

  recovery::RecoveryConfig rc;
  rc.big_n = algorithm == Algorithm::gomp ? cfg.big_n : 1;
  rc.sparsity_k = sparsity_k;

  const auto start = std::chrono::steady_clock::now();
  recovery::RecoveryResult result;
  switch (algorithm) {
    case Algorithm::gomp: result = recovery::gomp_recover(phi, y, rc); break;
    case Algorithm::omp: result = recovery::omp_recover(phi, y, rc); break;
    case Algorithm::cosamp: result = recovery::cosamp_recover(phi, y, sparsity_k); break;
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialResult out;
  out.success = recovery::exact_recovery(x, result, cfg.tol);
  out.iterations = result.iterations;
  out.modeled_flops = result.modeled_flops;
  out.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return out;
}

// One row per (algorithm, K), algorithms in config order, K ascending within
// each algorithm. Trials may run on several threads; aggregation happens
// afterwards in trial-index order, so the thread count cannot change any mean.
inline std::vector<SummaryRow> run_sweep(const BenchConfig& cfg) {
  if (cfg.trials < 1) throw DimensionError("run_sweep: trials must be at least 1");
  for (std::size_t k : cfg.k_values)
    if (k > cfg.m) throw DimensionError("run_sweep: sparsity exceeds measurement count");
  std::vector<std::size_t> k_values = cfg.k_values;
  std::sort(k_values.begin(), k_values.end());
  k_values.erase(std::unique(k_values.begin(), k_values.end()), k_values.end());

  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min(threads, cfg.trials);

  std::vector<SummaryRow> rows;
  rows.reserve(cfg.algorithms.size() * k_values.size());
  std::vector<TrialResult> results(cfg.trials);
  for (Algorithm alg : cfg.algorithms) {
    for (std::size_t k : k_values) {
      if (threads == 1) {
        for (std::size_t t = 0; t < cfg.trials; ++t) results[t] = run_trial(cfg, alg, k, t);
      } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
          pool.emplace_back([&, w] {
            for (std::size_t t = w; t < cfg.trials; t += threads)
              results[t] = run_trial(cfg, alg, k, t);
          });
        }
        for (std::thread& th : pool) th.join();
      }

      SummaryRow row;
      row.algorithm = alg;
      row.k = k;
      row.trials = cfg.trials;
      double iter_sum = 0.0, flop_sum = 0.0, wall_sum = 0.0;
      for (const TrialResult& tr : results) {
        row.successes += tr.success ? 1 : 0;
        iter_sum += static_cast<double>(tr.iterations);
        flop_sum += static_cast<double>(tr.modeled_flops);
        wall_sum += tr.wall_seconds;
      }
      const auto nt = static_cast<double>(cfg.trials);
      row.success_frequency = static_cast<double>(row.successes) / nt;
      row.mean_iterations = iter_sum / nt;
      row.mean_modeled_flops = flop_sum / nt;
      row.mean_wall_seconds = wall_sum / nt;
      rows.push_back(row);
    }
  }
  return rows;
}

enum class EmitFormat { csv, json };

namespace detail {

inline void append_fixed6(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  out.append(buf, ptr);
}

}  // namespace detail

inline constexpr const char* kSummaryCsvHeader =
    "algorithm,K,success_frequency,mean_iterations,mean_modeled_flops,mean_wall_seconds";

inline std::string format_csv(const std::vector<SummaryRow>& rows) {
  std::string out = kSummaryCsvHeader;
  out.push_back('\n');
  for (const SummaryRow& row : rows) {
    out += algorithm_name(row.algorithm);
    out.push_back(',');
    out += std::to_string(row.k);
    out.push_back(',');
    detail::append_fixed6(out, row.success_frequency);
    out.push_back(',');
    detail::append_fixed6(out, row.mean_iterations);
    out.push_back(',');
    detail::append_fixed6(out, row.mean_modeled_flops);
    out.push_back(',');
    detail::append_fixed6(out, row.mean_wall_seconds);
    out.push_back('\n');
  }
  return out;
}

inline std::string format_json(const std::vector<SummaryRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SummaryRow& row : rows) {
    nlohmann::ordered_json obj;
    obj["algorithm"] = algorithm_name(row.algorithm);
    obj["K"] = row.k;
    obj["success_frequency"] = std::round(row.success_frequency * 1e6) / 1e6;
    obj["mean_iterations"] = row.mean_iterations;
    obj["mean_modeled_flops"] = row.mean_modeled_flops;
    obj["mean_wall_seconds"] = row.mean_wall_seconds;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

inline void emit(const std::vector<SummaryRow>& rows, EmitFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << (format == EmitFormat::csv ? format_csv(rows) : format_json(rows));
  if (!out) throw IoError("write failed: " + path);
}

// Parses format_csv output back into rows (string fields only as far as the
// summary needs them). Used by tests and by determinism comparisons.
inline std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSummaryCsvHeader)
    throw CsvFormatError("bad summary header");
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      fields.emplace_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 6) throw CsvFormatError("bad summary row: " + line);
    SummaryRow row;
    bool known = false;
    for (Algorithm a : {Algorithm::gomp, Algorithm::omp, Algorithm::cosamp}) {
      if (fields[0] == algorithm_name(a)) {
        row.algorithm = a;
        known = true;
      }
    }
    if (!known) throw CsvFormatError("unknown algorithm: " + fields[0]);
    const auto parse_double = [&](const std::string& s) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        throw CsvFormatError("bad summary field: " + s);
      return v;
    };
    row.k = static_cast<std::size_t>(parse_double(fields[1]));
    row.success_frequency = parse_double(fields[2]);
    row.mean_iterations = parse_double(fields[3]);
    row.mean_modeled_flops = parse_double(fields[4]);
    row.mean_wall_seconds = parse_double(fields[5]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spgomp::bench

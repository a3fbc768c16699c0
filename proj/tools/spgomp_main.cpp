#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spgomp/spgomp.hpp"

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string join_indices(const std::vector<std::size_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(ids[i]);
  }
  return out;
}

int run_recover(const std::string& phi_path, const std::string& y_path, const std::string& alg,
                std::size_t big_n, std::size_t sparsity_k, std::optional<double> eps,
                const std::string& out_path) {
  const spgomp::linalg::DenseMatrix phi = spgomp::linalg::read_matrix_csv(phi_path);
  const spgomp::linalg::DenseVector y = spgomp::linalg::read_vector_csv(y_path);

  spgomp::recovery::RecoveryResult result;
  if (alg == "cosamp") {
    result = spgomp::recovery::cosamp_recover(phi, y, sparsity_k, 0, eps);
  } else {
    spgomp::recovery::RecoveryConfig cfg;
    cfg.big_n = big_n;
    cfg.sparsity_k = sparsity_k;
    cfg.epsilon = eps;
    result = alg == "omp" ? spgomp::recovery::omp_recover(phi, y, cfg)
                          : spgomp::recovery::gomp_recover(phi, y, cfg);
  }

  std::cout << "algorithm " << alg << "\n"
            << "iterations " << result.iterations << "\n"
            << "converged " << (result.converged ? "true" : "false") << "\n";
  if (result.rank_deficient_stop) std::cout << "rank_deficient_stop true\n";
  if (result.size_warning) std::cout << "size_warning true\n";
  std::cout << "support " << join_indices(result.support_estimate) << "\n";
  for (std::size_t id : result.support_estimate)
    std::cout << "x " << id << " " << fmt(result.x_hat[id]) << "\n";
  if (!result.traces.empty())
    std::cout << "residual_norm " << fmt(result.traces.back().residual_norm) << "\n";

  if (!out_path.empty()) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = alg;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["rank_deficient_stop"] = result.rank_deficient_stop;
    doc["size_warning"] = result.size_warning;
    doc["support"] = result.support_estimate;
    doc["x_hat"] = result.x_hat;
    doc["modeled_flops"] = result.modeled_flops;
    auto traces = nlohmann::ordered_json::array();
    for (const auto& t : result.traces) {
      traces.push_back({{"iteration", t.iteration},
                        {"selected", t.selected},
                        {"residual_norm", t.residual_norm},
                        {"support_size", t.support_size}});
    }
    doc["traces"] = std::move(traces);
    std::ofstream out(out_path);
    if (!out) throw spgomp::IoError("cannot open " + out_path + " for writing");
    out << doc.dump(2) << "\n";
  }
  return 0;
}

int run_bench(const spgomp::bench::BenchConfig& cfg, const std::string& format,
              const std::string& out_path) {
  const std::vector<spgomp::bench::SummaryRow> rows = spgomp::bench::run_sweep(cfg);
  const spgomp::bench::EmitFormat fmt_kind =
      format == "json" ? spgomp::bench::EmitFormat::json : spgomp::bench::EmitFormat::csv;
  if (out_path.empty()) {
    std::cout << (fmt_kind == spgomp::bench::EmitFormat::csv ? spgomp::bench::format_csv(rows)
                                                             : spgomp::bench::format_json(rows));
  } else {
    spgomp::bench::emit(rows, fmt_kind, out_path);
  }
  return 0;
}

int run_rip(const std::string& phi_path, std::size_t order) {
  const spgomp::linalg::DenseMatrix phi = spgomp::linalg::read_matrix_csv(phi_path);
  const spgomp::analysis::RipEstimate est = spgomp::analysis::rip_constant_bruteforce(phi, order);
  std::cout << "order " << est.order << "\n"
            << "delta " << fmt(est.delta) << "\n"
            << "argmax_support " << join_indices(est.argmax_support) << "\n";
  return 0;
}

int run_bound(std::size_t big_n, std::size_t sparsity_k) {
  const auto overall = spgomp::analysis::bound_overall(big_n, sparsity_k);
  std::cout << "first_iteration_success rip_order " << sparsity_k + big_n << " threshold "
            << fmt(spgomp::analysis::bound_first_iteration(big_n, sparsity_k)) << "\n"
            << "later_iteration_success rip_order " << big_n * sparsity_k << " threshold "
            << fmt(spgomp::analysis::bound_noninitial(big_n, sparsity_k)) << "\n"
            << "overall_recovery rip_order " << overall.rip_order << " threshold "
            << fmt(overall.threshold) << "\n"
            << "single_selection rip_order " << sparsity_k + 1 << " threshold "
            << fmt(spgomp::analysis::bound_omp(sparsity_k)) << "\n";
  return 0;
}

int run_flops(std::size_t big_n, std::size_t m, std::size_t n, std::size_t iterations) {
  const spgomp::analysis::FlopBreakdown fb = spgomp::analysis::flop_model(big_n, m, n, iterations);
  std::cout << "iteration selection estimation residual_update total\n";
  for (const auto& it : fb.per_iteration)
    std::cout << it.k << " " << it.selection << " " << it.estimation << " " << it.residual_update
              << " " << it.total << "\n";
  std::cout << "exact_total " << fb.exact_total << "\n"
            << "closed_form_total " << fb.approx_total << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse recovery toolbox: greedy reconstruction, isometry analysis, benchmarks"};
  app.require_subcommand(1);

  std::string phi_path, y_path, out_path;
  std::string alg = "gomp";
  std::size_t big_n = 1, sparsity_k = 1;
  double eps_value = -1.0;

  CLI::App* recover = app.add_subcommand("recover", "Recover one signal from phi and y");
  recover->add_option("--phi", phi_path, "sensing matrix CSV")->required();
  recover->add_option("--y", y_path, "measurement vector CSV")->required();
  recover->add_option("--alg", alg, "algorithm")
      ->check(CLI::IsMember({"gomp", "omp", "cosamp"}));
  recover->add_option("--N", big_n, "selections per iteration");
  recover->add_option("--K", sparsity_k, "target sparsity")->required();
  recover->add_option("--eps", eps_value, "absolute residual stopping threshold");
  recover->add_option("--out", out_path, "write full result as JSON here");

  spgomp::bench::BenchConfig bench_cfg;
  std::size_t kmin = 10, kmax = 45, kstep = 5;
  std::string signal = "gaussian", algs = "gomp,omp,cosamp", format = "csv";
  CLI::App* bench = app.add_subcommand("bench", "Monte Carlo recovery-frequency sweep");
  bench->add_option("--m", bench_cfg.m, "measurements");
  bench->add_option("--n", bench_cfg.n, "signal length");
  bench->add_option("--N", bench_cfg.big_n, "selections per iteration");
  bench->add_option("--kmin", kmin, "smallest sparsity");
  bench->add_option("--kmax", kmax, "largest sparsity");
  bench->add_option("--kstep", kstep, "sparsity step");
  bench->add_option("--trials", bench_cfg.trials, "trials per (algorithm, K)");
  bench->add_option("--signal", signal, "signal kind")
      ->check(CLI::IsMember({"gaussian", "pam"}));
  bench->add_option("--algs", algs, "comma-separated algorithm list");
  bench->add_option("--seed", bench_cfg.master_seed, "master seed");
  bench->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", out_path, "output path (stdout when omitted)");

  std::size_t rip_order = 1;
  CLI::App* rip = app.add_subcommand("rip", "Brute-force isometry constant");
  rip->add_option("--phi", phi_path, "sensing matrix CSV")->required();
  rip->add_option("--K", rip_order, "order")->required();

  CLI::App* bound = app.add_subcommand("bound", "Recovery guarantee thresholds");
  bound->add_option("--N", big_n, "selections per iteration")->required();
  bound->add_option("--K", sparsity_k, "sparsity")->required();

  std::size_t flops_m = 128, flops_n = 256, flops_s = 1;
  CLI::App* flops = app.add_subcommand("flops", "Modeled flop counts");
  flops->add_option("--N", big_n, "selections per iteration")->required();
  flops->add_option("--m", flops_m, "measurements")->required();
  flops->add_option("--n", flops_n, "signal length")->required();
  flops->add_option("--S", flops_s, "iterations")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (recover->parsed()) {
      std::optional<double> eps;
      if (recover->count("--eps")) eps = eps_value;
      return run_recover(phi_path, y_path, alg, alg == "omp" ? 1 : big_n, sparsity_k, eps,
                         out_path);
    }
    if (bench->parsed()) {
      if (kmin > kmax || kstep == 0 || bench_cfg.trials == 0) {
        std::cerr << "bench: need kmin <= kmax, kstep >= 1, trials >= 1\n";
        return 2;
      }
      bench_cfg.k_values.clear();
      for (std::size_t k = kmin; k <= kmax; k += kstep) bench_cfg.k_values.push_back(k);
      bench_cfg.signal_kind = signal == "pam" ? spgomp::bench::SignalKind::pam
                                              : spgomp::bench::SignalKind::gaussian;
      bench_cfg.algorithms.clear();
      std::string rest = algs;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string name = rest.substr(0, comma);
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (name == "gomp")
          bench_cfg.algorithms.push_back(spgomp::bench::Algorithm::gomp);
        else if (name == "omp")
          bench_cfg.algorithms.push_back(spgomp::bench::Algorithm::omp);
        else if (name == "cosamp")
          bench_cfg.algorithms.push_back(spgomp::bench::Algorithm::cosamp);
        else {
          std::cerr << "bench: unknown algorithm '" << name << "'\n";
          return 2;
        }
      }
      if (bench_cfg.algorithms.empty()) {
        std::cerr << "bench: empty algorithm list\n";
        return 2;
      }
      return run_bench(bench_cfg, format, out_path);
    }
    if (rip->parsed()) return run_rip(phi_path, rip_order);
    if (bound->parsed()) return run_bound(big_n, sparsity_k);
    if (flops->parsed()) return run_flops(big_n, flops_m, flops_n, flops_s);
  } catch (const spgomp::EnumerationLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const spgomp::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const spgomp::CsvFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const spgomp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const spgomp::RankDeficientError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

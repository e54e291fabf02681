// Command-line front end: fit | generate | bench | eval.
//
// Exit codes: 0 ok, 1 bad flags, 2 data errors, 3 solver failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsfc/csv.hpp"
#include "hsfc/evaluation.hpp"
#include "hsfc/runner.hpp"

namespace fs = std::filesystem;
using namespace hsfc;

namespace {

constexpr int kExitBadFlags = 1;
constexpr int kExitDataError = 2;
constexpr int kExitSolverFailure = 3;

struct SharedFlags {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::vector<int> k_list{3};
  int restarts = 50;
  bool header = true;
  char delimiter = ',';
};

void add_shared(CLI::App* cmd, SharedFlags& flags, bool need_input) {
  auto* in = cmd->add_option("--input", flags.input, "input data CSV");
  if (need_input) in->required();
  cmd->add_option("--output", flags.output, "output file path");
  cmd->add_option("--seed", flags.seed, "base RNG seed (restart r uses seed+r)");
  cmd->add_option("--k", flags.k_list, "cluster count(s)")->delimiter(',');
  cmd->add_option("--restarts", flags.restarts, "number of seeded restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--header", flags.header, "input CSV has a header row");
  cmd->add_option("--delimiter", flags.delimiter, "CSV delimiter character");
}

void add_fcm_flags(CLI::App* cmd, FcmConfig& cfg) {
  cmd->add_option("--m", cfg.m, "fuzziness exponent (> 1)");
  cmd->add_option("--tol", cfg.tol, "objective improvement threshold");
  cmd->add_option("--max-iters", cfg.max_iter, "iteration cap");
}

void add_hsfc_flags(CLI::App* cmd, HsfcConfig& cfg) {
  cmd->add_option("--eps", cfg.epsilon, "fuzziness parameter epsilon");
  cmd->add_option("--gamma0", cfg.gamma0, "initial gamma");
  cmd->add_option("--tau0", cfg.tau0, "initial tau");
  cmd->add_option("--rho1", cfg.rho1, "gamma shrink factor");
  cmd->add_option("--rho2", cfg.rho2, "tau shrink factor");
  cmd->add_option("--rho3", cfg.rho3, "epsilon shrink factor (with --eps-fixed=false)");
  cmd->add_option("--outer-iters", cfg.outer_iters, "outer schedule steps N");
  cmd->add_option("--eps-fixed", cfg.epsilon_fixed,
                  "keep epsilon fixed across outer steps");
}

int validate_k(const std::vector<int>& ks) {
  for (const int k : ks) {
    if (k < 2) {
      std::cerr << "error: --k must be >= 2 (got " << k << ")\n";
      return kExitBadFlags;
    }
  }
  return 0;
}

DataMatrix load_input(const SharedFlags& flags) {
  return load_csv(flags.input, flags.header, flags.delimiter);
}

fs::path labels_path_for(const fs::path& data_path) {
  fs::path p = data_path;
  p.replace_extension();
  p += ".labels.csv";
  return p;
}

int run_fit(const SharedFlags& flags, RunConfig cfg) {
  if (const int rc = validate_k(flags.k_list); rc != 0) return rc;
  if (flags.k_list.size() != 1) {
    std::cerr << "error: fit takes exactly one --k value\n";
    return kExitBadFlags;
  }
  cfg.fcm.K = flags.k_list[0];
  cfg.hsfc.K = flags.k_list[0];
  cfg.restarts = flags.restarts;
  cfg.seed = flags.seed;
  cfg.fcm.seed = flags.seed;
  cfg.hsfc.seed = flags.seed;

  std::optional<DataMatrix> X;
  try {
    X.emplace(load_input(flags));
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  }

  try {
    const RunRecord record = fit_with_restarts(*X, cfg);
    if (!flags.output.empty()) {
      write_result_json(flags.output, cfg, record);
    }
    std::printf("%s fit: best W(P) = %.9f (%d restarts, %d failed, %lld ms)\n",
                to_string(cfg.method).c_str(), record.best_wp, flags.restarts,
                record.failed_restarts,
                static_cast<long long>(record.wall_ms));
    return 0;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

int run_generate(const SharedFlags& flags, const std::string& table,
                 TableSpec explicit_spec, bool use_explicit) {
  TableSpec spec;
  if (use_explicit) {
    spec = explicit_spec;
    spec.seed = flags.seed;
  } else {
    try {
      spec = spec_from_code(table, flags.seed);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitBadFlags;
    }
  }

  const fs::path out = flags.output.empty() ? fs::path(table + ".csv")
                                            : fs::path(flags.output);
  try {
    GeneratedTable gen = generate(spec);
    std::vector<std::string> names;
    for (int j = 0; j < spec.p; ++j) names.push_back("f" + std::to_string(j));
    write_csv(out, DataMatrix(gen.X.values(), names), flags.delimiter);
    write_labels_csv(labels_path_for(out), gen.truth.labels);
    std::printf("wrote %lld x %lld data to %s and labels to %s\n",
                static_cast<long long>(gen.X.n()),
                static_cast<long long>(gen.X.p()), out.string().c_str(),
                labels_path_for(out).string().c_str());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int run_bench(const SharedFlags& flags, RunConfig base,
              const std::vector<std::string>& tables) {
  if (const int rc = validate_k(flags.k_list); rc != 0) return rc;
  base.restarts = flags.restarts;
  base.seed = flags.seed;
  base.fcm.seed = flags.seed;
  base.hsfc.seed = flags.seed;

  std::vector<BenchRow> rows;
  try {
    if (!flags.input.empty()) {
      const DataMatrix X = load_input(flags);
      const std::string name = fs::path(flags.input).stem().string();
      for (const int k : flags.k_list) {
        rows.push_back(bench_one(X, name, k, base));
        std::printf("%s K=%d: SS_HSFC=%.6f SS_FCM=%.6f ARI=%.4f\n",
                    name.c_str(), k, rows.back().ss_hsfc, rows.back().ss_fcm,
                    rows.back().ari_between);
      }
    } else {
      for (const auto& code : tables) {
        TableSpec spec = spec_from_code(code, flags.seed);
        const GeneratedTable gen = generate(spec);
        for (const int k : flags.k_list) {
          rows.push_back(bench_one(gen.X, code, k, base, &gen.truth));
          std::printf("%s K=%d: SS_HSFC=%.6f SS_FCM=%.6f ARI=%.4f\n",
                      code.c_str(), k, rows.back().ss_hsfc, rows.back().ss_fcm,
                      rows.back().ari_between);
        }
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const CsvError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  }

  const std::string stem = flags.output.empty() ? "bench_results" : flags.output;
  try {
    write_bench_csv(stem + ".csv", rows);
    write_bench_json(stem + ".json", rows);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return 0;
}

int run_eval(const SharedFlags& flags, const std::string& result_path,
             const std::string& truth_path) {
  std::optional<StoredResult> stored;
  std::optional<DataMatrix> X;
  try {
    stored.emplace(read_result_json(result_path));
    X.emplace(load_input(flags));
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  }

  try {
    validate_dims(*X, stored->centroids, stored->memberships);
    const HardPartition part = crisp(stored->memberships);
    const double wp = partition_within_ss(*X, part);
    const double fuzzy = within_ss(*X, stored->memberships, stored->centroids);
    std::printf("W(P) of crisped partition: %.9f\n", wp);
    std::printf("fuzzy within-SS at stored (U, G): %.9f\n", fuzzy);
    std::printf("crisped labels:");
    for (const int l : part.labels) std::printf(" %d", l);
    std::printf("\n");
    if (!truth_path.empty()) {
      const std::vector<int> labels = load_labels_csv(truth_path);
      HardPartition truth;
      truth.labels = labels;
      truth.K = 1 + *std::max_element(labels.begin(), labels.end());
      std::printf("RI  vs truth: %.6f\n", rand_index(part, truth));
      std::printf("ARI vs truth: %.6f\n", adjusted_rand_index(part, truth));
    }
    return 0;
  } catch (const CsvError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy clustering by hyperbolic smoothing, with an FCM baseline"};
  app.require_subcommand(1);

  SharedFlags flags;
  RunConfig cfg;

  // fit
  auto* fit = app.add_subcommand("fit", "fit one method on a CSV data set");
  std::string method = "fcm";
  fit->add_option("--method", method, "fcm | hsfc")
      ->check(CLI::IsMember({"fcm", "hsfc"}))
      ->required();
  add_shared(fit, flags, /*need_input=*/true);
  add_fcm_flags(fit, cfg.fcm);
  add_hsfc_flags(fit, cfg.hsfc);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a simulated table");
  std::string table;
  TableSpec explicit_spec;
  bool use_explicit = false;
  gen->add_option("--table", table, "table code T1..T16");
  gen->add_option("--out", flags.output, "output CSV path (labels go next to it)");
  gen->add_option("--seed", flags.seed, "RNG seed");
  gen->add_option("--n", explicit_spec.n, "objects (explicit factors)");
  gen->add_option("--clusters", explicit_spec.K, "clusters (explicit factors)");
  gen->add_option("--equal-card", explicit_spec.equal_card, "equal cardinalities");
  gen->add_option("--equal-sd", explicit_spec.equal_sd, "equal spreads");
  gen->add_option("--p", explicit_spec.p, "feature count");
  gen->add_option("--separation", explicit_spec.separation, "center spacing");

  // bench
  auto* bench = app.add_subcommand("bench", "compare both methods");
  std::vector<std::string> tables;
  bench->add_option("--tables", tables, "table codes, e.g. T1,T9")->delimiter(',');
  add_shared(bench, flags, /*need_input=*/false);
  add_fcm_flags(bench, cfg.fcm);
  add_hsfc_flags(bench, cfg.hsfc);

  // eval
  auto* eval = app.add_subcommand("eval", "re-evaluate a stored result JSON");
  std::string result_path, truth_path;
  eval->add_option("--result", result_path, "result JSON from fit")->required();
  eval->add_option("--truth", truth_path, "ground-truth labels CSV");
  add_shared(eval, flags, /*need_input=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadFlags;
  }

  if (fit->parsed()) {
    cfg.method = method == "fcm" ? MethodTag::FCM : MethodTag::HSFC;
    return run_fit(flags, cfg);
  }
  if (gen->parsed()) {
    use_explicit = table.empty();
    if (use_explicit && gen->count("--n") == 0) {
      std::cerr << "error: need --table or explicit factors (--n ...)\n";
      return kExitBadFlags;
    }
    return run_generate(flags, table, explicit_spec, use_explicit);
  }
  if (bench->parsed()) {
    if (tables.empty() && flags.input.empty()) {
      std::cerr << "error: need --tables or --input\n";
      return kExitBadFlags;
    }
    return run_bench(flags, cfg, tables);
  }
  if (eval->parsed()) {
    return run_eval(flags, result_path, truth_path);
  }
  return kExitBadFlags;
}

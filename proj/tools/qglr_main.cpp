#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qglr/errors.hpp"
#include "qglr/harness.hpp"
#include "qglr/lrmodel.hpp"
#include "qglr/optimizers.hpp"
#include "qglr/packedsim.hpp"
#include "qglr/polyapprox.hpp"

namespace {

using namespace qglr;

struct DataArgs {
  std::string path;
  std::string format = "csv";
  std::string label_col = "0";
  bool no_header = false;
};

void add_data_options(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--data", args.path, "input data file")->required();
  cmd->add_option("--format", args.format, "csv or libsvm")
      ->check(CLI::IsMember({"csv", "libsvm"}));
  cmd->add_option("--label-col", args.label_col,
                  "label column name or 0-based index (csv)");
  cmd->add_flag("--no-header", args.no_header, "csv file has no header row");
}

LabeledData load_data(const DataArgs& args) {
  RawTable table = args.format == "libsvm"
                       ? load_libsvm(args.path)
                       : load_csv(args.path, args.label_col, !args.no_header);
  return normalize(table);
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write " + out_path);
  out << text;
}

bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

int run_train(const DataArgs& data_args, const std::string& method_name,
              int iterations, const std::string& out_path) {
  const LabeledData data = load_data(data_args);
  const Method method = method_from_name(method_name);
  TrainOptions opts;
  opts.iterations = iterations;

  TrainTrace trace;
  if (method_is_multiclass(method)) {
    trace = train(method, data.dataset, data.class_labels, data.class_count, opts);
    if (!all_finite(trace.final_weight_matrix.data()))
      throw NumericError("training produced non-finite weights");
  } else {
    trace = train(method, data.dataset, data.binary(), opts);
    if (!all_finite(trace.final_weights))
      throw NumericError("training produced non-finite weights");
  }

  std::ostringstream csv;
  write_trace_csv(trace, csv);
  write_text(out_path, csv.str());
  return 0;
}

int run_compare(const DataArgs& data_args, const std::string& methods_csv,
                int iterations, int folds, std::uint64_t seed,
                const std::string& out_path) {
  const LabeledData data = load_data(data_args);
  std::vector<Method> methods;
  std::stringstream ss(methods_csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) methods.push_back(method_from_name(tok));

  const CvPlan plan = kfold_split(data.dataset.sample_count(), folds, seed);
  const ComparisonReport report = compare_methods(data, methods, iterations, plan);

  std::ostringstream csv;
  write_report_csv(report, csv);
  write_text(out_path, csv.str());
  return 0;
}

int run_fit_poly(int degree, double lo, double hi, std::size_t samples) {
  const SigmoidPoly poly = fit_least_squares(degree, lo, hi, samples);
  std::printf("c0,c1,c3,c5\n%.17g,%.17g,%.17g,%.17g\n", poly.c0, poly.c1,
              poly.c3, poly.c5);
  return 0;
}

int run_simulate_packed(const DataArgs& data_args, int iterations,
                        std::size_t slots, bool audit_flag,
                        const std::string& out_path) {
  const LabeledData data = load_data(data_args);
  if (!data.is_binary)
    throw InvalidInputError("packed simulation expects binary labels");

  const DiagonalBound bound =
      quadratic_bound(fixed_hessian_bound_binary(data.dataset.x));
  const std::size_t slot_count =
      slots != 0 ? slots
                 : default_slot_count(data.dataset.sample_count(),
                                      data.dataset.param_count());
  const PackedTrainingContext ctx =
      build_context(data.dataset, data.binary(), bound, slot_count);
  const SigmoidPoly poly = paper_poly();
  const PackedTrainResult result = train_packed(ctx, poly, iterations, audit_flag);
  if (!all_finite(result.trace.final_weights))
    throw NumericError("packed training produced non-finite weights");

  std::ostringstream csv;
  write_trace_csv(result.trace, csv);
  write_text(out_path, csv.str());
  std::printf("rot=%llu,add=%llu,mul=%llu\n",
              static_cast<unsigned long long>(result.ops.rot),
              static_cast<unsigned long long>(result.ops.add),
              static_cast<unsigned long long>(result.ops.mul));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic-gradient logistic regression trainer"};
  app.require_subcommand(1);

  DataArgs train_data;
  std::string train_method = "nag+";
  int train_iterations = 30;
  std::string train_out;
  CLI::App* train_cmd = app.add_subcommand("train", "train one method, emit the trace CSV");
  add_data_options(train_cmd, train_data);
  train_cmd->add_option("--method", train_method,
                        "nag|nag+|adagrad|adagrad+|nag+multi|adagrad+multi");
  train_cmd->add_option("--iterations", train_iterations, "iteration count")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", train_out, "trace CSV path (default stdout)");

  DataArgs cmp_data;
  std::string cmp_methods = "nag,nag+";
  int cmp_iterations = 30;
  int cmp_folds = 5;
  std::uint64_t cmp_seed = 42;
  std::string cmp_out;
  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "cross-validated method comparison, emit the report CSV");
  add_data_options(cmp_cmd, cmp_data);
  cmp_cmd->add_option("--methods", cmp_methods, "comma-separated method list");
  cmp_cmd->add_option("--iterations", cmp_iterations, "iteration count")
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--folds", cmp_folds, "fold count")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", cmp_seed, "shuffle seed");
  cmp_cmd->add_option("--out", cmp_out, "report CSV path (default stdout)");

  int fit_degree = 5;
  double fit_lo = -8.0, fit_hi = 8.0;
  std::size_t fit_samples = 1000;
  CLI::App* fit_cmd =
      app.add_subcommand("fit-poly", "least-squares sigmoid fit, print c0,c1,c3,c5");
  fit_cmd->add_option("--degree", fit_degree, "1, 3 or 5");
  fit_cmd->add_option("--lo", fit_lo, "domain lower end");
  fit_cmd->add_option("--hi", fit_hi, "domain upper end");
  fit_cmd->add_option("--samples", fit_samples, "uniform sample count");

  DataArgs sim_data;
  int sim_iterations = 3;
  std::size_t sim_slots = 0;
  bool sim_audit = false;
  std::string sim_out;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate-packed", "slot-packed training loop, emit trace + op counts");
  add_data_options(sim_cmd, sim_data);
  sim_cmd->add_option("--iterations", sim_iterations, "iteration count")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--slots", sim_slots,
                      "slot count (power of two; default: smallest that fits)");
  sim_cmd->add_flag("--audit-primitives", sim_audit,
                    "fail on any slot access outside rot/add/mul");
  sim_cmd->add_option("--out", sim_out, "trace CSV path (default stdout)");

  try {
    app.parse(argc, argv);
    if (train_cmd->parsed())
      return run_train(train_data, train_method, train_iterations, train_out);
    if (cmp_cmd->parsed())
      return run_compare(cmp_data, cmp_methods, cmp_iterations, cmp_folds,
                         cmp_seed, cmp_out);
    if (fit_cmd->parsed())
      return run_fit_poly(fit_degree, fit_lo, fit_hi, fit_samples);
    if (sim_cmd->parsed())
      return run_simulate_packed(sim_data, sim_iterations, sim_slots, sim_audit,
                                 sim_out);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const qglr::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

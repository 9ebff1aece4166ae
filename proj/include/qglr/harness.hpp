#ifndef QGLR_HARNESS_HPP
#define QGLR_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qglr/dataset.hpp"
#include "qglr/optimizers.hpp"

namespace qglr {

// Rectangular numeric table straight off disk, label column designated.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;  // label value included, at label_column
  std::size_t label_column = 0;

  std::size_t feature_count() const { return column_names.size() - 1; }
};

// Header line of column names, comma-separated numeric rows. label_col is a
// column name or a 0-based index. With has_header=false columns are named
// c0..cN.
RawTable load_csv(const std::string& path, const std::string& label_col,
                  bool has_header = true);

// "label idx:value idx:value ..." with 1-based indices; missing indices
// densify to zero across the whole file's max index.
RawTable load_libsvm(const std::string& path);

// Normalized dataset plus the label views the methods consume. For two-value
// label sets both views are usable; otherwise only the class indices.
struct LabeledData {
  Dataset dataset;
  bool is_binary = false;
  Vector labels_pm1;             // filled when is_binary
  std::vector<int> class_labels; // always filled, indices 0..c-1
  int class_count = 0;

  BinaryLabels binary() const;
};

// Per-feature min-max scaling to [0,1] (constant columns pinned to 0), bias
// column prepended, labels mapped to +-1 (two classes) or 0..c-1 indices.
LabeledData normalize(const RawTable& table);

// Fold assignment: seeded shuffle, then round-robin. Deterministic across
// platforms (no std::shuffle / std::uniform_int_distribution).
struct CvPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> fold_of_row;

  std::vector<std::size_t> fold_rows(int fold) const;
  std::vector<std::size_t> complement_rows(int fold) const;
};

CvPlan kfold_split(std::size_t n, int k, std::uint64_t seed);

struct FoldResult {
  std::string method;
  int fold = 0;
  double accuracy = 0.0;
  double auc = 0.0;
  TrainTrace trace;  // training-split trace
};

struct MethodSummary {
  std::string method;
  double mean_accuracy = 0.0;
  double mean_auc = 0.0;
  Vector mean_mle_per_iteration;
};

struct ComparisonReport {
  std::uint64_t seed = 0;
  int folds = 0;
  std::size_t samples = 0;
  std::size_t features = 0;
  int iterations = 0;
  std::vector<FoldResult> fold_results;
  std::vector<MethodSummary> summaries;
};

// Trains every method on each fold's training split, scores the held-out
// split. Binary methods only: AUC has no multiclass reading here.
ComparisonReport compare_methods(const LabeledData& data,
                                 const std::vector<Method>& methods,
                                 int iterations, const CvPlan& cv,
                                 const TrainOptions& base_opts = {});

// "method,fold,accuracy,auc" rows followed by fold=mean rows; a comment
// header carries seed and data shape. Byte-stable for identical inputs.
void write_report_csv(const ComparisonReport& report, std::ostream& out);

// Linearly separable features in [0,1]^d with a fraction of labels flipped.
// Fully deterministic for a given spec.
struct SyntheticSpec {
  std::size_t n = 500;
  std::size_t d = 10;
  double label_noise = 0.1;
  std::uint64_t seed = 42;
};

LabeledData make_synthetic_binary(const SyntheticSpec& spec);

}  // namespace qglr

#endif

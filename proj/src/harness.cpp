#include "qglr/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "qglr/errors.hpp"
#include "qglr/lrmodel.hpp"

namespace qglr {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& field, long line_no) {
  const std::string t = strip(field);
  if (t.empty()) throw ParseError("empty numeric field", line_no);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw ParseError("trailing junk in number '" + t + "'", line_no);
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + t + "'", line_no);
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range: '" + t + "'", line_no);
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

RawTable load_csv(const std::string& path, const std::string& label_col,
                  bool has_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  RawTable table;
  std::string line;
  long line_no = 0;
  std::size_t width = 0;

  if (has_header) {
    if (!std::getline(in, line)) throw ParseError("empty file: " + path);
    ++line_no;
    for (const std::string& name : split_csv_line(line))
      table.column_names.push_back(strip(name));
    width = table.column_names.size();
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (width == 0) {
      width = fields.size();
      for (std::size_t j = 0; j < width; ++j)
        table.column_names.push_back("c" + std::to_string(j));
    }
    if (fields.size() != width)
      throw ParseError("row has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(width),
                       line_no);
    std::vector<double> row;
    row.reserve(width);
    for (const std::string& f : fields) row.push_back(parse_number(f, line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw ParseError("no data rows in " + path);

  // Resolve the label column by name first, then as an index.
  auto found = std::find(table.column_names.begin(), table.column_names.end(),
                         strip(label_col));
  if (found != table.column_names.end()) {
    table.label_column =
        static_cast<std::size_t>(found - table.column_names.begin());
  } else {
    std::size_t idx = 0;
    const std::string t = strip(label_col);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
    if (ec != std::errc{} || ptr != t.data() + t.size() ||
        idx >= table.column_names.size())
      throw InvalidInputError("label column '" + label_col + "' not found");
    table.label_column = idx;
  }
  if (table.column_names.size() < 2)
    throw InvalidInputError("table needs at least one feature besides the label");
  return table;
}

RawTable load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<double> labels;
  std::vector<std::vector<std::pair<std::size_t, double>>> sparse_rows;
  std::size_t max_index = 0;
  std::string line;
  long line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ss(t);
    std::string tok;
    if (!(ss >> tok)) throw ParseError("missing label", line_no);
    labels.push_back(parse_number(tok, line_no));
    std::vector<std::pair<std::size_t, double>> entries;
    while (ss >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError("expected index:value, got '" + tok + "'", line_no);
      const double idx_val = parse_number(tok.substr(0, colon), line_no);
      const std::size_t idx = static_cast<std::size_t>(idx_val);
      if (idx_val != static_cast<double>(idx) || idx == 0)
        throw ParseError("feature index must be a positive integer", line_no);
      entries.emplace_back(idx, parse_number(tok.substr(colon + 1), line_no));
      max_index = std::max(max_index, idx);
    }
    sparse_rows.push_back(std::move(entries));
  }
  if (labels.empty()) throw ParseError("no data rows in " + path);
  if (max_index == 0) throw ParseError("no features in " + path);

  RawTable table;
  table.label_column = 0;
  table.column_names.push_back("label");
  for (std::size_t j = 1; j <= max_index; ++j)
    table.column_names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<double> row(max_index + 1, 0.0);
    row[0] = labels[i];
    for (const auto& [idx, val] : sparse_rows[i]) row[idx] = val;
    table.rows.push_back(std::move(row));
  }
  return table;
}

BinaryLabels LabeledData::binary() const {
  if (!is_binary)
    throw InvalidInputError("dataset labels are not binary");
  return BinaryLabels(labels_pm1);
}

LabeledData normalize(const RawTable& table) {
  if (table.rows.empty()) throw InvalidInputError("empty table");
  const std::size_t n = table.rows.size();
  const std::size_t width = table.column_names.size();
  if (table.label_column >= width) throw InvalidInputError("bad label column");

  // Feature columns in table order, label column skipped.
  std::vector<std::size_t> feature_cols;
  for (std::size_t j = 0; j < width; ++j)
    if (j != table.label_column) feature_cols.push_back(j);
  const std::size_t d = feature_cols.size();

  Matrix features(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t src = feature_cols[j];
    double lo = table.rows[0][src], hi = table.rows[0][src];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, table.rows[i][src]);
      hi = std::max(hi, table.rows[i][src]);
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < n; ++i)
      features(i, j) = span == 0.0 ? 0.0 : (table.rows[i][src] - lo) / span;
  }

  LabeledData out;
  out.dataset = Dataset::from_features(features);

  std::map<double, int> distinct;
  for (std::size_t i = 0; i < n; ++i) distinct.emplace(table.rows[i][table.label_column], 0);
  int next = 0;
  for (auto& [value, index] : distinct) index = next++;
  out.class_count = next;
  if (out.class_count < 2) throw InvalidInputError("labels contain a single class");

  out.class_labels.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.class_labels[i] = distinct[table.rows[i][table.label_column]];

  out.is_binary = out.class_count == 2;
  if (out.is_binary) {
    out.labels_pm1.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      out.labels_pm1[i] = out.class_labels[i] == 0 ? -1.0 : 1.0;
  }
  return out;
}

namespace {

// Portable bounded draw + Fisher-Yates so fold layouts do not depend on the
// standard library's distribution internals.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

std::vector<std::size_t> CvPlan::fold_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_row.size(); ++i)
    if (fold_of_row[i] == fold) rows.push_back(i);
  return rows;
}

std::vector<std::size_t> CvPlan::complement_rows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of_row.size(); ++i)
    if (fold_of_row[i] != fold) rows.push_back(i);
  return rows;
}

CvPlan kfold_split(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidInputError("fold count must be >= 2");
  if (static_cast<std::size_t>(k) > n)
    throw InvalidInputError("fold count exceeds sample count");

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[bounded_draw(rng, i)]);

  CvPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold_of_row.assign(n, 0);
  for (std::size_t pos = 0; pos < n; ++pos)
    plan.fold_of_row[perm[pos]] = static_cast<int>(pos % static_cast<std::size_t>(k));
  return plan;
}

ComparisonReport compare_methods(const LabeledData& data,
                                 const std::vector<Method>& methods,
                                 int iterations, const CvPlan& cv,
                                 const TrainOptions& base_opts) {
  if (methods.empty()) throw InvalidInputError("no methods to compare");
  if (!data.is_binary)
    throw InvalidInputError("method comparison runs on binary datasets");
  for (Method m : methods)
    if (method_is_multiclass(m))
      throw InvalidInputError("method comparison runs binary methods only");
  if (cv.fold_of_row.size() != data.dataset.sample_count())
    throw InvalidInputError("CV plan does not match dataset size");

  const BinaryLabels all_labels = data.binary();

  ComparisonReport report;
  report.seed = cv.seed;
  report.folds = cv.k;
  report.samples = data.dataset.sample_count();
  report.features = data.dataset.feature_count();
  report.iterations = iterations;

  TrainOptions opts = base_opts;
  opts.iterations = iterations;

  for (Method method : methods) {
    MethodSummary summary;
    summary.method = method_name(method);
    summary.mean_mle_per_iteration.assign(iterations, 0.0);
    for (int fold = 0; fold < cv.k; ++fold) {
      const std::vector<std::size_t> train_rows = cv.complement_rows(fold);
      const std::vector<std::size_t> test_rows = cv.fold_rows(fold);
      const Dataset train_ds = data.dataset.subset(train_rows);
      const BinaryLabels train_y = all_labels.subset(train_rows);
      const Dataset test_ds = data.dataset.subset(test_rows);
      const BinaryLabels test_y = all_labels.subset(test_rows);

      FoldResult result;
      result.method = summary.method;
      result.fold = fold;
      result.trace = train(method, train_ds, train_y, opts);

      const Vector scores = decision_scores(test_ds, result.trace.final_weights);
      result.accuracy = accuracy(scores, test_y);
      result.auc = auc(scores, test_y);

      summary.mean_accuracy += result.accuracy;
      summary.mean_auc += result.auc;
      for (int it = 0; it < iterations; ++it)
        summary.mean_mle_per_iteration[it] += result.trace.records[it].mle;
      report.fold_results.push_back(std::move(result));
    }
    summary.mean_accuracy /= cv.k;
    summary.mean_auc /= cv.k;
    for (double& v : summary.mean_mle_per_iteration) v /= cv.k;
    report.summaries.push_back(std::move(summary));
  }
  return report;
}

void write_report_csv(const ComparisonReport& report, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "# seed=%llu,folds=%d,samples=%zu,features=%zu,iterations=%d\n",
                static_cast<unsigned long long>(report.seed), report.folds,
                report.samples, report.features, report.iterations);
  out << buf;
  out << "method,fold,accuracy,auc\n";
  for (const FoldResult& r : report.fold_results) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f\n", r.method.c_str(), r.fold,
                  r.accuracy, r.auc);
    out << buf;
  }
  for (const MethodSummary& s : report.summaries) {
    std::snprintf(buf, sizeof buf, "%s,mean,%.6f,%.6f\n", s.method.c_str(),
                  s.mean_accuracy, s.mean_auc);
    out << buf;
  }
}

LabeledData make_synthetic_binary(const SyntheticSpec& spec) {
  if (spec.n < 2 || spec.d < 1) throw InvalidInputError("bad synthetic shape");
  std::mt19937_64 rng(spec.seed);
  auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  Matrix features(spec.n, spec.d);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.d; ++j) features(i, j) = uniform01();

  Vector true_w(spec.d);
  for (std::size_t j = 0; j < spec.d; ++j) true_w[j] = 2.0 * uniform01() - 1.0;

  Vector score(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < spec.d; ++j) s += features(i, j) * true_w[j];
    score[i] = s;
  }
  Vector sorted = score;
  std::sort(sorted.begin(), sorted.end());
  const double threshold = sorted[spec.n / 2];

  LabeledData out;
  out.dataset = Dataset::from_features(features);
  out.is_binary = true;
  out.class_count = 2;
  out.labels_pm1.resize(spec.n);
  out.class_labels.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    double label = score[i] >= threshold ? 1.0 : -1.0;
    if (uniform01() < spec.label_noise) label = -label;
    out.labels_pm1[i] = label;
    out.class_labels[i] = label > 0.0 ? 1 : 0;
  }
  return out;
}

}  // namespace qglr

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "qglr/errors.hpp"
#include "qglr/harness.hpp"
#include "qglr/lrmodel.hpp"

using namespace qglr;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "harness_test_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path, std::ios::binary);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv loading") {
  SUBCASE("header, label by name") {
    TempFile f("y,a\n1,0.5\n0,0.25\n");
    const RawTable t = load_csv(f.path, "y");
    CHECK(t.column_names == std::vector<std::string>{"y", "a"});
    CHECK(t.label_column == 0);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<double>{1.0, 0.5});
    CHECK(t.rows[1] == std::vector<double>{0.0, 0.25});
  }
  SUBCASE("label by index and headerless files") {
    TempFile f("1,0.5,7\n0,0.25,9\n");
    const RawTable t = load_csv(f.path, "2", false);
    CHECK(t.label_column == 2);
    CHECK(t.column_names == std::vector<std::string>{"c0", "c1", "c2"});
  }
  SUBCASE("empty file") {
    TempFile f("");
    CHECK_THROWS_AS(load_csv(f.path, "y"), ParseError);
  }
  SUBCASE("ragged row carries its line number") {
    TempFile f("y,a\n1,0.5\n0\n");
    try {
      load_csv(f.path, "y");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("non-numeric cell") {
    TempFile f("y,a\n1,x\n");
    CHECK_THROWS_AS(load_csv(f.path, "y"), ParseError);
  }
  SUBCASE("unknown label column") {
    TempFile f("y,a\n1,0.5\n");
    CHECK_THROWS_AS(load_csv(f.path, "zz"), InvalidInputError);
  }
}

TEST_CASE("libsvm loading") {
  SUBCASE("sparse densification") {
    TempFile f("+1 2:0.5\n-1 1:1 3:2\n");
    const RawTable t = load_libsvm(f.path);
    CHECK(t.label_column == 0);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<double>{1.0, 0.0, 0.5, 0.0});
    CHECK(t.rows[1] == std::vector<double>{-1.0, 1.0, 0.0, 2.0});
  }
  SUBCASE("empty and malformed files") {
    TempFile empty("");
    CHECK_THROWS_AS(load_libsvm(empty.path), ParseError);
    TempFile bad("+1 junk\n");
    CHECK_THROWS_AS(load_libsvm(bad.path), ParseError);
    TempFile zero_index("+1 0:1\n");
    CHECK_THROWS_AS(load_libsvm(zero_index.path), ParseError);
  }
}

TEST_CASE("normalization") {
  SUBCASE("min-max scaling and the bias column") {
    RawTable t;
    t.column_names = {"y", "a"};
    t.label_column = 0;
    t.rows = {{1.0, 2.0}, {0.0, 4.0}, {1.0, 6.0}};
    const LabeledData data = normalize(t);
    CHECK(data.dataset.x(0, 0) == 1.0);
    CHECK(data.dataset.x(0, 1) == 0.0);
    CHECK(data.dataset.x(1, 1) == 0.5);
    CHECK(data.dataset.x(2, 1) == 1.0);
    CHECK(data.is_binary);
    CHECK(data.labels_pm1 == Vector{1.0, -1.0, 1.0});
  }
  SUBCASE("constant columns pin to zero") {
    RawTable t;
    t.column_names = {"y", "a"};
    t.label_column = 0;
    t.rows = {{0.0, 7.0}, {1.0, 7.0}};
    const LabeledData data = normalize(t);
    CHECK(data.dataset.x(0, 1) == 0.0);
    CHECK(data.dataset.x(1, 1) == 0.0);
  }
  SUBCASE("multiclass labels map to dense indices") {
    RawTable t;
    t.column_names = {"y", "a"};
    t.label_column = 0;
    t.rows = {{10.0, 0.1}, {20.0, 0.2}, {30.0, 0.3}, {20.0, 0.4}};
    const LabeledData data = normalize(t);
    CHECK_FALSE(data.is_binary);
    CHECK(data.class_count == 3);
    CHECK(data.class_labels == std::vector<int>{0, 1, 2, 1});
    CHECK_THROWS_AS(data.binary(), InvalidInputError);
  }
  SUBCASE("single-class labels rejected") {
    RawTable t;
    t.column_names = {"y", "a"};
    t.label_column = 0;
    t.rows = {{1.0, 0.1}, {1.0, 0.2}};
    CHECK_THROWS_AS(normalize(t), InvalidInputError);
  }
  SUBCASE("idempotent on already-normalized features") {
    SyntheticSpec spec;
    spec.n = 40;
    spec.d = 3;
    spec.seed = 5;
    const LabeledData data = make_synthetic_binary(spec);
    RawTable t;
    t.column_names = {"y", "a", "b", "c"};
    t.label_column = 0;
    for (std::size_t i = 0; i < 40; ++i) {
      // normalized features back into a raw table
      t.rows.push_back({data.labels_pm1[i] > 0 ? 1.0 : 0.0,
                        data.dataset.x(i, 1), data.dataset.x(i, 2),
                        data.dataset.x(i, 3)});
    }
    const LabeledData again = normalize(t);
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 1; j < 4; ++j)
        CHECK(std::abs(again.dataset.x(i, j) - data.dataset.x(i, j)) <= 1e-15);
  }
}

TEST_CASE("k-fold splitting") {
  SUBCASE("even folds") {
    const CvPlan plan = kfold_split(10, 5, 42);
    for (int fold = 0; fold < 5; ++fold) CHECK(plan.fold_rows(fold).size() == 2);
  }
  SUBCASE("uneven remainder spreads one extra row") {
    const CvPlan plan = kfold_split(11, 5, 42);
    std::vector<std::size_t> sizes;
    for (int fold = 0; fold < 5; ++fold) sizes.push_back(plan.fold_rows(fold).size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{2, 2, 2, 2, 3});
  }
  SUBCASE("same seed reproduces the assignment, different seed moves it") {
    const CvPlan a = kfold_split(50, 5, 7);
    const CvPlan b = kfold_split(50, 5, 7);
    const CvPlan c = kfold_split(50, 5, 8);
    CHECK(a.fold_of_row == b.fold_of_row);
    CHECK(a.fold_of_row != c.fold_of_row);
  }
  SUBCASE("folds partition the rows") {
    const CvPlan plan = kfold_split(23, 4, 3);
    std::set<std::size_t> seen;
    for (int fold = 0; fold < 4; ++fold) {
      for (std::size_t row : plan.fold_rows(fold)) {
        CHECK(seen.insert(row).second);  // pairwise disjoint
      }
    }
    CHECK(seen.size() == 23);
    // complement really is the complement
    const auto train_rows = plan.complement_rows(1);
    const auto test_rows = plan.fold_rows(1);
    CHECK(train_rows.size() + test_rows.size() == 23);
  }
  SUBCASE("bad fold counts rejected") {
    CHECK_THROWS_AS(kfold_split(5, 6, 1), InvalidInputError);
    CHECK_THROWS_AS(kfold_split(5, 1, 1), InvalidInputError);
  }
}

TEST_CASE("synthetic data generator") {
  SyntheticSpec spec;
  spec.n = 200;
  spec.d = 6;
  spec.seed = 9;
  const LabeledData a = make_synthetic_binary(spec);
  const LabeledData b = make_synthetic_binary(spec);
  CHECK(a.dataset.x == b.dataset.x);
  CHECK(a.labels_pm1 == b.labels_pm1);
  CHECK(a.dataset.sample_count() == 200);
  CHECK(a.dataset.feature_count() == 6);
  int positives = 0;
  for (double v : a.labels_pm1)
    if (v > 0) ++positives;
  CHECK(positives > 50);
  CHECK(positives < 150);
}

TEST_CASE("method comparison") {
  SyntheticSpec spec;
  spec.n = 80;
  spec.d = 4;
  spec.seed = 11;
  const LabeledData data = make_synthetic_binary(spec);

  SUBCASE("single method, two folds") {
    const CvPlan plan = kfold_split(80, 2, 42);
    const ComparisonReport report =
        compare_methods(data, {Method::nag_enhanced}, 5, plan);
    CHECK(report.fold_results.size() == 2);
    CHECK(report.summaries.size() == 1);
    for (const FoldResult& r : report.fold_results) {
      CHECK(r.accuracy >= 0.0);
      CHECK(r.accuracy <= 1.0);
      CHECK(r.auc >= 0.0);
      CHECK(r.auc <= 1.0);
      CHECK(r.trace.records.size() == 5);
    }
  }
  SUBCASE("summary means equal recomputed means of the fold rows") {
    const CvPlan plan = kfold_split(80, 4, 42);
    const ComparisonReport report =
        compare_methods(data, {Method::nag, Method::nag_enhanced}, 4, plan);
    for (const MethodSummary& s : report.summaries) {
      double acc = 0.0, auc_sum = 0.0;
      int count = 0;
      for (const FoldResult& r : report.fold_results) {
        if (r.method != s.method) continue;
        acc += r.accuracy;
        auc_sum += r.auc;
        ++count;
      }
      CHECK(count == 4);
      CHECK(s.mean_accuracy == acc / 4.0);
      CHECK(s.mean_auc == auc_sum / 4.0);
    }
  }
  SUBCASE("enhanced mean trace dominates the baseline on synthetic data") {
    const CvPlan plan = kfold_split(80, 5, 42);
    const ComparisonReport report =
        compare_methods(data, {Method::nag, Method::nag_enhanced}, 10, plan);
    const MethodSummary& base = report.summaries[0];
    const MethodSummary& enh = report.summaries[1];
    for (int it = 0; it < 10; ++it)
      CHECK(enh.mean_mle_per_iteration[it] >= base.mean_mle_per_iteration[it]);
  }
  SUBCASE("multiclass methods rejected") {
    const CvPlan plan = kfold_split(80, 2, 42);
    CHECK_THROWS_AS(
        compare_methods(data, {Method::nag_enhanced_multi}, 3, plan),
        InvalidInputError);
  }
}

TEST_CASE("report serialization is byte-stable") {
  SyntheticSpec spec;
  spec.n = 60;
  spec.d = 3;
  spec.seed = 13;
  const LabeledData data = make_synthetic_binary(spec);
  const CvPlan plan = kfold_split(60, 3, 42);
  const ComparisonReport r1 =
      compare_methods(data, {Method::nag, Method::nag_enhanced}, 6, plan);
  const ComparisonReport r2 =
      compare_methods(data, {Method::nag, Method::nag_enhanced}, 6, plan);
  std::ostringstream a, b;
  write_report_csv(r1, a);
  write_report_csv(r2, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# seed=42,folds=3,samples=60,features=3") == 0);
  CHECK(a.str().find("method,fold,accuracy,auc\n") != std::string::npos);
  CHECK(a.str().find("nag+,mean,") != std::string::npos);
}

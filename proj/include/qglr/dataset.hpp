#ifndef QGLR_DATASET_HPP
#define QGLR_DATASET_HPP

#include <cstddef>
#include <vector>

#include "qglr/linalg.hpp"

namespace qglr {

// Design matrix with the bias column of ones at index 0. Feature columns are
// expected in [0,1] after ingestion normalization; the constructor only
// enforces the bias column.
struct Dataset {
  Matrix x;  // n x (1+d)

  Dataset() = default;
  explicit Dataset(Matrix design);

  // Prepends the bias column to a plain feature matrix.
  static Dataset from_features(const Matrix& features);

  std::size_t sample_count() const { return x.rows(); }
  std::size_t feature_count() const { return x.cols() - 1; }  // d
  std::size_t param_count() const { return x.cols(); }        // 1+d

  Dataset subset(const std::vector<std::size_t>& row_indices) const;
};

// Labels constrained to exactly +1/-1.
class BinaryLabels {
 public:
  BinaryLabels() = default;
  explicit BinaryLabels(Vector y);

  // Accepts {0,1} (mapped to {-1,+1}) or {-1,+1} as-is.
  static BinaryLabels from_zero_one_or_pm1(const Vector& raw);

  std::size_t size() const { return y_.size(); }
  double operator[](std::size_t i) const { return y_[i]; }
  const Vector& values() const { return y_; }

  BinaryLabels subset(const std::vector<std::size_t>& row_indices) const;

 private:
  Vector y_;
};

// n x c indicator matrix, one 1 per row.
struct OneHotLabels {
  Matrix y;

  std::size_t sample_count() const { return y.rows(); }
  std::size_t class_count() const { return y.cols(); }

  OneHotLabels subset(const std::vector<std::size_t>& row_indices) const;
};

}  // namespace qglr

#endif

#include "qglr/dataset.hpp"

#include <string>
#include <utility>

#include "qglr/errors.hpp"

namespace qglr {

Dataset::Dataset(Matrix design) : x(std::move(design)) {
  if (x.empty()) throw InvalidInputError("empty design matrix");
  for (std::size_t i = 0; i < x.rows(); ++i)
    if (x(i, 0) != 1.0)
      throw InvalidInputError("design matrix row " + std::to_string(i) +
                              " does not start with a bias 1");
}

Dataset Dataset::from_features(const Matrix& features) {
  if (features.rows() == 0) throw InvalidInputError("empty feature matrix");
  Matrix design(features.rows(), features.cols() + 1);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    design(i, 0) = 1.0;
    for (std::size_t j = 0; j < features.cols(); ++j)
      design(i, j + 1) = features(i, j);
  }
  return Dataset(std::move(design));
}

Dataset Dataset::subset(const std::vector<std::size_t>& row_indices) const {
  Matrix sub(row_indices.size(), x.cols());
  for (std::size_t r = 0; r < row_indices.size(); ++r) {
    if (row_indices[r] >= x.rows()) throw InvalidInputError("subset row out of range");
    for (std::size_t j = 0; j < x.cols(); ++j) sub(r, j) = x(row_indices[r], j);
  }
  return Dataset(std::move(sub));
}

BinaryLabels::BinaryLabels(Vector y) : y_(std::move(y)) {
  if (y_.empty()) throw InvalidInputError("empty label vector");
  for (std::size_t i = 0; i < y_.size(); ++i)
    if (y_[i] != 1.0 && y_[i] != -1.0)
      throw InvalidInputError("binary label at row " + std::to_string(i) +
                              " is not +1/-1");
}

BinaryLabels BinaryLabels::from_zero_one_or_pm1(const Vector& raw) {
  Vector y(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == 1.0)
      y[i] = 1.0;
    else if (raw[i] == 0.0 || raw[i] == -1.0)
      y[i] = -1.0;
    else
      throw InvalidInputError("label at row " + std::to_string(i) +
                              " is not in {0,1} or {-1,+1}");
  }
  return BinaryLabels(std::move(y));
}

BinaryLabels BinaryLabels::subset(const std::vector<std::size_t>& row_indices) const {
  Vector sub(row_indices.size());
  for (std::size_t r = 0; r < row_indices.size(); ++r) {
    if (row_indices[r] >= y_.size()) throw InvalidInputError("subset row out of range");
    sub[r] = y_[row_indices[r]];
  }
  return BinaryLabels(std::move(sub));
}

OneHotLabels OneHotLabels::subset(const std::vector<std::size_t>& row_indices) const {
  OneHotLabels out;
  out.y = Matrix(row_indices.size(), y.cols());
  for (std::size_t r = 0; r < row_indices.size(); ++r) {
    if (row_indices[r] >= y.rows()) throw InvalidInputError("subset row out of range");
    for (std::size_t j = 0; j < y.cols(); ++j) out.y(r, j) = y(row_indices[r], j);
  }
  return out;
}

}  // namespace qglr

#ifndef QGLR_LRMODEL_HPP
#define QGLR_LRMODEL_HPP

#include <functional>
#include <vector>

#include "qglr/dataset.hpp"
#include "qglr/exec.hpp"
#include "qglr/linalg.hpp"

namespace qglr {

// Optional replacement for the exact sigmoid inside gradient computations
// (used by the packed-arithmetic simulation and its cleartext oracle).
using ScalarFn = std::function<double(double)>;

// Numerically stable 1/(1+exp(-z)); saturates instead of overflowing.
double sigmoid(double z);

// l(beta) = -sum_i ln(1 + exp(-y_i beta.x_i)), always <= 0.
double log_likelihood_binary(const Dataset& data, const BinaryLabels& y,
                             const Vector& beta);

// grad l(beta) = sum_i (1 - sigma(y_i beta.x_i)) y_i x_i
Vector gradient_binary(const Dataset& data, const BinaryLabels& y,
                       const Vector& beta, Exec exec = Exec::omp,
                       const ScalarFn* sigma_override = nullptr);

// X^T S X with S_ii = (sigma(y_i beta.x_i) - 1) sigma(y_i beta.x_i).
// At beta = 0 this equals fixed_hessian_bound_binary(X) bit-exactly.
SymmetricMatrix hessian_binary(const Dataset& data, const BinaryLabels& y,
                               const Vector& beta, Exec exec = Exec::omp);

OneHotLabels one_hot_encode(const std::vector<int>& labels, int class_count);
std::vector<int> one_hot_decode(const OneHotLabels& labels);

// Row-stochastic probability matrix of X W^T, softmax with per-row max
// subtraction.
Matrix softmax_probs(const Dataset& data, const Matrix& w, Exec exec = Exec::omp);

// (Y - P)^T X, shaped like W (c x (1+d)).
Matrix gradient_multiclass(const Dataset& data, const OneHotLabels& y,
                           const Matrix& w, Exec exec = Exec::omp);

// sum_i ln P(i, y_i); the multiclass training objective.
double log_likelihood_multiclass(const Dataset& data, const OneHotLabels& y,
                                 const Matrix& w);

// beta.x per sample; thresholding these at 0 is thresholding sigma at 0.5.
Vector decision_scores(const Dataset& data, const Vector& beta);

// Fraction of samples whose sign(score) matches the label (score 0 -> +1).
double accuracy(const Vector& scores, const BinaryLabels& labels);

// Mann-Whitney AUC with average ranks for ties. Throws NumericError when all
// labels belong to one class.
double auc(const Vector& scores, const BinaryLabels& labels);

// Multiclass accuracy: fraction of rows whose argmax logit is the true class.
double accuracy_multiclass(const Dataset& data, const Matrix& w,
                           const std::vector<int>& labels);

}  // namespace qglr

#endif

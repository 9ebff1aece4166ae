#include "qglr/lrmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "qglr/errors.hpp"

namespace qglr {

namespace {

using Index = std::ptrdiff_t;

void check_binary_dims(const Dataset& data, const BinaryLabels& y,
                       const Vector& beta) {
  if (y.size() != data.sample_count())
    throw InvalidInputError("label count does not match sample count");
  if (beta.size() != data.param_count())
    throw InvalidInputError("weight length does not match 1+d");
}

// y_i * beta.x_i for every sample.
Vector margins(const Dataset& data, const BinaryLabels& y, const Vector& beta,
               Exec exec) {
  const Index n = static_cast<Index>(data.sample_count());
  const Index p = static_cast<Index>(data.param_count());
  Vector m(n);
  const Matrix& x = data.x;
#pragma omp parallel for if (exec == Exec::omp && n >= 256)
  for (Index i = 0; i < n; ++i) {
    double dot = 0.0;
    for (Index j = 0; j < p; ++j) dot += x(i, j) * beta[j];
    m[i] = y[i] * dot;
  }
  return m;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_likelihood_binary(const Dataset& data, const BinaryLabels& y,
                             const Vector& beta) {
  check_binary_dims(data, y, beta);
  const Vector m = margins(data, y, beta, Exec::serial);
  double ll = 0.0;
  for (double mi : m) {
    // ln(1 + exp(-m)) without overflow for very negative margins
    ll -= mi < 0.0 ? -mi + std::log1p(std::exp(mi)) : std::log1p(std::exp(-mi));
  }
  return ll;
}

Vector gradient_binary(const Dataset& data, const BinaryLabels& y,
                       const Vector& beta, Exec exec,
                       const ScalarFn* sigma_override) {
  check_binary_dims(data, y, beta);
  const Index n = static_cast<Index>(data.sample_count());
  const Index p = static_cast<Index>(data.param_count());
  const Vector m = margins(data, y, beta, exec);

  Vector factor(n);
#pragma omp parallel for if (exec == Exec::omp && n >= 256)
  for (Index i = 0; i < n; ++i) {
    const double s = sigma_override ? (*sigma_override)(m[i]) : sigmoid(m[i]);
    factor[i] = (1.0 - s) * y[i];
  }

  Vector g(p);
  const Matrix& x = data.x;
#pragma omp parallel for if (exec == Exec::omp && n * p >= 2048)
  for (Index j = 0; j < p; ++j) {
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) sum += factor[i] * x(i, j);
    g[j] = sum;
  }
  return g;
}

SymmetricMatrix hessian_binary(const Dataset& data, const BinaryLabels& y,
                               const Vector& beta, Exec exec) {
  check_binary_dims(data, y, beta);
  const Index n = static_cast<Index>(data.sample_count());
  const Index p = static_cast<Index>(data.param_count());
  const Vector m = margins(data, y, beta, exec);

  Vector s(n);
#pragma omp parallel for if (exec == Exec::omp && n >= 256)
  for (Index i = 0; i < n; ++i) {
    const double sig = sigmoid(m[i]);
    s[i] = (sig - 1.0) * sig;
  }

  SymmetricMatrix h(static_cast<std::size_t>(p));
  const Matrix& x = data.x;
#pragma omp parallel for if (exec == Exec::omp && n * p * p >= 8192)
  for (Index j = 0; j < p; ++j) {
    for (Index k = j; k < p; ++k) {
      double sum = 0.0;
      for (Index i = 0; i < n; ++i) sum += s[i] * x(i, j) * x(i, k);
      h.set(static_cast<std::size_t>(j), static_cast<std::size_t>(k), sum);
    }
  }
  return h;
}

OneHotLabels one_hot_encode(const std::vector<int>& labels, int class_count) {
  if (class_count < 2) throw InvalidInputError("class count must be >= 2");
  if (labels.empty()) throw InvalidInputError("empty label vector");
  OneHotLabels out;
  out.y = Matrix(labels.size(), static_cast<std::size_t>(class_count));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= class_count)
      throw InvalidInputError("class index " + std::to_string(labels[i]) +
                              " out of range at row " + std::to_string(i));
    out.y(i, static_cast<std::size_t>(labels[i])) = 1.0;
  }
  return out;
}

std::vector<int> one_hot_decode(const OneHotLabels& labels) {
  std::vector<int> out(labels.sample_count());
  for (std::size_t i = 0; i < labels.sample_count(); ++i) {
    int where = -1;
    for (std::size_t j = 0; j < labels.class_count(); ++j) {
      if (labels.y(i, j) == 1.0) {
        if (where >= 0) throw InvalidInputError("one-hot row has multiple ones");
        where = static_cast<int>(j);
      } else if (labels.y(i, j) != 0.0) {
        throw InvalidInputError("one-hot entry is not 0/1");
      }
    }
    if (where < 0) throw InvalidInputError("one-hot row has no one");
    out[i] = where;
  }
  return out;
}

Matrix softmax_probs(const Dataset& data, const Matrix& w, Exec exec) {
  if (w.cols() != data.param_count())
    throw InvalidInputError("weight matrix width does not match 1+d");
  const Index n = static_cast<Index>(data.sample_count());
  const Index c = static_cast<Index>(w.rows());
  const Index p = static_cast<Index>(data.param_count());
  Matrix probs(n, c);
  const Matrix& x = data.x;
#pragma omp parallel for if (exec == Exec::omp && n >= 128)
  for (Index i = 0; i < n; ++i) {
    double maxz = -std::numeric_limits<double>::infinity();
    std::vector<double> z(c);
    for (Index k = 0; k < c; ++k) {
      double dot = 0.0;
      for (Index j = 0; j < p; ++j) dot += x(i, j) * w(k, j);
      z[k] = dot;
      maxz = std::max(maxz, dot);
    }
    double denom = 0.0;
    for (Index k = 0; k < c; ++k) {
      z[k] = std::exp(z[k] - maxz);
      denom += z[k];
    }
    for (Index k = 0; k < c; ++k) probs(i, k) = z[k] / denom;
  }
  return probs;
}

Matrix gradient_multiclass(const Dataset& data, const OneHotLabels& y,
                           const Matrix& w, Exec exec) {
  if (y.sample_count() != data.sample_count())
    throw InvalidInputError("one-hot row count does not match sample count");
  if (y.class_count() != w.rows())
    throw InvalidInputError("one-hot class count does not match weight rows");
  const Matrix probs = softmax_probs(data, w, exec);
  const Index n = static_cast<Index>(data.sample_count());
  const Index c = static_cast<Index>(w.rows());
  const Index p = static_cast<Index>(data.param_count());
  Matrix g(c, p);
  const Matrix& x = data.x;
#pragma omp parallel for collapse(2) if (exec == Exec::omp && n * c * p >= 8192)
  for (Index k = 0; k < c; ++k) {
    for (Index j = 0; j < p; ++j) {
      double sum = 0.0;
      for (Index i = 0; i < n; ++i) sum += (y.y(i, k) - probs(i, k)) * x(i, j);
      g(k, j) = sum;
    }
  }
  return g;
}

double log_likelihood_multiclass(const Dataset& data, const OneHotLabels& y,
                                 const Matrix& w) {
  if (y.sample_count() != data.sample_count())
    throw InvalidInputError("one-hot row count does not match sample count");
  if (y.class_count() != w.rows())
    throw InvalidInputError("one-hot class count does not match weight rows");
  const std::size_t n = data.sample_count();
  const std::size_t c = w.rows();
  const std::size_t p = data.param_count();
  double ll = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double maxz = -std::numeric_limits<double>::infinity();
    std::vector<double> z(c);
    for (std::size_t k = 0; k < c; ++k) {
      double dot = 0.0;
      for (std::size_t j = 0; j < p; ++j) dot += data.x(i, j) * w(k, j);
      z[k] = dot;
      maxz = std::max(maxz, dot);
    }
    double denom = 0.0;
    double ztrue = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      denom += std::exp(z[k] - maxz);
      if (y.y(i, k) == 1.0) ztrue = z[k];
    }
    ll += ztrue - maxz - std::log(denom);
  }
  return ll;
}

Vector decision_scores(const Dataset& data, const Vector& beta) {
  if (beta.size() != data.param_count())
    throw InvalidInputError("weight length does not match 1+d");
  const std::size_t n = data.sample_count();
  Vector scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < data.param_count(); ++j)
      dot += data.x(i, j) * beta[j];
    scores[i] = dot;
  }
  return scores;
}

double accuracy(const Vector& scores, const BinaryLabels& labels) {
  if (scores.size() != labels.size())
    throw InvalidInputError("score/label length mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double predicted = scores[i] >= 0.0 ? 1.0 : -1.0;
    if (predicted == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(scores.size());
}

double auc(const Vector& scores, const BinaryLabels& labels) {
  if (scores.size() != labels.size())
    throw InvalidInputError("score/label length mismatch");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] > 0.0) ++pos;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0)
    throw NumericError("AUC undefined: labels contain a single class");

  // Average ranks (ties share the mean of their rank range), then the
  // Mann-Whitney statistic.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  Vector rank(scores.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double rank_sum_pos = 0.0;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] > 0.0) rank_sum_pos += rank[k];
  const double u = rank_sum_pos - 0.5 * static_cast<double>(pos) *
                                      (static_cast<double>(pos) + 1.0);
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

double accuracy_multiclass(const Dataset& data, const Matrix& w,
                           const std::vector<int>& labels) {
  if (labels.size() != data.sample_count())
    throw InvalidInputError("label count does not match sample count");
  const Matrix probs = softmax_probs(data, w, Exec::serial);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.sample_count(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < probs.cols(); ++k)
      if (probs(i, k) > probs(i, best)) best = k;
    if (static_cast<int>(best) == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.sample_count());
}

}  // namespace qglr

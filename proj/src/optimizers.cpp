#include "qglr/optimizers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qglr/errors.hpp"

namespace qglr {

namespace {

double next_alpha(double alpha) {
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * alpha * alpha));
}

double mixing(double alpha0, double alpha1, bool zero_mixing) {
  return zero_mixing ? 0.0 : (1.0 - alpha0) / alpha1;
}

void check_bound(const DiagonalBound& bound, std::size_t param_count) {
  if (bound.size() != param_count)
    throw InvalidInputError("bound length does not match 1+d");
}

}  // namespace

double default_baseline_lr(int t) { return 10.0 / (t + 1.0); }

NagState NagState::zeros(std::size_t param_count) {
  NagState s;
  s.v.assign(param_count, 0.0);
  s.w.assign(param_count, 0.0);
  s.alpha0 = 0.01;
  s.alpha1 = next_alpha(s.alpha0);
  s.iteration = 0;
  return s;
}

MulticlassNagState MulticlassNagState::zeros(std::size_t class_count,
                                             std::size_t param_count) {
  MulticlassNagState s;
  s.v = Matrix(class_count, param_count);
  s.w = Matrix(class_count, param_count);
  s.alpha0 = 0.01;
  s.alpha1 = next_alpha(s.alpha0);
  s.iteration = 0;
  return s;
}

namespace {

// Shared accelerated update on flat coordinate arrays: w_temp = w + dir,
// w = (1-eta) w_temp + eta v, v = w_temp.
void mix_coordinates(Vector& v, Vector& w, const Vector& direction, double eta) {
  for (std::size_t k = 0; k < direction.size(); ++k) {
    const double w_temp = w[k] + direction[k];
    w[k] = (1.0 - eta) * w_temp + eta * v[k];
    v[k] = w_temp;
  }
}

NagState accelerated_update(const NagState& state, const Vector& direction,
                            bool zero_mixing) {
  NagState next = state;
  mix_coordinates(next.v, next.w, direction,
                  mixing(state.alpha0, state.alpha1, zero_mixing));
  next.alpha0 = state.alpha1;
  next.alpha1 = next_alpha(next.alpha0);
  next.iteration = state.iteration + 1;
  return next;
}

MulticlassNagState accelerated_update(const MulticlassNagState& state,
                                      const Matrix& direction, bool zero_mixing) {
  MulticlassNagState next = state;
  mix_coordinates(next.v.data(), next.w.data(), direction.data(),
                  mixing(state.alpha0, state.alpha1, zero_mixing));
  next.alpha0 = state.alpha1;
  next.alpha1 = next_alpha(next.alpha0);
  next.iteration = state.iteration + 1;
  return next;
}

}  // namespace

NagState nag_step_baseline(const NagState& state, const Dataset& data,
                           const BinaryLabels& y, const LrSchedule& lr,
                           const StepOptions& opts) {
  const int count = state.iteration + 1;
  const double alpha_t = (lr ? lr : LrSchedule(default_baseline_lr))(count);
  Vector g = gradient_binary(data, y, state.w, opts.exec, opts.sigma_override);
  for (double& gj : g) gj *= alpha_t;
  return accelerated_update(state, g, opts.zero_mixing);
}

NagState enhanced_nag_step(const NagState& state, const Dataset& data,
                           const BinaryLabels& y, const DiagonalBound& bound,
                           const StepOptions& opts) {
  check_bound(bound, data.param_count());
  const int count = state.iteration + 1;
  const double gamma = 1.0 / (static_cast<double>(data.sample_count()) * count);
  const Vector g =
      gradient_binary(data, y, state.w, opts.exec, opts.sigma_override);
  Vector direction = quadratic_gradient(bound, g);
  for (double& dk : direction) dk *= 1.0 + gamma;
  return accelerated_update(state, direction, opts.zero_mixing);
}

MulticlassNagState enhanced_nag_step(const MulticlassNagState& state,
                                     const Dataset& data, const OneHotLabels& y,
                                     const DiagonalBound& bound,
                                     const StepOptions& opts) {
  check_bound(bound, data.param_count());
  const int count = state.iteration + 1;
  const double gamma = 1.0 / (static_cast<double>(data.sample_count()) * count);
  const Matrix g = gradient_multiclass(data, y, state.w, opts.exec);
  Matrix direction(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      direction(i, j) = (1.0 + gamma) * (bound.b_bar[j] * g(i, j));
  return accelerated_update(state, direction, opts.zero_mixing);
}

AdagradState AdagradState::zeros(std::size_t param_count) {
  AdagradState s;
  s.beta.assign(param_count, 0.0);
  s.accumulator.assign(param_count, 0.0);
  s.iteration = 0;
  return s;
}

MulticlassAdagradState MulticlassAdagradState::zeros(std::size_t class_count,
                                                     std::size_t param_count) {
  MulticlassAdagradState s;
  s.w = Matrix(class_count, param_count);
  s.accumulator = Matrix(class_count, param_count);
  s.iteration = 0;
  return s;
}

AdagradState adagrad_step_baseline(const AdagradState& state, const Dataset& data,
                                   const BinaryLabels& y, double eta, double eps,
                                   const StepOptions& opts) {
  if (eta <= 0.0 || eps < 0.0) throw InvalidInputError("bad adagrad eta/eps");
  const Vector g =
      gradient_binary(data, y, state.beta, opts.exec, opts.sigma_override);
  AdagradState next = state;
  for (std::size_t j = 0; j < g.size(); ++j) {
    next.accumulator[j] += g[j] * g[j];
    next.beta[j] += eta / (eps + std::sqrt(next.accumulator[j])) * g[j];
  }
  next.iteration = state.iteration + 1;
  return next;
}

AdagradState enhanced_adagrad_step(const AdagradState& state, const Dataset& data,
                                   const BinaryLabels& y,
                                   const DiagonalBound& bound, double eta,
                                   double eps, const StepOptions& opts) {
  if (eta <= 0.0 || eps < 0.0) throw InvalidInputError("bad adagrad eta/eps");
  check_bound(bound, data.param_count());
  const Vector g =
      gradient_binary(data, y, state.beta, opts.exec, opts.sigma_override);
  const Vector quad = quadratic_gradient(bound, g);
  AdagradState next = state;
  for (std::size_t j = 0; j < quad.size(); ++j) {
    next.accumulator[j] += quad[j] * quad[j];
    next.beta[j] += (1.0 + eta) / (eps + std::sqrt(next.accumulator[j])) * quad[j];
  }
  next.iteration = state.iteration + 1;
  return next;
}

MulticlassAdagradState enhanced_adagrad_step(const MulticlassAdagradState& state,
                                             const Dataset& data,
                                             const OneHotLabels& y,
                                             const DiagonalBound& bound,
                                             double eta, double eps,
                                             const StepOptions& opts) {
  if (eta <= 0.0 || eps < 0.0) throw InvalidInputError("bad adagrad eta/eps");
  check_bound(bound, data.param_count());
  const Matrix g = gradient_multiclass(data, y, state.w, opts.exec);
  MulticlassAdagradState next = state;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const double quad = bound.b_bar[j] * g(i, j);
      next.accumulator(i, j) += quad * quad;
      // eps inside the root in the matrix-shaped variant
      next.w(i, j) += (1.0 + eta) / std::sqrt(eps + next.accumulator(i, j)) * quad;
    }
  }
  next.iteration = state.iteration + 1;
  return next;
}

bool method_is_multiclass(Method m) {
  return m == Method::nag_enhanced_multi || m == Method::adagrad_enhanced_multi;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::nag: return "nag";
    case Method::nag_enhanced: return "nag+";
    case Method::adagrad: return "adagrad";
    case Method::adagrad_enhanced: return "adagrad+";
    case Method::nag_enhanced_multi: return "nag+multi";
    case Method::adagrad_enhanced_multi: return "adagrad+multi";
  }
  throw InvalidInputError("unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "nag") return Method::nag;
  if (name == "nag+") return Method::nag_enhanced;
  if (name == "adagrad") return Method::adagrad;
  if (name == "adagrad+") return Method::adagrad_enhanced;
  if (name == "nag+multi") return Method::nag_enhanced_multi;
  if (name == "adagrad+multi") return Method::adagrad_enhanced_multi;
  throw InvalidInputError("unknown method name: " + name);
}

void write_trace_csv(const TrainTrace& trace, std::ostream& out) {
  out << "iteration,mle,seconds\n";
  char line[128];
  for (const IterationRecord& r : trace.records) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.6f\n", r.iteration, r.mle,
                  r.seconds);
    out << line;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

TrainTrace train(Method method, const Dataset& data, const BinaryLabels& y,
                 const TrainOptions& opts) {
  if (method_is_multiclass(method))
    throw InvalidInputError("multiclass method on binary labels");
  if (opts.iterations < 1) throw InvalidInputError("iterations must be >= 1");

  StepOptions step_opts;
  step_opts.zero_mixing = opts.zero_mixing;
  step_opts.exec = opts.exec;
  ScalarFn poly_fn;
  if (opts.sigmoid_poly) {
    poly_fn = [poly = *opts.sigmoid_poly](double z) { return poly.eval(z); };
    step_opts.sigma_override = &poly_fn;
  }

  TrainTrace trace;
  trace.records.reserve(opts.iterations);

  const bool enhanced =
      method == Method::nag_enhanced || method == Method::adagrad_enhanced;
  DiagonalBound bound;
  if (enhanced)
    bound = quadratic_bound(fixed_hessian_bound_binary(data.x), opts.bound_epsilon);

  if (method == Method::nag || method == Method::nag_enhanced) {
    NagState state = NagState::zeros(data.param_count());
    const LrSchedule lr = opts.baseline_lr ? opts.baseline_lr
                                           : LrSchedule(default_baseline_lr);
    for (int it = 1; it <= opts.iterations; ++it) {
      const auto start = Clock::now();
      state = method == Method::nag_enhanced
                  ? enhanced_nag_step(state, data, y, bound, step_opts)
                  : nag_step_baseline(state, data, y, lr, step_opts);
      trace.records.push_back(
          {it, log_likelihood_binary(data, y, state.weights()),
           seconds_since(start)});
    }
    trace.final_weights = state.weights();
  } else if (method == Method::adagrad || method == Method::adagrad_enhanced) {
    AdagradState state = AdagradState::zeros(data.param_count());
    for (int it = 1; it <= opts.iterations; ++it) {
      const auto start = Clock::now();
      state = method == Method::adagrad_enhanced
                  ? enhanced_adagrad_step(state, data, y, bound, opts.adagrad_eta,
                                          opts.adagrad_eps, step_opts)
                  : adagrad_step_baseline(state, data, y, opts.adagrad_eta,
                                          opts.adagrad_eps, step_opts);
      trace.records.push_back(
          {it, log_likelihood_binary(data, y, state.weights()),
           seconds_since(start)});
    }
    trace.final_weights = state.weights();
  } else {
    throw InvalidInputError("unsupported binary method");
  }
  return trace;
}

TrainTrace train(Method method, const Dataset& data,
                 const std::vector<int>& class_labels, int class_count,
                 const TrainOptions& opts) {
  if (!method_is_multiclass(method))
    throw InvalidInputError("binary method on multiclass labels");
  if (opts.iterations < 1) throw InvalidInputError("iterations must be >= 1");

  const OneHotLabels y = one_hot_encode(class_labels, class_count);
  const DiagonalBound bound =
      quadratic_bound(fixed_hessian_bound_multiclass(data.x), opts.bound_epsilon);
  StepOptions step_opts;
  step_opts.zero_mixing = opts.zero_mixing;
  step_opts.exec = opts.exec;

  TrainTrace trace;
  trace.records.reserve(opts.iterations);

  if (method == Method::nag_enhanced_multi) {
    MulticlassNagState state = MulticlassNagState::zeros(
        static_cast<std::size_t>(class_count), data.param_count());
    for (int it = 1; it <= opts.iterations; ++it) {
      const auto start = Clock::now();
      state = enhanced_nag_step(state, data, y, bound, step_opts);
      trace.records.push_back(
          {it, log_likelihood_multiclass(data, y, state.weights()),
           seconds_since(start)});
    }
    trace.final_weight_matrix = state.weights();
  } else {
    MulticlassAdagradState state = MulticlassAdagradState::zeros(
        static_cast<std::size_t>(class_count), data.param_count());
    for (int it = 1; it <= opts.iterations; ++it) {
      const auto start = Clock::now();
      state = enhanced_adagrad_step(state, data, y, bound, opts.adagrad_eta,
                                    opts.adagrad_eps, step_opts);
      trace.records.push_back(
          {it, log_likelihood_multiclass(data, y, state.weights()),
           seconds_since(start)});
    }
    trace.final_weight_matrix = state.weights();
  }
  return trace;
}

}  // namespace qglr

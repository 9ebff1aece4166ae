#ifndef QGLR_OPTIMIZERS_HPP
#define QGLR_OPTIMIZERS_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qglr/bounds.hpp"
#include "qglr/dataset.hpp"
#include "qglr/exec.hpp"
#include "qglr/lrmodel.hpp"
#include "qglr/polyapprox.hpp"

namespace qglr {

// Learning-rate schedule for the baseline accelerated method; t is the
// 1-based iteration count.
using LrSchedule = std::function<double(int)>;

double default_baseline_lr(int t);  // 10/(t+1)

// Per-step knobs shared by the step functions. zero_mixing disables the
// momentum mixing term, reducing a step to the plain gradient-style update;
// sigma_override swaps the exact sigmoid inside gradient evaluation.
struct StepOptions {
  bool zero_mixing = false;
  const ScalarFn* sigma_override = nullptr;
  Exec exec = Exec::omp;
};

// Accelerated-gradient state. v carries the sequence of gradient-stepped
// iterates (the weights reported and returned); w is the momentum-mixed
// companion the gradient is evaluated at and stepped from.
struct NagState {
  Vector v;
  Vector w;
  double alpha0 = 0.01;
  double alpha1 = 0.0;  // 0.5 (1 + sqrt(1 + 4 alpha0^2))
  int iteration = 0;    // completed steps

  static NagState zeros(std::size_t param_count);
  const Vector& weights() const { return v; }
};

struct MulticlassNagState {
  Matrix v;
  Matrix w;
  double alpha0 = 0.01;
  double alpha1 = 0.0;
  int iteration = 0;

  static MulticlassNagState zeros(std::size_t class_count, std::size_t param_count);
  const Matrix& weights() const { return v; }
};

NagState nag_step_baseline(const NagState& state, const Dataset& data,
                           const BinaryLabels& y, const LrSchedule& lr,
                           const StepOptions& opts = {});

NagState enhanced_nag_step(const NagState& state, const Dataset& data,
                           const BinaryLabels& y, const DiagonalBound& bound,
                           const StepOptions& opts = {});

// Matrix-shaped variant; bound.b_bar is shared across the class rows.
MulticlassNagState enhanced_nag_step(const MulticlassNagState& state,
                                     const Dataset& data, const OneHotLabels& y,
                                     const DiagonalBound& bound,
                                     const StepOptions& opts = {});

// Adaptive-gradient state; the accumulator collects element-wise squares of
// whichever gradient the variant steps with and never decreases.
struct AdagradState {
  Vector beta;
  Vector accumulator;
  int iteration = 0;

  static AdagradState zeros(std::size_t param_count);
  const Vector& weights() const { return beta; }
};

struct MulticlassAdagradState {
  Matrix w;
  Matrix accumulator;
  int iteration = 0;

  static MulticlassAdagradState zeros(std::size_t class_count,
                                      std::size_t param_count);
  const Matrix& weights() const { return w; }
};

// beta += eta / (eps + sqrt(acc)) * g, accumulator updated first.
AdagradState adagrad_step_baseline(const AdagradState& state, const Dataset& data,
                                   const BinaryLabels& y, double eta, double eps,
                                   const StepOptions& opts = {});

// beta += (1+eta) / (eps + sqrt(acc)) * G with G the preconditioned gradient.
AdagradState enhanced_adagrad_step(const AdagradState& state, const Dataset& data,
                                   const BinaryLabels& y,
                                   const DiagonalBound& bound, double eta,
                                   double eps, const StepOptions& opts = {});

// Matrix-shaped variant; here eps sits inside the square root:
// W += (1+eta) / sqrt(eps + acc) * G.
MulticlassAdagradState enhanced_adagrad_step(const MulticlassAdagradState& state,
                                             const Dataset& data,
                                             const OneHotLabels& y,
                                             const DiagonalBound& bound,
                                             double eta, double eps,
                                             const StepOptions& opts = {});

enum class Method {
  nag,
  nag_enhanced,
  adagrad,
  adagrad_enhanced,
  nag_enhanced_multi,
  adagrad_enhanced_multi,
};

bool method_is_multiclass(Method m);
std::string method_name(Method m);
Method method_from_name(const std::string& name);  // nag|nag+|adagrad|adagrad+|nag+multi|adagrad+multi

struct IterationRecord {
  int iteration;   // 1-based, consecutive
  double mle;      // log-likelihood at the post-step weights
  double seconds;  // wall time of this iteration
};

struct TrainTrace {
  std::vector<IterationRecord> records;
  Vector final_weights;        // binary methods
  Matrix final_weight_matrix;  // multiclass methods
};

// CSV: header "iteration,mle,seconds", one row per iteration, LF endings.
void write_trace_csv(const TrainTrace& trace, std::ostream& out);

struct TrainOptions {
  int iterations = 30;
  double adagrad_eta = 0.01;
  double adagrad_eps = 1e-8;
  double bound_epsilon = 1e-8;
  LrSchedule baseline_lr;  // empty -> default_baseline_lr
  const SigmoidPoly* sigmoid_poly = nullptr;
  bool zero_mixing = false;
  Exec exec = Exec::omp;
};

// Runs `iterations` steps of the chosen method from zero weights, recording
// the log-likelihood after every step. Enhanced methods build their diagonal
// bound from the training data.
TrainTrace train(Method method, const Dataset& data, const BinaryLabels& y,
                 const TrainOptions& opts);
TrainTrace train(Method method, const Dataset& data,
                 const std::vector<int>& class_labels, int class_count,
                 const TrainOptions& opts);

}  // namespace qglr

#endif

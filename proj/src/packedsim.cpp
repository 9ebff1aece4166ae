#include "qglr/packedsim.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "qglr/errors.hpp"
#include "qglr/lrmodel.hpp"

namespace qglr {

namespace audit {

namespace {
thread_local OpCounts tl_counts;
thread_local bool tl_strict = false;
thread_local int tl_logging_depth = 0;
}  // namespace

void reset(bool strict_mode) {
  tl_counts = OpCounts{};
  tl_strict = strict_mode;
  tl_logging_depth = 0;
}

OpCounts counts() { return tl_counts; }
bool strict() { return tl_strict; }

LoggingScope::LoggingScope() { ++tl_logging_depth; }
LoggingScope::~LoggingScope() { --tl_logging_depth; }

namespace {
void count_rot() { ++tl_counts.rot; }
void count_add() { ++tl_counts.add; }
void count_mul() { ++tl_counts.mul; }
void count_decode() {
  ++tl_counts.decode;
  if (tl_strict && tl_logging_depth == 0)
    throw std::logic_error("slot decode outside a logging scope");
}
}  // namespace

}  // namespace audit

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_length(std::size_t length) {
  if (!is_power_of_two(length))
    throw InvalidInputError("slot count " + std::to_string(length) +
                            " is not a power of two");
}

}  // namespace

SlotVector SlotVector::zeros(std::size_t length) {
  check_length(length);
  return SlotVector(std::vector<double>(length, 0.0));
}

SlotVector SlotVector::constant(std::size_t length, double value) {
  check_length(length);
  return SlotVector(std::vector<double>(length, value));
}

SlotVector SlotVector::plaintext(std::vector<double> values) {
  check_length(values.size());
  return SlotVector(std::move(values));
}

SlotVector rot(const SlotVector& v, long positions) {
  audit::count_rot();
  const long len = static_cast<long>(v.size());
  long shift = positions % len;
  if (shift < 0) shift += len;
  std::vector<double> out(v.size());
  for (long i = 0; i < len; ++i) out[i] = v.slots_[(i + shift) % len];
  return SlotVector(std::move(out));
}

SlotVector add(const SlotVector& a, const SlotVector& b) {
  if (a.size() != b.size()) throw InvalidInputError("slot add length mismatch");
  audit::count_add();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.slots_[i] + b.slots_[i];
  return SlotVector(std::move(out));
}

SlotVector mul(const SlotVector& a, const SlotVector& b) {
  if (a.size() != b.size()) throw InvalidInputError("slot mul length mismatch");
  audit::count_mul();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.slots_[i] * b.slots_[i];
  return SlotVector(std::move(out));
}

Vector decode(const SlotVector& v) {
  audit::count_decode();
  return v.slots_;
}

PackedMatrix encode(const Matrix& m, std::size_t slot_count) {
  check_length(slot_count);
  if (m.empty()) throw InvalidInputError("cannot pack an empty matrix");
  if (m.rows() * m.cols() > slot_count)
    throw InvalidInputError("matrix " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " does not fit into " +
                            std::to_string(slot_count) + " slots");
  std::vector<double> slots(slot_count, 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) slots[i * m.cols() + j] = m(i, j);
  PackedMatrix p;
  p.slots = SlotVector::plaintext(std::move(slots));
  p.rows = m.rows();
  p.cols = m.cols();
  return p;
}

Matrix decode(const PackedMatrix& p) {
  const Vector slots = decode(p.slots);
  Matrix m(p.rows, p.cols);
  for (std::size_t i = 0; i < p.rows; ++i)
    for (std::size_t j = 0; j < p.cols; ++j) m(i, j) = slots[i * p.cols + j];
  return m;
}

namespace {

// 1.0 on [begin, end), 0 elsewhere.
SlotVector range_mask(std::size_t length, std::size_t begin, std::size_t end) {
  std::vector<double> mask(length, 0.0);
  for (std::size_t i = begin; i < end && i < length; ++i) mask[i] = 1.0;
  return SlotVector::plaintext(std::move(mask));
}

// Cyclic left shift of the first `used` slots by `amount`, padding untouched.
SlotVector cyclic_region_shift(const SlotVector& v, std::size_t used,
                               std::size_t amount) {
  if (used == v.size()) return rot(v, static_cast<long>(amount));
  const SlotVector main = mul(rot(v, static_cast<long>(amount)),
                              range_mask(v.size(), 0, used - amount));
  const SlotVector wrap =
      mul(rot(v, static_cast<long>(amount) - static_cast<long>(used)),
          range_mask(v.size(), used - amount, used));
  return add(main, wrap);
}

}  // namespace

PackedMatrix incomplete_column_shift(const PackedMatrix& p) {
  PackedMatrix out = p;
  out.slots = cyclic_region_shift(p.slots, p.used(), 1);
  return out;
}

PackedMatrix row_shift(const PackedMatrix& p) {
  PackedMatrix out = p;
  out.slots = cyclic_region_shift(p.slots, p.used(), p.cols);
  return out;
}

PackedMatrix sum_row_vec(const PackedMatrix& p) {
  // Row 0 accumulates every row, gets masked, then is copied back down.
  SlotVector acc = p.slots;
  for (std::size_t k = 1; k < p.rows; ++k)
    acc = add(acc, rot(p.slots, static_cast<long>(k * p.cols)));
  const SlotVector top = mul(acc, range_mask(p.slots.size(), 0, p.cols));
  SlotVector out = top;
  for (std::size_t k = 1; k < p.rows; ++k)
    out = add(out, rot(top, -static_cast<long>(k * p.cols)));
  PackedMatrix result = p;
  result.slots = std::move(out);
  return result;
}

PackedMatrix sum_col_vec(const PackedMatrix& p) {
  // Column 0 of each row accumulates that row, gets masked, then replicated
  // across the row.
  SlotVector acc = p.slots;
  for (std::size_t s = 1; s < p.cols; ++s)
    acc = add(acc, rot(p.slots, static_cast<long>(s)));
  std::vector<double> mask(p.slots.size(), 0.0);
  for (std::size_t i = 0; i < p.rows; ++i) mask[i * p.cols] = 1.0;
  const SlotVector col0 = mul(acc, SlotVector::plaintext(std::move(mask)));
  SlotVector out = col0;
  for (std::size_t s = 1; s < p.cols; ++s)
    out = add(out, rot(col0, -static_cast<long>(s)));
  PackedMatrix result = p;
  result.slots = std::move(out);
  return result;
}

PackedMatrix sum_for_conv(const PackedMatrix& p, std::size_t kh, std::size_t kw) {
  if (kh == 0 || kw == 0 || kh > p.rows || kw > p.cols)
    throw InvalidInputError("kernel " + std::to_string(kh) + "x" +
                            std::to_string(kw) + " does not fit a " +
                            std::to_string(p.rows) + "x" + std::to_string(p.cols) +
                            " matrix");
  SlotVector acc = p.slots;
  for (std::size_t dp = 0; dp < kh; ++dp)
    for (std::size_t dq = 0; dq < kw; ++dq) {
      if (dp == 0 && dq == 0) continue;
      acc = add(acc, rot(p.slots, static_cast<long>(dp * p.cols + dq)));
    }
  std::vector<double> mask(p.slots.size(), 0.0);
  for (std::size_t i = 0; i + kh <= p.rows; ++i)
    for (std::size_t j = 0; j + kw <= p.cols; ++j) mask[i * p.cols + j] = 1.0;
  PackedMatrix result = p;
  result.slots = mul(acc, SlotVector::plaintext(std::move(mask)));
  return result;
}

std::size_t default_slot_count(std::size_t n, std::size_t f) {
  std::size_t cap = 1;
  while (cap < n * f) cap <<= 1;
  return cap;
}

PackedTrainingContext build_context(const Dataset& data, const BinaryLabels& y,
                                    const DiagonalBound& bound,
                                    std::size_t slot_count) {
  if (y.size() != data.sample_count())
    throw InvalidInputError("label count does not match sample count");
  if (bound.size() != data.param_count())
    throw InvalidInputError("bound length does not match 1+d");
  const std::size_t n = data.sample_count();
  const std::size_t f = data.param_count();
  if (n * f > slot_count)
    throw InvalidInputError("dataset does not fit into " +
                            std::to_string(slot_count) + " slots");

  Matrix z(n, f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < f; ++j) z(i, j) = y[i] * data.x(i, j);

  Matrix beta0(n, f, 0.0);

  Matrix bbar_rows(n, f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < f; ++j) bbar_rows(i, j) = bound.b_bar[j];

  PackedTrainingContext ctx;
  ctx.ct_z = encode(z, slot_count);
  ctx.ct_beta = encode(beta0, slot_count);
  ctx.ct_bbar = encode(bbar_rows, slot_count);
  return ctx;
}

namespace {

double next_alpha(double alpha) {
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * alpha * alpha));
}

// c0 + c1 z + c3 z^3 + c5 z^5 on every slot, constants entering as plaintext
// vectors.
SlotVector poly_on_slots(const SlotVector& z, const SigmoidPoly& poly) {
  const std::size_t len = z.size();
  const SlotVector z2 = mul(z, z);
  const SlotVector z3 = mul(z2, z);
  const SlotVector z5 = mul(z3, z2);
  const SlotVector t1 = mul(z, SlotVector::constant(len, poly.c1));
  const SlotVector t3 = mul(z3, SlotVector::constant(len, poly.c3));
  const SlotVector t5 = mul(z5, SlotVector::constant(len, poly.c5));
  return add(add(t1, t3), add(t5, SlotVector::constant(len, poly.c0)));
}

double packed_mle(const Matrix& z_rows, const Vector& beta) {
  double ll = 0.0;
  for (std::size_t i = 0; i < z_rows.rows(); ++i) {
    double margin = 0.0;
    for (std::size_t j = 0; j < z_rows.cols(); ++j)
      margin += z_rows(i, j) * beta[j];
    ll -= margin < 0.0 ? -margin + std::log1p(std::exp(margin))
                       : std::log1p(std::exp(-margin));
  }
  return ll;
}

// Leaves the thread's audit in non-strict mode no matter how the training
// loop exits.
struct AuditCleanup {
  ~AuditCleanup() { audit::reset(false); }
};

}  // namespace

PackedTrainResult train_packed(const PackedTrainingContext& ctx,
                               const SigmoidPoly& poly, int iterations,
                               bool audit_primitives) {
  if (iterations < 1) throw InvalidInputError("iterations must be >= 1");
  const std::size_t n = ctx.ct_z.rows;
  const std::size_t f = ctx.ct_z.cols;
  const std::size_t len = ctx.ct_z.slots.size();
  if (ctx.ct_beta.rows != n || ctx.ct_beta.cols != f || ctx.ct_bbar.rows != n ||
      ctx.ct_bbar.cols != f)
    throw InvalidInputError("context matrices disagree on shape");

  audit::reset(audit_primitives);
  AuditCleanup cleanup;

  // The trace logs the exact-sigmoid log-likelihood, which needs the signed
  // design rows; pulling them out is a logging read.
  Matrix z_rows;
  {
    audit::LoggingScope logging;
    z_rows = decode(ctx.ct_z);
  }

  PackedMatrix ct_v = ctx.ct_beta;   // reported weights
  PackedMatrix ct_w = ctx.ct_beta;   // gradient/step point
  double alpha0 = 0.01;
  double alpha1 = next_alpha(alpha0);

  TrainTrace trace;
  trace.records.reserve(iterations);
  using Clock = std::chrono::steady_clock;

  for (int count = 1; count <= iterations; ++count) {
    const auto start = Clock::now();

    // Per-sample margins: multiply the signed rows by the replicated weight
    // row, then fold each row onto itself.
    const PackedMatrix prod{mul(ctx.ct_z.slots, ct_w.slots), n, f};
    const PackedMatrix margins = sum_col_vec(prod);

    // Polynomial sigmoid on every slot; padding picks up c0 here and is
    // zeroed again by the multiply with ct_z below.
    const SlotVector sig = poly_on_slots(margins.slots, poly);
    const SlotVector residual =
        add(SlotVector::constant(len, 1.0),
            mul(sig, SlotVector::constant(len, -1.0)));

    const PackedMatrix grad_rows{mul(ctx.ct_z.slots, residual), n, f};
    const PackedMatrix grad = sum_row_vec(grad_rows);

    const SlotVector quad = mul(ctx.ct_bbar.slots, grad.slots);

    const double eta = (1.0 - alpha0) / alpha1;
    const double gamma = 1.0 / (static_cast<double>(n) * count);
    const SlotVector w_temp =
        add(ct_w.slots, mul(quad, SlotVector::constant(len, 1.0 + gamma)));
    ct_w.slots = add(mul(w_temp, SlotVector::constant(len, 1.0 - eta)),
                     mul(ct_v.slots, SlotVector::constant(len, eta)));
    ct_v.slots = w_temp;

    alpha0 = alpha1;
    alpha1 = next_alpha(alpha0);

    double mle;
    {
      audit::LoggingScope logging;
      const Matrix weights = decode(ct_v);
      Vector beta(f);
      for (std::size_t j = 0; j < f; ++j) beta[j] = weights(0, j);
      mle = packed_mle(z_rows, beta);
    }
    trace.records.push_back({count, mle,
                             std::chrono::duration<double>(Clock::now() - start)
                                 .count()});
  }

  {
    audit::LoggingScope logging;
    const Matrix weights = decode(ct_v);
    trace.final_weights.assign(f, 0.0);
    for (std::size_t j = 0; j < f; ++j) trace.final_weights[j] = weights(0, j);
  }

  PackedTrainResult result{std::move(trace), audit::counts()};
  return result;
}

}  // namespace qglr

#ifndef QGLR_PACKEDSIM_HPP
#define QGLR_PACKEDSIM_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

#include "qglr/bounds.hpp"
#include "qglr/dataset.hpp"
#include "qglr/linalg.hpp"
#include "qglr/optimizers.hpp"
#include "qglr/polyapprox.hpp"

namespace qglr {

struct OpCounts {
  std::uint64_t rot = 0;
  std::uint64_t add = 0;
  std::uint64_t mul = 0;
  std::uint64_t decode = 0;
};

// Per-thread tally of primitive operations, with an optional strict mode in
// which decoding outside a LoggingScope throws. Thread-local, so concurrent
// simulations do not interfere.
namespace audit {

void reset(bool strict = false);
OpCounts counts();
bool strict();

// Marks a region where decode is legitimate (trace logging, final readout).
class LoggingScope {
 public:
  LoggingScope();
  ~LoggingScope();
  LoggingScope(const LoggingScope&) = delete;
  LoggingScope& operator=(const LoggingScope&) = delete;
};

}  // namespace audit

// Power-of-two-length vector of real slots. Slot data is reachable only
// through rot/add/mul and the audited decode; plaintext construction
// (constants, masks, encoding) is free, mirroring what an encrypter may do.
class SlotVector {
 public:
  SlotVector() = default;

  static SlotVector zeros(std::size_t length);
  static SlotVector constant(std::size_t length, double value);
  static SlotVector plaintext(std::vector<double> values);

  std::size_t size() const { return slots_.size(); }

 private:
  explicit SlotVector(std::vector<double> slots) : slots_(std::move(slots)) {}
  std::vector<double> slots_;

  friend SlotVector rot(const SlotVector& v, long positions);
  friend SlotVector add(const SlotVector& a, const SlotVector& b);
  friend SlotVector mul(const SlotVector& a, const SlotVector& b);
  friend Vector decode(const SlotVector& v);
};

// out[i] = in[(i + positions) mod len]; negative positions rotate right.
SlotVector rot(const SlotVector& v, long positions);
SlotVector add(const SlotVector& a, const SlotVector& b);
SlotVector mul(const SlotVector& a, const SlotVector& b);
Vector decode(const SlotVector& v);

// n x f matrix packed row-major into a slot vector; slots beyond n*f are 0.
struct PackedMatrix {
  SlotVector slots;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t used() const { return rows * cols; }
};

PackedMatrix encode(const Matrix& m, std::size_t slot_count);
Matrix decode(const PackedMatrix& p);

// Cyclic shift of the packed n*f region by one slot (resp. one row of f
// slots); with capacity exactly n*f this is a single rotation.
PackedMatrix incomplete_column_shift(const PackedMatrix& p);
PackedMatrix row_shift(const PackedMatrix& p);

// Column sums replicated down every row / row sums replicated across every
// row, both computed purely with rot/add/mul (rotate-accumulate + masking).
PackedMatrix sum_row_vec(const PackedMatrix& p);
PackedMatrix sum_col_vec(const PackedMatrix& p);

// Sliding kh x kw window sums; entry (i,j) with i <= n-kh, j <= f-kw holds
// the window total anchored there, all other entries are zero.
PackedMatrix sum_for_conv(const PackedMatrix& p, std::size_t kh, std::size_t kw);

// The three packed inputs of the training loop: the label-signed design
// matrix, the weight row replicated down, and the bound diagonal replicated
// down.
struct PackedTrainingContext {
  PackedMatrix ct_z;
  PackedMatrix ct_beta;
  PackedMatrix ct_bbar;
};

std::size_t default_slot_count(std::size_t n, std::size_t f);

PackedTrainingContext build_context(const Dataset& data, const BinaryLabels& y,
                                    const DiagonalBound& bound,
                                    std::size_t slot_count);

struct PackedTrainResult {
  TrainTrace trace;
  OpCounts ops;
};

// Runs the accelerated quadratic-gradient loop with the polynomial sigmoid
// entirely through rot/add/mul (decode only inside logging scopes, for the
// per-iteration trace and final readout). With audit=true any other slot
// access throws.
PackedTrainResult train_packed(const PackedTrainingContext& ctx,
                               const SigmoidPoly& poly, int iterations,
                               bool audit_primitives = false);

}  // namespace qglr

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qglr/bounds.hpp"
#include "qglr/errors.hpp"
#include "qglr/lrmodel.hpp"
#include "qglr/packedsim.hpp"

using namespace qglr;

namespace {

double u01(std::mt19937& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Matrix random_dense(std::mt19937& rng, std::size_t n, std::size_t f) {
  Matrix m(n, f);
  for (double& v : m.data()) v = 2.0 * u01(rng) - 1.0;
  return m;
}

Matrix counting_matrix(std::size_t n, std::size_t f) {
  Matrix m(n, f);
  double v = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < f; ++j) m(i, j) = v++;
  return m;
}

bool padding_is_zero(const PackedMatrix& p) {
  audit::LoggingScope logging;
  const Vector slots = decode(p.slots);
  for (std::size_t i = p.used(); i < slots.size(); ++i)
    if (slots[i] != 0.0) return false;
  return true;
}

}  // namespace

TEST_CASE("encode and decode") {
  SUBCASE("exact-fit packing") {
    const Matrix m = counting_matrix(2, 2);
    const PackedMatrix p = encode(m, 4);
    const Vector slots = decode(p.slots);
    CHECK(slots == Vector{1.0, 2.0, 3.0, 4.0});
  }
  SUBCASE("zero padding beyond the matrix") {
    const PackedMatrix p = encode(counting_matrix(2, 2), 8);
    const Vector slots = decode(p.slots);
    CHECK(slots == Vector{1.0, 2.0, 3.0, 4.0, 0.0, 0.0, 0.0, 0.0});
  }
  SUBCASE("round trip on a random matrix") {
    std::mt19937 rng(1);
    const Matrix m = random_dense(rng, 3, 5);
    CHECK(decode(encode(m, 16)) == m);
  }
  SUBCASE("capacity and power-of-two checks") {
    CHECK_THROWS_AS(encode(counting_matrix(3, 5), 8), InvalidInputError);
    CHECK_THROWS_AS(encode(counting_matrix(2, 3), 6), InvalidInputError);
  }
}

TEST_CASE("rotation") {
  const SlotVector v = SlotVector::plaintext({1.0, 2.0, 3.0, 4.0});
  CHECK(decode(rot(v, 1)) == Vector{2.0, 3.0, 4.0, 1.0});
  CHECK(decode(rot(v, 4)) == Vector{1.0, 2.0, 3.0, 4.0});
  CHECK(decode(rot(v, -1)) == Vector{4.0, 1.0, 2.0, 3.0});

  std::mt19937 rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> vals(16);
    for (double& x : vals) x = u01(rng);
    const SlotVector w = SlotVector::plaintext(vals);
    const long a = static_cast<long>(rng() % 40) - 20;
    const long b = static_cast<long>(rng() % 40) - 20;
    CHECK(decode(rot(rot(w, a), b)) == decode(rot(w, a + b)));
  }
}

TEST_CASE("add and mul are element-wise with length checks") {
  const SlotVector a = SlotVector::plaintext({1.0, -2.0, 0.5, 3.0});
  const SlotVector ones = SlotVector::constant(4, 1.0);
  const SlotVector zeros = SlotVector::zeros(4);
  CHECK(decode(add(a, zeros)) == decode(a));
  CHECK(decode(mul(a, ones)) == decode(a));
  CHECK_THROWS_AS(add(a, SlotVector::zeros(8)), InvalidInputError);
  CHECK_THROWS_AS(mul(a, SlotVector::zeros(2)), InvalidInputError);
}

TEST_CASE("mask multiply filters the first column") {
  // ones in column 0, zeros elsewhere, applied to a packed matrix
  const Matrix z = counting_matrix(3, 4);
  const PackedMatrix pz = encode(z, 16);
  Matrix fmask(3, 4, 0.0);
  for (std::size_t i = 0; i < 3; ++i) fmask(i, 0) = 1.0;
  const PackedMatrix pf = encode(fmask, 16);
  PackedMatrix filtered = pz;
  filtered.slots = mul(pf.slots, pz.slots);
  const Matrix out = decode(filtered);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(out(i, 0) == z(i, 0));
    for (std::size_t j = 1; j < 4; ++j) CHECK(out(i, j) == 0.0);
  }
}

TEST_CASE("incomplete column shifting") {
  SUBCASE("4x4 display layout") {
    const Matrix z = counting_matrix(4, 4);
    const Matrix out = decode(incomplete_column_shift(encode(z, 16)));
    // every slot moves left one place; first entry wraps to the last cell
    CHECK(out(0, 0) == z(0, 1));
    CHECK(out(0, 3) == z(1, 0));
    CHECK(out(2, 3) == z(3, 0));
    CHECK(out(3, 3) == z(0, 0));
  }
  SUBCASE("padded capacity behaves identically") {
    const Matrix z = counting_matrix(3, 4);
    const PackedMatrix p = encode(z, 16);
    const PackedMatrix shifted = incomplete_column_shift(p);
    CHECK(padding_is_zero(shifted));
    const Matrix out = decode(shifted);
    CHECK(out(2, 3) == z(0, 0));
    CHECK(out(0, 0) == z(0, 1));
  }
  SUBCASE("n*f applications recover the input") {
    std::mt19937 rng(3);
    const Matrix m = random_dense(rng, 3, 4);
    PackedMatrix p = encode(m, 16);
    for (std::size_t k = 0; k < 12; ++k) p = incomplete_column_shift(p);
    CHECK(decode(p) == m);
  }
}

TEST_CASE("row shifting") {
  const Matrix z = counting_matrix(3, 4);
  const Matrix out = decode(row_shift(encode(z, 16)));
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(out(0, j) == z(1, j));
    CHECK(out(1, j) == z(2, j));
    CHECK(out(2, j) == z(0, j));
  }
}

TEST_CASE("packed row and column summations") {
  SUBCASE("worked 2x2") {
    Matrix m(2, 2);
    m(0, 0) = 1.0; m(0, 1) = 2.0; m(1, 0) = 3.0; m(1, 1) = 4.0;
    const Matrix rows = decode(sum_row_vec(encode(m, 4)));
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(rows(i, 0) == 4.0);
      CHECK(rows(i, 1) == 6.0);
    }
    const Matrix cols = decode(sum_col_vec(encode(m, 4)));
    CHECK(cols(0, 0) == 3.0);
    CHECK(cols(0, 1) == 3.0);
    CHECK(cols(1, 0) == 7.0);
    CHECK(cols(1, 1) == 7.0);
  }
  SUBCASE("random 4x8 against the dense oracle") {
    std::mt19937 rng(4);
    const Matrix m = random_dense(rng, 4, 8);
    const PackedMatrix p = encode(m, 32);

    const Matrix rows = decode(sum_row_vec(p));
    const Matrix cols = decode(sum_col_vec(p));
    for (std::size_t j = 0; j < 8; ++j) {
      double colsum = 0.0;
      for (std::size_t i = 0; i < 4; ++i) colsum += m(i, j);
      for (std::size_t i = 0; i < 4; ++i)
        CHECK(rows(i, j) == doctest::Approx(colsum).epsilon(1e-15));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      double rowsum = 0.0;
      for (std::size_t j = 0; j < 8; ++j) rowsum += m(i, j);
      for (std::size_t j = 0; j < 8; ++j)
        CHECK(cols(i, j) == doctest::Approx(rowsum).epsilon(1e-15));
    }
  }
  SUBCASE("applying the row summation twice scales by the row count") {
    std::mt19937 rng(5);
    const Matrix m = random_dense(rng, 4, 4);
    const PackedMatrix once = sum_row_vec(encode(m, 16));
    const Matrix twice = decode(sum_row_vec(once));
    for (std::size_t j = 0; j < 4; ++j) {
      double colsum = 0.0;
      for (std::size_t i = 0; i < 4; ++i) colsum += m(i, j);
      for (std::size_t i = 0; i < 4; ++i)
        CHECK(twice(i, j) == doctest::Approx(4.0 * colsum).epsilon(1e-14));
    }
  }
  SUBCASE("padding stays zero through the summations") {
    std::mt19937 rng(6);
    const Matrix m = random_dense(rng, 3, 5);
    const PackedMatrix p = encode(m, 32);
    CHECK(padding_is_zero(sum_row_vec(p)));
    CHECK(padding_is_zero(sum_col_vec(p)));
  }
}

TEST_CASE("windowed summation") {
  SUBCASE("4x4 with a 3x3 kernel matches the display") {
    const Matrix z = counting_matrix(4, 4);
    const Matrix out = decode(sum_for_conv(encode(z, 16), 3, 3));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        double expected = 0.0;
        for (std::size_t p = i; p < i + 3; ++p)
          for (std::size_t q = j; q < j + 3; ++q) expected += z(p, q);
        CHECK(out(i, j) == expected);
      }
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i >= 2 || j >= 2) CHECK(out(i, j) == 0.0);
  }
  SUBCASE("1x1 kernel is the identity") {
    std::mt19937 rng(7);
    const Matrix m = random_dense(rng, 3, 3);
    CHECK(decode(sum_for_conv(encode(m, 16), 1, 1)) == m);
  }
  SUBCASE("random 5x6 with a 2x3 kernel against the sliding-window oracle") {
    std::mt19937 rng(8);
    const Matrix m = random_dense(rng, 5, 6);
    const Matrix out = decode(sum_for_conv(encode(m, 32), 2, 3));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        if (i + 2 <= 5 && j + 3 <= 6) {
          double expected = 0.0;
          for (std::size_t p = i; p < i + 2; ++p)
            for (std::size_t q = j; q < j + 3; ++q) expected += m(p, q);
          CHECK(out(i, j) == doctest::Approx(expected).epsilon(1e-15));
        } else {
          CHECK(out(i, j) == 0.0);
        }
      }
  }
  SUBCASE("oversized kernels rejected") {
    const PackedMatrix p = encode(counting_matrix(3, 3), 16);
    CHECK_THROWS_AS(sum_for_conv(p, 4, 1), InvalidInputError);
    CHECK_THROWS_AS(sum_for_conv(p, 1, 4), InvalidInputError);
  }
}

TEST_CASE("training context layout") {
  Matrix f(1, 1);
  f(0, 0) = 0.5;
  const Dataset ds = Dataset::from_features(f);
  const BinaryLabels y(Vector{-1.0});
  const DiagonalBound bound = quadratic_bound(fixed_hessian_bound_binary(ds.x));
  const PackedTrainingContext ctx = build_context(ds, y, bound, 4);

  const Matrix z = decode(ctx.ct_z);
  CHECK(z(0, 0) == -1.0);
  CHECK(z(0, 1) == -0.5);

  for (const double v : decode(ctx.ct_beta).data()) CHECK(v == 0.0);

  const Matrix bb = decode(ctx.ct_bbar);
  CHECK(bb(0, 0) == bound.b_bar[0]);
  CHECK(bb(0, 1) == bound.b_bar[1]);
}

TEST_CASE("context replication invariants on a larger set") {
  std::mt19937 rng(9);
  Matrix feats(6, 3);
  for (double& v : feats.data()) v = u01(rng);
  const Dataset ds = Dataset::from_features(feats);
  Vector yv(6);
  for (double& v : yv) v = u01(rng) < 0.5 ? -1.0 : 1.0;
  const BinaryLabels y(yv);
  const DiagonalBound bound = quadratic_bound(fixed_hessian_bound_binary(ds.x));
  const PackedTrainingContext ctx = build_context(ds, y, bound, 32);

  const Matrix bb = decode(ctx.ct_bbar);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(bb(i, j) == bound.b_bar[j]);
  const Matrix z = decode(ctx.ct_z);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(z(i, j) == yv[i] * ds.x(i, j));

  CHECK_THROWS_AS(build_context(ds, y, bound, 16), InvalidInputError);
}

TEST_CASE("packed training equals the cleartext oracle with the poly sigmoid") {
  std::mt19937 rng(10);
  const SigmoidPoly poly = paper_poly();
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 2 + rng() % 15;
    const std::size_t d = 1 + rng() % 7;
    Matrix feats(n, d);
    for (double& v : feats.data()) v = u01(rng);
    const Dataset ds = Dataset::from_features(feats);
    Vector yv(n);
    for (double& v : yv) v = u01(rng) < 0.5 ? -1.0 : 1.0;
    const BinaryLabels y(yv);

    const DiagonalBound bound = quadratic_bound(fixed_hessian_bound_binary(ds.x));
    const std::size_t slots = default_slot_count(n, ds.param_count());
    const PackedTrainingContext ctx = build_context(ds, y, bound, slots);

    const int iterations = 1 + static_cast<int>(rng() % 5);
    const PackedTrainResult packed = train_packed(ctx, poly, iterations, true);

    TrainOptions opts;
    opts.iterations = iterations;
    opts.sigmoid_poly = &poly;
    const TrainTrace clear = train(Method::nag_enhanced, ds, y, opts);

    REQUIRE(packed.trace.final_weights.size() == clear.final_weights.size());
    for (std::size_t j = 0; j < clear.final_weights.size(); ++j) {
      const double a = packed.trace.final_weights[j];
      const double b = clear.final_weights[j];
      CHECK(std::abs(a - b) <=
            1e-9 * std::max({1e-300, std::abs(a), std::abs(b)}));
    }
    CHECK(packed.ops.rot > 0);
    CHECK(packed.ops.mul > 0);
  }
}

TEST_CASE("gradient-free dataset leaves packed weights at zero") {
  // Two identical rows with opposite labels cancel every gradient term.
  Matrix feats(2, 2);
  feats(0, 0) = 0.3; feats(0, 1) = 0.7;
  feats(1, 0) = 0.3; feats(1, 1) = 0.7;
  const Dataset ds = Dataset::from_features(feats);
  const BinaryLabels y(Vector{1.0, -1.0});
  const DiagonalBound bound = quadratic_bound(fixed_hessian_bound_binary(ds.x));
  const PackedTrainingContext ctx = build_context(ds, y, bound, 8);
  const PackedTrainResult r = train_packed(ctx, paper_poly(), 3, true);
  for (const double w : r.trace.final_weights) CHECK(w == 0.0);
}

TEST_CASE("strict audit flags stray decodes and logging decodes pass") {
  audit::reset(true);
  const SlotVector v = SlotVector::constant(4, 2.0);
  CHECK_THROWS_AS(decode(v), std::logic_error);
  {
    audit::LoggingScope logging;
    CHECK(decode(v) == Vector{2.0, 2.0, 2.0, 2.0});
  }
  audit::reset(false);
  CHECK(decode(v) == Vector{2.0, 2.0, 2.0, 2.0});
}

TEST_CASE("op counters track primitive usage") {
  audit::reset(false);
  const SlotVector a = SlotVector::constant(8, 1.0);
  const SlotVector b = SlotVector::constant(8, 2.0);
  (void)rot(a, 3);
  (void)add(a, b);
  (void)add(a, b);
  (void)mul(a, b);
  const OpCounts c = audit::counts();
  CHECK(c.rot == 1);
  CHECK(c.add == 2);
  CHECK(c.mul == 1);
  audit::reset(false);
}

#include "maximin/error.hpp"
#include "maximin/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <string>

using namespace maximin;

namespace {

Dataset small_dataset(Index n = 4, Index p = 2) {
  Dataset d;
  d.X = Matrix::Ones(n, p);
  d.Y = Vector::Ones(n);
  return d;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::IoError;
}

}  // namespace

TEST(Validate, WellFormedPartition) {
  GroupSpec spec{{{0, 1}, {2, 3}}, Sampling::partition};
  EXPECT_NO_THROW(validate(small_dataset(), spec));
}

TEST(Validate, IndexOutOfRange) {
  GroupSpec spec{{{0, 1}, {2, 4}}, Sampling::partition};
  EXPECT_EQ(code_of([&] { validate(small_dataset(), spec); }), ErrorCode::IndexOutOfRange);
  try {
    validate(small_dataset(), spec);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("groups[2]"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("5"), std::string::npos);
  }
}

TEST(Validate, NaNInX) {
  Dataset d = small_dataset();
  d.X(1, 1) = std::numeric_limits<double>::quiet_NaN();
  GroupSpec spec{{{0, 1, 2, 3}}, Sampling::partition};
  EXPECT_EQ(code_of([&] { validate(d, spec); }), ErrorCode::NonFiniteData);
}

TEST(Validate, EmptyGroup) {
  GroupSpec spec{{{0, 1}, {}}, Sampling::partition};
  EXPECT_EQ(code_of([&] { validate(small_dataset(), spec); }), ErrorCode::EmptyGroup);
}

TEST(Validate, OverlapOnlyAllowedWithReplacement) {
  GroupSpec spec{{{0, 1}, {1, 2}}, Sampling::partition};
  EXPECT_EQ(code_of([&] { validate(small_dataset(), spec); }), ErrorCode::IndexOutOfRange);
  spec.sampling = Sampling::with_replacement;
  EXPECT_NO_THROW(validate(small_dataset(), spec));
}

TEST(Validate, LengthMismatch) {
  Dataset d = small_dataset();
  d.Y = Vector::Ones(3);
  EXPECT_EQ(code_of([&] { validate(d); }), ErrorCode::LengthMismatch);
}

TEST(ValidateSupport, RejectsAsymmetricAndIndefinite) {
  SupportSet s;
  s.points = {Vector::Ones(2)};
  s.sigma = Matrix::Identity(2, 2);
  EXPECT_NO_THROW(validate(s));
  s.sigma(0, 1) = 1e-6;
  EXPECT_THROW(validate(s), Error);
  s.sigma = Matrix::Identity(2, 2);
  s.sigma(1, 1) = -1.0;
  EXPECT_EQ(code_of([&] { validate(s); }), ErrorCode::NotPositiveDefinite);
  s.sigma = Matrix::Identity(2, 2);
  s.points = {Vector::Ones(3)};
  EXPECT_EQ(code_of([&] { validate(s); }), ErrorCode::DimensionMismatch);
}

TEST(PenaltyConfig, Invariants) {
  PenaltyConfig c;
  EXPECT_NO_THROW(c.validate());
  c.zeta = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c.zeta = 0.5;
  c.mode = Penalized{-1.0};
  EXPECT_THROW(c.validate(), Error);
  c.mode = Constrained{0.0};
  EXPECT_THROW(c.validate(), Error);
  c.mode = Maximal{};
  EXPECT_NO_THROW(c.validate());
}

TEST(Norms, PrimalAndDual) {
  Vector v(3);
  v << 3.0, -4.0, 0.0;
  EXPECT_DOUBLE_EQ(norm(v, Norm::L1), 7.0);
  EXPECT_DOUBLE_EQ(norm(v, Norm::L2), 5.0);
  EXPECT_DOUBLE_EQ(dual_norm(v, Norm::L1), 4.0);
  EXPECT_DOUBLE_EQ(dual_norm(v, Norm::L2), 5.0);
}

TEST(MaximinFit, CoefficientsApplyScale) {
  MaximinFit f;
  f.beta = Vector::Ones(2);
  f.scale = 2.5;
  EXPECT_DOUBLE_EQ(f.coefficients()(1), 2.5);
}

TEST(ErrorCodes, MessagePrefix) {
  Error e(ErrorCode::EmptyGroup, "groups[1] is empty");
  EXPECT_EQ(std::string(e.what()), "EmptyGroup: groups[1] is empty");
  NonConvergedError n("stalled", 0.25);
  EXPECT_EQ(n.code(), ErrorCode::NonConverged);
  EXPECT_DOUBLE_EQ(n.residual(), 0.25);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <functional>

#include "test_util.h"
#include "vermilion/error.h"
#include "vermilion/matrix_io.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(ValidateHose, SaturatedUniformIsValid) {
  const TrafficMatrix m = ValidateHose(UniformDemand(4, 1.0), 1.0, 1);
  EXPECT_EQ(m.size(), 4);
  EXPECT_DOUBLE_EQ(m(0, 1), 1.0 / 3);
}

TEST(ValidateHose, RowOverCapacity) {
  SquareMatrix<double> raw(2);
  raw(0, 1) = 1.5;
  try {
    ValidateHose(raw, 1.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHoseViolation);
    EXPECT_NE(std::string(e.what()).find("row 0"), std::string::npos);
  }
}

TEST(ValidateHose, ColumnOverCapacity) {
  SquareMatrix<double> raw(3);
  raw(0, 2) = 0.8;
  raw(1, 2) = 0.8;
  try {
    ValidateHose(raw, 1.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHoseViolation);
    EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos);
  }
}

TEST(ValidateHose, NegativeAndDiagonal) {
  SquareMatrix<double> neg(2);
  neg(0, 1) = -0.1;
  EXPECT_EQ(CodeOf([&] { ValidateHose(neg, 1, 1); }), ErrorCode::kNegativeEntry);
  SquareMatrix<double> diag(2);
  diag(1, 1) = 0.1;
  EXPECT_EQ(CodeOf([&] { ValidateHose(diag, 1, 1); }), ErrorCode::kNonzeroDiagonal);
}

TEST(ValidateHose, RandomSixteenNodeAtTwentyFiveGig) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    SquareMatrix<double> raw = testing::RandomGridMatrix(16, 100, 1.0, rng);
    const double s = MaxLineSum(raw);
    for (double& x : raw.data()) x *= 1e11 / s;
    EXPECT_NO_THROW(ValidateHose(raw, 25e9, 4));
  }
}

TEST(ValidateHose, AcceptsExactlyWithinBound) {
  // Matrices built with a known maximum line sum, just inside or outside.
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform(6));
    SquareMatrix<double> raw = testing::RandomGridMatrix(n, 8, 0.125, rng);
    raw(0, 1) += 0.125;  // never all zero
    const double target = 1 + rng.Uniform(4);
    const double s = MaxLineSum(raw);
    for (double& x : raw.data()) x *= target / s;
    const double bound = target * (rng.Uniform(2) == 0 ? 1.0 : 0.99);
    const bool inside = bound == target;
    if (inside) {
      EXPECT_NO_THROW(ValidateHose(raw, bound, 1));
    } else {
      EXPECT_EQ(CodeOf([&] { ValidateHose(raw, bound, 1); }), ErrorCode::kHoseViolation);
    }
  }
}

TEST(Normalize, ZeroMatrixStaysZero) {
  const NormalizedMatrix n = Normalize(ValidateHose(SquareMatrix<double>(3), 1, 1));
  EXPECT_EQ(n.divisor, 0);
  EXPECT_EQ(n.entries, SquareMatrix<double>(3));
}

TEST(Normalize, DividesByLargestLineSum) {
  SquareMatrix<double> raw(3);
  raw(0, 1) = 30;
  raw(0, 2) = 20;  // row 0 sums to 50
  raw(1, 2) = 20;  // column 2 sums to 40
  const NormalizedMatrix n = Normalize(ValidateHose(raw, 100, 1));
  EXPECT_DOUBLE_EQ(n.divisor, 50);
  EXPECT_DOUBLE_EQ(n.entries(0, 1), 0.6);
  EXPECT_DOUBLE_EQ(n.entries(1, 2), 0.4);
}

TEST(Normalize, SaturatedPermutationBecomesOnes) {
  const std::vector<int> perm{2, 0, 3, 1};
  const NormalizedMatrix n = Normalize(ValidateHose(PermutationDemand(perm, 4e10), 1e10, 4));
  for (int u = 0; u < 4; ++u) EXPECT_EQ(n.entries(u, perm[u]), 1.0);
}

TEST(Scale, RingTimesEight) {
  const ScaledMatrix s = Scale(Normalize(RingDemand(4, 1.0)), 3);
  for (int u = 0; u < 4; ++u) EXPECT_EQ(s.entries(u, (u + 1) % 4), 8.0);
  EXPECT_EQ(s.entries.Total(), 32.0);
}

TEST(Scale, ZeroAndUniform) {
  EXPECT_EQ(Scale(Normalize(SquareMatrix<double>(5)), 4).entries, SquareMatrix<double>(5));
  const ScaledMatrix s = Scale(Normalize(UniformDemand(16, 1.0)), 3);
  EXPECT_NEAR(s.entries(3, 7), 32.0 / 15, 1e-12);
}

TEST(Scale, RejectsSmallK) {
  EXPECT_EQ(CodeOf([] { Scale(Normalize(RingDemand(4, 1)), 1); }), ErrorCode::kInvalidK);
}

TEST(Scale, PositivelyHomogeneous) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const SquareMatrix<double> m = testing::RandomGridMatrix(6, 10, 0.5, rng);
    SquareMatrix<double> scaled = m;
    const double alpha = 0.001 + rng.Uniform01() * 1000;
    for (double& x : scaled.data()) x *= alpha;
    const ScaledMatrix a = Scale(Normalize(m), 3);
    const ScaledMatrix b = Scale(Normalize(scaled), 3);
    for (std::size_t i = 0; i < a.entries.data().size(); ++i) {
      EXPECT_NEAR(a.entries.data()[i], b.entries.data()[i], 1e-9);
    }
    const double bound = 2.0 * 6;
    for (int u = 0; u < 6; ++u) {
      EXPECT_LE(a.entries.RowSum(u), bound + 1e-9);
      EXPECT_LE(a.entries.ColSum(u), bound + 1e-9);
    }
  }
}

TEST(Generators, SaturatedHoseLinesEqualRate) {
  Rng rng(3);
  const SquareMatrix<double> m = RandomSaturatedHose(16, 4.0, rng);
  for (int u = 0; u < 16; ++u) {
    EXPECT_NEAR(m.RowSum(u), 4.0, 1e-9);
    EXPECT_NEAR(m.ColSum(u), 4.0, 1e-9);
    EXPECT_EQ(m(u, u), 0.0);
  }
  const std::vector<int> d = RandomDerangement(9, rng);
  for (int u = 0; u < 9; ++u) EXPECT_NE(d[u], u);
  const SquareMatrix<double> skew = SkewDemand(d, 0.7, 2.0);
  for (int u = 0; u < 9; ++u) EXPECT_NEAR(skew.RowSum(u), 2.0, 1e-12);
}

TEST(MatrixIo, CsvWithHeaders) {
  const RawMatrix m = ParseMatrixText("# c=25e9\n# d=4\n0,1.5\n2,0\n");
  EXPECT_EQ(m.entries.size(), 2);
  EXPECT_EQ(m.entries(0, 1), 1.5);
  EXPECT_EQ(*m.link_capacity, 25e9);
  EXPECT_EQ(*m.degree, 4);
}

TEST(MatrixIo, JsonForm) {
  const RawMatrix m = ParseMatrixText(R"({"n":2,"c":1,"d":2,"entries":[[0,0.5],[0.25,0]]})");
  EXPECT_EQ(m.entries(1, 0), 0.25);
  EXPECT_EQ(*m.degree, 2);
}

TEST(MatrixIo, RejectsRaggedAndJunk) {
  EXPECT_EQ(CodeOf([] { ParseMatrixText("0,1\n1\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseMatrixText("0,1,2\n1,0,2\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseMatrixText("0,x\n1,0\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseMatrixText(R"({"n":2,"entries":[[0,1]]})"); }), ErrorCode::kParse);
}

TEST(MatrixIo, SidecarSuppliesCapacity) {
  const auto dir = std::filesystem::temp_directory_path() / "vermilion_sidecar";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "m.csv").string();
  WriteStringToFile(path, "0,1\n1,0\n");
  WriteStringToFile(path + ".json", R"({"c": 2, "d": 1})");
  const TrafficMatrix m = ReadTrafficMatrix(path);
  EXPECT_EQ(m.link_capacity(), 2);
  EXPECT_EQ(m.degree(), 1);
}

TEST(MatrixIo, CsvRoundTrip) {
  Rng rng(4);
  SquareMatrix<double> m = testing::RandomGridMatrix(5, 1000, 0.001, rng);
  m(0, 1) = 1.0 / 3;
  const RawMatrix back = ParseMatrixText(MatrixToCsv(m, 10.0, 3));
  EXPECT_EQ(back.entries, m);
  EXPECT_EQ(*back.link_capacity, 10.0);
  EXPECT_EQ(*back.degree, 3);
}

}  // namespace
}  // namespace vermilion

#include "maximin/error.hpp"
#include "maximin/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <functional>
#include <filesystem>
#include <random>

using namespace maximin;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("maximin_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

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

TEST(ParseCsv, QuotedFieldsAndLineEnds) {
  const auto rows = parse_csv("a,\"b,c\",\"d\"\"e\"\r\n1,2,3\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][1], "b,c");
  EXPECT_EQ(rows[0][2], "d\"e");
  EXPECT_EQ(rows[1][2], "3");
}

TEST(ReadCsv, BasicTable) {
  TempDir dir;
  write_text(dir.file("d.csv"), "y,x1,x2\n1,2,3\n4,5,6\n7,8,9\n");
  const CsvData d = read_csv(dir.file("d.csv"), true, "y");
  EXPECT_EQ(d.dataset.n(), 3);
  EXPECT_EQ(d.dataset.p(), 2);
  EXPECT_DOUBLE_EQ(d.dataset.Y(2), 7.0);
  EXPECT_DOUBLE_EQ(d.dataset.X(1, 1), 6.0);
  EXPECT_EQ(d.x_names, (std::vector<std::string>{"x1", "x2"}));
}

TEST(ReadCsv, GroupColumn) {
  TempDir dir;
  write_text(dir.file("d.csv"), "y,x1,g\n1,2,a\n4,5,a\n7,8,b\n");
  const CsvData d = read_csv(dir.file("d.csv"), true, "y", std::string("g"));
  ASSERT_TRUE(d.groups.has_value());
  EXPECT_EQ(d.groups->size(), 2);
  EXPECT_EQ(d.dataset.p(), 1);
}

TEST(ReadCsv, Errors) {
  TempDir dir;
  write_text(dir.file("bad.csv"), "y,x1\n1,2\n3,abc\n");
  try {
    read_csv(dir.file("bad.csv"), true, "y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("row 3, column 2"), std::string::npos);
  }
  write_text(dir.file("ragged.csv"), "y,x1\n1,2\n3\n");
  EXPECT_EQ(code_of([&] { read_csv(dir.file("ragged.csv"), true, "y"); }), ErrorCode::RaggedRows);
  write_text(dir.file("ok.csv"), "y,x1\n1,2\n");
  EXPECT_EQ(code_of([&] { read_csv(dir.file("ok.csv"), true, "z"); }), ErrorCode::MissingColumn);
  EXPECT_EQ(code_of([&] { read_csv(dir.file("missing.csv"), true, "y"); }), ErrorCode::IoError);
}

TEST(ReadCsv, Standardize) {
  TempDir dir;
  write_text(dir.file("d.csv"), "y,x1\n1,2\n2,4\n3,9\n");
  const CsvData d = read_csv(dir.file("d.csv"), true, "y", std::nullopt, true);
  EXPECT_NEAR(d.dataset.X.col(0).mean(), 0.0, 1e-14);
  EXPECT_NEAR(d.dataset.X.col(0).squaredNorm() / 3.0, 1.0, 1e-14);
}

TEST(FitJson, RoundTripIsBitExact) {
  TempDir dir;
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  MaximinFit f;
  f.beta = Vector(4);
  for (Index i = 0; i < 4; ++i) f.beta(i) = nd(gen) * 1e-3 + 1.0 / 3.0;
  f.group_V = Vector::Constant(3, 0.1);
  f.scale = 1.0 / 7.0;
  f.iterations = 12;
  f.converged = true;
  f.lambda = 0.125;
  f.duality_gap = 1e-17;
  write_fit(f, dir.file("fit.json"));
  const MaximinFit g = read_fit(dir.file("fit.json"));
  EXPECT_TRUE((f.beta.array() == g.beta.array()).all());
  EXPECT_EQ(f.scale, g.scale);
  EXPECT_EQ(f.duality_gap, g.duality_gap);
  EXPECT_EQ(g.iterations, 12);
  EXPECT_TRUE(g.converged);
}

TEST(FitJson, CanonicalKeysSorted) {
  nlohmann::json j = nlohmann::json::object();
  j["zeta"] = 0.1;
  j["alpha"] = 1;
  j["mid"] = {1.5, "x"};
  EXPECT_EQ(canonical_json(j), "{\"alpha\":1,\"mid\":[1.5,\"x\"],\"zeta\":0.10000000000000001}");
}

TEST(Series, EmptyAndThreeRows) {
  TempDir dir;
  write_series(SeriesReport{}, dir.file("e.csv"));
  EXPECT_EQ(read_text(dir.file("e.csv")), "t,cumsum\n");
  write_series(SeriesReport{{1.0, 0.0, 2.0}, false}, dir.file("s.csv"));
  EXPECT_EQ(read_text(dir.file("s.csv")), "t,cumsum\n1,1\n2,0\n3,2\n");
  EXPECT_EQ(read_series(dir.file("s.csv")).cumsum, (std::vector<double>{1.0, 0.0, 2.0}));
}

TEST(SupportJson, PointsAndWeights) {
  TempDir dir;
  write_text(dir.file("s.json"), "{\"points\":[[1,-4],[1,6]],\"weights\":[0.25,0.75]}");
  const SupportFile s = read_support_json(dir.file("s.json"));
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_DOUBLE_EQ(s.points[1](1), 6.0);
  ASSERT_TRUE(s.weights.has_value());
  EXPECT_DOUBLE_EQ((*s.weights)(1), 0.75);
}

TEST(MatrixCsv, Reads) {
  TempDir dir;
  write_text(dir.file("m.csv"), "1,0.5\n0.5,2\n");
  const Matrix m = read_matrix_csv(dir.file("m.csv"));
  EXPECT_EQ(m.rows(), 2);
  EXPECT_DOUBLE_EQ(m(1, 1), 2.0);
}

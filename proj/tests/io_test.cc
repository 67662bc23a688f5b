// Copyright 2026 The rapdhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rapdhg/io.h"

#include <sstream>

#include <gtest/gtest.h>

namespace rapdhg {
namespace {

const std::filesystem::path kData = RAPDHG_TEST_DATA;

TEST(Libsvm, SingleLine) {
  std::istringstream in("+1 1:0.5 3:2\n");
  const LabeledData d = parse_libsvm(in);
  ASSERT_EQ(d.labels.size(), 1);
  EXPECT_EQ(d.labels[0], 1.0);
  ASSERT_EQ(d.X.cols(), 3);
  EXPECT_EQ(d.X.coeff(0, 0), 0.5);
  EXPECT_EQ(d.X.coeff(0, 1), 0.0);
  EXPECT_EQ(d.X.coeff(0, 2), 2.0);
}

TEST(Libsvm, FixedWidth) {
  std::istringstream in("-1 2:1\n");
  EXPECT_EQ(parse_libsvm(in, 5).X.cols(), 5);
}

TEST(Libsvm, Errors) {
  const char* bad[] = {"+1 1:0.5 1:2\n", "+1 0:1\n", "+1 a:1\n", "+1 1:x\n",
                       "+1 1:0.5\nfoo 1:1\n"};
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(parse_libsvm(in), ParseError) << text;
  }
  std::istringstream in("+1 1:0.5\n-1 1:1 1:2\n");
  try {
    parse_libsvm(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Libsvm, Fixture) {
  const LabeledData d = read_libsvm(kData / "tiny.libsvm");
  EXPECT_EQ(d.labels.size(), 4);
  EXPECT_EQ(d.X.cols(), 3);
  EXPECT_EQ(d.X.coeff(2, 1), -0.25);
  EXPECT_EQ(d.labels[3], -1.0);
}

TEST(Pgm, AsciiTwoByTwo) {
  const Field2D f = parse_pgm("P2\n2 2\n255\n0 255 255 0\n");
  EXPECT_EQ(f.rows, 2);
  EXPECT_EQ(f.cols, 2);
  EXPECT_EQ(f(0, 0), 0.0);
  EXPECT_EQ(f(0, 1), 1.0);
  EXPECT_EQ(f(1, 0), 1.0);
  EXPECT_EQ(f(1, 1), 0.0);
}

TEST(Pgm, CommentsAndFixture) {
  const Field2D f = read_pgm(kData / "tiny.pgm");
  EXPECT_EQ(f.rows, 4);
  EXPECT_EQ(f(1, 1), 1.0);
  EXPECT_EQ(f(3, 3), 1.0);
  EXPECT_EQ(f(3, 2), 0.0);
}

TEST(Pgm, BinaryRoundTrip) {
  Field2D f{3, 2, Vec(6)};
  f.values << 0, 1, 0.2, 0.4, 0.6, 0.8;
  const auto path = std::filesystem::temp_directory_path() / "rapdhg_rt.pgm";
  write_pgm(f, path);
  const Field2D g = read_pgm(path);
  std::filesystem::remove(path);
  EXPECT_EQ(g.rows, 3);
  EXPECT_EQ(g.cols, 2);
  EXPECT_LT((g.values - f.values).lpNorm<Eigen::Infinity>(), 0.5 / 255 + 1e-12);
}

TEST(Pgm, SixteenBitBinary) {
  std::string bytes = "P5\n1 2\n65535\n";
  bytes += std::string("\xff\xff\x00\x00", 4);
  const Field2D f = parse_pgm(bytes);
  EXPECT_EQ(f(0, 0), 1.0);
  EXPECT_EQ(f(1, 0), 0.0);
}

TEST(Pgm, Errors) {
  EXPECT_THROW(parse_pgm("P3\n1 1\n255\n0\n"), ParseError);
  EXPECT_THROW(parse_pgm("P2\n2 2\n255\n0 1 2\n"), ParseError);
  EXPECT_THROW(parse_pgm("P2\n1 1\n10\n11\n"), ParseError);
}

TEST(LpJson, DenseAndCooAgree) {
  const LPDescription dense = read_lp_json(kData / "small_lp.json");
  const LPDescription coo = read_lp_json(kData / "small_lp_coo.json");
  EXPECT_TRUE(dense.E.empty());
  EXPECT_TRUE(dense.F.empty());
  EXPECT_EQ(Eigen::MatrixXd(dense.A), Eigen::MatrixXd(coo.A));
  EXPECT_EQ(dense.b, coo.b);
  EXPECT_EQ(dense.I, coo.I);
  EXPECT_EQ(Eigen::MatrixXd(dense.A), Eigen::MatrixXd(small_lp().A));
}

TEST(LpJson, RoundTrip) {
  const LPDescription lp = small_lp();
  const std::string text = write_lp_json(lp);
  const LPDescription back = parse_lp_json(text);
  EXPECT_EQ(Eigen::MatrixXd(back.A), Eigen::MatrixXd(lp.A));
  EXPECT_EQ(back.c, lp.c);
  EXPECT_EQ(back.N, lp.N);
  EXPECT_EQ(write_lp_json(back), text);
}

TEST(LpJson, Errors) {
  EXPECT_THROW(parse_lp_json("{"), ParseError);
  EXPECT_THROW(parse_lp_json(R"({"A": [[1]], "b": [1, 2], "c": [1]})"),
               ParseError);
  EXPECT_THROW(
      parse_lp_json(R"({"A": [[1]], "b": [1], "c": [1], "I": [0], "E": [0]})"),
      ParseError);
}

TEST(ReadFile, MissingFile) {
  EXPECT_THROW(read_file(kData / "nope.txt"), std::runtime_error);
}

}  // namespace
}  // namespace rapdhg

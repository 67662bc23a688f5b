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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

namespace rapdhg {
namespace {

using Json = nlohmann::json;

bool ParseDouble(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool ParseIndex(std::string_view s, long long& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<Index> IndexArray(const Json& j, const char* key) {
  if (!j.is_array()) {
    throw ParseError(std::string("LP JSON: \"") + key + "\" must be an array",
                     0);
  }
  std::vector<Index> out;
  for (const Json& v : j) {
    if (!v.is_number_integer()) {
      throw ParseError(
          std::string("LP JSON: \"") + key + "\" entries must be integers", 0);
    }
    out.push_back(v.get<Index>());
  }
  return out;
}

Vec VectorArray(const Json& j, const char* key) {
  if (!j.is_array()) {
    throw ParseError(std::string("LP JSON: \"") + key + "\" must be an array",
                     0);
  }
  Vec out(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw ParseError(
          std::string("LP JSON: \"") + key + "\" entries must be numbers", 0);
    }
    out[static_cast<Index>(i)] = j[i].get<double>();
  }
  return out;
}

std::vector<Index> Complement(const std::vector<Index>& set, Index size) {
  std::vector<bool> in(size, false);
  for (Index i : set) {
    if (i >= 0 && i < size) in[i] = true;
  }
  std::vector<Index> out;
  for (Index i = 0; i < size; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LabeledData parse_libsvm(std::istream& in, Index num_features) {
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> labels;
  Index max_col = 0;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    double label = 0.0;
    if (!ParseDouble(tokens[0], label)) {
      throw ParseError("malformed label '" + std::string(tokens[0]) + "'",
                       line_no);
    }
    const Index row = static_cast<Index>(labels.size());
    std::set<long long> seen;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const auto colon = tok.find(':');
      long long idx = 0;
      double val = 0.0;
      if (colon == std::string_view::npos ||
          !ParseIndex(tok.substr(0, colon), idx) ||
          !ParseDouble(tok.substr(colon + 1), val)) {
        throw ParseError("malformed feature '" + std::string(tok) + "'",
                         line_no);
      }
      if (idx < 1) {
        throw ParseError("feature index must be >= 1", line_no);
      }
      if (num_features > 0 && idx > num_features) {
        throw ParseError("feature index " + std::to_string(idx) +
                             " exceeds the declared count",
                         line_no);
      }
      if (!seen.insert(idx).second) {
        throw ParseError("duplicate feature index " + std::to_string(idx),
                         line_no);
      }
      max_col = std::max<Index>(max_col, idx);
      triplets.emplace_back(row, static_cast<Index>(idx - 1), val);
    }
    labels.push_back(label);
  }
  const Index cols = num_features > 0 ? num_features : max_col;
  LabeledData out;
  out.X.resize(static_cast<Index>(labels.size()), cols);
  out.X.setFromTriplets(triplets.begin(), triplets.end());
  out.labels = Eigen::Map<Vec>(labels.data(), static_cast<Index>(labels.size()));
  return out;
}

LabeledData read_libsvm(const std::filesystem::path& path,
                        Index num_features) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_libsvm(in, num_features);
}

Field2D parse_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  long line = 1;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      const char ch = bytes[pos];
      if (ch == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        if (ch == '\n') ++line;
        ++pos;
      } else {
        break;
      }
    }
  };
  auto next_token = [&]() -> std::string_view {
    skip_space();
    const std::size_t start = pos;
    while (pos < bytes.size() &&
           !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#')
      ++pos;
    return bytes.substr(start, pos - start);
  };
  auto next_int = [&](const char* what) {
    const std::string_view tok = next_token();
    long long v = 0;
    if (!ParseIndex(tok, v) || v < 0) {
      throw ParseError(std::string("PGM: bad ") + what + " '" +
                           std::string(tok) + "'",
                       line);
    }
    return v;
  };

  const std::string_view magic = next_token();
  if (magic != "P2" && magic != "P5") {
    throw ParseError("PGM: expected P2 or P5 magic number", line);
  }
  const long long cols = next_int("width");
  const long long rows = next_int("height");
  const long long maxval = next_int("maxval");
  if (cols < 1 || rows < 1) throw ParseError("PGM: empty image", line);
  if (maxval < 1 || maxval > 65535) {
    throw ParseError("PGM: maxval must be in [1, 65535]", line);
  }
  Field2D img{static_cast<Index>(rows), static_cast<Index>(cols),
              Vec(static_cast<Index>(rows * cols))};
  const Index count = img.values.size();
  if (magic == "P2") {
    for (Index k = 0; k < count; ++k) {
      const long long v = next_int("sample");
      if (v > maxval) throw ParseError("PGM: sample exceeds maxval", line);
      img.values[k] = static_cast<double>(v) / static_cast<double>(maxval);
    }
    return img;
  }
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ParseError("PGM: missing separator before raster", line);
  }
  ++pos;
  const std::size_t width = maxval < 256 ? 1 : 2;
  if (bytes.size() - pos < static_cast<std::size_t>(count) * width) {
    throw ParseError("PGM: truncated raster", line);
  }
  for (Index k = 0; k < count; ++k) {
    unsigned v = static_cast<unsigned char>(bytes[pos++]);
    if (width == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos++]);
    if (v > maxval) throw ParseError("PGM: sample exceeds maxval", line);
    img.values[k] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return img;
}

Field2D read_pgm(const std::filesystem::path& path) {
  return parse_pgm(read_file(path));
}

void write_pgm(const Field2D& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << image.cols << " " << image.rows << "\n255\n";
  for (Index k = 0; k < image.values.size(); ++k) {
    const double v = std::clamp(image.values[k], 0.0, 1.0);
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255))));
  }
}

LPDescription parse_lp_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("LP JSON: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("LP JSON: expected an object", 0);
  for (const char* key : {"A", "b", "c"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("LP JSON: missing \"") + key + "\"", 0);
    }
  }
  LPDescription lp;
  lp.b = VectorArray(j["b"], "b");
  lp.c = VectorArray(j["c"], "c");
  const Json& a = j["A"];
  std::vector<Eigen::Triplet<double>> triplets;
  Index rows = 0, cols = 0;
  if (a.is_array()) {
    rows = static_cast<Index>(a.size());
    cols = rows > 0 ? static_cast<Index>(a[0].size()) : lp.c.size();
    for (Index i = 0; i < rows; ++i) {
      const Vec row = VectorArray(a[i], "A");
      if (row.size() != cols) throw ParseError("LP JSON: ragged A", 0);
      for (Index k = 0; k < cols; ++k) {
        if (row[k] != 0.0) triplets.emplace_back(i, k, row[k]);
      }
    }
  } else if (a.is_object()) {
    if (!a.contains("rows") || !a.contains("cols") || !a.contains("entries")) {
      throw ParseError("LP JSON: COO A needs rows, cols and entries", 0);
    }
    rows = a["rows"].get<Index>();
    cols = a["cols"].get<Index>();
    std::set<std::pair<Index, Index>> seen;
    for (const Json& e : a["entries"]) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || !e[2].is_number()) {
        throw ParseError("LP JSON: COO entries must be [row, col, value]", 0);
      }
      const Index r = e[0].get<Index>();
      const Index c = e[1].get<Index>();
      if (r < 0 || r >= rows || c < 0 || c >= cols) {
        throw ParseError("LP JSON: COO entry out of range", 0);
      }
      if (!seen.insert({r, c}).second) {
        throw ParseError("LP JSON: duplicate COO entry", 0);
      }
      triplets.emplace_back(r, c, e[2].get<double>());
    }
  } else {
    throw ParseError("LP JSON: A must be an array of rows or a COO object", 0);
  }
  lp.A.resize(rows, cols);
  lp.A.setFromTriplets(triplets.begin(), triplets.end());

  auto read_pair = [&](const char* k1, const char* k2, Index size,
                       std::vector<Index>& s1, std::vector<Index>& s2) {
    const bool h1 = j.contains(k1), h2 = j.contains(k2);
    if (!h1 && !h2) {
      throw ParseError(std::string("LP JSON: need \"") + k1 + "\" or \"" + k2 +
                           "\"",
                       0);
    }
    if (h1) s1 = IndexArray(j[k1], k1);
    if (h2) s2 = IndexArray(j[k2], k2);
    if (!h1) s1 = Complement(s2, size);
    if (!h2) s2 = Complement(s1, size);
  };
  read_pair("E", "I", rows, lp.E, lp.I);
  read_pair("N", "F", cols, lp.N, lp.F);
  try {
    lp.Validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("LP JSON: ") + e.what(), 0);
  }
  return lp;
}

LPDescription read_lp_json(const std::filesystem::path& path) {
  return parse_lp_json(read_file(path));
}

std::string write_lp_json(const LPDescription& lp) {
  std::vector<std::tuple<Index, Index, double>> entries;
  for (Index r = 0; r < lp.A.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(lp.A, r); it; ++it) {
      entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  std::sort(entries.begin(), entries.end());
  Json a = Json::object();
  a["rows"] = lp.A.rows();
  a["cols"] = lp.A.cols();
  Json list = Json::array();
  for (const auto& [r, c, v] : entries) list.push_back({r, c, v});
  a["entries"] = std::move(list);
  Json j = Json::object();
  j["A"] = std::move(a);
  j["b"] = std::vector<double>(lp.b.data(), lp.b.data() + lp.b.size());
  j["c"] = std::vector<double>(lp.c.data(), lp.c.data() + lp.c.size());
  auto sorted = [](std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  j["E"] = sorted(lp.E);
  j["I"] = sorted(lp.I);
  j["N"] = sorted(lp.N);
  j["F"] = sorted(lp.F);
  return j.dump(1) + "\n";
}

}  // namespace rapdhg

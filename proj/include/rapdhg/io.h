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

#ifndef RAPDHG_IO_H_
#define RAPDHG_IO_H_

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rapdhg/linalg.h"
#include "rapdhg/problems.h"

namespace rapdhg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// "label idx:val idx:val ..." with 1-based, strictly positive indices.
// num_features = 0 infers the column count from the largest index.
LabeledData parse_libsvm(std::istream& in, Index num_features = 0);
LabeledData read_libsvm(const std::filesystem::path& path,
                        Index num_features = 0);

// Plain (P2) or raw (P5) graymap, values scaled to [0, 1].
Field2D parse_pgm(std::string_view bytes);
Field2D read_pgm(const std::filesystem::path& path);
// Writes a raw P5 graymap with maxval 255, clamping to [0, 1].
void write_pgm(const Field2D& image, const std::filesystem::path& path);

// {"A": dense rows or {"rows", "cols", "entries": [[i, j, v], ...]},
//  "b": [...], "c": [...], "E": [...], "I": [...], "N": [...], "F": [...]}
// A missing member of a pair (E/I or N/F) is the complement of the other.
LPDescription parse_lp_json(std::string_view text);
LPDescription read_lp_json(const std::filesystem::path& path);
// Canonical serialization; A is written as sorted triplets.
std::string write_lp_json(const LPDescription& lp);

std::string read_file(const std::filesystem::path& path);

}  // namespace rapdhg

#endif  // RAPDHG_IO_H_

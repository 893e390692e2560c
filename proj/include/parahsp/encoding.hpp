// Copyright 2026 The parahsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Canonical text encodings (see docs/FORMAT.md):
//   vector    "1,0,2"
//   matrix    rows joined by ';'          "1,0;0,1"
//   subspace  "<n>:" + RREF basis rows     "3:1,0,0;0,1,1"   zero: "3:"
//   flag      "<n>" + "|"+member rows...   "3|1,0,0;0,1,0|0,0,1"  trivial: "3"

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "parahsp/fqla.hpp"

namespace parahsp {

std::string encode_vector(std::span<const Elem> v);
std::string encode_matrix(const Matrix &m);
std::string encode_subspace(const Subspace &s);
std::string encode_flag(const Flag &f);

Vec parse_vector(const FieldPtr &ctx, std::string_view text);
/// `cols` disambiguates the empty (0-row) matrix.
Matrix parse_matrix(const FieldPtr &ctx, std::string_view text, std::size_t cols);
Subspace parse_subspace(const FieldPtr &ctx, std::string_view text);
Flag parse_flag(const FieldPtr &ctx, std::string_view text);

/// Opaque oracle output. Labels are only ever compared for equality.
class Label {
  public:
    Label() = default;
    explicit Label(std::string bytes) : bytes_(std::move(bytes)) {}

    const std::string &bytes() const { return bytes_; }
    /// 4-byte little-endian length followed by the raw bytes.
    std::string serialize() const;
    static Label deserialize(std::string_view data);

    bool operator==(const Label &o) const { return bytes_ == o.bytes_; }

  private:
    std::string bytes_;
};

struct LabelHash {
    std::size_t operator()(const Label &l) const { return std::hash<std::string>{}(l.bytes()); }
};

} // namespace parahsp

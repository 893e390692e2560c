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

#include "parahsp/encoding.hpp"

#include <charconv>
#include <vector>

#include "parahsp/errors.hpp"

namespace parahsp {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::size_t parse_size(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError("bad integer '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

std::string encode_vector(std::span<const Elem> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(v[i]);
    }
    return out;
}

std::string encode_matrix(const Matrix &m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) {
            out += ';';
        }
        out += encode_vector(m.row(i));
    }
    return out;
}

std::string encode_subspace(const Subspace &s) {
    return std::to_string(s.ambient()) + ":" + encode_matrix(s.basis());
}

std::string encode_flag(const Flag &f) {
    std::string out = std::to_string(f.ambient());
    for (const Subspace &u : f.chain()) {
        out += '|';
        out += encode_matrix(u.basis());
    }
    return out;
}

Vec parse_vector(const FieldPtr &ctx, std::string_view text) {
    Vec v;
    if (text.empty()) {
        return v;
    }
    for (std::string_view tok : split(text, ',')) {
        const std::size_t e = parse_size(tok);
        if (e >= ctx->q()) {
            throw ParseError("field element " + std::to_string(e) + " out of range");
        }
        v.push_back(static_cast<Elem>(e));
    }
    return v;
}

Matrix parse_matrix(const FieldPtr &ctx, std::string_view text, std::size_t cols) {
    if (text.empty()) {
        return Matrix(ctx, 0, cols);
    }
    std::vector<Elem> entries;
    std::size_t rows = 0;
    for (std::string_view row : split(text, ';')) {
        Vec v = parse_vector(ctx, row);
        if (v.size() != cols) {
            throw ParseError("row has " + std::to_string(v.size()) + " entries, expected " +
                             std::to_string(cols));
        }
        entries.insert(entries.end(), v.begin(), v.end());
        ++rows;
    }
    return Matrix(ctx, rows, cols, std::move(entries));
}

Subspace parse_subspace(const FieldPtr &ctx, std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("subspace encoding lacks ':'");
    }
    const std::size_t n = parse_size(text.substr(0, colon));
    Subspace s = Subspace::row_space(parse_matrix(ctx, text.substr(colon + 1), n));
    if (encode_subspace(s) != text) {
        throw ParseError("subspace encoding is not canonical");
    }
    return s;
}

Flag parse_flag(const FieldPtr &ctx, std::string_view text) {
    auto parts = split(text, '|');
    const std::size_t n = parse_size(parts[0]);
    std::vector<Subspace> chain;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        chain.push_back(Subspace::row_space(parse_matrix(ctx, parts[i], n)));
    }
    try {
        Flag f(ctx, n, std::move(chain));
        if (encode_flag(f) != text) {
            throw ParseError("flag encoding is not canonical");
        }
        return f;
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what());
    }
}

std::string Label::serialize() const {
    std::string out(4, '\0');
    const auto len = static_cast<std::uint32_t>(bytes_.size());
    for (int i = 0; i < 4; ++i) {
        out[i] = static_cast<char>((len >> (8 * i)) & 0xff);
    }
    return out + bytes_;
}

Label Label::deserialize(std::string_view data) {
    if (data.size() < 4) {
        throw ParseError("label shorter than its length prefix");
    }
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) {
        len |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[i])) << (8 * i);
    }
    if (data.size() != 4 + std::size_t(len)) {
        throw ParseError("label length prefix mismatch");
    }
    return Label(std::string(data.substr(4)));
}

} // namespace parahsp

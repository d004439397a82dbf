/**************************************************************************
 * io.hpp
 *
 * Copyright 2026 The apnlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

// Table file formats:
//   JSON   {"n": <int>, "table": [<int>, ...]}
//   binary 8-byte little-endian n, then 2^n little-endian uint32 entries

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vbf.hpp"

namespace apnlab::io {

/// Malformed table data; offset is the byte position where parsing failed.
class FormatError : public InputError {
public:
    FormatError(const std::string& what, std::size_t offset)
        : InputError(what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

inline std::string table_to_json(const VBF& F) {
    nlohmann::ordered_json j;
    j["n"] = F.n();
    j["table"] = F.table();
    return j.dump();
}

inline VBF table_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("table"))
        throw FormatError("JSON table must be an object with keys \"n\" and \"table\"", 0);
    if (!j["n"].is_number_unsigned() || !j["table"].is_array())
        throw FormatError("\"n\" must be a non-negative integer and \"table\" an array", 0);
    const auto n = j["n"].get<unsigned>();
    std::vector<std::uint32_t> t;
    t.reserve(j["table"].size());
    for (const auto& v : j["table"]) {
        if (!v.is_number_unsigned()) throw FormatError("table entry " + std::to_string(t.size()) + " is not an unsigned integer", 0);
        t.push_back(v.get<std::uint32_t>());
    }
    return VBF::from_table(n, std::move(t));
}

inline std::string table_to_binary(const VBF& F) {
    std::string out;
    out.reserve(8 + 4 * F.size());
    std::uint64_t n = F.n();
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((n >> (8 * i)) & 0xff));
    for (auto v : F.table())
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    return out;
}

inline VBF table_from_binary(const std::string& bytes) {
    if (bytes.size() < 8) throw FormatError("binary table shorter than the 8-byte header", bytes.size());
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    if (n > VBF::kMaxBits) throw FormatError("binary header n=" + std::to_string(n) + " exceeds 24", 0);
    const std::size_t count = std::size_t{1} << n;
    const std::size_t expected = 8 + 4 * count;
    if (bytes.size() != expected)
        throw FormatError("binary table size mismatch: expected " + std::to_string(expected) + " bytes, got " +
                              std::to_string(bytes.size()),
                          std::min(bytes.size(), expected));
    std::vector<std::uint32_t> t(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[8 + 4 * k + i])) << (8 * i);
        if (v >= (std::uint32_t{1} << n))
            throw FormatError("entry " + std::to_string(k) + " out of range", 8 + 4 * k);
        t[k] = v;
    }
    return VBF::from_table(static_cast<unsigned>(n), std::move(t));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << data;
}

/// Loads a table, detecting the format from the first non-blank byte.
inline VBF load_table(const std::string& path) {
    const std::string data = read_file(path);
    const auto first = data.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && data[first] == '{') return table_from_json(data);
    return table_from_binary(data);
}

inline void save_table(const std::string& path, const VBF& F) {
    const bool binary = path.size() >= 4 && path.substr(path.size() - 4) == ".bin";
    write_file(path, binary ? table_to_binary(F) : table_to_json(F) + "\n");
}

/// FNV-1a over the packed table; used as a content key for caches.
inline std::uint64_t content_hash(const VBF& F) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t byte) {
        h ^= byte;
        h *= 1099511628211ull;
    };
    mix(F.n());
    for (auto v : F.table())
        for (int i = 0; i < 4; ++i) mix((v >> (8 * i)) & 0xff);
    return h;
}

}  // namespace apnlab::io

/**************************************************************************
 * cache.hpp
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

// Persistent artifacts:
//   space list   "apnlab-spaces n=<n> count=<c>\n" then one line per space,
//                canonical basis vectors in hex separated by spaces
//   checkpoint   JSON lines; a header {"function": <hash>, "n": <n>} then one
//                record per twisted source space

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>

#include "ccz.hpp"
#include "io.hpp"

namespace apnlab::io {

inline std::string spaces_to_text(unsigned n, const std::vector<VectorSpaceBasis>& spaces) {
    std::string out = "apnlab-spaces n=" + std::to_string(n) + " count=" + std::to_string(spaces.size()) + "\n";
    for (const auto& V : spaces) {
        for (std::size_t i = 0; i < V.basis().size(); ++i) {
            if (i) out += ' ';
            out += to_hex(V.basis()[i]);
        }
        out += '\n';
    }
    return out;
}

inline std::vector<VectorSpaceBasis> spaces_from_text(const std::string& text, unsigned expect_n) {
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos) throw FormatError("missing space list header", 0);
    unsigned n = 0;
    std::size_t count = 0;
    if (std::sscanf(text.substr(0, pos).c_str(), "apnlab-spaces n=%u count=%zu", &n, &count) != 2)
        throw FormatError("bad space list header", 0);
    if (n != expect_n) throw FormatError("space list is for n=" + std::to_string(n), 0);
    std::vector<VectorSpaceBasis> out;
    out.reserve(count);
    ++pos;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) throw FormatError("truncated space list", pos);
        std::vector<std::uint64_t> basis;
        std::istringstream line(text.substr(pos, eol - pos));
        std::string tok;
        while (line >> tok) {
            std::size_t used = 0;
            std::uint64_t v = 0;
            try {
                v = std::stoull(tok, &used, 16);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || (v >> (2 * n)) != 0) throw FormatError("bad basis vector '" + tok + "'", pos);
            basis.push_back(v);
        }
        try {
            out.push_back(VectorSpaceBasis::from_canonical(std::move(basis)));
        } catch (const std::exception& e) {
            throw FormatError(e.what(), pos);
        }
        pos = eol + 1;
    }
    if (out.size() != count) throw FormatError("space list count mismatch", text.size());
    return out;
}

/// Directory-backed memo of n-dimensional Walsh-zero spaces, keyed by the
/// content hash of the function table. Disabled when dir is empty.
class SpaceCache {
public:
    SpaceCache() = default;
    explicit SpaceCache(std::string dir) : dir_(std::move(dir)) {}

    static SpaceCache from_env() {
        const char* d = std::getenv("APNLAB_CACHE");
        return SpaceCache(d ? d : "");
    }

    [[nodiscard]] bool enabled() const { return !dir_.empty(); }

    [[nodiscard]] std::string path_for(const VBF& F) const {
        return dir_ + "/spaces-" + std::to_string(F.n()) + "-" + to_hex(content_hash(F)) + ".txt";
    }

    /// Cached spaces if present, otherwise extracted and stored. A corrupt
    /// cache file is reported on stderr and rebuilt.
    std::vector<VectorSpaceBasis> spaces(const VBF& F, unsigned jobs = 0) {
        if (enabled()) {
            const auto p = path_for(F);
            if (std::filesystem::exists(p)) {
                try {
                    return spaces_from_text(read_file(p), F.n());
                } catch (const InputError& e) {
                    std::cerr << "apnlab: ignoring cache file " << p << ": " << e.what() << "\n";
                }
            }
        }
        auto s = extract_spaces(walsh_zeroes(F, jobs), std::nullopt, jobs);
        if (enabled()) {
            std::filesystem::create_directories(dir_);
            const auto p = path_for(F);
            write_file(p + ".tmp", spaces_to_text(F.n(), s));
            std::filesystem::rename(p + ".tmp", p);
        }
        return s;
    }

private:
    std::string dir_;
};

// ---------------------------------------------------------------------------
// Checkpoints for region exploration

inline nlohmann::ordered_json spectrum_json(const std::map<int, std::uint64_t>& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

inline nlohmann::ordered_json spectrum_json(const std::map<unsigned, std::uint64_t>& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

inline nlohmann::ordered_json basis_json(const VectorSpaceBasis& V) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (auto v : V.basis()) j.push_back(to_hex(v));
    return j;
}

inline VectorSpaceBasis basis_from_json(const nlohmann::json& j) {
    std::vector<std::uint64_t> b;
    for (const auto& s : j) b.push_back(std::stoull(s.get<std::string>(), nullptr, 16));
    return VectorSpaceBasis::from_canonical(std::move(b));
}

inline std::string record_to_line(const SourceRecord& r) {
    nlohmann::ordered_json j;
    j["space"] = basis_json(r.space);
    j["twist"] = r.twist;
    j["degrees"] = spectrum_json(r.signature.degrees.counts);
    j["thickness"] = spectrum_json(r.signature.thickness);
    return j.dump();
}

inline SourceRecord record_from_json(const nlohmann::json& j) {
    SourceRecord r;
    r.space = basis_from_json(j.at("space"));
    r.twist = j.at("twist").get<unsigned>();
    for (const auto& [k, v] : j.at("degrees").items()) r.signature.degrees.counts[std::stoi(k)] = v.get<std::uint64_t>();
    for (const auto& [k, v] : j.at("thickness").items())
        r.signature.thickness[static_cast<unsigned>(std::stoul(k))] = v.get<std::uint64_t>();
    return r;
}

/// Append-only checkpoint file bound to one function. Records from an
/// earlier run are loaded on open; a torn final line is dropped.
class Checkpoint {
public:
    Checkpoint(const std::string& path, const VBF& F) : path_(path) {
        const std::string header = [&] {
            nlohmann::ordered_json h;
            h["function"] = to_hex(content_hash(F));
            h["n"] = F.n();
            return h.dump();
        }();
        if (std::filesystem::exists(path)) {
            const std::string text = read_file(path);
            std::size_t pos = 0;
            bool first = true;
            while (pos < text.size()) {
                const std::size_t eol = text.find('\n', pos);
                if (eol == std::string::npos) break;  // torn write
                const std::string line = text.substr(pos, eol - pos);
                if (first) {
                    if (line != header) throw InputError("checkpoint " + path + " belongs to a different function");
                    first = false;
                } else {
                    try {
                        auto r = record_from_json(nlohmann::json::parse(line));
                        records_[r.space] = std::move(r);
                    } catch (const std::exception& e) {
                        throw FormatError("bad checkpoint record: " + std::string(e.what()), pos);
                    }
                }
                pos = eol + 1;
            }
            if (first) write_file(path, header + "\n");
            else if (pos < text.size()) write_file(path, text.substr(0, pos));
        } else {
            write_file(path, header + "\n");
        }
        out_.open(path, std::ios::app | std::ios::binary);
        if (!out_) throw InputError("cannot append to " + path);
    }

    [[nodiscard]] const std::map<VectorSpaceBasis, SourceRecord>& records() const { return records_; }

    void append(const SourceRecord& r) {
        std::lock_guard lock(mu_);
        out_ << record_to_line(r) << '\n';
        out_.flush();
    }

private:
    std::string path_;
    std::map<VectorSpaceBasis, SourceRecord> records_;
    std::ofstream out_;
    std::mutex mu_;
};

}  // namespace apnlab::io

/**************************************************************************
 * ccz.hpp
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

/**
 * @file ccz.hpp
 * @brief Twisting along Walsh-zero spaces and exploration of the
 *        degree/thickness regions inside a CCZ class.
 *
 * An admissible map L is a 2n x 2n matrix whose first n rows span the
 * source space V. It sends the graph of F to the graph of the twisted
 * function G, and (L^T)^{-1} sends the Walsh zeroes of F onto those of G,
 * with V going to F_2^n x {0}.
 */

#include <functional>
#include <random>
#include <set>

#include "walsh_geometry.hpp"

namespace apnlab {

struct AdmissibleMap {
    unsigned n = 0;
    BinaryMatrix L;
    /// (L^T)^{-1}; maps Walsh zeroes of F to those of the twisted function.
    BinaryMatrix zero_map;

    [[nodiscard]] VectorSpaceBasis transform(const VectorSpaceBasis& U) const {
        std::vector<std::uint64_t> g;
        g.reserve(U.dim());
        for (auto v : U.basis()) g.push_back(zero_map.apply(v));
        return VectorSpaceBasis::span_of(g);
    }
};

/// Rows: the canonical basis of V, then completion vectors. The default
/// completion is the unit vectors at V's non-pivot positions, ascending.
inline AdmissibleMap admissible_map(const VectorSpaceBasis& V, unsigned n,
                                    std::span<const std::uint64_t> completion = {}) {
    if (V.dim() != n)
        throw InputError("source space must have dimension " + std::to_string(n) + ", got " + std::to_string(V.dim()));
    std::vector<std::uint64_t> rows = V.basis();
    if (completion.empty()) {
        const std::uint64_t piv = V.pivot_mask();
        for (unsigned j = 0; j < 2 * n; ++j)
            if (!((piv >> j) & 1)) rows.push_back(std::uint64_t{1} << j);
    } else {
        if (completion.size() != n) throw InputError("completion must have n vectors");
        rows.insert(rows.end(), completion.begin(), completion.end());
    }
    AdmissibleMap A;
    A.n = n;
    A.L = BinaryMatrix::from_rows(2 * n, std::move(rows));
    if (!A.L.invertible()) throw DomainError("completion does not extend V to a basis of F_2^(2n)");
    A.zero_map = A.L.transpose().inverse();
    return A;
}

/// The function whose graph is L(graph F). Requires V ⊆ Z_F, which is
/// exactly the condition for the first half of L to be bijective on the
/// graph.
inline VBF twist(const VBF& F, const AdmissibleMap& A) {
    const unsigned n = F.n();
    if (A.n != n) throw InputError("admissible map dimension does not match the function");
    const std::uint64_t mask = low_mask(n);
    std::vector<std::uint32_t> g(F.size());
    std::vector<bool> seen(F.size(), false);
    for (std::uint64_t x = 0; x < F.size(); ++x) {
        const std::uint64_t y = A.L.apply(x | (std::uint64_t{F(x)} << n));
        const std::uint64_t xp = y & mask;
        if (seen[xp]) throw DomainError("source space is not contained in the Walsh zeroes of F");
        seen[xp] = true;
        g[xp] = static_cast<std::uint32_t>(y >> n);
    }
    return VBF::from_table(n, std::move(g));
}

inline VBF twist(const VBF& F, const VectorSpaceBasis& V) { return twist(F, admissible_map(V, F.n())); }

// ---------------------------------------------------------------------------
// Signatures and regions

struct DTSignature {
    DegreeSpectrum degrees;
    ThicknessSpectrum thickness;

    [[nodiscard]] bool non_degenerate() const { return degrees.non_degenerate(); }
    [[nodiscard]] bool permutation_bearing(unsigned n) const { return thickness.count(n) > 0; }

    friend bool operator==(const DTSignature&, const DTSignature&) = default;
    friend auto operator<=>(const DTSignature&, const DTSignature&) = default;
};

/// Signature computed from scratch (fresh Walsh zeroes and extraction).
inline DTSignature dt_signature(const VBF& G, unsigned jobs = 0) {
    return {degree_spectrum(G), thickness_spectrum(G, jobs)};
}

/// Thickness spectrum of the twisted function, obtained by mapping the
/// spaces of F through (L^T)^{-1}.
inline ThicknessSpectrum transformed_thickness_spectrum(const AdmissibleMap& A,
                                                        const std::vector<VectorSpaceBasis>& spaces) {
    const unsigned n = A.n;
    // only the output half of the image matters
    std::vector<std::uint64_t> hi_rows(n);
    for (unsigned i = 0; i < n; ++i) hi_rows[i] = A.zero_map.row(n + i);
    ThicknessSpectrum s;
    std::uint64_t img[64];
    for (const auto& U : spaces) {
        for (unsigned k = 0; k < U.dim(); ++k) {
            std::uint64_t h = 0;
            for (unsigned i = 0; i < n; ++i) h |= static_cast<std::uint64_t>(parity(hi_rows[i] & U.basis()[k])) << i;
            img[k] = h;
        }
        ++s[rank_of(std::span<const std::uint64_t>(img, U.dim()))];
    }
    return s;
}

struct Region {
    DTSignature signature;
    /// Thickness (with respect to F) of the source spaces landing here.
    std::set<unsigned> twists;
    std::uint64_t count = 0;
    /// First source space in canonical order.
    VectorSpaceBasis witness;
    bool permutation_bearing = false;
};

struct RegionTable {
    unsigned n = 0;
    std::uint64_t spaces_total = 0;
    std::uint64_t spaces_examined = 0;
    std::vector<Region> regions;     // non-degenerate
    std::vector<Region> degenerate;  // some component affine

    [[nodiscard]] std::size_t permutation_bearing_count() const {
        return static_cast<std::size_t>(
            std::count_if(regions.begin(), regions.end(), [](const Region& r) { return r.permutation_bearing; }));
    }
};

struct RegionFilter {
    enum class Kind { all, thickness, sample };
    Kind kind = Kind::all;
    std::set<unsigned> thickness_values;
    std::size_t sample_size = 0;
    std::uint64_t seed = 0;

    static RegionFilter all() { return {}; }
    static RegionFilter by_thickness(std::set<unsigned> t) { return {Kind::thickness, std::move(t), 0, 0}; }
    static RegionFilter sample(std::size_t k, std::uint64_t seed) { return {Kind::sample, {}, k, seed}; }
};

/// Indices of the source spaces selected by the filter, ascending.
inline std::vector<std::size_t> select_sources(const std::vector<VectorSpaceBasis>& spaces, unsigned n,
                                               const RegionFilter& filter) {
    std::vector<std::size_t> idx;
    switch (filter.kind) {
    case RegionFilter::Kind::all:
        for (std::size_t i = 0; i < spaces.size(); ++i) idx.push_back(i);
        break;
    case RegionFilter::Kind::thickness:
        for (std::size_t i = 0; i < spaces.size(); ++i)
            if (filter.thickness_values.count(thickness(spaces[i], n))) idx.push_back(i);
        break;
    case RegionFilter::Kind::sample: {
        // partial Fisher-Yates with a fixed engine, so a seed always picks
        // the same spaces
        std::vector<std::size_t> all(spaces.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::mt19937_64 rng(filter.seed);
        const std::size_t k = std::min(filter.sample_size, all.size());
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng() % (all.size() - i));
            std::swap(all[i], all[j]);
        }
        idx.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(idx.begin(), idx.end());
        break;
    }
    }
    return idx;
}

/// Per-source result, also the unit of checkpointing.
struct SourceRecord {
    VectorSpaceBasis space;
    unsigned twist = 0;
    DTSignature signature;
};

struct ExploreOptions {
    RegionFilter filter;
    unsigned jobs = 0;
    /// Previously computed records (e.g. from a checkpoint); reused as is.
    const std::map<VectorSpaceBasis, SourceRecord>* known = nullptr;
    /// Called once per newly computed record, in source order.
    std::function<void(const SourceRecord&)> on_record;
    /// Records are computed and reported in batches of this size.
    std::size_t batch = 256;
};

inline SourceRecord twist_record(const VBF& F, const std::vector<VectorSpaceBasis>& spaces, const VectorSpaceBasis& V) {
    const auto A = admissible_map(V, F.n());
    const auto G = twist(F, A);
    return {V, thickness(V, F.n()), {degree_spectrum(G), transformed_thickness_spectrum(A, spaces)}};
}

/// Twists F along each selected space and groups the results by signature.
inline RegionTable explore_regions(const VBF& F, const std::vector<VectorSpaceBasis>& spaces,
                                   const ExploreOptions& opt = {}) {
    const unsigned n = F.n();
    const auto idx = select_sources(spaces, n, opt.filter);
    std::vector<SourceRecord> records(idx.size());
    for (std::size_t start = 0; start < idx.size(); start += opt.batch) {
        const std::size_t end = std::min(idx.size(), start + opt.batch);
        std::vector<bool> fresh(end - start, false);
        parallel_for(
            end - start,
            [&](std::size_t k) {
                const auto& V = spaces[idx[start + k]];
                if (opt.known) {
                    if (auto it = opt.known->find(V); it != opt.known->end()) {
                        records[start + k] = it->second;
                        return;
                    }
                }
                records[start + k] = twist_record(F, spaces, V);
                fresh[k] = true;
            },
            opt.jobs);
        if (opt.on_record)
            for (std::size_t k = 0; k < fresh.size(); ++k)
                if (fresh[k]) opt.on_record(records[start + k]);
    }

    std::map<DTSignature, Region> by_sig;
    for (const auto& r : records) {
        auto [it, inserted] = by_sig.try_emplace(r.signature);
        Region& reg = it->second;
        if (inserted) {
            reg.signature = r.signature;
            reg.witness = r.space;
            reg.permutation_bearing = r.signature.permutation_bearing(n);
        }
        reg.twists.insert(r.twist);
        ++reg.count;
    }
    RegionTable table;
    table.n = n;
    table.spaces_total = spaces.size();
    table.spaces_examined = records.size();
    for (auto& [sig, reg] : by_sig) (sig.non_degenerate() ? table.regions : table.degenerate).push_back(std::move(reg));
    auto order = [](const Region& a, const Region& b) {
        if (*a.twists.begin() != *b.twists.begin()) return *a.twists.begin() < *b.twists.begin();
        return a.signature < b.signature;
    };
    std::sort(table.regions.begin(), table.regions.end(), order);
    std::sort(table.degenerate.begin(), table.degenerate.end(), order);
    return table;
}

/// (number of non-degenerate regions, number of n-dimensional Walsh-zero
/// spaces): lower and upper bounds on the number of EA classes in the CCZ
/// class, when the table covers every space.
struct EAClassBounds {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
};

inline EAClassBounds ea_class_bounds(const RegionTable& t) { return {t.regions.size(), t.spaces_total}; }

}  // namespace apnlab

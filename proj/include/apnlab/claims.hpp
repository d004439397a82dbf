/**************************************************************************
 * claims.hpp
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
 * @file claims.hpp
 * @brief Registry of reproducible results, each bound to an executable
 *        check and an exact expected value.
 *
 * A check produces an observed JSON value in the same shape as the
 * expected one; it passes iff the two are equal (object key order is
 * ignored). Extra diagnostics go to a separate notes object.
 */

#include <chrono>
#include <sstream>

#include "cache.hpp"
#include "trivariate.hpp"

namespace apnlab::claims {

using Json = nlohmann::ordered_json;

enum class CostClass { seconds, minutes, hours };
enum class Status { pass, fail, skipped, error };
/// Where an expected value comes from: a published table or statement, an
/// independent computation, or a structural property of the toolkit.
enum class ValueSource { published, derived, structural };

inline const char* to_string(CostClass c) {
    switch (c) {
    case CostClass::seconds: return "seconds";
    case CostClass::minutes: return "minutes";
    case CostClass::hours: return "hours";
    }
    return "?";
}

inline const char* to_string(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::error: return "error";
    }
    return "?";
}

inline const char* to_string(ValueSource s) {
    switch (s) {
    case ValueSource::published: return "published";
    case ValueSource::derived: return "derived";
    case ValueSource::structural: return "structural";
    }
    return "?";
}

/// Shared state for a run: worker count and memoized Walsh-zero spaces.
class Context {
public:
    explicit Context(unsigned jobs = 0, io::SpaceCache cache = {}) : jobs_(jobs), cache_(std::move(cache)) {}

    [[nodiscard]] unsigned jobs() const { return jobs_; }

    const std::vector<VectorSpaceBasis>& spaces(const VBF& F) {
        const auto key = io::content_hash(F);
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, cache_.spaces(F, jobs_)).first;
        return it->second;
    }

private:
    unsigned jobs_;
    io::SpaceCache cache_;
    std::map<std::uint64_t, std::vector<VectorSpaceBasis>> memo_;
};

struct Observation {
    Json observed;
    Json notes = Json::object();
};

struct Claim {
    std::string id;
    std::string description;
    std::string reference;
    CostClass cost = CostClass::seconds;
    ValueSource source = ValueSource::published;
    Json expected;
    std::function<Observation(Context&)> run;
};

struct ClaimResult {
    std::string id;
    Status status = Status::error;
    Json expected;
    Json observed;
    Json notes = Json::object();
    /// First mismatch for failures, exception text for errors.
    std::string detail;
    double seconds = 0;
};

// ---------------------------------------------------------------------------
// JSON helpers

inline std::string bits_string(std::uint64_t p) {
    if (p == 0) return "0";
    std::string s;
    for (int i = msb_index(p); i >= 0; --i) s.push_back(((p >> i) & 1) ? '1' : '0');
    return s;
}

/// Parses a spectrum written as "{k: v, k: v, ...}".
inline Json spectrum(const std::string& text) {
    Json j = Json::object();
    std::string body = text;
    for (char& c : body)
        if (c == '{' || c == '}' || c == ',' || c == ':') c = ' ';
    std::istringstream in(body);
    long long k = 0, v = 0;
    while (in >> k >> v) j[std::to_string(k)] = v;
    return j;
}

inline Json spectrum_of(const DegreeSpectrum& d) { return io::spectrum_json(d.counts); }
inline Json spectrum_of(const ThicknessSpectrum& t) { return io::spectrum_json(t); }

/// A region as it is compared against published rows.
inline Json region_row(const Region& r) {
    Json row;
    if (r.twists.size() == 1) {
        row["twist"] = *r.twists.begin();
    } else {
        row["twist"] = Json::array();
        for (auto t : r.twists) row["twist"].push_back(t);
    }
    row["degrees"] = spectrum_of(r.signature.degrees);
    row["thickness"] = spectrum_of(r.signature.thickness);
    row["permutation"] = r.permutation_bearing;
    return row;
}

inline Json row(unsigned twist, const std::string& degrees, const std::string& thickness, bool perm) {
    Json r;
    r["twist"] = twist;
    r["degrees"] = spectrum(degrees);
    r["thickness"] = spectrum(thickness);
    r["permutation"] = perm;
    return r;
}

/// Rows sorted by their key-sorted serialization, so lists compare as
/// multisets.
inline Json as_multiset(Json rows) {
    std::vector<std::pair<std::string, Json>> keyed;
    for (auto& r : rows) keyed.emplace_back(nlohmann::json::parse(r.dump()).dump(), std::move(r));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Json out = Json::array();
    for (auto& [k, r] : keyed) out.push_back(std::move(r));
    return out;
}

inline bool json_equal(const Json& a, const Json& b) {
    return nlohmann::json::parse(a.dump()) == nlohmann::json::parse(b.dump());
}

/// Path and values of the first difference between expected and observed.
inline std::string first_difference(const nlohmann::json& e, const nlohmann::json& o, const std::string& path = "") {
    if (e.type() == o.type()) {
        if (e.is_object()) {
            for (const auto& [k, v] : e.items()) {
                if (!o.contains(k)) return path + "/" + k + ": missing from observed";
                if (v != o.at(k)) return first_difference(v, o.at(k), path + "/" + k);
            }
            for (const auto& [k, v] : o.items())
                if (!e.contains(k)) return path + "/" + k + ": unexpected key";
            return {};
        }
        if (e.is_array() && e.size() == o.size()) {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != o[i]) return first_difference(e[i], o[i], path + "/" + std::to_string(i));
            return {};
        }
    }
    if (e == o) return {};
    return (path.empty() ? "/" : path) + ": expected " + e.dump() + ", observed " + o.dump();
}

// ---------------------------------------------------------------------------
// Check implementations

namespace detail {

inline TrivariateSpec cubic_spec(std::uint64_t minpoly) { return spec_from_minpoly(FieldSpec::make(3), minpoly); }

inline constexpr std::uint64_t kCubics[2] = {0b1011, 0b1101};

inline Observation apn_m3(Context& ctx) {
    Observation o;
    for (auto mp : kCubics) {
        const auto C = build_cu(cubic_spec(mp));
        Json r;
        r["permutation"] = is_permutation(C);
        r["D"] = differential_uniformity(C, ctx.jobs());
        r["degrees"] = spectrum_of(degree_spectrum(C));
        r["linearity"] = linearity(C, ctx.jobs());
        o.observed[bits_string(mp)] = r;
    }
    return o;
}

inline Observation inv_m3(Context&) {
    Observation o;
    for (auto mp : kCubics) {
        const auto s = cubic_spec(mp);
        const auto C = build_cu(s);
        const auto inv = build_cu_inverse_closed_form(s);
        Json r;
        r["identity"] = compose(inv, C) == VBF::identity(9) && compose(C, inv) == VBF::identity(9);
        r["degree"] = algebraic_degree(inv);
        o.observed[bits_string(mp)] = r;
    }
    return o;
}

/// Non-seventh-power elements of GF(2^m), grouped by minimal polynomial.
inline std::map<std::uint64_t, std::vector<Elem>> non_seventh_power_classes(const FieldSpec& F) {
    std::map<std::uint64_t, std::vector<Elem>> classes;
    for (Elem u = 1; u < F.size(); ++u)
        if (!F.is_seventh_power(u)) classes[F.minimal_polynomial(u)].push_back(u);
    return classes;
}

inline Observation m6_survey(Context& ctx) {
    Observation o;
    o.observed = Json::object();
    const auto F = FieldSpec::make(6);
    for (const auto& [mp, us] : non_seventh_power_classes(F)) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
        for (Elem u : us) {
            const TrivariateSpec s{F, u};
            const auto D = max_diff_uniformity_cu(s, DirectionReduction::symmetry, ctx.jobs()).max_count;
            seen.emplace(D, image_size(build_cu(s)));
        }
        Json r;
        if (seen.size() == 1) {
            r["D"] = seen.begin()->first;
            r["image_size"] = seen.begin()->second;
        } else {
            r["inconsistent_within_class"] = true;
        }
        o.observed[bits_string(mp)] = r;
        o.notes["elements_per_class"][bits_string(mp)] = us.size();
    }
    return o;
}

inline Observation lin_m6(Context& ctx) {
    Observation o;
    o.observed = Json::object();
    const auto F = FieldSpec::make(6);
    for (const auto& [mp, us] : non_seventh_power_classes(F))
        o.observed[bits_string(mp)] = quadratic_linearity(build_cu({F, us.front()}), ctx.jobs());
    return o;
}

inline Observation lin_bound_m3(Context& ctx) {
    Observation o;
    o.observed = Json::object();
    const auto F = FieldSpec::make(3);
    for (Elem u = 1; u < F.size(); ++u) {
        if (F.is_seventh_power(u)) continue;
        const TrivariateSpec s{F, u};
        unsigned best = 0;
        for (std::uint64_t v = 1; v < 512; ++v) {
            const auto [a, b, c] = s.unpack(v);
            best = std::max(best, ls_solution_count(s, {a, b, c}));
        }
        const auto lin = quadratic_linearity(build_cu(s), ctx.jobs());
        Json r;
        r["max_ls_dim"] = best;
        r["linearity"] = lin;
        r["strictly_below_64"] = lin < 64;
        o.observed[to_hex(u)] = r;
    }
    return o;
}

inline Observation u1_m3(Context& ctx) {
    Observation o;
    const TrivariateSpec s{FieldSpec::make(3), 1};
    o.observed["D_kernel"] = max_diff_uniformity_cu(s, DirectionReduction::none, ctx.jobs()).max_count;
    o.observed["D_ddt"] = differential_uniformity(build_cu(s), ctx.jobs());
    return o;
}

inline Observation seventh_power(Context&) {
    Observation o;
    o.observed = Json::object();
    const auto F = FieldSpec::make(6);
    for (Elem u = 1; u < F.size(); ++u) {
        const auto r = F.seventh_root(u);
        if (!r) continue;
        o.observed[to_hex(u)] = diff_solution_count({F, u}, {*r, 1, 0});
    }
    return o;
}

inline Observation thick(Context& ctx) {
    Observation o;
    for (auto mp : kCubics) {
        const auto& sp = ctx.spaces(build_cu(cubic_spec(mp)));
        Json r;
        r["spectrum"] = spectrum_of(thickness_spectrum(sp, 9));
        r["total"] = sp.size();
        o.observed[bits_string(mp)] = r;
    }
    return o;
}

inline Json region_summary(const VBF& F, Context& ctx) {
    const auto& sp = ctx.spaces(F);
    ExploreOptions opt;
    opt.jobs = ctx.jobs();
    const auto t = explore_regions(F, sp, opt);
    Json rows = Json::array();
    for (const auto& r : t.regions) rows.push_back(region_row(r));
    Json out;
    out["regions"] = as_multiset(std::move(rows));
    const auto b = ea_class_bounds(t);
    out["bounds"] = Json::array({b.lower, b.upper});
    return out;
}

inline Observation gold_regions(Context& ctx) {
    Observation o;
    o.observed = region_summary(build_gold(FieldSpec::make(9), 1), ctx);
    return o;
}

inline Observation f_regions(Context& ctx) {
    Observation o;
    for (auto mp : kCubics) {
        const auto C = build_cu(cubic_spec(mp));
        Json r = region_summary(C, ctx);
        // smoke variant: thickness-2 and thickness-9 sources only
        ExploreOptions opt;
        opt.jobs = ctx.jobs();
        opt.filter = RegionFilter::by_thickness({2, 9});
        const auto smoke = explore_regions(C, ctx.spaces(C), opt);
        r["smoke_permutation_regions_at_least"] = smoke.permutation_bearing_count() >= (mp == 0b1011 ? 6u : 8u);
        o.notes[bits_string(mp)]["smoke_permutation_regions"] = smoke.permutation_bearing_count();
        o.notes[bits_string(mp)]["smoke_sources"] = smoke.spaces_examined;
        o.observed[bits_string(mp)] = r;
    }
    return o;
}

inline Observation tfl(Context& ctx) {
    Observation o;
    for (auto mp : kCubics) {
        const auto s = cubic_spec(mp);
        const auto T = build_tfl(build_cu(s), tfl_linear_map(s.field, 3));
        Json r;
        r["T_permutation"] = is_permutation(T);
        if (is_permutation(T)) {
            const auto Ti = inverse(T);
            r["D"] = differential_uniformity(Ti, ctx.jobs());
            r["degree"] = algebraic_degree(Ti);
            const auto sig = dt_signature(Ti, ctx.jobs());
            r["degrees"] = spectrum_of(sig.degrees);
            r["thickness"] = spectrum_of(sig.thickness);
        }
        o.observed[bits_string(mp)] = r;
    }
    return o;
}

inline Observation permpoly(Context&) {
    Observation o;
    o.observed["3,1,1"] = permpoly_check(3, 1, 1);
    o.observed["3,2,1"] = permpoly_check(3, 2, 1);
    Json unexpected = Json::array();
    unsigned checked = 0;
    for (unsigned n : {5u, 7u, 9u})
        for (unsigned i = 1; i < n; ++i)
            for (unsigned j = 1; j < n; ++j)
                if (std::gcd(i, n) == 1 && std::gcd(j, n) == 1) {
                    ++checked;
                    if (permpoly_check(n, i, j)) unexpected.push_back(Json::array({n, i, j}));
                }
    o.observed["coprime_permutations_n5_7_9"] = unexpected;
    o.notes["coprime_cases_checked"] = checked;
    return o;
}

inline Observation budaghyan(Context&) {
    Observation o;
    const auto F = FieldSpec::make(9);
    const auto P = add(inverse(build_gold(F, 1)), budaghyan_modifier(F, 1));
    o.observed["permutation"] = is_permutation(P);
    if (is_permutation(P)) o.observed["degree"] = algebraic_degree(inverse(P));
    return o;
}

inline constexpr std::uint64_t kM9Seed = 9;

inline Observation m9_d8(Context& ctx) {
    Observation o;
    const auto F = FieldSpec::make(9);
    std::mt19937_64 rng(kM9Seed);
    std::set<Elem> us;
    while (us.size() < 3) {
        const Elem u = static_cast<Elem>(rng() % F.size());
        if (u != 0 && !F.is_seventh_power(u)) us.insert(u);
    }
    Json all_eight = Json::object();
    for (Elem u : us) {
        const TrivariateSpec s{F, u};
        const auto sweep = max_diff_uniformity_cu(s, DirectionReduction::symmetry, ctx.jobs());
        all_eight[to_hex(u)] = sweep.max_count;
        o.notes[to_hex(u)]["witness"] = Json::array({to_hex(sweep.witness.alpha), to_hex(sweep.witness.beta),
                                                     to_hex(sweep.witness.gamma)});
        o.notes[to_hex(u)]["witness_count"] = diff_solution_count(s, sweep.witness);
        o.notes[to_hex(u)]["directions"] = sweep.directions_examined;
    }
    o.notes["seed"] = kM9Seed;
    o.observed["sampled"] = all_eight.size();
    bool ok = true;
    for (const auto& [k, v] : all_eight.items()) ok = ok && v.get<std::uint64_t>() == 8;
    o.observed["max_solution_count_is_8"] = ok;
    o.notes["max_solution_count"] = all_eight;
    return o;
}

inline Observation property_suites(Context& ctx) {
    Observation o;
    std::uint64_t mism[4] = {}, checked[4] = {};
    const auto F3 = FieldSpec::make(3);
    // kernel-method D and quadratic linearity against tables, every u at m = 3
    for (Elem u = 0; u < F3.size(); ++u) {
        const TrivariateSpec s{F3, u};
        const auto C = build_cu(s);
        ++checked[0];
        mism[0] += max_diff_uniformity_cu(s, DirectionReduction::none, ctx.jobs()).max_count !=
                   differential_uniformity(C, ctx.jobs());
        ++checked[1];
        mism[1] += quadratic_linearity(C, ctx.jobs()) != linearity(C, ctx.jobs());
    }
    // sampled at m = 6
    const auto F6 = FieldSpec::make(6);
    std::mt19937_64 rng(6);
    for (int k = 0; k < 3; ++k) {
        const TrivariateSpec s{F6, static_cast<Elem>(2 + rng() % 62)};
        const auto C = build_cu(s);
        for (int t = 0; t < 16; ++t) {
            const std::uint64_t d = 1 + rng() % (C.size() - 1);
            const auto [a, b, c] = s.unpack(d);
            std::uint64_t count = 0;
            for (std::size_t v = 0; v < C.size(); ++v) count += (C(v) ^ C(v ^ d)) == C(d);
            ++checked[0];
            mism[0] += count != diff_solution_count(s, {a, b, c});

            const std::uint64_t comp = 1 + rng() % (C.size() - 1);
            const auto w = walsh_component(C, comp);
            std::int64_t mx = 0;
            for (auto x : w) mx = std::max<std::int64_t>(mx, std::abs(x));
            const unsigned dim = quadratic_ls_dimension(C, comp);
            ++checked[1];
            mism[1] += mx != (std::int64_t{1} << ((18 + dim) / 2));
        }
    }
    // direct and Walsh-zero permutation-concatenation criteria
    for (unsigned n = 2; n <= 12; ++n)
        for (int t = 0; t < (n <= 8 ? 6 : 2); ++t) {
            std::vector<std::uint32_t> tab(std::size_t{1} << n);
            const unsigned k = 1 + static_cast<unsigned>(rng() % (n - 1));
            std::vector<std::uint32_t> perm(std::size_t{1} << k);
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (std::size_t x = 0; x < tab.size(); ++x) {
                std::uint64_t y = rng() & low_mask(n);
                // half the samples are concatenations on the low block
                if (t % 2 == 0) y = (y & ~low_mask(k)) | perm[x & low_mask(k)];
                tab[x] = static_cast<std::uint32_t>(y);
            }
            const auto F = VBF::from_table(n, std::move(tab));
            const auto P = BlockPartition::split(n, k);
            for (std::size_t i = 0; i < 2; ++i) {
                ++checked[2];
                mism[2] += perm_concat_test(F, P, i, ConcatMethod::direct) != perm_concat_test(F, P, i, ConcatMethod::walsh);
            }
        }
    for (auto mp : kCubics) {
        const auto C = build_cu(cubic_spec(mp));
        const auto P = BlockPartition::coordinate_blocks(9, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            ++checked[2];
            mism[2] += perm_concat_test(C, P, i, ConcatMethod::direct) != perm_concat_test(C, P, i, ConcatMethod::walsh);
        }
    }
    // twisting preserves D and linearity
    for (auto mp : kCubics) {
        const auto C = build_cu(cubic_spec(mp));
        const auto& sp = ctx.spaces(C);
        const auto D = differential_uniformity(C, ctx.jobs());
        const auto L = linearity(C, ctx.jobs());
        for (std::size_t i = 0; i < sp.size(); i += sp.size() / 24) {
            const auto G = twist(C, sp[i]);
            ++checked[3];
            mism[3] += differential_uniformity(G, ctx.jobs()) != D || linearity(G, ctx.jobs()) != L;
        }
    }
    const char* names[4] = {"kernel_vs_ddt", "quadratic_vs_fwht", "direct_vs_walsh", "twist_invariance"};
    for (int i = 0; i < 4; ++i) {
        o.observed[names[i]] = mism[i];
        o.notes["checked"][names[i]] = checked[i];
    }
    return o;
}

inline Json table_rows(std::initializer_list<Json> rows) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back(r);
    return as_multiset(std::move(a));
}

inline std::vector<Claim> build_registry() {
    std::vector<Claim> r;
    auto add = [&](std::string id, std::string desc, std::string ref, CostClass c, ValueSource src, Json expected,
                   Observation (*fn)(Context&)) {
        r.push_back({std::move(id), std::move(desc), std::move(ref), c, src, std::move(expected), fn});
    };

    Json apn = Json::object();
    for (const char* k : {"1011", "1101"})
        apn[k] = {{"permutation", true}, {"D", 2}, {"degrees", spectrum("{2: 511}")}, {"linearity", 32}};
    add("APN-M3", "C_u at m = 3 is an APN permutation with all components quadratic and linearity 32",
        "trivariate family at m = 3, both cubic minimal polynomials", CostClass::seconds, ValueSource::published, apn,
        apn_m3);

    Json inv = Json::object();
    for (const char* k : {"1011", "1101"}) inv[k] = {{"identity", true}, {"degree", 5}};
    add("INV-M3", "closed-form inverses of C_u at m = 3 invert the table and have algebraic degree 5",
        "closed-form inverse at m = 3", CostClass::seconds, ValueSource::published, inv, inv_m3);

    Json t1 = Json::object();
    const std::pair<const char*, std::pair<int, int>> t1rows[] = {
        {"1110101", {4, 77680}}, {"1010111", {4, 76210}}, {"1101", {4, 77680}},    {"1011", {4, 76210}},
        {"1011011", {8, 74152}}, {"1101101", {8, 73564}}, {"1100111", {8, 74152}}, {"1110011", {8, 73564}},
        {"1100001", {8, 74152}}, {"1000011", {8, 73564}}};
    for (const auto& [mp, v] : t1rows) t1[mp] = {{"D", v.first}, {"image_size", v.second}};
    add("TABLE1", "differential uniformity and image size of C_u for every non-seventh-power u at m = 6",
        "m = 6 survey, all ten minimal-polynomial classes", CostClass::minutes, ValueSource::published, t1, m6_survey);

    Json l6 = Json::object();
    for (const auto& [mp, v] : t1rows) l6[mp] = 4096;
    add("LIN-M6", "linearity of C_u equals 2^((3m+6)/2) = 4096 for every non-seventh-power u at m = 6",
        "tightness of the linearity bound at m = 6", CostClass::seconds, ValueSource::published, l6, lin_m6);

    Json lb = Json::object();
    for (Elem u = 2; u < 8; ++u) lb[to_hex(u)] = {{"max_ls_dim", 1}, {"linearity", 32}, {"strictly_below_64", true}};
    add("LIN-BOUND-M3", "linear spaces of all components have dimension at most 1 at m = 3, so linearity 32 < 64",
        "linearity bound 8^(1 + floor(m/2)) at m = 3", CostClass::seconds, ValueSource::derived, lb, lin_bound_m3);

    add("U1-M3", "C_1 at m = 3 is differentially 32-uniform", "u = 1 at m = 3", CostClass::seconds,
        ValueSource::published, Json{{"D_kernel", 32}, {"D_ddt", 32}}, u1_m3);

    Json sp7 = Json::object();
    {
        const auto F = FieldSpec::make(6);
        for (Elem u = 1; u < F.size(); ++u)
            if (F.is_seventh_power(u)) sp7[to_hex(u)] = 64;
    }
    add("SEVENTH-POWER", "for nonzero seventh powers u = a^7 at m = 6, direction (a, 1, 0) has 2^m solutions",
        "necessity of the non-seventh-power condition", CostClass::seconds, ValueSource::published, sp7,
        seventh_power);

    Json th;
    th["1011"] = {{"spectrum", spectrum("{0: 1, 1: 511, 2: 2590, 3: 1144, 9: 512}")}, {"total", 4758}};
    th["1101"] = {{"spectrum", spectrum("{0: 1, 1: 511, 2: 2590, 3: 1536, 9: 512}")}, {"total", 5150}};
    add("THICK-F0/F1", "thickness spectra of C_u at m = 3 for both cubic minimal polynomials",
        "first rows of the F0 and F1 region tables", CostClass::minutes, ValueSource::published, th, thick);

    const std::string d2 = "{2: 511}", d34 = "{3: 3, 4: 508}", d5 = "{5: 511}", d23 = "{2: 1, 3: 510}",
                      d45 = "{4: 7, 5: 504}";
    Json gold;
    gold["regions"] = table_rows({
        row(0, d2, "{0: 1, 1: 511, 2: 1022, 3: 584, 9: 512}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 14, 3: 512, 4: 1008, 5: 576, 7: 256, 9: 256}", true),
        row(9, d5, "{0: 1, 6: 73, 7: 511, 8: 1533, 9: 512}", true),
        row(1, d23, "{0: 1, 1: 7, 2: 518, 3: 1016, 4: 576, 8: 512}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 8, 4: 504, 5: 1008, 6: 640, 8: 448}", false),
    });
    gold["bounds"] = Json::array({5, 2630});
    add("GOLD-REGIONS", "non-degenerate DT-regions of x^3 over GF(2^9)", "region table of x^3 over GF(2^9)",
        CostClass::hours, ValueSource::published, gold, gold_regions);

    Json fr;
    fr["1011"]["regions"] = table_rows({
        row(0, d2, "{0: 1, 1: 511, 2: 2590, 3: 1144, 9: 512}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 14, 3: 512, 4: 2576, 5: 1136, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 44, 3: 536, 4: 2546, 5: 1112, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 32, 3: 536, 4: 2558, 5: 1112, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 3, 2: 44, 3: 556, 4: 2546, 5: 1096, 7: 256, 9: 256}", true),
        row(9, d5, "{0: 1, 6: 143, 7: 1295, 8: 2023, 9: 1296}", true),
        row(1, d23, "{0: 1, 1: 17, 2: 526, 3: 2574, 4: 1128, 8: 512}", false),
        row(1, d23, "{0: 1, 1: 13, 2: 526, 3: 2578, 4: 1128, 8: 512}", false),
        row(1, d23, "{0: 1, 1: 7, 2: 518, 3: 2584, 4: 1136, 8: 512}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 78, 4: 560, 5: 2506, 6: 1144, 8: 448}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 50, 4: 560, 5: 2534, 6: 1144, 8: 448}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 8, 4: 504, 5: 2576, 6: 1200, 8: 448}", false),
    });
    fr["1011"]["bounds"] = Json::array({12, 4758});
    fr["1011"]["smoke_permutation_regions_at_least"] = true;
    fr["1101"]["regions"] = table_rows({
        row(0, d2, "{0: 1, 1: 511, 2: 2590, 3: 1536, 9: 512}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 56, 3: 512, 4: 2534, 5: 1528, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 44, 3: 560, 4: 2546, 5: 1480, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 38, 3: 536, 4: 2552, 5: 1504, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 38, 3: 560, 4: 2552, 5: 1480, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 3, 2: 46, 3: 556, 4: 2544, 5: 1488, 7: 256, 9: 256}", true),
        row(2, d34, "{0: 1, 1: 7, 2: 50, 3: 560, 4: 2540, 5: 1480, 7: 256, 9: 256}", true),
        row(9, d5, "{0: 1, 6: 192, 7: 1295, 8: 2366, 9: 1296}", true),
        row(1, d23, "{0: 1, 1: 21, 2: 518, 3: 2570, 4: 1528, 8: 512}", false),
        row(1, d23, "{0: 1, 1: 17, 2: 534, 3: 2574, 4: 1512, 8: 512}", false),
        row(1, d23, "{0: 1, 1: 19, 2: 534, 3: 2572, 4: 1512, 8: 512}", false),
        row(1, d23, "{0: 1, 1: 15, 2: 534, 3: 2576, 4: 1512, 8: 512}", false),
        row(1, d23, "{0: 1, 1: 15, 2: 526, 3: 2576, 4: 1520, 8: 512}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 106, 4: 504, 5: 2478, 6: 1592, 8: 448}", false),
        row(3, "{4: 63, 5: 448}", "{0: 1, 1: 3, 2: 14, 3: 94, 4: 616, 5: 2494, 6: 1480, 8: 448}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 78, 4: 616, 5: 2506, 6: 1480, 8: 448}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 92, 4: 616, 5: 2492, 6: 1480, 8: 448}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 64, 4: 616, 5: 2520, 6: 1480, 8: 448}", false),
        row(3, d45, "{0: 1, 1: 7, 2: 14, 3: 64, 4: 560, 5: 2520, 6: 1536, 8: 448}", false),
    });
    fr["1101"]["bounds"] = Json::array({19, 5150});
    fr["1101"]["smoke_permutation_regions_at_least"] = true;
    add("F0/F1-REGIONS",
        "non-degenerate DT-regions of C_u at m = 3 (EA-equivalent to F0 and F1), EA-class bounds, and at least "
        "6 / 8 permutation-bearing regions reached from thickness-{2,9} spaces",
        "region tables of F0 and F1", CostClass::hours, ValueSource::published, fr, f_regions);

    Json tf;
    tf["1011"] = {{"T_permutation", true}, {"D", 2}, {"degree", 4}, {"degrees", spectrum(d34)},
                  {"thickness", spectrum("{0: 1, 1: 7, 2: 14, 3: 512, 4: 2576, 5: 1136, 7: 256, 9: 256}")}};
    tf["1101"] = {{"T_permutation", true}, {"D", 2}, {"degree", 4}, {"degrees", spectrum(d34)},
                  {"thickness", spectrum("{0: 1, 1: 7, 2: 56, 3: 512, 4: 2534, 5: 1528, 7: 256, 9: 256}")}};
    add("TFL", "inverse of C_u^{-1} + L is an APN permutation of degree 4 in the second region of its class",
        "inverse-plus-linear construction at m = 3", CostClass::minutes, ValueSource::published, tf, tfl);

    add("PERMPOLY",
        "X^((2^i+1)2^j) + X^(2^i+1) + X permutes GF(8) for (i,j) = (1,1), (2,1) and never for odd n in {5,7,9} "
        "with i, j coprime to n",
        "permutation polynomial family", CostClass::seconds, ValueSource::published,
        Json{{"3,1,1", true}, {"3,2,1", true}, {"coprime_permutations_n5_7_9", Json::array()}}, permpoly);

    add("BUDAGHYAN", "(G^{-1} + L)^{-1} with G = x^3 and L = Tr_{9,3}(x + x^4) over GF(2^9) is a permutation of degree 4",
        "Gold inverse plus relative-trace modifier, n = 9, i = 1", CostClass::seconds, ValueSource::published,
        Json{{"permutation", true}, {"degree", 4}}, budaghyan);

    add("M9-D8", "sampled non-seventh-power u at m = 9 give maximal derivative solution count exactly 8",
        "differential 8-uniformity at m = 9", CostClass::minutes, ValueSource::published,
        Json{{"sampled", 3}, {"max_solution_count_is_8", true}}, m9_d8);

    add("PROPERTY-SUITES",
        "kernel D vs DDT, quadratic vs FWHT linearity, direct vs Walsh concatenation criteria, twist invariance",
        "oracle equivalences", CostClass::minutes, ValueSource::derived,
        Json{{"kernel_vs_ddt", 0}, {"quadratic_vs_fwht", 0}, {"direct_vs_walsh", 0}, {"twist_invariance", 0}},
        property_suites);

    std::sort(r.begin(), r.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
    return r;
}

}  // namespace detail

inline const std::vector<Claim>& registry() {
    static const std::vector<Claim> r = detail::build_registry();
    return r;
}

inline const Claim* find_claim(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return &c;
    return nullptr;
}

/// "all", a cost class ("seconds" selects the fast claims, "minutes" adds
/// the medium ones, "hours" is everything) or a comma-separated id list.
/// Returns the ids in run order; unknown ids are kept and reported as errors.
inline std::vector<std::string> select(const std::string& filter) {
    std::vector<std::string> ids;
    auto by_cost = [&](CostClass max) {
        for (const auto& c : registry())
            if (c.cost <= max) ids.push_back(c.id);
    };
    if (filter.empty() || filter == "all" || filter == "hours") by_cost(CostClass::hours);
    else if (filter == "seconds") by_cost(CostClass::seconds);
    else if (filter == "minutes") by_cost(CostClass::minutes);
    else {
        std::stringstream ss(filter);
        std::string id;
        while (std::getline(ss, id, ','))
            if (!id.empty()) ids.push_back(id);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
    return ids;
}

inline ClaimResult run_claim(const std::string& id, Context& ctx) {
    ClaimResult res;
    res.id = id;
    const Claim* c = find_claim(id);
    if (!c) {
        res.status = Status::error;
        res.detail = "unknown claim id";
        return res;
    }
    res.expected = c->expected;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto obs = c->run(ctx);
        res.observed = std::move(obs.observed);
        res.notes = std::move(obs.notes);
        if (json_equal(res.observed, res.expected)) {
            res.status = Status::pass;
        } else {
            res.status = Status::fail;
            res.detail = first_difference(nlohmann::json::parse(res.expected.dump()),
                                          nlohmann::json::parse(res.observed.dump()));
        }
    } catch (const CapacityError& e) {
        res.status = Status::skipped;
        res.detail = e.what();
    } catch (const std::exception& e) {
        res.status = Status::error;
        res.detail = e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

/// Runs the selected claims in id order. Claims share the context (and its
/// space memo); each one parallelizes internally up to ctx.jobs().
inline std::vector<ClaimResult> run_claims(const std::vector<std::string>& ids, Context& ctx,
                                           const std::function<void(const ClaimResult&)>& on_result = {}) {
    std::vector<ClaimResult> out;
    for (const auto& id : ids) {
        out.push_back(run_claim(id, ctx));
        if (on_result) on_result(out.back());
    }
    return out;
}

inline bool all_passed(const std::vector<ClaimResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const ClaimResult& r) { return r.status == Status::pass; });
}

/// Machine-readable report. Runtimes are left out so that identical runs
/// give identical bytes.
inline Json report_json(const std::vector<ClaimResult>& rs) {
    Json j;
    std::size_t passed = 0;
    Json arr = Json::array();
    for (const auto& r : rs) {
        passed += r.status == Status::pass;
        Json e;
        e["id"] = r.id;
        e["status"] = to_string(r.status);
        if (const Claim* c = find_claim(r.id)) {
            e["description"] = c->description;
            e["reference"] = c->reference;
            e["cost_class"] = to_string(c->cost);
            e["expected_source"] = to_string(c->source);
        }
        e["expected"] = r.expected;
        e["observed"] = r.observed;
        if (!r.notes.empty()) e["notes"] = r.notes;
        if (!r.detail.empty()) e["detail"] = r.detail;
        arr.push_back(std::move(e));
    }
    j["passed"] = passed;
    j["total"] = rs.size();
    j["claims"] = std::move(arr);
    return j;
}

inline std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

inline std::string junit_xml(const std::vector<ClaimResult>& rs) {
    std::size_t failures = 0, errors = 0, skipped = 0;
    double total = 0;
    for (const auto& r : rs) {
        failures += r.status == Status::fail;
        errors += r.status == Status::error;
        skipped += r.status == Status::skipped;
        total += r.seconds;
    }
    std::ostringstream x;
    x << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    x << "<testsuite name=\"apnlab-claims\" tests=\"" << rs.size() << "\" failures=\"" << failures << "\" errors=\""
      << errors << "\" skipped=\"" << skipped << "\" time=\"" << total << "\">\n";
    for (const auto& r : rs) {
        x << "  <testcase classname=\"claims\" name=\"" << xml_escape(r.id) << "\" time=\"" << r.seconds << "\"";
        if (r.status == Status::pass) {
            x << "/>\n";
            continue;
        }
        x << ">\n";
        const char* tag = r.status == Status::fail ? "failure" : r.status == Status::error ? "error" : "skipped";
        x << "    <" << tag << " message=\"" << xml_escape(r.detail) << "\"/>\n";
        x << "  </testcase>\n";
    }
    x << "</testsuite>\n";
    return x.str();
}

}  // namespace apnlab::claims

// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0
//
// apnlab command-line front end. Exit codes: 0 success or all claims pass,
// 1 claim failure, 2 usage or input error.

#include <iostream>

#include <CLI11.hpp>

#include <apnlab/claims.hpp>

using namespace apnlab;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;

struct FieldArgs {
    unsigned m = 0;
    std::string modulus = "default";
    std::string u_minpoly;
    std::string u;

    void add(CLI::App* sc, bool with_u) {
        sc->add_option("--m", m, "extension degree of GF(2^m)")->required();
        sc->add_option("--modulus", modulus, "defining polynomial in hex, or 'default'");
        if (with_u) {
            auto* a = sc->add_option("--u-minpoly", u_minpoly, "minimal polynomial of u as a bit string (smallest root)");
            auto* b = sc->add_option("--u", u, "u in hex");
            a->excludes(b);
        }
    }

    [[nodiscard]] FieldSpec field() const {
        if (modulus == "default") return FieldSpec::make(m);
        return FieldSpec::make(m, parse_hex(modulus, "--modulus"));
    }

    [[nodiscard]] TrivariateSpec spec() const {
        const auto F = field();
        if (!u_minpoly.empty()) return spec_from_minpoly(F, poly2::from_bitstring(u_minpoly));
        if (!u.empty()) {
            const auto v = parse_hex(u, "--u");
            if (!F.contains(static_cast<Elem>(v)) || v >= F.size()) throw InputError("--u is not an element of the field");
            return {F, static_cast<Elem>(v)};
        }
        throw InputError("one of --u-minpoly or --u is required");
    }

    static std::uint64_t parse_hex(std::string s, const char* what) {
        if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(s, &used, 16);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size()) throw InputError(std::string(what) + ": not a hex number: " + s);
        return v;
    }
};

struct Output {
    std::string path;
    std::string format = "json";

    void add(CLI::App* sc, bool tables) {
        sc->add_option("--out", path, "write the result here instead of stdout");
        if (tables) sc->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
    }

    void emit(const std::string& text) const {
        if (path.empty()) std::cout << text;
        else io::write_file(path, text);
    }
};

std::string spectrum_text(const Json& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : s.items()) {
        if (!first) out += ", ";
        first = false;
        out += k + ": " + std::to_string(v.get<std::uint64_t>());
    }
    return out + "}";
}

VectorSpaceBasis parse_space(const std::string& text, unsigned n) {
    std::vector<std::uint64_t> gens;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto v = FieldArgs::parse_hex(tok, "--space");
        if (v >> (2 * n)) throw InputError("--space vector " + tok + " has more than 2n bits");
        gens.push_back(v);
    }
    const auto V = VectorSpaceBasis::span_of(gens);
    if (V.dim() != gens.size()) throw InputError("--space vectors are linearly dependent");
    return V;
}

/// Table rendering for --format csv|md; rows are arrays of cells.
std::string render(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                   const std::string& format) {
    std::string out;
    if (format == "csv") {
        auto cell = [](const std::string& c) {
            if (c.find_first_of(",\"") == std::string::npos) return c;
            std::string q = "\"";
            for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        };
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell(r[i]);
            out += "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
    } else {
        auto line = [&](const std::vector<std::string>& r) {
            out += "|";
            for (const auto& c : r) out += " " + c + " |";
            out += "\n";
        };
        line(header);
        out += "|";
        for (std::size_t i = 0; i < header.size(); ++i) out += "---|";
        out += "\n";
        for (const auto& r : rows) line(r);
    }
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"apnlab: analysis of vectorial Boolean functions, Walsh-zero geometry and CCZ classes"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (default: available cores)");

    // field
    auto* field_cmd = app.add_subcommand("field", "describe GF(2^m) and its non-seventh-power classes");
    FieldArgs field_args;
    field_args.add(field_cmd, false);
    Output field_out;
    field_out.add(field_cmd, false);

    // cu
    auto* cu_cmd = app.add_subcommand("cu", "build and analyse C_u over GF(2^m)^3");
    FieldArgs cu_args;
    cu_args.add(cu_cmd, true);
    bool cu_ddt = false, cu_walsh = false, cu_image = false, cu_sym = false;
    std::string cu_save;
    cu_cmd->add_flag("--ddt", cu_ddt, "differential uniformity (derivative kernels over direction orbits)");
    cu_cmd->add_flag("--walsh", cu_walsh, "linearity (linear spaces of the quadratic components)");
    cu_cmd->add_flag("--image", cu_image, "image size");
    cu_cmd->add_flag("--symmetries", cu_sym, "check rotation/scaling/Frobenius symmetries");
    cu_cmd->add_option("--save", cu_save, "write the lookup table (.json or .bin)");
    Output cu_out;
    cu_out.add(cu_cmd, false);

    // table-based analyses
    std::string in_path;
    auto add_in = [&](CLI::App* sc) { sc->add_option("--in", in_path, "lookup table (.json or binary)")->required(); };

    auto* ddt_cmd = app.add_subcommand("ddt", "differential uniformity of a table");
    add_in(ddt_cmd);
    bool ddt_hist = false;
    ddt_cmd->add_flag("--histogram", ddt_hist, "include the DDT value histogram");
    Output ddt_out;
    ddt_out.add(ddt_cmd, false);

    auto* walsh_cmd = app.add_subcommand("walsh", "linearity of a table");
    add_in(walsh_cmd);
    Output walsh_out;
    walsh_out.add(walsh_cmd, false);

    auto* anf_cmd = app.add_subcommand("anf", "algebraic degree and degree spectrum");
    add_in(anf_cmd);
    Output anf_out;
    anf_out.add(anf_cmd, false);

    auto* spaces_cmd = app.add_subcommand("spaces", "n-dimensional subspaces of the Walsh zeroes");
    add_in(spaces_cmd);
    std::string spaces_list;
    spaces_cmd->add_option("--list", spaces_list, "write the space list (one canonical basis per line)");
    Output spaces_out;
    spaces_out.add(spaces_cmd, false);

    auto* thick_cmd = app.add_subcommand("thickness", "thickness spectrum");
    add_in(thick_cmd);
    Output thick_out;
    thick_out.add(thick_cmd, true);

    auto* twist_cmd = app.add_subcommand("twist", "twist a function along one Walsh-zero space");
    add_in(twist_cmd);
    std::string twist_space, twist_save;
    long long twist_index = -1;
    auto* ts = twist_cmd->add_option("--space", twist_space, "comma-separated hex basis of the source space");
    auto* ti = twist_cmd->add_option("--index", twist_index, "index into the sorted space list");
    ts->excludes(ti);
    twist_cmd->add_option("--save", twist_save, "write the twisted table");
    Output twist_out;
    twist_out.add(twist_cmd, false);

    auto* regions_cmd = app.add_subcommand("regions", "degree/thickness regions of the CCZ class");
    add_in(regions_cmd);
    std::string regions_filter, regions_ckpt;
    std::size_t regions_sample = 0;
    std::uint64_t regions_seed = 0;
    auto* rf = regions_cmd->add_option("--filter", regions_filter, "thickness=<t,...>");
    auto* rs = regions_cmd->add_option("--sample", regions_sample, "twist along k sampled spaces");
    rf->excludes(rs);
    regions_cmd->add_option("--seed", regions_seed, "seed for --sample")->needs(rs);
    regions_cmd->add_option("--checkpoint", regions_ckpt, "append-only record file; resumes a previous run");
    Output regions_out;
    regions_out.add(regions_cmd, true);

    auto* tfl_cmd = app.add_subcommand("tfl", "T_{F,L} = F^{-1} + L for F = C_u");
    std::string tfl_family = "cu";
    tfl_cmd->add_option("--family", tfl_family, "function family")->check(CLI::IsMember({"cu"}));
    FieldArgs tfl_args;
    tfl_args.add(tfl_cmd, true);
    unsigned tfl_k = 1;
    tfl_cmd->add_option("--k", tfl_k, "L(x) = (x_1 + x_1^(2^(2k)), 0, 0)");
    std::string tfl_save;
    tfl_cmd->add_option("--save", tfl_save, "write the table of the inverse when T is a permutation");
    Output tfl_out;
    tfl_out.add(tfl_cmd, false);

    auto* pp_cmd = app.add_subcommand("permpoly", "is X^((2^i+1)2^j) + X^(2^i+1) + X a permutation of GF(2^n)?");
    unsigned pp_n = 0, pp_i = 0, pp_j = 0;
    pp_cmd->add_option("--n", pp_n)->required();
    pp_cmd->add_option("--i", pp_i)->required();
    pp_cmd->add_option("--j", pp_j)->required();
    Output pp_out;
    pp_out.add(pp_cmd, false);

    auto* verify_cmd = app.add_subcommand("verify", "run registered claims");
    std::string verify_filter = "all", verify_report, verify_junit;
    verify_cmd->add_option("--filter", verify_filter, "all | seconds | minutes | hours | ID[,ID...]");
    verify_cmd->add_option("--report", verify_report, "JSON report path (default: stdout)");
    verify_cmd->add_option("--junit", verify_junit, "JUnit XML path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        default_jobs() = resolve_jobs(jobs);
        auto spaces_of = [&](const VBF& F) { return io::SpaceCache::from_env().spaces(F, jobs); };

        if (*field_cmd) {
            const auto F = field_args.field();
            Json j;
            j["m"] = F.m();
            j["modulus"] = claims::bits_string(F.modulus());
            j["modulus_hex"] = to_hex(F.modulus());
            Json classes = Json::array();
            if (F.m() % 3 == 0 && F.m() <= 12) {
                for (const auto& [mp, us] : claims::detail::non_seventh_power_classes(F))
                    classes.push_back({{"minpoly", claims::bits_string(mp)}, {"elements", us.size()}});
            }
            j["non_seventh_power_classes"] = classes;
            field_out.emit(dump(j));
            return 0;
        }

        if (*cu_cmd) {
            const auto s = cu_args.spec();
            Json j;
            j["m"] = s.m();
            j["u"] = to_hex(s.u);
            const bool any = cu_ddt || cu_walsh || cu_image || cu_sym;
            if (cu_ddt || !any) j["D"] = max_diff_uniformity_cu(s, DirectionReduction::symmetry, jobs).max_count;
            std::optional<VBF> table;
            auto C = [&]() -> const VBF& {
                if (!table) table = build_cu(s);
                return *table;
            };
            if (cu_walsh) j["linearity"] = quadratic_linearity(C(), jobs);
            if (cu_image || !any) j["image_size"] = image_size(C());
            if (cu_sym) j["symmetries_ok"] = check_symmetries(s).ok();
            if (!cu_save.empty()) io::save_table(cu_save, C());
            // the two single-quantity queries print only that quantity
            if (any && !cu_sym && (cu_ddt + cu_walsh + cu_image) == 1) {
                j.erase("m");
                j.erase("u");
            }
            cu_out.emit(j.dump() + "\n");
            return 0;
        }

        if (*ddt_cmd) {
            const auto F = io::load_table(in_path);
            const auto r = ddt(F, ddt_hist, jobs);
            Json j;
            j["D"] = r.differential_uniformity;
            if (ddt_hist) {
                j["histogram"] = Json::object();
                for (const auto& [v, c] : r.histogram) j["histogram"][std::to_string(v)] = c;
            }
            ddt_out.emit(j.dump() + "\n");
            return 0;
        }

        if (*walsh_cmd) {
            const auto F = io::load_table(in_path);
            walsh_out.emit(Json{{"linearity", linearity(F, jobs)}}.dump() + "\n");
            return 0;
        }

        if (*anf_cmd) {
            const auto F = io::load_table(in_path);
            Json j;
            j["degree"] = algebraic_degree(F);
            j["degree_spectrum"] = claims::spectrum_of(degree_spectrum(F));
            anf_out.emit(j.dump() + "\n");
            return 0;
        }

        if (*spaces_cmd) {
            const auto F = io::load_table(in_path);
            const auto sp = spaces_of(F);
            if (!spaces_list.empty()) io::write_file(spaces_list, io::spaces_to_text(F.n(), sp));
            Json j;
            j["n"] = F.n();
            j["spaces"] = sp.size();
            j["thickness_spectrum"] = claims::spectrum_of(thickness_spectrum(sp, F.n()));
            spaces_out.emit(dump(j));
            return 0;
        }

        if (*thick_cmd) {
            const auto F = io::load_table(in_path);
            const auto spec = thickness_spectrum(spaces_of(F), F.n());
            if (thick_out.format == "json") {
                thick_out.emit(Json{{"thickness_spectrum", claims::spectrum_of(spec)}}.dump() + "\n");
            } else {
                std::vector<std::vector<std::string>> rows;
                for (auto [t, c] : spec) rows.push_back({std::to_string(t), std::to_string(c)});
                thick_out.emit(render({"thickness", "spaces"}, rows, thick_out.format));
            }
            return 0;
        }

        if (*twist_cmd) {
            const auto F = io::load_table(in_path);
            VectorSpaceBasis V;
            if (!twist_space.empty()) {
                V = parse_space(twist_space, F.n());
            } else if (twist_index >= 0) {
                const auto sp = spaces_of(F);
                if (static_cast<std::size_t>(twist_index) >= sp.size())
                    throw InputError("--index out of range (" + std::to_string(sp.size()) + " spaces)");
                V = sp[static_cast<std::size_t>(twist_index)];
            } else {
                throw InputError("one of --space or --index is required");
            }
            const auto G = twist(F, V);
            if (!twist_save.empty()) io::save_table(twist_save, G);
            Json j;
            j["space"] = io::basis_json(V);
            j["twist"] = thickness(V, F.n());
            j["permutation"] = is_permutation(G);
            j["D"] = differential_uniformity(G, jobs);
            j["linearity"] = linearity(G, jobs);
            j["degree_spectrum"] = claims::spectrum_of(degree_spectrum(G));
            twist_out.emit(dump(j));
            return 0;
        }

        if (*regions_cmd) {
            const auto F = io::load_table(in_path);
            const auto sp = spaces_of(F);
            ExploreOptions opt;
            opt.jobs = jobs;
            Json filter;
            if (!regions_filter.empty()) {
                const std::string prefix = "thickness=";
                if (regions_filter.rfind(prefix, 0) != 0) throw InputError("--filter must look like thickness=2,9");
                std::set<unsigned> ts;
                std::stringstream ss(regions_filter.substr(prefix.size()));
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    try {
                        ts.insert(static_cast<unsigned>(std::stoul(tok)));
                    } catch (const std::exception&) {
                        throw InputError("--filter: bad thickness '" + tok + "'");
                    }
                }
                opt.filter = RegionFilter::by_thickness(ts);
                filter["thickness"] = ts;
            } else if (regions_sample > 0) {
                opt.filter = RegionFilter::sample(regions_sample, regions_seed);
                filter["sample"] = regions_sample;
                filter["seed"] = regions_seed;
                std::cerr << "apnlab: sampling " << regions_sample << " spaces with seed " << regions_seed << "\n";
            } else {
                filter = "all";
            }
            std::optional<io::Checkpoint> ck;
            if (!regions_ckpt.empty()) {
                ck.emplace(regions_ckpt, F);
                opt.known = &ck->records();
                opt.on_record = [&](const SourceRecord& r) { ck->append(r); };
            }
            const auto t = explore_regions(F, sp, opt);

            auto region_json = [&](const Region& r, std::size_t idx) {
                Json e;
                e["region"] = idx;
                const Json row = claims::region_row(r);
                for (const auto& [k, v] : row.items()) e[k] = v;
                e["count"] = r.count;
                e["witness"] = io::basis_json(r.witness);
                return e;
            };
            if (regions_out.format == "json") {
                Json j;
                j["n"] = t.n;
                j["function"] = to_hex(io::content_hash(F));
                j["filter"] = filter;
                j["spaces_total"] = t.spaces_total;
                j["spaces_examined"] = t.spaces_examined;
                j["regions"] = Json::array();
                for (std::size_t i = 0; i < t.regions.size(); ++i) j["regions"].push_back(region_json(t.regions[i], i + 1));
                j["degenerate"] = Json::array();
                for (std::size_t i = 0; i < t.degenerate.size(); ++i)
                    j["degenerate"].push_back(region_json(t.degenerate[i], i + 1));
                if (opt.filter.kind == RegionFilter::Kind::all) {
                    const auto b = ea_class_bounds(t);
                    j["ea_class_bounds"] = Json::array({b.lower, b.upper});
                }
                regions_out.emit(dump(j));
            } else {
                std::vector<std::vector<std::string>> rows;
                for (std::size_t i = 0; i < t.regions.size(); ++i) {
                    const auto e = region_json(t.regions[i], i + 1);
                    rows.push_back({std::to_string(i + 1), e["twist"].dump(), spectrum_text(e["degrees"]),
                                    spectrum_text(e["thickness"]), e["permutation"].get<bool>() ? "yes" : "no",
                                    std::to_string(t.regions[i].count)});
                }
                regions_out.emit(render({"region", "twist", "degree spectrum", "thickness spectrum", "permutations",
                                         "source spaces"},
                                        rows, regions_out.format));
            }
            return 0;
        }

        if (*tfl_cmd) {
            const auto s = tfl_args.spec();
            const auto T = build_tfl(build_cu(s), tfl_linear_map(s.field, 3, tfl_k));
            Json j;
            j["m"] = s.m();
            j["u"] = to_hex(s.u);
            j["k"] = tfl_k;
            j["T_permutation"] = is_permutation(T);
            if (is_permutation(T)) {
                const auto Ti = inverse(T);
                j["inverse_D"] = differential_uniformity(Ti, jobs);
                j["inverse_degree"] = algebraic_degree(Ti);
                if (!tfl_save.empty()) io::save_table(tfl_save, Ti);
            }
            tfl_out.emit(j.dump() + "\n");
            return 0;
        }

        if (*pp_cmd) {
            Json j;
            j["n"] = pp_n;
            j["i"] = pp_i;
            j["j"] = pp_j;
            j["permutation"] = permpoly_check(pp_n, pp_i, pp_j);
            pp_out.emit(j.dump() + "\n");
            return 0;
        }

        if (*verify_cmd) {
            claims::Context ctx(jobs, io::SpaceCache::from_env());
            const auto results = claims::run_claims(claims::select(verify_filter), ctx, [](const claims::ClaimResult& r) {
                std::cerr << (r.status == claims::Status::pass ? "PASS " : "FAIL ") << r.id;
                if (r.status != claims::Status::pass) std::cerr << " [" << claims::to_string(r.status) << "] " << r.detail;
                std::cerr << "\n";
            });
            const auto report = dump(claims::report_json(results));
            if (verify_report.empty()) std::cout << report;
            else io::write_file(verify_report, report);
            if (!verify_junit.empty()) io::write_file(verify_junit, claims::junit_xml(results));
            return claims::all_passed(results) ? 0 : kExitClaimFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "apnlab: error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

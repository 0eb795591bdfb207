// schurkit command line: construction, enumeration, isomorphism search,
// separability verification and Weisfeiler-Leman checks for S-rings over
// finite abelian groups.
//
// Exit codes: 0 success, 1 property violation found, 2 usage error,
// 3 budget exhausted.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "schurkit/drivers.hpp"
#include "schurkit/json_io.hpp"

using namespace schurkit;

namespace {

constexpr const char* kVersion = "schurkit 1.0";

struct Output {
    std::string path;  // empty = stdout
    std::ostringstream payload;

    void publish() {
        if (path.empty()) {
            std::cout << payload.str();
        } else {
            std::ofstream out(path);
            require(bool(out), errc::io_error, "cannot write " + path);
            out << payload.str();
        }
    }
};

json manifest_base(const std::string& command, const json& parameters) {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["versions"] = {{"tool", kVersion}, {"enumerator", kEnumeratorVersion}};
    return m;
}

void emit_manifest(json m, const json& summary, double seconds) {
    m["result_summary"] = summary;
    m["timing_seconds"] = seconds;
    std::cerr << m.dump() << "\n";
}

int cmd_construct(const std::string& family, int p, std::string flavor, int m_order,
                  bool with_constants, Output& out, json& summary) {
    FamilyInstance inst;
    if (family == "A0") {
        inst = build_A0(p);
    } else if (family == "A1*" || family == "A2*" || family == "A3*") {
        require(flavor == "C" || flavor == "E", errc::invalid_input, "--h must be C or E");
        inst = build_A_star(family[1] - '0', flavor[0], p);
    } else if (family.size() >= 2 && family[0] == 'A') {
        int line = std::stoi(family.substr(1));
        require(m_order > 0, errc::invalid_input, "--m-order required for the line families");
        inst = build_A_iM(line, p, m_order);
    } else {
        fail(errc::invalid_input, "unknown family " + family);
    }
    json j;
    j["sring"] = sring_to_json(inst.sring);
    json sig;
    sig["rank"] = inst.sring.rank();
    sig["size_profile"] = inst.sring.size_profile();
    if (inst.family != "A0") {
        sig["size_profile_inside_p"] = profile_inside_p(inst);
        sig["expected_profile_row"] =
            expected_profile_row(inst.family, inst.p, inst.m_order);
        sig["profile_ok"] = profile_check(inst);
    }
    j["signature"] = sig;
    if (with_constants) j["structure_constants"] = structure_constants_to_json(inst.sring);
    out.payload << j.dump(2) << "\n";
    summary = {{"family", inst.family}, {"rank", inst.sring.rank()}};
    return 0;
}

int cmd_enumerate(const std::string& spec, int threads, Output& out, json& summary) {
    Group g = parse_group_spec(spec);
    auto catalog = enumerate_srings(g, threads);
    write_catalog_jsonl(out.payload, catalog);
    summary = {{"group", format_group_spec(g)}, {"count", catalog.size()}};
    return 0;
}

int cmd_classify(const std::string& catalog_path, Output& out, json& summary) {
    std::ifstream in(catalog_path);
    require(bool(in), errc::io_error, "cannot open " + catalog_path);
    auto catalog = read_catalog_jsonl(in);
    int untagged = 0;
    for (size_t i = 0; i < catalog.size(); ++i) {
        ClassificationTag t = classify(catalog[i]);
        json row;
        row["index"] = i;
        row["rank"] = catalog[i].rank();
        row["rank2"] = t.rank2;
        row["tensor"] = t.tensor;
        row["s_wreath"] = t.s_wreath;
        row["s_wreath_aut"] = t.s_wreath_aut;
        if (t.s_wreath) row["s_wreath_min_section"] = t.s_wreath_min_section;
        row["family_star"] = t.family_star;
        if (t.family_star) row["star_index"] = t.star_index;
        row["normal_cyclotomic_trivial_radical"] = t.normal_cyclotomic_trivial_radical;
        row["cyclotomic_line"] = t.cyclotomic_line;
        if (t.cyclotomic_line) {
            row["line_no"] = t.line_no;
            row["line_m_order"] = t.line_m_order;
        }
        row["tagged"] = t.any();
        if (!t.any()) ++untagged;
        out.payload << row.dump() << "\n";
    }
    summary = {{"count", catalog.size()}, {"untagged", untagged}};
    return untagged > 0 ? 1 : 0;
}

int cmd_iso(const std::string& mode, const std::string& a_path, const std::string& b_path,
            Output& out, json& summary) {
    SRing a = load_sring_file(a_path);
    SRing b = load_sring_file(b_path);
    json j;
    if (mode == "alg") {
        auto isos = find_algebraic_isos(a, b);
        j["count"] = isos.size();
        json maps = json::array();
        for (auto& phi : isos) maps.push_back(phi.class_map);
        j["class_maps"] = std::move(maps);
        summary = {{"mode", mode}, {"count", isos.size()}};
    } else if (mode == "comb") {
        json found = json::array();
        for (auto& phi : find_algebraic_isos(a, b)) {
            auto f = find_inducing_iso(a, b, phi);
            if (f) {
                json w;
                w["class_map"] = phi.class_map;
                w["point_map"] = *f;
                found.push_back(std::move(w));
            }
        }
        j["count"] = found.size();
        j["isomorphisms"] = std::move(found);
        summary = {{"mode", mode}, {"count", j["count"]}};
    } else if (mode == "cayley") {
        auto isos = find_cayley_isos(a, b);
        j["count"] = isos.size();
        json maps = json::array();
        for (auto& f : isos) maps.push_back(f.image);
        j["point_maps"] = std::move(maps);
        summary = {{"mode", mode}, {"count", isos.size()}};
    } else {
        fail(errc::invalid_input, "mode must be alg, comb or cayley");
    }
    out.payload << j.dump(2) << "\n";
    return 0;
}

int cmd_separability(const std::string& a_path, bool auto_targets,
                     const std::vector<std::string>& target_files, int threads, Output& out,
                     json& summary, json& params) {
    std::string bytes = read_file(a_path);
    char hash_buf[17];
    std::snprintf(hash_buf, sizeof hash_buf, "%016llx", (unsigned long long)fnv1a(bytes));
    params["hash"] = hash_buf;
    SRing a = sring_from_json(json::parse(bytes));
    std::vector<TargetPool> pools;
    std::vector<std::string> names;
    if (auto_targets) {
        for (auto& g : abelian_groups_of_order(a.group().order())) {
            pools.push_back(TargetPool{g, enumerate_srings(g, threads)});
            names.push_back(format_group_spec(g));
        }
    } else {
        require(!target_files.empty(), errc::invalid_input,
                "need --order-targets auto or --targets files");
        for (auto& path : target_files) {
            std::ifstream in(path);
            require(bool(in), errc::io_error, "cannot open " + path);
            auto catalog = read_catalog_jsonl(in);
            require(!catalog.empty(), errc::invalid_input, "empty target catalog " + path);
            pools.push_back(TargetPool{catalog[0].group(), catalog});
            names.push_back(path);
        }
    }
    auto rep = is_separable(a, pools);
    out.payload << separability_report_to_json(rep, names).dump(2) << "\n";
    summary = {{"separable", rep.separable},
               {"checked_isos", rep.checked_isos},
               {"budget_exhausted", rep.budget_exhausted}};
    if (rep.budget_exhausted) return 3;
    return rep.separable ? 0 : 1;
}

int cmd_verify_main_theorem(int p, int threads, Output& out, json& summary) {
    if (!is_prime(p)) fail(errc::invalid_input, "p must be prime");
    auto res = verify_main_theorem(p, threads);
    bool replay_ok = res.all_separable && replay_main_theorem_witnesses(res);
    for (const auto& rec : res.records) {
        json row;
        row["group"] = format_group_spec(res.catalogs.groups[rec.group_index]);
        row["index"] = rec.sring_index;
        row["rank"] = rec.rank;
        row["separable"] = rec.report.separable;
        row["checked_isos"] = rec.report.checked_isos;
        out.payload << row.dump() << "\n";
    }
    summary = {{"p", p},
               {"srings", res.records.size()},
               {"all_separable", res.all_separable},
               {"witnesses", res.total_witnesses},
               {"replay_ok", replay_ok},
               {"budget_exhausted", res.budget_exhausted}};
    if (res.budget_exhausted) return 3;
    return res.all_separable && replay_ok ? 0 : 1;
}

int cmd_nonisom_matrix(int p, int threads, Output& out, json& summary) {
    if (!is_prime(p) || p < 5) fail(errc::invalid_input, "p must be a prime >= 5");
    auto res = nonisom_matrix(p, threads);
    json j;
    json labels = json::array();
    for (auto& f : res.families) labels.push_back(f.label);
    j["families"] = labels;
    json matrix = json::array();
    for (auto& row : res.alg_iso) {
        json r = json::array();
        for (char v : row) r.push_back((bool)v);
        matrix.push_back(std::move(r));
    }
    j["alg_iso"] = std::move(matrix);
    j["violations"] = res.violations;
    j["informational"] = res.informational;
    out.payload << j.dump(2) << "\n";
    summary = {{"p", p},
               {"families", res.families.size()},
               {"violations", res.violations.size()}};
    return res.violations.empty() ? 0 : 1;
}

int cmd_wl_check(const std::string& spec, bool all_inverse_closed,
                 const std::string& connection, Output& out, json& summary) {
    Group g = parse_group_spec(spec);
    std::vector<std::vector<int>> sets;
    if (all_inverse_closed) {
        sets = inverse_closed_connection_sets(g);
    } else {
        require(!connection.empty(), errc::invalid_input,
                "need --all-inverse-closed or --connection-set");
        std::vector<int> conn;
        std::istringstream in(connection);
        std::string tok;
        while (std::getline(in, tok, ';')) conn.push_back(parse_element(g, tok));
        sets.push_back(std::move(conn));
    }
    int refinement_failures = 0, equal_count = 0;
    for (const auto& x : sets) {
        auto rep = wl_closure_vs_sring(g, x);
        json row;
        row["connection_set"] = x;
        row["wl_colors"] = rep.wl_colors;
        row["closure_rank"] = rep.closure_rank;
        row["closure_refines_wl"] = rep.closure_refines_wl;
        row["partitions_equal"] = rep.partitions_equal;
        out.payload << row.dump() << "\n";
        if (!rep.closure_refines_wl) ++refinement_failures;
        if (rep.partitions_equal) ++equal_count;
    }
    summary = {{"group", format_group_spec(g)},
               {"sets", sets.size()},
               {"refinement_failures", refinement_failures},
               {"partitions_equal", equal_count}};
    return refinement_failures == 0 ? 0 : 1;
}

int cmd_wl_pair(const std::string& g1_path, const std::string& g2_path, Output& out,
                json& summary) {
    auto load = [](const std::string& path) {
        std::ifstream in(path);
        require(bool(in), errc::io_error, "cannot open " + path);
        json j;
        in >> j;
        return coloring_from_json(j);
    };
    PairColoring c1 = load(g1_path), c2 = load(g2_path);
    bool eq = wl2_equivalent(wl2_stabilize(c1), wl2_stabilize(c2));
    json j;
    j["wl2_equivalent"] = eq;
    out.payload << j.dump(2) << "\n";
    summary = {{"wl2_equivalent", eq}};
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation with Schur rings over finite abelian groups"};
    app.require_subcommand(1);

    std::string out_path, family, group_spec, flavor = "E", catalog_path, a_path, b_path;
    std::string connection, iso_mode, target_arg;
    std::vector<std::string> target_files;
    int p = 0, m_order = 0, threads = 0;
    bool auto_targets = false, all_inverse_closed = false;

    auto* construct = app.add_subcommand("construct", "build a named S-ring family member");
    construct->set_help_flag("--help", "print help");  // frees -h for the flavor option
    construct->add_option("family", family, "A0, A1*, A2*, A3*, or A1..A11")->required();
    construct->add_option("--p", p, "prime parameter")->required();
    construct->add_option("--h", flavor, "order-9 flavor: C or E (star families)");
    construct->add_option("--m-order", m_order, "|M| for the line families");
    construct->add_option("--out", out_path, "payload file (default stdout)");
    bool with_constants = false;
    construct->add_flag("--with-constants", with_constants,
                        "include the structure constants as [X,Y,Z,c] rows");

    auto* enumerate = app.add_subcommand("enumerate", "all S-rings over a group");
    enumerate->add_option("--group", group_spec, "factor spec, e.g. 9x5")->required();
    enumerate->add_option("--out", out_path, "catalog JSONL output");
    enumerate->add_option("--threads", threads, "worker threads");

    auto* classify_cmd = app.add_subcommand("classify", "tag catalog members");
    classify_cmd->add_option("--catalog", catalog_path, "catalog JSONL")->required();
    classify_cmd->add_option("--out", out_path, "tag rows output");

    auto* iso = app.add_subcommand("iso", "isomorphism searches between two S-rings");
    iso->add_flag_callback("--alg", [&] { iso_mode = "alg"; }, "algebraic isomorphisms");
    iso->add_flag_callback("--comb", [&] { iso_mode = "comb"; }, "combinatorial isomorphisms");
    iso->add_flag_callback("--cayley", [&] { iso_mode = "cayley"; }, "Cayley isomorphisms");
    iso->add_option("a", a_path, "first S-ring JSON")->required();
    iso->add_option("b", b_path, "second S-ring JSON")->required();
    iso->add_option("--out", out_path, "report output");

    auto* sep = app.add_subcommand("separability", "separability verdict for one S-ring");
    sep->add_option("sring", a_path, "S-ring JSON")->required();
    sep->add_option("--order-targets", target_arg, "'auto': all abelian groups of equal order");
    sep->add_option("--targets", target_files, "target catalog JSONL files");
    sep->add_option("--threads", threads, "worker threads");
    sep->add_option("--out", out_path, "report output");

    auto* vmt = app.add_subcommand("verify-main-theorem",
                                   "separability of every S-ring of order 9p");
    vmt->add_option("--p", p, "prime")->required();
    vmt->add_option("--threads", threads, "worker threads");
    vmt->add_option("--out", out_path, "per-S-ring rows output");

    auto* nim = app.add_subcommand("nonisom-matrix",
                                   "pairwise algebraic-isomorphism matrix over the families");
    nim->add_option("--p", p, "prime >= 5")->required();
    nim->add_option("--threads", threads, "worker threads");
    nim->add_option("--out", out_path, "matrix output");

    auto* wlc = app.add_subcommand("wl-check", "WL stabilization vs Wielandt closure");
    wlc->add_option("--group", group_spec, "factor spec")->required();
    wlc->add_flag("--all-inverse-closed", all_inverse_closed, "sweep all inverse-closed sets");
    wlc->add_option("--connection-set", connection,
                    "semicolon-separated element literals, e.g. (1,0);(8,0)");
    wlc->add_option("--out", out_path, "rows output");

    auto* wlp = app.add_subcommand("wl-pair", "2-WL equivalence of two graphs");
    wlp->add_option("g1", a_path, "first graph JSON")->required();
    wlp->add_option("g2", b_path, "second graph JSON")->required();
    wlp->add_option("--out", out_path, "report output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output out;
    out.path = out_path;
    json params, summary;
    auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    std::string command;
    try {
        if (construct->parsed()) {
            command = "construct";
            params = {{"family", family}, {"p", p}, {"h", flavor}, {"m_order", m_order}};
            rc = cmd_construct(family, p, flavor, m_order, with_constants, out, summary);
        } else if (enumerate->parsed()) {
            command = "enumerate";
            params = {{"group", group_spec}};
            rc = cmd_enumerate(group_spec, threads, out, summary);
        } else if (classify_cmd->parsed()) {
            command = "classify";
            params = {{"catalog", catalog_path}, {"hash", file_hash_hex(catalog_path)}};
            rc = cmd_classify(catalog_path, out, summary);
        } else if (iso->parsed()) {
            command = "iso";
            params = {{"mode", iso_mode},
                      {"a", a_path},
                      {"b", b_path},
                      {"a_hash", file_hash_hex(a_path)},
                      {"b_hash", file_hash_hex(b_path)}};
            require(!iso_mode.empty(), errc::invalid_input, "pick one of --alg --comb --cayley");
            rc = cmd_iso(iso_mode, a_path, b_path, out, summary);
        } else if (sep->parsed()) {
            command = "separability";
            auto_targets = target_arg == "auto";
            params = {{"sring", a_path}};
            rc = cmd_separability(a_path, auto_targets, target_files, threads, out, summary,
                                  params);
        } else if (vmt->parsed()) {
            command = "verify-main-theorem";
            params = {{"p", p}};
            rc = cmd_verify_main_theorem(p, threads, out, summary);
        } else if (nim->parsed()) {
            command = "nonisom-matrix";
            params = {{"p", p}};
            rc = cmd_nonisom_matrix(p, threads, out, summary);
        } else if (wlc->parsed()) {
            command = "wl-check";
            params = {{"group", group_spec},
                      {"all_inverse_closed", all_inverse_closed},
                      {"connection_set", connection}};
            rc = cmd_wl_check(group_spec, all_inverse_closed, connection, out, summary);
        } else if (wlp->parsed()) {
            command = "wl-pair";
            params = {{"g1", a_path},
                      {"g2", b_path},
                      {"g1_hash", file_hash_hex(a_path)},
                      {"g2_hash", file_hash_hex(b_path)}};
            rc = cmd_wl_pair(a_path, b_path, out, summary);
        }
        out.publish();
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.code() == errc::budget_exhausted) rc = 3;
        else if (e.code() == errc::internal_invariant_failure) rc = 1;
        else rc = 2;
        summary = {{"error", e.what()}};
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 2;
        summary = {{"error", e.what()}};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_manifest(manifest_base(command, params), summary, seconds);
    return rc;
}

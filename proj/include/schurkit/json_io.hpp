#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/products.hpp"
#include "schurkit/sring.hpp"
#include "schurkit/wl.hpp"

namespace schurkit {

using nlohmann::json;

inline json sring_to_json(const SRing& a) {
    json j;
    j["group"] = format_group_spec(a.group());
    j["classes"] = a.classes();
    return j;
}

inline SRing sring_from_json(const json& j) {
    require(j.contains("group") && j.contains("classes"), errc::invalid_input,
            "S-ring JSON needs 'group' and 'classes'");
    Group g = parse_group_spec(j["group"].get<std::string>());
    return SRing::validate_partition(g, j["classes"].get<std::vector<std::vector<int>>>());
}

/// Structure constants as [X, Y, Z, c] quadruples (nonzero entries only).
inline json structure_constants_to_json(const SRing& a) {
    json rows = json::array();
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j)
            for (auto [z, c] : a.product_row(i, j)) rows.push_back({i, j, z, c});
    return rows;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), errc::io_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SRing load_sring_file(const std::string& path) {
    return sring_from_json(json::parse(read_file(path)));
}

inline void write_catalog_jsonl(std::ostream& out, const std::vector<SRing>& catalog) {
    for (const auto& a : catalog) out << sring_to_json(a).dump() << "\n";
}

inline std::vector<SRing> read_catalog_jsonl(std::istream& in) {
    std::vector<SRing> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(sring_from_json(json::parse(line)));
    }
    return out;
}

/// Graph input: either {"n":..,"arcs":[[u,v],..]} or
/// {"group":"9x2","connection_set":[..]} with element indices.
inline PairColoring coloring_from_json(const json& j) {
    if (j.contains("group")) {
        Group g = parse_group_spec(j["group"].get<std::string>());
        return cayley_digraph(g, j["connection_set"].get<std::vector<int>>());
    }
    require(j.contains("n") && j.contains("arcs"), errc::invalid_input,
            "graph JSON needs 'n' and 'arcs' or 'group' and 'connection_set'");
    int n = j["n"].get<int>();
    std::vector<std::pair<int, int>> arcs;
    for (auto& a : j["arcs"]) arcs.push_back({a[0].get<int>(), a[1].get<int>()});
    return coloring_from_arcs(n, arcs);
}

inline json separability_report_to_json(const SeparabilityReport& rep,
                                        const std::vector<std::string>& pool_names) {
    json j;
    j["separable"] = rep.separable;
    j["budget_exhausted"] = rep.budget_exhausted;
    j["checked_isos"] = rep.checked_isos;
    json ws = json::array();
    for (const auto& w : rep.witnesses) {
        json wj;
        wj["target_group"] = pool_names[w.pool];
        wj["target_index"] = w.target;
        wj["class_map"] = w.phi.class_map;
        wj["induced"] = w.induced;
        if (w.induced) wj["point_map"] = w.point_map;
        ws.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(ws);
    return j;
}

/// Subdirect product specs travel as generator-image lists per factor group,
/// plus the psi generator image.
inline json subdirect_spec_to_json(const SubdirectSpec& spec) {
    auto gens = [](const std::vector<GroupMap>& maps) {
        json out = json::array();
        for (const auto& f : maps) out.push_back(f.generator_images());
        return out;
    };
    json j;
    j["h1"] = format_group_spec(spec.h1);
    j["h2"] = format_group_spec(spec.h2);
    j["k_gens"] = gens(spec.k_gens);
    j["k0_gens"] = gens(spec.k0_gens);
    j["m_gens"] = gens(spec.m_gens);
    j["m0_gens"] = gens(spec.m0_gens);
    j["psi"] = spec.psi_rep.generator_images();
    return j;
}

inline SubdirectSpec subdirect_spec_from_json(const json& j) {
    SubdirectSpec spec;
    spec.h1 = parse_group_spec(j["h1"].get<std::string>());
    spec.h2 = parse_group_spec(j["h2"].get<std::string>());
    auto maps = [](const Group& g, const json& arr) {
        std::vector<GroupMap> out;
        for (const auto& images : arr)
            out.push_back(hom_from_generator_images(g, g, images.get<std::vector<int>>()));
        return out;
    };
    spec.k_gens = maps(spec.h1, j["k_gens"]);
    spec.k0_gens = maps(spec.h1, j["k0_gens"]);
    spec.m_gens = maps(spec.h2, j["m_gens"]);
    spec.m0_gens = maps(spec.h2, j["m0_gens"]);
    spec.psi_rep =
        hom_from_generator_images(spec.h2, spec.h2, j["psi"].get<std::vector<int>>());
    return spec;
}

inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::stringstream ss;
    ss << in.rdbuf();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(ss.str()));
    return buf;
}

}  // namespace schurkit

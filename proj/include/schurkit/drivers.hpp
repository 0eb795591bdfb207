#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "schurkit/constructions.hpp"
#include "schurkit/enumeration.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/wl.hpp"

namespace schurkit {

inline int default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

/// Runs f(i) for i in [0, n) on a small worker pool.
template <class F>
void parallel_for(int n, int num_threads, F f) {
    if (num_threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int k = std::min(num_threads, n);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

/// Catalogs over every abelian group of order n (cache-backed).
struct OrderCatalogs {
    std::vector<Group> groups;
    std::vector<std::vector<SRing>> catalogs;
};

inline OrderCatalogs catalogs_of_order(int n, int num_threads = 0) {
    OrderCatalogs out;
    out.groups = abelian_groups_of_order(n);
    for (const auto& g : out.groups) out.catalogs.push_back(enumerate_srings(g, num_threads));
    return out;
}

/// Per-S-ring record of a separability sweep.
struct SeparabilityRecord {
    int group_index = 0;
    int sring_index = 0;
    int rank = 0;
    SeparabilityReport report;
};

struct MainTheoremResult {
    int p = 0;
    OrderCatalogs catalogs;
    std::vector<SeparabilityRecord> records;
    bool all_separable = true;
    bool budget_exhausted = false;
    long long total_isos = 0;
    long long total_witnesses = 0;
};

/// The full separability sweep at order 9p: every S-ring over every abelian
/// group of order 9p against all S-rings over both groups.
inline MainTheoremResult verify_main_theorem(int p, int num_threads = 0,
                                             const SearchLimits& lim = {}) {
    require(is_prime(p), errc::invalid_input, "p must be prime");
    if (num_threads <= 0) num_threads = default_threads();
    MainTheoremResult res;
    res.p = p;
    res.catalogs = catalogs_of_order(9 * p, num_threads);

    std::vector<TargetPool> pools;
    for (size_t gi = 0; gi < res.catalogs.groups.size(); ++gi) {
        pools.push_back(TargetPool{res.catalogs.groups[gi], res.catalogs.catalogs[gi], {}});
        pools.back().prepare_keys();
    }

    std::vector<std::pair<int, int>> tasks;
    for (size_t gi = 0; gi < res.catalogs.groups.size(); ++gi)
        for (size_t si = 0; si < res.catalogs.catalogs[gi].size(); ++si)
            tasks.push_back({(int)gi, (int)si});

    res.records.resize(tasks.size());
    std::atomic<bool> failed{false}, exhausted{false};
    parallel_for((int)tasks.size(), num_threads, [&](int i) {
        auto [gi, si] = tasks[i];
        const SRing& a = res.catalogs.catalogs[gi][si];
        SeparabilityRecord rec;
        rec.group_index = gi;
        rec.sring_index = si;
        rec.rank = a.rank();
        rec.report = is_separable(a, pools, lim);
        if (!rec.report.separable) failed = true;
        if (rec.report.budget_exhausted) exhausted = true;
        res.records[i] = std::move(rec);
    });
    for (const auto& rec : res.records) {
        res.total_isos += rec.report.checked_isos;
        for (const auto& w : rec.report.witnesses) res.total_witnesses += w.induced ? 1 : 0;
    }
    res.all_separable = !failed;
    res.budget_exhausted = exhausted;
    return res;
}

/// Independent replay of the witnesses in a sweep result: every recorded
/// inducing map must induce exactly its algebraic isomorphism.
inline bool replay_main_theorem_witnesses(const MainTheoremResult& res) {
    for (const auto& rec : res.records) {
        const SRing& a = res.catalogs.catalogs[rec.group_index][rec.sring_index];
        for (const auto& w : rec.report.witnesses) {
            if (!w.induced) return false;
            const SRing& b = res.catalogs.catalogs[w.pool][w.target];
            auto back = induced_algebraic_iso(a, b, w.point_map);
            if (!back || back->class_map != w.phi.class_map) return false;
        }
    }
    return true;
}

/// The family list for the pairwise non-isomorphism matrix at a prime p:
/// both flavors of the three star families plus every well-defined line
/// family.
struct FamilyEntry {
    std::string label;
    bool is_star = false;
    int index = 0;    // star index or line number
    char flavor = 0;  // C/E for stars
    int m_order = 0;  // k for line families
    FamilyInstance inst;
};

inline std::vector<FamilyEntry> nonisom_families(int p) {
    std::vector<FamilyEntry> out;
    for (char flavor : {'C', 'E'})
        for (int i = 1; i <= 3; ++i) {
            FamilyEntry e;
            e.label = "A" + std::to_string(i) + "*(" + flavor + std::string(")");
            e.is_star = true;
            e.index = i;
            e.flavor = flavor;
            e.inst = build_A_star(i, flavor, p);
            out.push_back(std::move(e));
        }
    for (const auto& line : cyclotomic_lines())
        for (int k : divisors(p - 1)) {
            if (k % line.index != 0) continue;
            FamilyEntry e;
            e.label = "A" + std::to_string(line.line_no) + "(k=" + std::to_string(k) + ")";
            e.index = line.line_no;
            e.m_order = k;
            e.inst = build_A_iM(line.line_no, p, k);
            out.push_back(std::move(e));
        }
    return out;
}

struct NonisomMatrixResult {
    int p = 0;
    std::vector<FamilyEntry> families;
    std::vector<std::vector<char>> alg_iso;  // pairwise verdicts
    std::vector<std::string> violations;     // empty iff the four statements hold
    std::vector<std::string> informational;  // cross-flavor star coincidences
};

/// Pairwise algebraic-isomorphism matrix over the family catalog, checked
/// against the four non-isomorphism statements:
/// (1) distinct star indices (same flavor) never algebraically isomorphic;
/// (2) stars never isomorphic to line families;
/// (3) same M, distinct lines: never;
/// (4) distinct M: never.
inline NonisomMatrixResult nonisom_matrix(int p, int num_threads = 0) {
    if (num_threads <= 0) num_threads = default_threads();
    NonisomMatrixResult res;
    res.p = p;
    res.families = nonisom_families(p);
    int n = (int)res.families.size();
    res.alg_iso.assign(n, std::vector<char>(n, 0));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.push_back({i, j});
    std::mutex mu;
    parallel_for((int)pairs.size(), num_threads, [&](int t) {
        auto [i, j] = pairs[t];
        bool iso = algebraically_isomorphic(res.families[i].inst.sring,
                                            res.families[j].inst.sring);
        std::lock_guard<std::mutex> lock(mu);
        res.alg_iso[i][j] = res.alg_iso[j][i] = iso;
    });

    for (int i = 0; i < n; ++i) {
        const auto& a = res.families[i];
        if (!res.alg_iso[i][i])
            res.violations.push_back(a.label + " not isomorphic to itself");
        for (int j = i + 1; j < n; ++j) {
            const auto& b = res.families[j];
            if (!res.alg_iso[i][j]) continue;
            if (a.is_star && b.is_star) {
                if (a.index != b.index)
                    res.violations.push_back(a.label + " ~ " + b.label);
                else if (a.flavor != b.flavor)
                    res.informational.push_back(a.label + " ~ " + b.label +
                                                " (cross-flavor, not covered by the statements)");
            } else if (a.is_star != b.is_star) {
                res.violations.push_back(a.label + " ~ " + b.label);
            } else {
                // two line families
                if (a.m_order != b.m_order || a.index != b.index)
                    res.violations.push_back(a.label + " ~ " + b.label);
            }
        }
    }
    return res;
}

/// Classification sweep over all catalogs of order n. Returns one tag per
/// catalog member, in catalog order.
struct ClassifiedCatalogs {
    OrderCatalogs catalogs;
    std::vector<std::vector<ClassificationTag>> tags;
};

inline ClassifiedCatalogs classify_order(int n, int num_threads = 0) {
    if (num_threads <= 0) num_threads = default_threads();
    ClassifiedCatalogs out;
    out.catalogs = catalogs_of_order(n, num_threads);
    out.tags.resize(out.catalogs.groups.size());
    for (size_t gi = 0; gi < out.catalogs.groups.size(); ++gi) {
        const auto& catalog = out.catalogs.catalogs[gi];
        out.tags[gi].resize(catalog.size());
        parallel_for((int)catalog.size(), num_threads,
                     [&, gi](int i) { out.tags[gi][i] = classify(catalog[i]); });
    }
    return out;
}

}  // namespace schurkit

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/constructions.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/products.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

inline constexpr int kEnumeratorVersion = 3;
inline constexpr int kEnumerationCap = 63;

namespace detail {

/// Exhaustive S-ring enumeration over one group.
///
/// Depth-first construction of the basic set of the smallest unassigned
/// element. The key pruning facts:
///  - every future basic set lies inside one class of the Schur-Wielandt
///    closure of the classes fixed so far (the closure is coarser than any
///    S-ring containing them);
///  - a fixed class must remain a class of every such closure (else no S-ring
///    with the current prefix exists);
///  - multiplier coherence: if m*x and x both lie in a basic set X for some m
///    coprime to |G| then X^(m) = X, so membership propagates along the
///    multiplier subgroup witnessed so far (and non-membership propagates the
///    same way);
///  - X and X^(-1) are simultaneously classes, equal or disjoint.
class Enumerator {
public:
    explicit Enumerator(const Group& g, int cap = kEnumerationCap) : g_(g), n_(g.order()) {
        require(n_ <= cap, errc::too_large,
                "enumeration supports groups of order at most " + std::to_string(cap));
        neg_.resize(n_);
        add_.assign(n_, std::vector<int>(n_));
        for (int x = 0; x < n_; ++x) {
            neg_[x] = g_.neg(x);
            for (int y = 0; y < n_; ++y) add_[x][y] = g_.add(x, y);
        }
        int expo = g_.exponent();
        for (int m = 0; m < expo; ++m)
            if (std::gcd(m, n_) == 1) units_.push_back(m);
        nu_ = (int)units_.size();
        require(nu_ <= 64, errc::too_large, "unit group too large for mask propagation");
        mul_.assign(nu_, std::vector<int>(n_));
        for (int i = 0; i < nu_; ++i)
            for (int x = 0; x < n_; ++x) mul_[i][x] = g_.scalar_mul(units_[i], x);
        pair_units_.assign((size_t)n_ * n_, 0);
        for (int i = 0; i < nu_; ++i)
            for (int x = 0; x < n_; ++x) pair_units_[(size_t)x * n_ + mul_[i][x]] |= 1ULL << i;
        unit_mul_.assign(nu_, std::vector<int>(nu_));
        std::vector<int> unit_index(expo, -1);
        for (int i = 0; i < nu_; ++i) unit_index[units_[i]] = i;
        for (int i = 0; i < nu_; ++i)
            for (int j = 0; j < nu_; ++j)
                unit_mul_[i][j] = unit_index[(int)((long long)units_[i] * units_[j] % expo)];
    }

    std::vector<SRing> run(int num_threads = 1) {
        results_.clear();
        State root;
        root.fixed_class_of.assign(n_, -1);
        root.fixed_class_of[0] = 0;
        root.fixed_classes = {{0}};
        root.unassigned = ElemSet::all(n_);
        root.unassigned.reset(0);
        root.part = RefinePartition::single(n_);
        std::vector<long long> idvec(n_, 0);
        idvec[0] = 1;
        root.part.refine_by(idvec);
        schur_wielandt_refine(g_, root.part);
        root.protected_ids = {root.part.class_of[0]};

        if (num_threads <= 1 || n_ < 24) {
            extend(root);
        } else {
            // work-stealing over the first-level candidate classes
            std::vector<std::pair<std::vector<int>, State>> tasks;
            collect_first_level(root, tasks);
            std::atomic<size_t> next{0};
            std::vector<std::vector<std::vector<std::vector<int>>>> slots(tasks.size());
            auto worker = [&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    std::vector<std::vector<std::vector<int>>> local;
                    std::swap(local, results_tls_);
                    extend(tasks[i].second);
                    std::swap(local, results_tls_);
                    slots[i] = std::move(local);
                }
            };
            threaded_ = true;
            std::vector<std::thread> pool;
            for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            threaded_ = false;
            for (auto& s : slots)
                for (auto& p : s) results_.push_back(std::move(p));
        }

        std::vector<SRing> out;
        out.reserve(results_.size());
        for (auto& classes : results_) out.push_back(SRing::validate_partition(g_, classes));
        std::sort(out.begin(), out.end(), [](const SRing& a, const SRing& b) {
            if (a.rank() != b.rank()) return a.rank() < b.rank();
            return a.classes() < b.classes();
        });
        results_.clear();
        return out;
    }

private:
    struct State {
        std::vector<int> fixed_class_of;
        std::vector<std::vector<int>> fixed_classes;
        ElemSet unassigned;
        RefinePartition part;            // SW closure of the fixed classes
        std::vector<int> protected_ids;  // ids of fixed classes inside part
    };

    const Group& g_;
    int n_;
    std::vector<int> neg_;
    std::vector<std::vector<int>> add_;
    std::vector<int> units_;
    int nu_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<std::uint64_t> pair_units_;  // units m with m*x == y, keyed x*n+y
    std::vector<std::vector<int>> unit_mul_;

    std::vector<std::vector<std::vector<int>>> results_;
    // thread-local result sink when running the parallel frontier
    static thread_local std::vector<std::vector<std::vector<int>>> results_tls_;
    bool threaded_ = false;

    void emit(const State& st) {
        std::vector<std::vector<int>> classes = st.fixed_classes;
        for (auto& c : classes) std::sort(c.begin(), c.end());
        if (threaded_)
            results_tls_.push_back(std::move(classes));
        else
            results_.push_back(std::move(classes));
    }

    std::uint64_t subgroup_closure(std::uint64_t mask) const {
        // closure of a set of units under multiplication (identity is unit 0
        // only if units_[0] == 1, which holds: 1 is always first)
        std::uint64_t closed = mask | 1ULL;
        for (;;) {
            std::uint64_t grown = closed;
            std::uint64_t mi = closed;
            while (mi) {
                int i = __builtin_ctzll(mi);
                mi &= mi - 1;
                std::uint64_t mj = closed;
                while (mj) {
                    int j = __builtin_ctzll(mj);
                    mj &= mj - 1;
                    grown |= 1ULL << unit_mul_[i][j];
                }
            }
            if (grown == closed) return closed;
            closed = grown;
        }
    }

    struct Candidate {
        ElemSet in, out;   // decided membership within the allowed region
        ElemSet undecided;
        std::uint64_t t_mask = 1;  // witnessed multiplier subgroup (unit indices)
    };

    /// Propagates the multiplier and inverse-pairing rules. Returns false when
    /// the candidate is contradictory.
    bool propagate(Candidate& c, const ElemSet& allowed, const ElemSet& unassigned) const {
        for (;;) {
            // gather multiplier witnesses from decided members
            std::uint64_t m = c.t_mask;
            std::vector<int> members;
            c.in.for_each([&](int x) { members.push_back(x); });
            for (int x : members)
                for (int y : members) m |= pair_units_[(size_t)x * n_ + y];
            m = subgroup_closure(m);
            bool changed = m != c.t_mask;
            c.t_mask = m;

            // forced membership along the multiplier subgroup
            std::uint64_t mi = m;
            while (mi) {
                int i = __builtin_ctzll(mi);
                mi &= mi - 1;
                for (int x : members) {
                    int y = mul_[i][x];
                    if (c.in.test(y)) continue;
                    if (!allowed.test(y) || c.out.test(y)) return false;
                    c.in.set(y);
                    c.undecided.reset(y);
                    changed = true;
                }
                // forced exclusion: the image of an excluded element stays out
                std::vector<int> outs;
                c.out.for_each([&](int d) { outs.push_back(d); });
                for (int d : outs) {
                    int y = mul_[i][d];
                    if (!allowed.test(y) || c.out.test(y)) continue;
                    if (c.in.test(y)) return false;
                    c.out.set(y);
                    c.undecided.reset(y);
                    changed = true;
                }
            }

            // inverse pairing: X and X^(-1) are equal or disjoint
            bool has_sym = false, has_asym = false;
            c.in.for_each([&](int x) {
                int nx = neg_[x];
                if (c.in.test(nx)) has_sym = true;
                else if (c.out.test(nx)) has_asym = true;
            });
            if (has_sym && has_asym) return false;
            if (has_sym) {
                std::vector<int> members2;
                c.in.for_each([&](int x) { members2.push_back(x); });
                for (int x : members2) {
                    int nx = neg_[x];
                    if (c.in.test(nx)) continue;
                    if (!allowed.test(nx) || c.out.test(nx)) return false;
                    c.in.set(nx);
                    c.undecided.reset(nx);
                    changed = true;
                }
            }
            if (has_asym) {
                std::vector<int> members2;
                c.in.for_each([&](int x) { members2.push_back(x); });
                for (int x : members2) {
                    int nx = neg_[x];
                    if (c.in.test(nx)) return false;
                    if (allowed.test(nx) && !c.out.test(nx)) {
                        c.out.set(nx);
                        c.undecided.reset(nx);
                        changed = true;
                    }
                }
            }
            // the inverse class must be assignable: every member's inverse is
            // still unassigned at the outer level
            bool dead = false;
            c.in.for_each([&](int x) {
                if (!unassigned.test(neg_[x])) dead = true;
            });
            if (dead) return false;
            if (!changed) return true;
        }
    }

    /// Cheap necessary conditions on a completed candidate class.
    bool quick_class_checks(const std::vector<int>& x) const {
        std::vector<int> counts(n_, 0);
        for (int a : x)
            for (int b : x) ++counts[add_[a][neg_[b]]];
        int want = counts[x[0]];
        for (int a : x)
            if (counts[a] != want) return false;
        std::fill(counts.begin(), counts.end(), 0);
        for (int a : x)
            for (int b : x) ++counts[add_[a][b]];
        want = counts[x[0]];
        for (int a : x)
            if (counts[a] != want) return false;
        return true;
    }

    /// Runs the guarded closure for fixed classes plus the candidate; on
    /// success fills the new state.
    bool try_accept(const State& st, const std::vector<int>& x, State& out) const {
        out = st;
        std::vector<long long> xvec(n_, 0);
        for (int e : x) xvec[e] = 1;
        out.part.refine_by(xvec);
        int x_id = out.part.class_of[x[0]];
        out.protected_ids.push_back(x_id);
        if (!schur_wielandt_refine(g_, out.part, &out.protected_ids)) return false;

        int cls_id = (int)out.fixed_classes.size();
        out.fixed_classes.push_back(x);
        for (int e : x) {
            out.fixed_class_of[e] = cls_id;
            out.unassigned.reset(e);
        }
        std::vector<int> xinv;
        for (int e : x) xinv.push_back(neg_[e]);
        std::sort(xinv.begin(), xinv.end());
        if (xinv != x) {
            int inv_id = (int)out.fixed_classes.size();
            out.fixed_classes.push_back(xinv);
            for (int e : xinv) {
                out.fixed_class_of[e] = inv_id;
                out.unassigned.reset(e);
            }
            out.protected_ids.push_back(out.part.class_of[xinv[0]]);
        }
        return true;
    }

    template <class OnCandidate>
    void enumerate_candidates(const State& st, int pivot, OnCandidate on_candidate) const {
        ElemSet allowed;
        for (int e : st.part.members[st.part.class_of[pivot]]) allowed.set(e);
        allowed &= st.unassigned;
        // the inverse class must also fit inside a single closure block
        ElemSet inv_block;
        for (int e : st.part.members[st.part.class_of[neg_[pivot]]]) inv_block.set(e);
        inv_block &= st.unassigned;
        ElemSet inv_ok;
        inv_block.for_each([&](int e) { inv_ok.set(neg_[e]); });
        allowed &= inv_ok;
        if (!allowed.test(pivot)) return;

        Candidate root;
        root.in.set(pivot);
        root.undecided = allowed;
        root.undecided.reset(pivot);
        if (!propagate(root, allowed, st.unassigned)) return;
        branch(st, root, allowed, on_candidate);
    }

    template <class OnCandidate>
    void branch(const State& st, const Candidate& c, const ElemSet& allowed,
                OnCandidate on_candidate) const {
        if (c.undecided.empty()) {
            std::vector<int> x;
            c.in.for_each([&](int e) { x.push_back(e); });
            if (quick_class_checks(x)) on_candidate(x);
            return;
        }
        int u = c.undecided.lowest();
        {
            Candidate in_branch = c;
            in_branch.in.set(u);
            in_branch.undecided.reset(u);
            if (propagate(in_branch, allowed, st.unassigned))
                branch(st, in_branch, allowed, on_candidate);
        }
        {
            Candidate out_branch = c;
            out_branch.out.set(u);
            out_branch.undecided.reset(u);
            if (propagate(out_branch, allowed, st.unassigned))
                branch(st, out_branch, allowed, on_candidate);
        }
    }

    void extend(const State& st) {
        int pivot = st.unassigned.lowest();
        if (pivot < 0) {
            emit(st);
            return;
        }
        enumerate_candidates(st, pivot, [&](const std::vector<int>& x) {
            State next;
            if (try_accept(st, x, next)) extend(next);
        });
    }

    void collect_first_level(const State& root,
                             std::vector<std::pair<std::vector<int>, State>>& tasks) {
        int pivot = root.unassigned.lowest();
        enumerate_candidates(root, pivot, [&](const std::vector<int>& x) {
            State next;
            if (try_accept(root, x, next)) tasks.push_back({x, std::move(next)});
        });
    }
};

inline thread_local std::vector<std::vector<std::vector<int>>> Enumerator::results_tls_;

}  // namespace detail

/// Disk cache for catalogs, content-addressed by group spec and enumerator
/// version. Controlled by the SCHURKIT_CACHE environment variable; disabled
/// when unset.
inline std::optional<std::filesystem::path> catalog_cache_path(const Group& g) {
    const char* dir = std::getenv("SCHURKIT_CACHE");
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir) /
           ("catalog_" + format_group_spec(g) + "_v" + std::to_string(kEnumeratorVersion) + ".txt");
}

inline std::optional<std::vector<SRing>> load_cached_catalog(const Group& g) {
    auto path = catalog_cache_path(g);
    if (!path) return std::nullopt;
    std::ifstream in(*path);
    if (!in) return std::nullopt;
    std::vector<SRing> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::vector<int>> classes;
        std::istringstream ls(line);
        std::string cls_tok, tok;
        while (std::getline(ls, cls_tok, '|')) {
            std::vector<int> cls;
            std::istringstream cs(cls_tok);
            while (std::getline(cs, tok, ',')) cls.push_back(std::stoi(tok));
            classes.push_back(std::move(cls));
        }
        out.push_back(SRing::validate_partition(g, std::move(classes)));
    }
    return out;
}

inline void store_catalog_cache(const Group& g, const std::vector<SRing>& catalog) {
    auto path = catalog_cache_path(g);
    if (!path) return;
    std::error_code ec;
    std::filesystem::create_directories(path->parent_path(), ec);
    std::filesystem::path tmp = *path;
    tmp += ".tmp." + std::to_string((unsigned)::getpid());
    {
        std::ofstream outf(tmp);
        for (const auto& a : catalog) {
            for (int c = 0; c < a.rank(); ++c) {
                if (c) outf << '|';
                for (size_t i = 0; i < a.basic_set(c).size(); ++i) {
                    if (i) outf << ',';
                    outf << a.basic_set(c)[i];
                }
            }
            outf << '\n';
        }
    }
    std::filesystem::rename(tmp, *path, ec);  // atomic publish
    if (ec) std::filesystem::remove(tmp, ec);
}

/// Every S-ring over g, in canonical order. Uses the disk cache when enabled.
inline std::vector<SRing> enumerate_srings(const Group& g, int num_threads = 0,
                                           int cap = kEnumerationCap) {
    if (auto cached = load_cached_catalog(g)) return std::move(*cached);
    if (num_threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        num_threads = hw ? (int)hw : 1;
    }
    detail::Enumerator e(g, cap);
    auto out = e.run(num_threads);
    store_catalog_cache(g, out);
    return out;
}

/// Orbit representatives of a catalog under Aut(G) acting on partitions.
struct CayleyOrbit {
    int representative;        // index into the catalog
    std::vector<int> members;  // catalog indices in the orbit
};

inline std::vector<CayleyOrbit> dedupe_cayley(const Group& g, const std::vector<SRing>& catalog) {
    auto auts = automorphisms(g);
    std::map<std::vector<std::vector<int>>, int> index_of;
    for (size_t i = 0; i < catalog.size(); ++i) index_of[catalog[i].classes()] = (int)i;
    std::vector<char> seen(catalog.size(), 0);
    std::vector<CayleyOrbit> orbits;
    for (size_t i = 0; i < catalog.size(); ++i) {
        if (seen[i]) continue;
        CayleyOrbit orbit;
        orbit.representative = (int)i;
        for (const auto& f : auts) {
            std::vector<std::vector<int>> mapped;
            for (int c = 0; c < catalog[i].rank(); ++c) {
                std::vector<int> cls;
                for (int x : catalog[i].basic_set(c)) cls.push_back(f.image[x]);
                std::sort(cls.begin(), cls.end());
                mapped.push_back(std::move(cls));
            }
            std::sort(mapped.begin(), mapped.end(), [](const auto& x, const auto& y) {
                if (x[0] == 0) return true;
                if (y[0] == 0) return false;
                if (x.size() != y.size()) return x.size() < y.size();
                return x < y;
            });
            auto it = index_of.find(mapped);
            require(it != index_of.end(), errc::internal_invariant_failure,
                    "catalog not closed under Aut(G)");
            if (!seen[it->second]) {
                seen[it->second] = 1;
                orbit.members.push_back(it->second);
            }
        }
        std::sort(orbit.members.begin(), orbit.members.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

/// The radical of an S-ring: over a cyclic group, rad(X) for a basic set X
/// containing a generator (independent of the choice); over a rank-2-free...
/// over the E9 x Cp groups, the subgroup generated by rad(X) over all basic
/// sets X containing an element of order 3p.
inline Subgroup radical_of_sring(const SRing& a) {
    const Group& g = a.group();
    bool cyclic = g.exponent() == g.order();
    if (cyclic) {
        Subgroup result{{0}};
        bool found = false;
        for (int c = 0; c < a.rank(); ++c) {
            bool has_gen = false;
            for (int x : a.basic_set(c))
                if (g.element_order(x) == g.order()) { has_gen = true; break; }
            if (!has_gen) continue;
            Subgroup r = radical(g, a.basic_set(c));
            if (!found) {
                result = r;
                found = true;
            } else {
                require(result == r, errc::internal_invariant_failure,
                        "radical differs between generator classes");
            }
        }
        require(found, errc::undefined_radical, "no basic set contains a generator");
        return result;
    }
    // E-variant: generated by the radicals of classes containing an element of
    // maximal mixed order (order 3p when |G| = 9p)
    int want = g.exponent();
    std::vector<int> gens;
    bool found = false;
    for (int c = 0; c < a.rank(); ++c) {
        bool has = false;
        for (int x : a.basic_set(c))
            if (g.element_order(x) == want) { has = true; break; }
        if (!has) continue;
        found = true;
        for (int r : radical(g, a.basic_set(c)).members) gens.push_back(r);
    }
    require(found, errc::undefined_radical, "no basic set contains an element of maximal order");
    return subgroup_generated(g, gens);
}

/// Classification against the structural alternatives for S-rings over groups
/// of order 9p (rank 2 / tensor / S-wreath with section automorphism condition
/// / star family / normal cyclotomic with trivial radical / line family), and
/// the cyclic-group alternatives for other cyclic inputs.
struct ClassificationTag {
    bool rank2 = false;
    bool tensor = false;
    bool s_wreath = false;      // some nontrivial S-wreath section
    bool s_wreath_aut = false;  // one that also satisfies the aut condition
    int s_wreath_min_section = 0;
    bool family_star = false;
    int star_index = 0;
    bool normal_cyclotomic_trivial_radical = false;
    bool cyclotomic_line = false;
    int line_no = 0;
    int line_m_order = 0;

    bool any() const {
        return rank2 || tensor || s_wreath_aut || family_star ||
               normal_cyclotomic_trivial_radical || cyclotomic_line;
    }
};

namespace detail {

inline bool tensor_decomposable(const SRing& a) {
    const Group& g = a.group();
    auto subs = all_subgroups(g);
    for (const auto& h1 : subs) {
        if (h1.order() == 1 || h1.order() == g.order()) continue;
        if (!a.is_a_set(h1.members)) continue;
        for (const auto& h2 : subs) {
            if ((long long)h1.order() * h2.order() != g.order()) continue;
            if (h2.order() == 1) continue;
            bool meet_trivial = true;
            for (int m : h2.members)
                if (m != 0 && h1.contains(m)) { meet_trivial = false; break; }
            if (!meet_trivial || !a.is_a_set(h2.members)) continue;
            auto c1 = classes_inside(a, h1);
            auto c2 = classes_inside(a, h2);
            if ((int)c1.size() * (int)c2.size() != a.rank()) continue;
            bool all_classes = true;
            for (int i : c1) {
                for (int j : c2) {
                    std::vector<int> prod;
                    for (int x : a.basic_set(i))
                        for (int y : a.basic_set(j)) prod.push_back(g.add(x, y));
                    std::sort(prod.begin(), prod.end());
                    int cls = a.class_of(prod[0]);
                    if (a.basic_set(cls) != prod) { all_classes = false; break; }
                }
                if (!all_classes) break;
            }
            if (all_classes) return true;
        }
    }
    return false;
}

/// All color automorphisms of a small S-ring (its full automorphism group as
/// explicit permutations). Only used on sections, where |S| <= 7.
inline std::vector<std::vector<int>> small_aut_group(const SRing& a) {
    const Group& g = a.group();
    int n = g.order();
    require(n <= 8, errc::too_large, "small_aut_group is for sections only");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = 0; v < n; ++v)
                if (a.class_of(g.sub(v, u)) != a.class_of(g.sub(perm[v], perm[u]))) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Checks Aut(A_U)^S = Aut(A_S) for the section S = U/L: every automorphism of
/// the section ring must lift to a color automorphism of A_U permuting the
/// L-cosets accordingly. The inclusion <= always holds.
inline bool section_aut_condition(const SRing& a, const Subgroup& upper, const Subgroup& lower) {
    Section s = make_section(a.group(), upper, lower);
    SRing a_s = section_sring(a, s);
    auto [a_u, u_view] = subgroup_sring(a, upper);
    int nu = a_u.group().order();
    // coset id (index in the quotient) of each point of the abstract copy of U
    std::vector<int> coset_of(nu);
    for (int q = 0; q < s.view.quotient.order(); ++q)
        for (int parent : s.view.fibers[q]) coset_of[u_view.project[parent]] = q;

    std::vector<int> identity_phi(a_u.rank());
    std::iota(identity_phi.begin(), identity_phi.end(), 0);

    for (const auto& h : small_aut_group(a_s)) {
        // lift search: a color automorphism f of A_U with coset(f(x)) = h(coset(x))
        // lifts need not fix the identity, so the only unary constraint is the
        // coset action
        std::vector<ElemSet> cand(nu);
        for (int x = 0; x < nu; ++x) {
            ElemSet m;
            for (int y = 0; y < nu; ++y)
                if (coset_of[y] == h[coset_of[x]]) m.set(y);
            cand[x] = m;
        }
        // simple backtracking with forward checking on the pair colors
        std::vector<int> img(nu, -1);
        ElemSet used;
        const Group& gu = a_u.group();
        auto dfs = [&](auto&& self, int depth) -> bool {
            int best = -1, best_cnt = 1 << 30;
            for (int v = 0; v < nu; ++v) {
                if (img[v] >= 0) continue;
                ElemSet free = cand[v];
                for (int k = 0; k < 3; ++k) free.w[k] &= ~used.w[k];
                int cnt = free.count();
                if (cnt == 0) return false;
                if (cnt < best_cnt) { best_cnt = cnt; best = v; }
            }
            if (best < 0) return true;
            ElemSet free = cand[best];
            for (int k = 0; k < 3; ++k) free.w[k] &= ~used.w[k];
            bool done = false;
            free.for_each([&](int w) {
                if (done) return;
                std::vector<ElemSet> saved = cand;
                img[best] = w;
                used.set(w);
                bool ok = true;
                for (int u2 = 0; u2 < nu && ok; ++u2) {
                    if (img[u2] >= 0 || u2 == best) continue;
                    ElemSet allowed;
                    for (int y = 0; y < nu; ++y)
                        if (a_u.class_of(gu.sub(y, w)) == a_u.class_of(gu.sub(u2, best)))
                            allowed.set(y);
                    cand[u2] &= allowed;
                    ElemSet free2 = cand[u2];
                    for (int k = 0; k < 3; ++k) free2.w[k] &= ~used.w[k];
                    if (free2.empty()) ok = false;
                }
                if (ok && self(self, depth + 1)) { done = true; return; }
                img[best] = -1;
                used.reset(w);
                cand = std::move(saved);
            });
            return done;
        };
        if (!dfs(dfs, 0)) return false;
    }
    return true;
}

}  // namespace detail

/// Nontrivial S-wreath sections of `a`: pairs of A-subgroups L <= U with
/// L != {e}, U != G such that every basic set outside U has L in its radical.
inline std::vector<std::pair<Subgroup, Subgroup>> s_wreath_sections(const SRing& a) {
    const Group& g = a.group();
    std::vector<std::pair<Subgroup, Subgroup>> out;
    std::vector<Subgroup> asubs = a_subgroups(a);
    for (const auto& lower : asubs) {
        if (lower.order() == 1) continue;
        // classes outside U must be unions of lower-cosets; precompute the
        // classes whose radical contains lower
        std::vector<char> rad_ok(a.rank(), 1);
        for (int c = 0; c < a.rank(); ++c) {
            Subgroup r = radical(g, a.basic_set(c));
            for (int m : lower.members)
                if (!r.contains(m)) { rad_ok[c] = 0; break; }
        }
        for (const auto& upper : asubs) {
            if (upper.order() == g.order()) continue;
            if (!std::includes(upper.members.begin(), upper.members.end(), lower.members.begin(),
                               lower.members.end()))
                continue;
            bool ok = true;
            for (int c = 0; c < a.rank() && ok; ++c) {
                if (rad_ok[c]) continue;
                for (int x : a.basic_set(c))
                    if (!upper.contains(x)) { ok = false; break; }
            }
            if (ok) out.push_back({upper, lower});
        }
    }
    return out;
}

/// Classifies an S-ring against the structural alternatives. For groups of
/// order 9p (p >= 5 prime) the star and line family catalogs are consulted;
/// for p = 2 (order 18) and for cyclic groups only the first three
/// alternatives apply.
inline ClassificationTag classify(const SRing& a) {
    const Group& g = a.group();
    ClassificationTag tag;
    tag.rank2 = a.rank() == 2;
    tag.tensor = detail::tensor_decomposable(a);

    auto sections = s_wreath_sections(a);
    for (auto& [upper, lower] : sections) {
        tag.s_wreath = true;
        int s_size = upper.order() / lower.order();
        if (tag.s_wreath_min_section == 0 || s_size < tag.s_wreath_min_section)
            tag.s_wreath_min_section = s_size;
    }
    for (auto& [upper, lower] : sections) {
        if (detail::section_aut_condition(a, upper, lower)) {
            tag.s_wreath_aut = true;
            break;
        }
    }

    // order-9p specific tags
    int order = g.order();
    if (order % 9 == 0 && order / 9 >= 5 && is_prime(order / 9)) {
        int p = order / 9;
        bool flavor_c = false;
        for (int f : g.factors())
            if (f == 9) flavor_c = true;
        char flavor = flavor_c ? 'C' : 'E';
        for (int i = 1; i <= 3; ++i) {
            FamilyInstance star = build_A_star(i, flavor, p);
            if (cayley_isomorphic(a, star.sring)) {
                tag.family_star = true;
                tag.star_index = i;
                break;
            }
        }
        if (flavor_c) {
            if (is_cyclotomic_sring(a) && radical_of_sring(a).order() == 1 && is_normal_sring(a))
                tag.normal_cyclotomic_trivial_radical = true;
        } else {
            for (const auto& line : cyclotomic_lines()) {
                for (int k = line.index; k <= p - 1; k += line.index) {
                    if ((p - 1) % k != 0) continue;
                    FamilyInstance fam = build_A_iM(line.line_no, p, k);
                    if (cayley_isomorphic(a, fam.sring)) {
                        tag.cyclotomic_line = true;
                        tag.line_no = line.line_no;
                        tag.line_m_order = k;
                        break;
                    }
                }
                if (tag.cyclotomic_line) break;
            }
        }
    } else if (g.exponent() == g.order() && g.order() > 1) {
        // cyclic mode: the fourth alternative is normal cyclotomic with
        // trivial radical
        if (is_cyclotomic_sring(a) && radical_of_sring(a).order() == 1 && is_normal_sring(a))
            tag.normal_cyclotomic_trivial_radical = true;
    }
    return tag;
}

}  // namespace schurkit

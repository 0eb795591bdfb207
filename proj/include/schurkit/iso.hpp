#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

struct SearchLimits {
    std::uint64_t node_budget = default_budget();

    static std::uint64_t default_budget() {
        if (const char* env = std::getenv("SCHURKIT_BUDGET_NODES")) {
            long long v = std::atoll(env);
            if (v > 0) return (std::uint64_t)v;
        }
        return 100'000'000ULL;
    }
};

/// An algebraic isomorphism: a bijection of class indices preserving all
/// structure constants. Stored as the image list over source classes.
struct AlgIso {
    std::vector<int> class_map;

    friend bool operator==(const AlgIso& x, const AlgIso& y) { return x.class_map == y.class_map; }
    friend bool operator<(const AlgIso& x, const AlgIso& y) { return x.class_map < y.class_map; }
};

inline AlgIso compose(const AlgIso& first, const AlgIso& then) {
    AlgIso out;
    out.class_map.resize(first.class_map.size());
    for (size_t c = 0; c < first.class_map.size(); ++c)
        out.class_map[c] = then.class_map[first.class_map[c]];
    return out;
}

inline AlgIso inverse(const AlgIso& phi) {
    AlgIso out;
    out.class_map.assign(phi.class_map.size(), -1);
    for (size_t c = 0; c < phi.class_map.size(); ++c) out.class_map[phi.class_map[c]] = (int)c;
    return out;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

/// Per-class invariant preserved by every algebraic isomorphism: a commutative
/// hash of the structure-constant rows the class participates in.
inline std::vector<std::uint64_t> class_fingerprints(const SRing& a) {
    int r = a.rank();
    std::vector<std::uint64_t> fp(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (auto [z, c] : a.product_row(i, j)) {
                std::uint64_t h = mix64(((std::uint64_t)a.class_size(j) << 40) ^
                                        ((std::uint64_t)a.class_size(z) << 20) ^ (std::uint64_t)c);
                fp[i] += h;
                fp[z] += mix64(h ^ 0x9e3779b97f4a7c15ULL);
            }
    for (int i = 0; i < r; ++i)
        fp[i] ^= mix64((std::uint64_t)a.class_size(i) * 0x2545f4914f6cdd1dULL);
    return fp;
}

struct AlgIsoSearch {
    const SRing& a;
    const SRing& b;
    std::vector<std::uint64_t> fa, fb;
    std::vector<std::vector<int>> candidates;  // per source class
    std::vector<int> order;                    // assignment order
    std::vector<int> map, rmap;
    std::vector<AlgIso> found;
    bool first_only = false;

    AlgIsoSearch(const SRing& a_, const SRing& b_) : a(a_), b(b_) {}

    bool viable() {
        if (a.group().order() != b.group().order() || a.rank() != b.rank()) return false;
        fa = class_fingerprints(a);
        fb = class_fingerprints(b);
        auto sa = fa, sb = fb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
        int r = a.rank();
        candidates.assign(r, {});
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j)
                if (a.class_size(i) == b.class_size(j) && fa[i] == fb[j])
                    candidates[i].push_back(j);
            if (candidates[i].empty()) return false;
        }
        order.resize(r);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            if (candidates[x].size() != candidates[y].size())
                return candidates[x].size() < candidates[y].size();
            return x < y;
        });
        return true;
    }

    bool consistent_with(int x) const {
        int y = map[x];
        int r = a.rank();
        for (int i = 0; i < r; ++i) {
            if (map[i] < 0) continue;
            for (int j = 0; j < r; ++j) {
                if (map[j] < 0) continue;
                if (i == x || j == x) {
                    for (auto [z, c] : a.product_row(i, j))
                        if (map[z] >= 0 && b.structure_constant(map[i], map[j], map[z]) != c)
                            return false;
                    for (auto [z2, c2] : b.product_row(map[i], map[j]))
                        if (rmap[z2] >= 0 && a.structure_constant(i, j, rmap[z2]) != c2)
                            return false;
                } else {
                    if (a.structure_constant(i, j, x) != b.structure_constant(map[i], map[j], y))
                        return false;
                }
            }
        }
        return true;
    }

    bool assign(int x, int y) {
        if (map[x] >= 0) return map[x] == y;
        if (rmap[y] >= 0) return false;
        if (a.class_size(x) != b.class_size(y) || fa[x] != fb[y]) return false;
        map[x] = y;
        rmap[y] = x;
        if (!consistent_with(x)) return true;  // leave assigned; caller unwinds via trail
        // force the inverse pair
        return true;
    }

    void search(size_t pos) {
        if (first_only && !found.empty()) return;
        int r = a.rank();
        while (pos < order.size() && map[order[pos]] >= 0) ++pos;
        if (pos == order.size()) {
            AlgIso phi;
            phi.class_map = map;
            found.push_back(std::move(phi));
            return;
        }
        int x = order[pos];
        for (int y : candidates[x]) {
            if (rmap[y] >= 0) continue;
            std::vector<int> trail;
            bool ok = true;
            auto do_assign = [&](int from, int to) {
                if (map[from] >= 0) return map[from] == to;
                if (rmap[to] >= 0) return false;
                if (a.class_size(from) != b.class_size(to) || fa[from] != fb[to]) return false;
                map[from] = to;
                rmap[to] = from;
                trail.push_back(from);
                return consistent_with(from);
            };
            ok = do_assign(x, y) && do_assign(a.inverse_class(x), b.inverse_class(y));
            if (ok) search(pos + 1);
            for (int t : trail) {
                rmap[map[t]] = -1;
                map[t] = -1;
            }
            if (first_only && !found.empty()) return;
        }
        (void)r;
    }
};

}  // namespace detail

/// Every algebraic isomorphism a -> b, canonically ordered. Backtracking over
/// class bijections constrained by sizes, inverse pairing, fingerprints and
/// incremental structure-constant consistency.
inline std::vector<AlgIso> find_algebraic_isos(const SRing& a, const SRing& b,
                                               bool first_only = false) {
    detail::AlgIsoSearch s(a, b);
    if (!s.viable()) return {};
    s.first_only = first_only;
    s.map.assign(a.rank(), -1);
    s.rmap.assign(a.rank(), -1);
    s.map[0] = 0;
    s.rmap[0] = 0;
    s.search(0);
    std::sort(s.found.begin(), s.found.end());
    return std::move(s.found);
}

inline bool algebraically_isomorphic(const SRing& a, const SRing& b) {
    return !find_algebraic_isos(a, b, true).empty();
}

namespace detail {

/// Backtracking search for point bijections f with
/// class_b(f(v) - f(u)) = phi(class_a(v - u)) for all pairs, i.e. combinatorial
/// isomorphisms inducing exactly phi. Uses per-point candidate bitsets with
/// forward checking; selection by minimum remaining candidates.
struct PointSearch {
    const SRing& a;
    const SRing& b;
    const std::vector<int>& phi;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    int n;
    std::vector<ElemSet> tmask;  // tmask[w * rank + c] = w + class_b(c)

    PointSearch(const SRing& a_, const SRing& b_, const std::vector<int>& phi_,
                std::uint64_t budget_)
        : a(a_), b(b_), phi(phi_), budget(budget_), n(a_.group().order()) {
        const Group& gb = b.group();
        int r = b.rank();
        tmask.assign((size_t)n * r, ElemSet{});
        for (int w = 0; w < n; ++w)
            for (int c = 0; c < r; ++c) {
                ElemSet m;
                for (int y : b.basic_set(c)) m.set(gb.add(w, y));
                tmask[(size_t)w * r + c] = m;
            }
    }

    /// fixed: pre-assigned images (-1 elsewhere). Returns a full bijection or
    /// nullopt. Throws on budget exhaustion.
    std::optional<std::vector<int>> run(const std::vector<int>& fixed) {
        std::vector<int> img(n, -1);
        std::vector<ElemSet> cand(n, ElemSet::all(n));
        ElemSet used;
        for (int v = 0; v < n; ++v)
            if (fixed[v] >= 0) {
                if (!cand[v].test(fixed[v])) return std::nullopt;
                if (!place(v, fixed[v], img, cand, used)) return std::nullopt;
            }
        if (dfs(img, cand, used)) return img;
        return std::nullopt;
    }

private:
    bool place(int v, int w, std::vector<int>& img, std::vector<ElemSet>& cand, ElemSet& used) {
        if (img[v] >= 0) return img[v] == w;
        if (used.test(w)) return false;
        img[v] = w;
        used.set(w);
        const Group& ga = a.group();
        int r = b.rank();
        for (int u = 0; u < n; ++u) {
            if (img[u] >= 0 || u == v) continue;
            cand[u] &= tmask[(size_t)w * r + phi[a.class_of(ga.sub(u, v))]];
            if ((cand[u].w[0] | cand[u].w[1] | cand[u].w[2]) == 0) return false;
        }
        return true;
    }

    bool dfs(std::vector<int>& img, std::vector<ElemSet>& cand, ElemSet& used) {
        int best = -1, best_count = 1 << 30;
        for (int v = 0; v < n; ++v) {
            if (img[v] >= 0) continue;
            ElemSet free = cand[v];
            for (int k = 0; k < 3; ++k) free.w[k] &= ~used.w[k];
            int cnt = free.count();
            if (cnt == 0) return false;
            if (cnt < best_count) {
                best_count = cnt;
                best = v;
            }
        }
        if (best < 0) return true;  // complete
        ElemSet free = cand[best];
        for (int k = 0; k < 3; ++k) free.w[k] &= ~used.w[k];
        bool result = false;
        free.for_each([&](int w) {
            if (result) return;
            if (++nodes > budget) fail(errc::budget_exhausted, "point search node budget");
            std::vector<int> img2 = img;
            std::vector<ElemSet> cand2 = cand;
            ElemSet used2 = used;
            if (place(best, w, img2, cand2, used2) && dfs(img2, cand2, used2)) {
                img = std::move(img2);
                result = true;
            }
        });
        return result;
    }
};

}  // namespace detail

/// A combinatorial isomorphism inducing exactly phi, or nullopt after an
/// exhaustive search. The image of the identity is normalized to the identity
/// (any inducing bijection can be translated into this form).
inline std::optional<std::vector<int>> find_inducing_iso(const SRing& a, const SRing& b,
                                                         const AlgIso& phi,
                                                         const SearchLimits& lim = {}) {
    require((int)phi.class_map.size() == a.rank(), errc::invalid_input, "class map arity");
    for (int c = 0; c < a.rank(); ++c)
        require(phi.class_map[a.inverse_class(c)] == b.inverse_class(phi.class_map[c]),
                errc::invalid_input, "class map does not respect inverse classes");
    detail::PointSearch ps(a, b, phi.class_map, lim.node_budget);
    std::vector<int> fixed(a.group().order(), -1);
    fixed[0] = 0;
    return ps.run(fixed);
}

/// The algebraic isomorphism phi_f induced by a point bijection, or nullopt if
/// f is not a combinatorial isomorphism from a to b.
inline std::optional<AlgIso> induced_algebraic_iso(const SRing& a, const SRing& b,
                                                   const std::vector<int>& f) {
    const Group& ga = a.group();
    const Group& gb = b.group();
    int n = ga.order();
    if (gb.order() != n || (int)f.size() != n) return std::nullopt;
    std::vector<char> seen(n, 0);
    for (int y : f) {
        if (y < 0 || y >= n || seen[y]) return std::nullopt;
        seen[y] = 1;
    }
    if (a.rank() != b.rank()) return std::nullopt;
    AlgIso phi;
    phi.class_map.assign(a.rank(), -1);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            int c = a.class_of(ga.sub(v, u));
            int d = b.class_of(gb.sub(f[v], f[u]));
            if (phi.class_map[c] < 0)
                phi.class_map[c] = d;
            else if (phi.class_map[c] != d)
                return std::nullopt;
        }
    std::vector<char> hit(b.rank(), 0);
    for (int d : phi.class_map) {
        if (hit[d]) return std::nullopt;
        hit[d] = 1;
    }
    return phi;
}

/// All Cayley isomorphisms a -> b: group isomorphisms carrying the class set
/// onto the class set.
inline std::vector<GroupMap> find_cayley_isos(const SRing& a, const SRing& b, int bound = 200) {
    std::vector<GroupMap> out;
    if (a.group().order() != b.group().order() || a.rank() != b.rank()) return out;
    std::set<std::vector<int>> b_classes(b.classes().begin(), b.classes().end());
    for (auto& f : detail::isomorphisms(a.group(), b.group(), false, bound)) {
        bool ok = true;
        for (int c = 0; c < a.rank() && ok; ++c) {
            std::vector<int> img;
            for (int x : a.basic_set(c)) img.push_back(f.image[x]);
            std::sort(img.begin(), img.end());
            ok = b_classes.count(img) > 0;
        }
        if (ok) out.push_back(f);
    }
    return out;
}

inline bool cayley_isomorphic(const SRing& a, const SRing& b, int bound = 200) {
    return !find_cayley_isos(a, b, bound).empty();
}

/// Aut(A) as a permutation group: generators plus the orbit sizes along a
/// stabilizer chain, whose product is the group order (kept as factors since
/// |Aut| can reach |G|!).
struct PermutationGroup {
    int degree = 0;
    std::vector<std::vector<int>> generators;
    std::vector<long long> chain_orbit_sizes;

    /// Exact order as a decimal string.
    std::string order_string() const {
        std::vector<int> digits = {1};  // little-endian decimal
        for (long long f : chain_orbit_sizes) {
            long long carry = 0;
            for (auto& d : digits) {
                long long v = d * f + carry;
                d = (int)(v % 10);
                carry = v / 10;
            }
            while (carry) {
                digits.push_back((int)(carry % 10));
                carry /= 10;
            }
        }
        std::string s;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) s += char('0' + *it);
        return s;
    }

    /// Order as u64; 0 when it overflows.
    unsigned long long order_u64() const {
        unsigned long long o = 1;
        for (long long f : chain_orbit_sizes) {
            if (o > ~0ULL / (unsigned long long)f) return 0;
            o *= (unsigned long long)f;
        }
        return o;
    }
};

namespace detail {

inline std::vector<int> orbit_of(int v, const std::vector<std::vector<int>>& gens, int n) {
    std::vector<char> in(n, 0);
    std::vector<int> q = {v};
    in[v] = 1;
    for (size_t h = 0; h < q.size(); ++h)
        for (const auto& g : gens) {
            int y = g[q[h]];
            if (!in[y]) {
                in[y] = 1;
                q.push_back(y);
            }
        }
    return q;
}

/// Generators of the pointwise stabilizer of base[0..k) in Aut(a), found by
/// first-solution searches; records orbit sizes along the chain.
inline std::vector<std::vector<int>> aut_stab_gens(PointSearch& ps, const SRing& a,
                                                   const std::vector<int>& base, size_t k,
                                                   std::vector<long long>& chain) {
    int n = a.group().order();
    if (k == base.size()) return {};
    std::vector<std::vector<int>> gens = aut_stab_gens(ps, a, base, k + 1, chain);
    int v = base[k];

    std::vector<int> fixed(n, -1);
    for (size_t i = 0; i < k; ++i) fixed[base[i]] = base[i];

    // candidate images of v consistent with the fixed prefix
    const Group& g = a.group();
    std::vector<int> cands;
    for (int w = 0; w < n; ++w) {
        if (a.class_of(w) != a.class_of(v)) continue;
        bool ok = true;
        for (size_t i = 0; i < k && ok; ++i)
            ok = a.class_of(g.sub(w, base[i])) == a.class_of(g.sub(v, base[i])) &&
                 a.class_of(g.sub(base[i], w)) == a.class_of(g.sub(base[i], v));
        if (ok) cands.push_back(w);
    }

    std::vector<char> in_orbit(n, 0);
    for (int x : orbit_of(v, gens, n)) in_orbit[x] = 1;
    for (int w : cands) {
        if (in_orbit[w]) continue;
        fixed[v] = w;
        auto sol = ps.run(fixed);
        fixed[v] = -1;
        if (sol) {
            gens.push_back(*sol);
            for (int x : orbit_of(v, gens, n)) in_orbit[x] = 1;
        }
    }
    long long orb = 0;
    for (int x = 0; x < n; ++x) orb += in_orbit[x];
    if (orb > 1) chain.push_back(orb);
    return gens;
}

}  // namespace detail

/// The automorphism group of the S-ring: all permutations of G preserving
/// every basic relation. Right translations are always included; the point
/// stabilizer of e is computed by a stabilizer chain of color-automorphism
/// searches.
inline PermutationGroup sring_automorphisms(const SRing& a, const SearchLimits& lim = {}) {
    const Group& g = a.group();
    int n = g.order();
    PermutationGroup out;
    out.degree = n;
    for (int i = 0; i < g.num_factors(); ++i) {
        std::vector<int> t(n);
        for (int x = 0; x < n; ++x) t[x] = g.add(x, g.unit(i));
        out.generators.push_back(std::move(t));
    }
    out.chain_orbit_sizes.push_back(n);  // orbit of e under translations

    std::vector<int> base;
    base.push_back(0);
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::sort(rest.begin(), rest.end(), [&](int x, int y) {
        int sx = a.class_size(a.class_of(x)), sy = a.class_size(a.class_of(y));
        if (sx != sy) return sx < sy;
        return x < y;
    });
    base.insert(base.end(), rest.begin(), rest.end());

    std::vector<int> identity_phi(a.rank());
    std::iota(identity_phi.begin(), identity_phi.end(), 0);
    detail::PointSearch ps(a, a, identity_phi, lim.node_budget);
    std::vector<long long> chain;
    auto stab = detail::aut_stab_gens(ps, a, base, 1, chain);
    for (auto& s : stab) out.generators.push_back(std::move(s));
    for (long long c : chain) out.chain_orbit_sizes.push_back(c);
    return out;
}

/// True iff G_right is normal in Aut(A): conjugating each translation by each
/// generator must land back in the translations.
inline bool is_normal_sring(const SRing& a, const SearchLimits& lim = {}) {
    const Group& g = a.group();
    int n = g.order();
    PermutationGroup aut = sring_automorphisms(a, lim);
    for (const auto& f : aut.generators) {
        std::vector<int> finv(n);
        for (int x = 0; x < n; ++x) finv[f[x]] = x;
        for (int i = 0; i < g.num_factors(); ++i) {
            int u = g.unit(i);
            // conj(x) = f(t_u(f^{-1}(x))) must be a translation
            int shift = f[g.add(finv[0], u)];
            for (int x = 0; x < n; ++x)
                if (f[g.add(finv[x], u)] != g.add(x, shift)) return false;
        }
    }
    return true;
}

/// Whether the S-ring partition equals the orbit partition of the group of
/// Cayley automorphisms fixing every class setwise (the cyclotomic test).
inline bool is_cyclotomic_sring(const SRing& a, int bound = 200) {
    const Group& g = a.group();
    std::vector<GroupMap> fixing;
    for (auto& f : automorphisms(g, bound)) {
        bool ok = true;
        for (int c = 0; c < a.rank() && ok; ++c)
            for (int x : a.basic_set(c))
                if (a.class_of(f.image[x]) != c) { ok = false; break; }
        if (ok) fixing.push_back(f);
    }
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    auto orb = orbits(fixing, all);
    if ((int)orb.size() != a.rank()) return false;
    std::set<std::vector<int>> classes(a.classes().begin(), a.classes().end());
    for (auto& o : orb)
        if (!classes.count(o)) return false;
    return true;
}

/// Cheap isomorphism invariant used to skip hopeless search pairs.
struct SRingInvariantKey {
    int order = 0;
    int rank = 0;
    std::vector<int> sizes;
    std::vector<std::uint64_t> fingerprints;

    friend bool operator==(const SRingInvariantKey& a, const SRingInvariantKey& b) {
        return a.order == b.order && a.rank == b.rank && a.sizes == b.sizes &&
               a.fingerprints == b.fingerprints;
    }
};

inline SRingInvariantKey invariant_key(const SRing& a) {
    SRingInvariantKey k;
    k.order = a.group().order();
    k.rank = a.rank();
    for (int c = 0; c < a.rank(); ++c) k.sizes.push_back(a.class_size(c));
    std::sort(k.sizes.begin(), k.sizes.end());
    k.fingerprints = detail::class_fingerprints(a);
    std::sort(k.fingerprints.begin(), k.fingerprints.end());
    return k;
}

/// One target pool for separability: a group together with S-rings over it.
/// `keys` (optional) memoizes the members' invariant keys for sweep reuse.
struct TargetPool {
    Group group;
    std::vector<SRing> srings;
    std::vector<SRingInvariantKey> keys;

    void prepare_keys() {
        keys.clear();
        keys.reserve(srings.size());
        for (const auto& a : srings) keys.push_back(invariant_key(a));
    }
};

struct SeparabilityWitness {
    int pool = 0;          // index into the target pools
    int target = 0;        // index of the S-ring within the pool
    AlgIso phi;            // the algebraic isomorphism
    std::vector<int> point_map;  // inducing bijection; empty when none found
    bool induced = false;
};

struct SeparabilityReport {
    bool separable = true;
    bool budget_exhausted = false;
    long long checked_isos = 0;
    std::vector<SeparabilityWitness> witnesses;
};

/// Inducing witnesses for every algebraic automorphism of `a`: direct searches
/// for a generating slice, the rest assembled by composition. Entries with an
/// empty point map mark automorphisms with no inducing isomorphism.
inline std::map<std::vector<int>, std::vector<int>> alg_aut_witness_table(
    const SRing& a, const SearchLimits& lim = {}) {
    auto auts = find_algebraic_isos(a, a);
    std::map<std::vector<int>, std::vector<int>> table;
    std::vector<int> id_points(a.group().order());
    std::iota(id_points.begin(), id_points.end(), 0);
    std::vector<int> id_classes(a.rank());
    std::iota(id_classes.begin(), id_classes.end(), 0);
    table[id_classes] = id_points;

    auto close = [&] {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::pair<std::vector<int>, std::vector<int>>> add;
            for (auto& [c1, p1] : table) {
                if (p1.empty()) continue;
                // inverse
                std::vector<int> ci(c1.size()), pi(p1.size());
                for (size_t i = 0; i < c1.size(); ++i) ci[c1[i]] = (int)i;
                for (size_t i = 0; i < p1.size(); ++i) pi[p1[i]] = (int)i;
                if (!table.count(ci)) add.push_back({ci, pi});
                for (auto& [c2, p2] : table) {
                    if (p2.empty()) continue;
                    std::vector<int> cc(c1.size()), pc(p1.size());
                    for (size_t i = 0; i < c1.size(); ++i) cc[i] = c2[c1[i]];
                    for (size_t i = 0; i < p1.size(); ++i) pc[i] = p2[p1[i]];
                    if (!table.count(cc)) add.push_back({cc, pc});
                }
            }
            for (auto& [c, p] : add)
                if (table.emplace(c, p).second) grew = true;
        }
    };
    close();
    for (auto& phi : auts) {
        if (table.count(phi.class_map)) continue;
        auto f = find_inducing_iso(a, a, phi, lim);
        table[phi.class_map] = f ? *f : std::vector<int>{};
        if (f) close();
    }
    return table;
}

/// Separability of `a` against the given pools: every algebraic isomorphism to
/// every target must receive an inducing combinatorial isomorphism. Witnesses
/// are replay-checked (induced_algebraic_iso(f) == phi) before being recorded.
inline SeparabilityReport is_separable(const SRing& a, const std::vector<TargetPool>& pools,
                                       const SearchLimits& lim = {}) {
    SeparabilityReport rep;
    std::map<std::vector<int>, std::vector<int>> aut_table;
    bool aut_table_ready = false;
    SRingInvariantKey a_key = invariant_key(a);
    try {
        for (size_t pi = 0; pi < pools.size(); ++pi) {
            for (size_t ti = 0; ti < pools[pi].srings.size(); ++ti) {
                const SRing& b = pools[pi].srings[ti];
                if (!pools[pi].keys.empty() && !(pools[pi].keys[ti] == a_key)) continue;
                auto isos = find_algebraic_isos(a, b);
                if (isos.empty()) continue;
                if (!aut_table_ready) {
                    aut_table = alg_aut_witness_table(a, lim);
                    aut_table_ready = true;
                }
                // one direct search, the rest by composition through AlgAut(a)
                std::optional<std::vector<int>> f0;
                AlgIso phi0 = isos.front();
                f0 = find_inducing_iso(a, b, phi0, lim);
                AlgIso phi0_inv = inverse(phi0);
                for (auto& phi : isos) {
                    ++rep.checked_isos;
                    SeparabilityWitness w;
                    w.pool = (int)pi;
                    w.target = (int)ti;
                    w.phi = phi;
                    std::vector<int> f;
                    if (f0) {
                        AlgIso psi = compose(phi, phi0_inv);  // apply psi, then phi0? see below
                        // want f with phi = phi0 ∘ psi', psi' = phi0^{-1} ∘ phi
                        AlgIso psi2;
                        psi2.class_map.resize(phi.class_map.size());
                        for (size_t c = 0; c < phi.class_map.size(); ++c)
                            psi2.class_map[c] = phi0_inv.class_map[phi.class_map[c]];
                        auto it = aut_table.find(psi2.class_map);
                        if (it != aut_table.end() && !it->second.empty()) {
                            f.resize(it->second.size());
                            for (size_t x = 0; x < f.size(); ++x) f[x] = (*f0)[it->second[x]];
                        }
                        (void)psi;
                    }
                    if (f.empty()) {
                        auto direct = find_inducing_iso(a, b, phi, lim);
                        if (direct) f = *direct;
                    }
                    if (!f.empty()) {
                        auto back = induced_algebraic_iso(a, b, f);
                        require(back && back->class_map == phi.class_map,
                                errc::internal_invariant_failure,
                                "witness replay validation failed");
                        w.point_map = std::move(f);
                        w.induced = true;
                    } else {
                        rep.separable = false;
                    }
                    rep.witnesses.push_back(std::move(w));
                }
            }
        }
    } catch (const error& e) {
        if (e.code() != errc::budget_exhausted) throw;
        rep.budget_exhausted = true;
        rep.separable = false;
    }
    return rep;
}

}  // namespace schurkit

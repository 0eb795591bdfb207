#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "schurkit/common.hpp"

namespace schurkit {

/// A finite abelian group given as a product of cyclic factors.
///
/// Factor orders are canonicalized by sorting in descending order; isomorphic
/// respellings such as 9x5 vs 45 are deliberately kept distinct because the
/// factor coordinates carry meaning for the named constructions. Elements are
/// identified with mixed-radix integers over the factor list: the element with
/// coordinates (c0,...,ck-1) has index ((c0*n1)+c1)*n2+... . Index 0 is the
/// identity.
///
/// Instances are immutable and cheap to copy (shared representation); all
/// operations are pure.
class Group {
public:
    Group() : Group(std::vector<int>{}, internal_tag{}) {}

    static Group trivial() { return Group(); }

    /// Constructs the group with the given cyclic factor orders (each >= 2).
    static Group make(std::vector<int> factor_orders) {
        require(!factor_orders.empty(), errc::invalid_spec, "empty factor list");
        for (int n : factor_orders)
            require(n >= 2, errc::invalid_spec, "cyclic factor order " + std::to_string(n) + " < 2");
        std::sort(factor_orders.begin(), factor_orders.end(), std::greater<int>());
        return Group(std::move(factor_orders), internal_tag{});
    }

    int order() const { return p_->order; }
    const std::vector<int>& factors() const { return p_->factors; }
    int num_factors() const { return (int)p_->factors.size(); }

    /// lcm of the factor orders (1 for the trivial group).
    int exponent() const { return p_->exponent; }

    int add(int x, int y) const {
        if (p_->add_table.empty()) return add_slow(x, y);
        return p_->add_table[(size_t)x * p_->order + y];
    }
    int neg(int x) const { return p_->neg_table[x]; }
    int sub(int x, int y) const { return add(x, neg(y)); }

    /// m*x for any integer m (negative allowed).
    int scalar_mul(long long m, int x) const {
        const auto& f = p_->factors;
        int idx = 0;
        for (size_t i = 0; i < f.size(); ++i) {
            int c = coord(x, (int)i);
            long long v = (m % f[i]) * c % f[i];
            if (v < 0) v += f[i];
            idx = idx * f[i] + (int)v;
        }
        return idx;
    }

    int coord(int x, int i) const { return x / p_->radix[i] % p_->factors[i]; }

    std::vector<int> coords(int x) const {
        std::vector<int> c(p_->factors.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = coord(x, (int)i);
        return c;
    }

    int index_of(const std::vector<int>& coords) const {
        require(coords.size() == p_->factors.size(), errc::invalid_input, "coordinate arity mismatch");
        int idx = 0;
        for (size_t i = 0; i < coords.size(); ++i) {
            int c = coords[i] % p_->factors[i];
            if (c < 0) c += p_->factors[i];
            idx = idx * p_->factors[i] + c;
        }
        return idx;
    }

    /// Generator of the i-th cyclic factor.
    int unit(int i) const {
        require(i >= 0 && i < (int)p_->factors.size(), errc::invalid_input, "factor position");
        return p_->radix[i];
    }

    /// Least m >= 1 with m*x = 0.
    int element_order(int x) const {
        long long ord = 1;
        for (size_t i = 0; i < p_->factors.size(); ++i) {
            int n = p_->factors[i], c = coord(x, (int)i);
            ord = lcm_ll(ord, n / std::gcd(n, c == 0 ? n : c));
        }
        return (int)ord;
    }

    friend bool operator==(const Group& a, const Group& b) {
        return a.p_ == b.p_ || a.p_->factors == b.p_->factors;
    }
    friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

private:
    struct internal_tag {};

    struct Impl {
        std::vector<int> factors;
        std::vector<int> radix;  // mixed-radix weights: radix[i] = prod of factors after i
        int order = 1;
        int exponent = 1;
        std::vector<int> neg_table;
        std::vector<int> add_table;  // empty above the table cap
    };

    Group(std::vector<int> factors, internal_tag) {
        auto impl = std::make_shared<Impl>();
        impl->factors = std::move(factors);
        impl->radix.assign(impl->factors.size(), 1);
        long long order = 1, expo = 1;
        for (int n : impl->factors) {
            order *= n;
            expo = lcm_ll(expo, n);
            require(order <= 1'000'000, errc::too_large, "group order exceeds 10^6");
        }
        impl->order = (int)order;
        impl->exponent = (int)expo;
        for (int i = (int)impl->factors.size() - 2; i >= 0; --i)
            impl->radix[i] = impl->radix[i + 1] * impl->factors[i + 1];
        impl->neg_table.resize(impl->order);
        for (int x = 0; x < impl->order; ++x) {
            int idx = 0;
            for (size_t i = 0; i < impl->factors.size(); ++i) {
                int n = impl->factors[i], c = x / impl->radix[i] % n;
                idx = idx * n + (c == 0 ? 0 : n - c);
            }
            impl->neg_table[x] = idx;
        }
        if (impl->order <= 512) {
            impl->add_table.resize((size_t)impl->order * impl->order);
            p_ = impl;
            for (int x = 0; x < impl->order; ++x)
                for (int y = 0; y < impl->order; ++y)
                    impl->add_table[(size_t)x * impl->order + y] = add_slow(x, y);
        }
        p_ = impl;
    }

    int add_slow(int x, int y) const {
        int idx = 0;
        for (size_t i = 0; i < p_->factors.size(); ++i) {
            int n = p_->factors[i];
            idx = idx * n + (coord(x, (int)i) + coord(y, (int)i)) % n;
        }
        return idx;
    }

    std::shared_ptr<const Impl> p_;
};

inline Group make_group(std::vector<int> factor_orders) { return Group::make(std::move(factor_orders)); }

/// "3x3x5" <-> Group. Formatting always emits the canonical descending order.
inline Group parse_group_spec(const std::string& s) {
    std::vector<int> factors;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, 'x')) {
        require(!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos,
                errc::invalid_spec, "bad group spec '" + s + "'");
        factors.push_back(std::stoi(tok));
    }
    return Group::make(std::move(factors));
}

inline std::string format_group_spec(const Group& g) {
    std::string out;
    for (size_t i = 0; i < g.factors().size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(g.factors()[i]);
    }
    return out.empty() ? "1" : out;
}

/// "(1,0,4)" -> element index; coordinates follow the canonical factor order.
inline int parse_element(const Group& g, const std::string& s) {
    require(s.size() >= 2 && s.front() == '(' && s.back() == ')', errc::invalid_input,
            "element literal must look like (1,0,4)");
    std::vector<int> coords;
    std::string tok;
    std::istringstream in(s.substr(1, s.size() - 2));
    while (std::getline(in, tok, ',')) coords.push_back(std::stoi(tok));
    require(coords.size() == (size_t)g.num_factors(), errc::invalid_input,
            "element literal arity mismatch");
    for (int i = 0; i < g.num_factors(); ++i)
        require(coords[i] >= 0 && coords[i] < g.factors()[i], errc::invalid_input,
                "residue out of range in element literal");
    return g.index_of(coords);
}

inline std::string format_element(const Group& g, int x) {
    std::string out = "(";
    for (int i = 0; i < g.num_factors(); ++i) {
        if (i) out += ',';
        out += std::to_string(g.coord(x, i));
    }
    return out + ")";
}

/// A subgroup stored as the sorted list of its element indices.
struct Subgroup {
    std::vector<int> members;

    int order() const { return (int)members.size(); }
    bool contains(int x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }
    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
    friend bool operator<(const Subgroup& a, const Subgroup& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    }
};

/// Smallest subgroup containing the given elements ({e} for an empty set).
inline Subgroup subgroup_generated(const Group& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> queue = {0};
    in[0] = 1;
    for (size_t head = 0; head < queue.size(); ++head)
        for (int x : gens) {
            int y = g.add(queue[head], x);
            if (!in[y]) {
                in[y] = 1;
                queue.push_back(y);
            }
        }
    std::sort(queue.begin(), queue.end());
    return Subgroup{std::move(queue)};
}

inline bool is_subgroup(const Group& g, const Subgroup& h) {
    if (h.members.empty() || h.members[0] != 0) return false;
    for (int x : h.members)
        for (int y : h.members)
            if (!h.contains(g.add(x, y))) return false;
    return true;
}

/// Every subgroup of g, sorted by (order, members). Refuses above the bound.
inline std::vector<Subgroup> all_subgroups(const Group& g, int bound = 200) {
    require(g.order() <= bound, errc::too_large,
            "subgroup enumeration bound " + std::to_string(bound) + " exceeded");
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> frontier = {subgroup_generated(g, {})};
    seen.insert(frontier[0].members);
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const auto& h : frontier) {
            out.push_back(h);
            if (h.order() == g.order()) continue;
            std::vector<int> gens = h.members;
            gens.push_back(0);
            for (int x = 1; x < g.order(); ++x) {
                if (h.contains(x)) continue;
                gens.back() = x;
                Subgroup bigger = subgroup_generated(g, gens);
                if (seen.insert(bigger.members).second) next.push_back(bigger);
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// A homomorphism between two groups, stored as the full image table.
/// Generator images (of the factor generators) are recoverable from the table.
struct GroupMap {
    Group source, target;
    std::vector<int> image;  // image[x] for every source element

    int operator()(int x) const { return image[x]; }

    bool is_bijective() const {
        if (source.order() != target.order()) return false;
        std::vector<char> seen(target.order(), 0);
        for (int y : image) {
            if (seen[y]) return false;
            seen[y] = 1;
        }
        return true;
    }

    std::vector<int> generator_images() const {
        std::vector<int> out(source.num_factors());
        for (int i = 0; i < source.num_factors(); ++i) out[i] = image[source.unit(i)];
        return out;
    }

    friend bool operator==(const GroupMap& a, const GroupMap& b) {
        return a.source == b.source && a.target == b.target && a.image == b.image;
    }
    friend bool operator<(const GroupMap& a, const GroupMap& b) { return a.image < b.image; }
};

/// Extends generator images to the full homomorphism table. The images must
/// respect the generator relations (order of image divides generator order).
inline GroupMap hom_from_generator_images(const Group& src, const Group& dst,
                                          const std::vector<int>& gen_images) {
    require((int)gen_images.size() == src.num_factors(), errc::invalid_input,
            "one image per cyclic factor required");
    for (int i = 0; i < src.num_factors(); ++i)
        require(src.factors()[i] % dst.element_order(gen_images[i]) == 0, errc::invalid_input,
                "generator relation violated at factor " + std::to_string(i));
    GroupMap f{src, dst, std::vector<int>(src.order())};
    for (int x = 0; x < src.order(); ++x) {
        int y = 0;
        for (int i = 0; i < src.num_factors(); ++i)
            y = dst.add(y, dst.scalar_mul(src.coord(x, i), gen_images[i]));
        f.image[x] = y;
    }
    return f;
}

inline GroupMap identity_map(const Group& g) {
    GroupMap f{g, g, std::vector<int>(g.order())};
    std::iota(f.image.begin(), f.image.end(), 0);
    return f;
}

/// x -> m*x. Requires gcd(m, |G|) = 1.
inline GroupMap multiplier_map(const Group& g, long long m) {
    long long r = m % g.order();
    if (r < 0) r += g.order();
    require(std::gcd(r, (long long)g.order()) == 1, errc::invalid_multiplier,
            "multiplier " + std::to_string(m) + " not coprime to group order");
    GroupMap f{g, g, std::vector<int>(g.order())};
    for (int x = 0; x < g.order(); ++x) f.image[x] = g.scalar_mul(r, x);
    return f;
}

inline GroupMap inversion_map(const Group& g) { return multiplier_map(g, -1); }

inline GroupMap compose(const GroupMap& first, const GroupMap& then) {
    require(first.target == then.source, errc::invalid_input, "composition domain mismatch");
    GroupMap f{first.source, then.target, std::vector<int>(first.source.order())};
    for (int x = 0; x < first.source.order(); ++x) f.image[x] = then.image[first.image[x]];
    return f;
}

inline GroupMap inverse_map(const GroupMap& f) {
    require(f.is_bijective(), errc::invalid_input, "cannot invert a non-bijective map");
    GroupMap g{f.target, f.source, std::vector<int>(f.source.order())};
    for (int x = 0; x < f.source.order(); ++x) g.image[f.image[x]] = x;
    return g;
}

namespace detail {

inline void iso_search(const Group& src, const Group& dst, int pos, std::vector<int>& gen_images,
                       std::vector<int>& partial,  // image of the subgroup generated so far, -1 outside
                       std::vector<char>& used, std::vector<GroupMap>& out, bool first_only) {
    if (pos == src.num_factors()) {
        GroupMap f = hom_from_generator_images(src, dst, gen_images);
        if (f.is_bijective()) out.push_back(std::move(f));
        return;
    }
    int n = src.factors()[pos];
    for (int y = 0; y < dst.order(); ++y) {
        if (n % dst.element_order(y) != 0) continue;
        gen_images[pos] = y;
        // injectivity on the subgroup generated by the first pos+1 generators
        bool ok = true;
        std::vector<int> touched;
        int gen = src.unit(pos);
        for (int k = 1; k < n && ok; ++k) {
            int x = src.scalar_mul(k, gen), fx = dst.scalar_mul(k, y);
            for (int b = 0; b < src.order() && ok; ++b) {
                if (partial[b] < 0) continue;
                int xb = src.add(x, b), v = dst.add(fx, partial[b]);
                if (partial[xb] >= 0) continue;  // already in the smaller subgroup
                if (used[v]) { ok = false; break; }
                used[v] = 1;
                partial[xb] = v;
                touched.push_back(xb);
            }
        }
        if (ok) {
            iso_search(src, dst, pos + 1, gen_images, partial, used, out, first_only);
            if (first_only && !out.empty()) {
                for (int t : touched) { used[partial[t]] = 0; partial[t] = -1; }
                return;
            }
        }
        for (int t : touched) { used[partial[t]] = 0; partial[t] = -1; }
    }
}

inline std::vector<GroupMap> isomorphisms(const Group& src, const Group& dst, bool first_only,
                                          int bound) {
    require(src.order() <= bound, errc::too_large,
            "isomorphism enumeration bound " + std::to_string(bound) + " exceeded");
    std::vector<GroupMap> out;
    if (src.order() != dst.order()) return out;
    std::vector<int> gen_images(src.num_factors());
    std::vector<int> partial(src.order(), -1);
    std::vector<char> used(dst.order(), 0);
    partial[0] = 0;
    used[0] = 1;
    iso_search(src, dst, 0, gen_images, partial, used, out, first_only);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// All automorphisms of g, by brute force over candidate generator images.
inline std::vector<GroupMap> automorphisms(const Group& g, int bound = 200) {
    return detail::isomorphisms(g, g, false, bound);
}

/// Some isomorphism g -> h, if one exists.
inline std::optional<GroupMap> find_group_isomorphism(const Group& g, const Group& h,
                                                      int bound = 200) {
    auto found = detail::isomorphisms(g, h, true, bound);
    if (found.empty()) return std::nullopt;
    return found.front();
}

inline bool groups_isomorphic(const Group& g, const Group& h, int bound = 200) {
    if (g.order() != h.order()) return false;
    return find_group_isomorphism(g, h, bound).has_value();
}

/// Orbit partition of `domain` under the group generated by the maps.
inline std::vector<std::vector<int>> orbits(const std::vector<GroupMap>& maps,
                                            const std::vector<int>& domain) {
    std::map<int, int> comp;  // element -> component root (union-find, path halving)
    std::vector<int> parent;
    std::map<int, int> slot;
    for (int x : domain) {
        slot[x] = (int)parent.size();
        parent.push_back((int)parent.size());
    }
    auto find = [&](int i) {
        while (parent[i] != i) { parent[i] = parent[parent[i]]; i = parent[i]; }
        return i;
    };
    for (const auto& f : maps)
        for (int x : domain) {
            int y = f.image[x];
            auto it = slot.find(y);
            require(it != slot.end(), errc::invalid_input, "map image leaves the domain");
            int a = find(slot[x]), b = find(it->second);
            if (a != b) parent[a] = b;
        }
    std::map<int, std::vector<int>> buckets;
    for (int x : domain) buckets[find(slot[x])].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : buckets) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.front() < b.front();
    });
    return out;
}

namespace detail {

/// Decomposes an abelian group given by an addition table into cyclic factors
/// (invariant-factor style: each order divides the previous) and coordinates.
struct TableDecomposition {
    std::vector<int> factor_orders;
    std::vector<std::vector<int>> coords;  // per element of the table group
};

inline TableDecomposition decompose_table_group(const std::vector<std::vector<int>>& add) {
    int n = (int)add.size();
    TableDecomposition d;
    d.coords.assign(n, {});
    if (n == 1) return d;

    auto order_of = [&](int x) {
        int v = x, k = 1;
        while (v != 0) { v = add[v][x]; ++k; }
        return k;
    };
    auto close = [&](std::vector<int> gens) {
        std::vector<char> in(n, 0);
        std::vector<int> q = {0};
        in[0] = 1;
        for (size_t h = 0; h < q.size(); ++h)
            for (int x : gens) {
                int y = add[q[h]][x];
                if (!in[y]) { in[y] = 1; q.push_back(y); }
            }
        std::sort(q.begin(), q.end());
        return q;
    };

    // Current complement, maintained as a sorted member list of the table group.
    std::vector<int> current(n);
    std::iota(current.begin(), current.end(), 0);

    std::vector<int> basis;
    while (current.size() > 1) {
        int best = -1, best_ord = 0;
        for (int x : current) {
            int o = order_of(x);
            if (o > best_ord) { best_ord = o; best = x; }
        }
        basis.push_back(best);
        d.factor_orders.push_back(best_ord);
        if ((int)current.size() == best_ord) {
            current = {0};
            break;
        }
        // find a complement of <best> inside `current` via subgroup BFS
        std::vector<int> cyc = close({best});
        int target = (int)current.size() / best_ord;
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> frontier = {{0}};
        seen.insert({0});
        std::vector<int> complement;
        while (!frontier.empty() && complement.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& h : frontier) {
                if ((int)h.size() == target) {
                    bool meets = false;
                    for (int x : h)
                        if (x != 0 && std::binary_search(cyc.begin(), cyc.end(), x)) {
                            meets = true;
                            break;
                        }
                    if (!meets) { complement = h; break; }
                }
                if ((int)h.size() >= target) continue;
                for (int x : current) {
                    if (std::binary_search(h.begin(), h.end(), x)) continue;
                    std::vector<int> gens = h;
                    gens.push_back(x);
                    auto bigger = close(gens);
                    // stay inside `current`
                    if (!std::includes(current.begin(), current.end(), bigger.begin(), bigger.end()))
                        continue;
                    if ((int)bigger.size() <= target && seen.insert(bigger).second)
                        next.push_back(std::move(bigger));
                }
            }
            frontier = std::move(next);
        }
        require(!complement.empty(), errc::internal_invariant_failure,
                "no direct complement found in abelian decomposition");
        current = std::move(complement);
    }

    // Coordinates: peel off basis elements one at a time.
    std::vector<std::vector<int>> subgroup_chain;  // chain of complements, outermost first
    {
        // rebuild the chain: chain[i] = subgroup generated by basis[i..]
        std::vector<int> tail_gens;
        subgroup_chain.assign(basis.size() + 1, {});
        subgroup_chain[basis.size()] = {0};
        for (int i = (int)basis.size() - 1; i >= 0; --i) {
            tail_gens = subgroup_chain[i + 1];
            tail_gens.push_back(basis[i]);
            subgroup_chain[i] = close(tail_gens);
        }
    }
    auto negate = [&](int x) {
        int v = 0, y = x;
        while (y != 0) { v = y; y = add[y][x]; }
        // v = (ord-1)*x = -x; handle x == 0
        return x == 0 ? 0 : v;
    };
    for (int x = 0; x < n; ++x) {
        int rem = x;
        std::vector<int> c;
        for (size_t i = 0; i < basis.size(); ++i) {
            int g = basis[i], step = 0, v = rem;
            const auto& deeper = subgroup_chain[i + 1];
            int ng = negate(g);
            while (!std::binary_search(deeper.begin(), deeper.end(), v)) {
                v = add[v][ng];
                ++step;
            }
            c.push_back(step);
            rem = v;
        }
        d.coords[x] = std::move(c);
    }
    return d;
}

}  // namespace detail

/// The quotient of a section U/L realized as an abstract Group plus the
/// projection from parent element indices (elements outside U map to -1).
struct SectionView {
    Group quotient;
    std::vector<int> project;               // size |parent|
    std::vector<std::vector<int>> fibers;   // per quotient element, the coset inside U
};

/// A section U/L of a fixed parent group (L <= U; normality is automatic in
/// abelian groups). Carries the coset partition of U.
struct Section {
    Subgroup upper, lower;
    SectionView view;

    int size() const { return view.quotient.order(); }
};

inline SectionView section_view(const Group& g, const Subgroup& upper, const Subgroup& lower) {
    require(std::includes(upper.members.begin(), upper.members.end(), lower.members.begin(),
                          lower.members.end()),
            errc::invalid_input, "lower subgroup not contained in upper");
    // identity special case keeps the parent's factor structure
    if (lower.order() == 1 && upper.order() == g.order()) {
        SectionView v{g, std::vector<int>(g.order()), {}};
        std::iota(v.project.begin(), v.project.end(), 0);
        v.fibers.resize(g.order());
        for (int x = 0; x < g.order(); ++x) v.fibers[x] = {x};
        return v;
    }
    // cosets of L inside U, keyed by minimal representative
    std::vector<int> coset_rep(g.order(), -1);
    std::vector<int> reps;
    for (int u : upper.members) {
        if (coset_rep[u] >= 0) continue;
        int rep = u;
        for (int l : lower.members) rep = std::min(rep, g.add(u, l));
        for (int l : lower.members) coset_rep[g.add(u, l)] = rep;
        reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end());
    std::vector<int> coset_idx(g.order(), -1);
    for (size_t i = 0; i < reps.size(); ++i) coset_idx[reps[i]] = (int)i;

    int k = (int)reps.size();
    std::vector<std::vector<int>> add(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) add[i][j] = coset_idx[coset_rep[g.add(reps[i], reps[j])]];

    auto dec = detail::decompose_table_group(add);
    Group q = dec.factor_orders.empty() ? Group::trivial() : Group::make(dec.factor_orders);
    SectionView v{q, std::vector<int>(g.order(), -1), {}};
    v.fibers.assign(q.order(), {});
    for (int u : upper.members) {
        int ci = coset_idx[coset_rep[u]];
        int qi = dec.coords[ci].empty() ? 0 : q.index_of(dec.coords[ci]);
        v.project[u] = qi;
        v.fibers[qi].push_back(u);
    }
    for (auto& f : v.fibers) std::sort(f.begin(), f.end());
    return v;
}

inline Section make_section(const Group& g, Subgroup upper, Subgroup lower) {
    require(is_subgroup(g, upper) && is_subgroup(g, lower), errc::invalid_input,
            "section endpoints must be subgroups");
    SectionView v = section_view(g, upper, lower);
    return Section{std::move(upper), std::move(lower), std::move(v)};
}

/// Quotient group of a section plus the canonical projection.
inline std::pair<Group, std::vector<int>> quotient_map(const Section& s) {
    return {s.view.quotient, s.view.project};
}

/// All abelian groups of order n, one Group per isomorphism class, each in the
/// canonical prime-power spelling.
inline std::vector<Group> abelian_groups_of_order(int n) {
    require(n >= 1, errc::invalid_input, "order must be positive");
    if (n == 1) return {Group::trivial()};
    std::vector<std::pair<int, int>> pf;  // (prime, exponent)
    int m = n;
    for (int p = 2; p <= m; ++p)
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            pf.push_back({p, e});
        }
    auto partitions = [](int e) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int rem, int maxpart) -> void {
            if (rem == 0) { out.push_back(cur); return; }
            for (int k = std::min(rem, maxpart); k >= 1; --k) {
                cur.push_back(k);
                self(self, rem - k, k);
                cur.pop_back();
            }
        };
        rec(rec, e, e);
        return out;
    };
    std::vector<std::vector<int>> specs = {{}};
    for (auto [p, e] : pf) {
        std::vector<std::vector<int>> next;
        for (const auto& part : partitions(e))
            for (const auto& s : specs) {
                auto t = s;
                for (int k : part) {
                    int q = 1;
                    for (int i = 0; i < k; ++i) q *= p;
                    t.push_back(q);
                }
                next.push_back(std::move(t));
            }
        specs = std::move(next);
    }
    std::vector<Group> out;
    for (auto& s : specs) out.push_back(Group::make(std::move(s)));
    std::sort(out.begin(), out.end(), [](const Group& a, const Group& b) {
        return a.factors() > b.factors();
    });
    return out;
}

}  // namespace schurkit

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"

namespace schurkit {

namespace detail {

/// Mutable partition of group elements used by the refinement engine.
struct RefinePartition {
    std::vector<int> class_of;
    std::vector<std::vector<int>> members;

    int num_classes() const { return (int)members.size(); }

    static RefinePartition single(int n) {
        RefinePartition p;
        p.class_of.assign(n, 0);
        p.members.resize(1);
        p.members[0].resize(n);
        std::iota(p.members[0].begin(), p.members[0].end(), 0);
        return p;
    }

    /// Splits every class into the level sets of `val`. Returns the ids of the
    /// classes that were split (old id listed once).
    template <class V>
    std::vector<int> refine_by(const std::vector<V>& val) {
        std::vector<int> split_ids;
        int k = num_classes();
        for (int c = 0; c < k; ++c) {
            auto& cls = members[c];
            if (cls.size() <= 1) continue;
            bool uniform = true;
            for (int x : cls)
                if (val[x] != val[cls[0]]) { uniform = false; break; }
            if (uniform) continue;
            split_ids.push_back(c);
            std::map<V, std::vector<int>> buckets;
            for (int x : cls) buckets[val[x]].push_back(x);
            auto it = buckets.begin();
            cls = it->second;
            for (++it; it != buckets.end(); ++it) {
                for (int x : it->second) class_of[x] = num_classes();
                members.push_back(it->second);
            }
        }
        return split_ids;
    }
};

/// Core Schur-Wielandt loop: repeatedly split classes by inverse images and by
/// the coefficient level sets of pairwise class-sum products until stable.
/// When `guarded` is non-null, refinement aborts (returning false) as soon as
/// one of the listed class ids splits; those ids must index initial classes.
inline bool schur_wielandt_refine(const Group& g, RefinePartition& part,
                                  const std::vector<int>* guarded = nullptr) {
    const int n = g.order();
    std::vector<char> is_guarded;
    if (guarded) {
        is_guarded.assign(std::max<size_t>(part.members.size(), n + 1), 0);
        for (int id : *guarded) is_guarded[id] = 1;
    }
    auto splits_ok = [&](const std::vector<int>& split_ids) {
        if (!guarded) return true;
        for (int id : split_ids)
            if (id < (int)is_guarded.size() && is_guarded[id]) return false;
        return true;
    };
    std::vector<int> inv_val(n);
    std::vector<int> counts(n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) inv_val[x] = part.class_of[g.neg(x)];
        auto s = part.refine_by(inv_val);
        if (!splits_ok(s)) return false;
        changed |= !s.empty();

        int k = part.num_classes();
        for (int i = 0; i < k; ++i) {
            for (int j = i; j < k; ++j) {
                std::fill(counts.begin(), counts.end(), 0);
                for (int x : part.members[i])
                    for (int y : part.members[j]) ++counts[g.add(x, y)];
                auto sp = part.refine_by(counts);
                if (!splits_ok(sp)) return false;
                if (!sp.empty()) changed = true;
            }
        }
    }
    return true;
}

}  // namespace detail

/// An S-ring over a finite abelian group: an inverse-closed partition of the
/// group with {e} a class, whose class sums span a ring. Structure constants
/// are computed eagerly at validation and stored sparsely per class pair.
///
/// Classes are canonicalized: class 0 is {e}; the remaining classes are sorted
/// by (size, smallest element index), elements sorted within each class.
/// Instances are immutable.
class SRing {
public:
    /// Checks the S-ring axioms for the given partition, computes the structure
    /// constants, and canonicalizes the class order.
    static SRing validate_partition(const Group& g, std::vector<std::vector<int>> classes) {
        const int n = g.order();
        std::vector<int> owner(n, -1);
        for (size_t c = 0; c < classes.size(); ++c) {
            require(!classes[c].empty(), errc::invalid_input, "empty class");
            for (int x : classes[c]) {
                require(x >= 0 && x < n, errc::invalid_input, "element index out of range");
                require(owner[x] < 0, errc::invalid_input, "classes are not pairwise disjoint");
                owner[x] = (int)c;
            }
        }
        for (int x = 0; x < n; ++x)
            require(owner[x] >= 0, errc::invalid_input, "classes do not cover the group");
        require(classes[owner[0]].size() == 1, errc::missing_identity_class,
                "the identity's class is not the singleton {e}");

        SRing a;
        a.g_ = g;
        for (auto& c : classes) std::sort(c.begin(), c.end());
        std::sort(classes.begin(), classes.end(), [](const auto& x, const auto& y) {
            if (x[0] == 0) return true;
            if (y[0] == 0) return false;
            if (x.size() != y.size()) return x.size() < y.size();
            return x < y;
        });
        a.classes_ = std::move(classes);
        a.class_of_.assign(n, -1);
        for (size_t c = 0; c < a.classes_.size(); ++c)
            for (int x : a.classes_[c]) a.class_of_[x] = (int)c;

        const int r = a.rank();
        a.inv_class_.assign(r, -1);
        for (int c = 0; c < r; ++c) {
            int d = a.class_of_[g.neg(a.classes_[c][0])];
            for (int x : a.classes_[c])
                require(a.class_of_[g.neg(x)] == d, errc::not_inverse_closed,
                        "class " + std::to_string(c) + " has a split inverse image");
            require(a.classes_[c].size() == a.classes_[d].size(), errc::not_inverse_closed,
                    "inverse image size mismatch for class " + std::to_string(c));
            a.inv_class_[c] = d;
        }

        a.rows_.assign((size_t)r * r, {});
        std::vector<int> counts(n);
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                std::fill(counts.begin(), counts.end(), 0);
                for (int x : a.classes_[i])
                    for (int y : a.classes_[j]) ++counts[g.add(x, y)];
                std::vector<std::pair<int, int>> row;
                for (int z = 0; z < r; ++z) {
                    int c0 = counts[a.classes_[z][0]];
                    for (int x : a.classes_[z])
                        require(counts[x] == c0, errc::not_multiplicatively_closed,
                                "product of classes " + std::to_string(i) + "," + std::to_string(j) +
                                    " is not constant on class " + std::to_string(z));
                    if (c0 > 0) row.push_back({z, c0});
                }
                a.rows_[(size_t)i * r + j] = row;
                a.rows_[(size_t)j * r + i] = std::move(row);  // abelian
            }
        return a;
    }

    const Group& group() const { return g_; }
    int rank() const { return (int)classes_.size(); }
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    const std::vector<int>& basic_set(int c) const { return classes_[c]; }
    int class_of(int x) const { return class_of_[x]; }
    const std::vector<int>& class_of() const { return class_of_; }
    int class_size(int c) const { return (int)classes_[c].size(); }
    int inverse_class(int c) const { return inv_class_[c]; }

    int structure_constant(int X, int Y, int Z) const {
        for (auto [z, c] : rows_[(size_t)X * rank() + Y])
            if (z == Z) return c;
        return 0;
    }

    /// Nonzero entries of the product of class sums X*Y, as (class, coefficient).
    const std::vector<std::pair<int, int>>& product_row(int X, int Y) const {
        return rows_[(size_t)X * rank() + Y];
    }

    /// N(A): the distinct sizes of the non-identity basic sets, sorted.
    std::vector<int> size_profile() const {
        std::vector<int> s;
        for (int c = 1; c < rank(); ++c) s.push_back(class_size(c));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    /// True iff the set is a union of basic sets.
    bool is_a_set(const std::vector<int>& elems) const {
        std::vector<char> in(g_.order(), 0);
        for (int x : elems) in[x] = 1;
        std::vector<char> cls_seen(rank(), 0);
        for (int x : elems) cls_seen[class_of_[x]] = 1;
        for (int c = 0; c < rank(); ++c)
            if (cls_seen[c])
                for (int x : classes_[c])
                    if (!in[x]) return false;
        return true;
    }

    ElemSet class_mask(int c) const {
        ElemSet m;
        for (int x : classes_[c]) m.set(x);
        return m;
    }

    friend bool operator==(const SRing& a, const SRing& b) {
        return a.g_ == b.g_ && a.classes_ == b.classes_;
    }
    friend bool operator!=(const SRing& a, const SRing& b) { return !(a == b); }

private:
    Group g_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
    std::vector<int> inv_class_;
    std::vector<std::vector<std::pair<int, int>>> rows_;
};

/// The group ring Z G viewed as an S-ring (all classes singletons).
inline SRing full_sring(const Group& g) {
    std::vector<std::vector<int>> classes(g.order());
    for (int x = 0; x < g.order(); ++x) classes[x] = {x};
    return SRing::validate_partition(g, std::move(classes));
}

/// The rank-2 S-ring {e}, G\{e}. For the trivial group this is rank 1.
inline SRing rank2_sring(const Group& g) {
    std::vector<std::vector<int>> classes = {{0}};
    if (g.order() > 1) {
        classes.push_back({});
        for (int x = 1; x < g.order(); ++x) classes[1].push_back(x);
    }
    return SRing::validate_partition(g, std::move(classes));
}

/// rad(X) = {t : t + X = X}, as a subgroup.
inline Subgroup radical(const Group& g, const std::vector<int>& x) {
    require(!x.empty(), errc::invalid_input, "radical of the empty set");
    std::vector<char> in(g.order(), 0);
    for (int e : x) in[e] = 1;
    std::vector<int> members;
    for (int t = 0; t < g.order(); ++t) {
        bool fixes = true;
        for (int e : x)
            if (!in[g.add(t, e)]) { fixes = false; break; }
        if (fixes) members.push_back(t);
    }
    return Subgroup{std::move(members)};
}

inline Subgroup generated_subgroup(const Group& g, const std::vector<int>& x) {
    return subgroup_generated(g, x);
}

/// X^(m) = {m*x : x in X}.
inline std::vector<int> power_set(const Group& g, const std::vector<int>& x, long long m) {
    std::vector<int> out;
    out.reserve(x.size());
    for (int e : x) out.push_back(g.scalar_mul(m, e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// All A-subgroups: subgroups of the underlying group that are unions of
/// basic sets.
inline std::vector<Subgroup> a_subgroups(const SRing& a, int bound = 200) {
    std::vector<Subgroup> out;
    for (auto& h : all_subgroups(a.group(), bound))
        if (a.is_a_set(h.members)) out.push_back(h);
    return out;
}

/// The class permutation induced by x -> m*x (gcd(m,|G|) = 1). The image
/// partition always coincides with the input partition for a valid S-ring.
inline std::vector<int> multiplier_class_perm(const SRing& a, long long m) {
    const Group& g = a.group();
    long long r = m % g.order();
    if (r < 0) r += g.order();
    require(std::gcd(r, (long long)g.order()) == 1, errc::invalid_multiplier,
            "multiplier " + std::to_string(m) + " not coprime to group order");
    std::vector<int> perm(a.rank(), -1);
    for (int c = 0; c < a.rank(); ++c) {
        int d = a.class_of(g.scalar_mul(r, a.basic_set(c)[0]));
        for (int x : a.basic_set(c))
            require(a.class_of(g.scalar_mul(r, x)) == d, errc::internal_invariant_failure,
                    "multiplier image of a basic set is not a basic set");
        require((int)a.basic_set(c).size() == (int)a.basic_set(d).size(),
                errc::internal_invariant_failure, "multiplier image size mismatch");
        perm[c] = d;
    }
    return perm;
}

/// The S-ring with classes X^(m); equal to the input as a partition.
inline SRing multiplier_image(const SRing& a, long long m) {
    multiplier_class_perm(a, m);  // validates coprimality and invariance
    return a;
}

/// Classes of `a` contained in the given member set (indices into a.classes()).
inline std::vector<int> classes_inside(const SRing& a, const Subgroup& h) {
    std::vector<int> out;
    for (int c = 0; c < a.rank(); ++c)
        if (h.contains(a.basic_set(c)[0])) {
            bool inside = true;
            for (int x : a.basic_set(c))
                if (!h.contains(x)) { inside = false; break; }
            if (inside) out.push_back(c);
        }
    return out;
}

/// The induced S-ring on an A-section S = U/L: classes are the projections of
/// the basic sets contained in U.
inline SRing section_sring(const SRing& a, const Section& s) {
    require(a.is_a_set(s.upper.members) && a.is_a_set(s.lower.members), errc::not_a_section,
            "section endpoints are not A-subgroups");
    const auto& view = s.view;
    std::map<std::vector<int>, char> images;
    for (int c : classes_inside(a, s.upper)) {
        std::vector<int> img;
        for (int x : a.basic_set(c)) img.push_back(view.project[x]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        images[img] = 1;
    }
    std::vector<std::vector<int>> classes;
    for (auto& [img, _] : images) classes.push_back(img);
    return SRing::validate_partition(view.quotient, std::move(classes));
}

/// The restriction A_H to an A-subgroup, as an S-ring over an abstract copy of
/// H. Returns the section view alongside so callers can pull classes back.
inline std::pair<SRing, SectionView> subgroup_sring(const SRing& a, const Subgroup& h) {
    Section s = make_section(a.group(), h, Subgroup{{0}});
    SRing r = section_sring(a, s);
    return {std::move(r), std::move(s.view)};
}

/// Lemma-style intersection number |X ∩ Hx|: verified to be constant over
/// x in X, returned once. A violation indicates a broken S-ring.
inline int intersection_profile(const SRing& a, const Subgroup& h, int class_idx) {
    require(a.is_a_set(h.members), errc::invalid_input, "H is not an A-subgroup");
    const Group& g = a.group();
    const auto& x = a.basic_set(class_idx);
    int value = -1;
    for (int e : x) {
        int cnt = 0;
        for (int l : h.members)
            if (a.class_of(g.add(l, e)) == class_idx) ++cnt;
        if (value < 0) value = cnt;
        require(cnt == value, errc::internal_invariant_failure,
                "|X ∩ Hx| varies across x; S-ring invariant broken");
    }
    return value;
}

/// The smallest S-ring whose module contains every seed vector (coefficients
/// indexed by group elements). Sets are 0/1 vectors. Always terminates:
/// refinement is monotone on a finite lattice.
inline SRing wielandt_closure(const Group& g, const std::vector<std::vector<long long>>& seeds) {
    const int n = g.order();
    auto part = detail::RefinePartition::single(n);
    std::vector<long long> idvec(n, 0);
    idvec[0] = 1;
    part.refine_by(idvec);
    for (const auto& s : seeds) {
        require((int)s.size() == n, errc::invalid_input, "seed vector length mismatch");
        part.refine_by(s);
    }
    detail::schur_wielandt_refine(g, part);
    return SRing::validate_partition(g, part.members);
}

/// Convenience overload: seeds given as element sets.
inline SRing wielandt_closure_sets(const Group& g, const std::vector<std::vector<int>>& seed_sets) {
    std::vector<std::vector<long long>> seeds;
    for (const auto& s : seed_sets) {
        std::vector<long long> v(g.order(), 0);
        for (int x : s) v[x] = 1;
        seeds.push_back(std::move(v));
    }
    return wielandt_closure(g, seeds);
}

/// The closure generated by an S-ring together with extra seed vectors.
inline SRing sring_closure_with(const SRing& a, const std::vector<std::vector<long long>>& extra) {
    std::vector<std::vector<long long>> seeds;
    for (int c = 0; c < a.rank(); ++c) {
        std::vector<long long> v(a.group().order(), 0);
        for (int x : a.basic_set(c)) v[x] = 1;
        seeds.push_back(std::move(v));
    }
    for (const auto& s : extra) seeds.push_back(s);
    return wielandt_closure(a.group(), seeds);
}

}  // namespace schurkit

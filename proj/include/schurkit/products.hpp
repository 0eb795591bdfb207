#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

/// The direct product of two groups with its canonical factor order, plus the
/// two factor embeddings.
struct ProductGroup {
    Group product;
    GroupMap embed1, embed2;
    std::vector<int> slot_of_factor1, slot_of_factor2;  // factor positions inside the product
};

inline ProductGroup direct_product(const Group& g1, const Group& g2) {
    struct Tagged {
        int order, which, pos;
    };
    std::vector<Tagged> tags;
    for (int i = 0; i < g1.num_factors(); ++i) tags.push_back({g1.factors()[i], 1, i});
    for (int i = 0; i < g2.num_factors(); ++i) tags.push_back({g2.factors()[i], 2, i});
    std::stable_sort(tags.begin(), tags.end(),
                     [](const Tagged& a, const Tagged& b) { return a.order > b.order; });
    std::vector<int> orders;
    for (auto& t : tags) orders.push_back(t.order);
    require(!orders.empty(), errc::invalid_input, "product of trivial groups unsupported");
    Group prod = Group::make(orders);

    ProductGroup out{prod, GroupMap{}, GroupMap{}, std::vector<int>(g1.num_factors()),
                     std::vector<int>(g2.num_factors())};
    std::vector<int> gi1(g1.num_factors()), gi2(g2.num_factors());
    for (size_t slot = 0; slot < tags.size(); ++slot) {
        if (tags[slot].which == 1) {
            gi1[tags[slot].pos] = prod.unit((int)slot);
            out.slot_of_factor1[tags[slot].pos] = (int)slot;
        } else {
            gi2[tags[slot].pos] = prod.unit((int)slot);
            out.slot_of_factor2[tags[slot].pos] = (int)slot;
        }
    }
    out.embed1 = g1.num_factors() ? hom_from_generator_images(g1, prod, gi1)
                                  : GroupMap{g1, prod, {0}};
    out.embed2 = g2.num_factors() ? hom_from_generator_images(g2, prod, gi2)
                                  : GroupMap{g2, prod, {0}};
    return out;
}

/// Lifts a pair of automorphisms of the factors to the product group.
inline GroupMap combine_maps(const ProductGroup& pg, const GroupMap& f1, const GroupMap& f2) {
    require(f1.source == pg.embed1.source && f2.source == pg.embed2.source, errc::invalid_input,
            "factor map domain mismatch");
    const Group& prod = pg.product;
    GroupMap f{prod, prod, std::vector<int>(prod.order())};
    for (int x = 0; x < prod.order(); ++x) {
        int x1 = 0, x2 = 0;
        for (int i = 0; i < f1.source.num_factors(); ++i)
            x1 = x1 * f1.source.factors()[i] + prod.coord(x, pg.slot_of_factor1[i]);
        for (int i = 0; i < f2.source.num_factors(); ++i)
            x2 = x2 * f2.source.factors()[i] + prod.coord(x, pg.slot_of_factor2[i]);
        f.image[x] = prod.add(pg.embed1.image[f1.image[x1]], pg.embed2.image[f2.image[x2]]);
    }
    return f;
}

/// Tensor product: classes are all products X1 x X2. rank = rk(A1)*rk(A2).
inline SRing tensor(const SRing& a1, const SRing& a2) {
    ProductGroup pg = direct_product(a1.group(), a2.group());
    std::vector<std::vector<int>> classes;
    classes.reserve((size_t)a1.rank() * a2.rank());
    for (int i = 0; i < a1.rank(); ++i)
        for (int j = 0; j < a2.rank(); ++j) {
            std::vector<int> cls;
            cls.reserve(a1.basic_set(i).size() * a2.basic_set(j).size());
            for (int x : a1.basic_set(i))
                for (int y : a2.basic_set(j))
                    cls.push_back(pg.product.add(pg.embed1.image[x], pg.embed2.image[y]));
            classes.push_back(std::move(cls));
        }
    return SRing::validate_partition(pg.product, std::move(classes));
}

namespace detail {

/// Shared S-wreath assembly over classes already expressed in parent indices.
inline SRing s_wreath_core(const Group& g, const Subgroup& upper, const Subgroup& lower,
                           const std::vector<std::vector<int>>& upper_classes,
                           const SRing& quotient_sring) {
    require(std::includes(upper.members.begin(), upper.members.end(), lower.members.begin(),
                          lower.members.end()),
            errc::invalid_input, "L must be contained in U");
    SectionView qv = section_view(g, Subgroup{[&] {
                                      std::vector<int> all(g.order());
                                      std::iota(all.begin(), all.end(), 0);
                                      return all;
                                  }()},
                                  lower);
    require(quotient_sring.group() == qv.quotient, errc::quotient_mismatch,
            "quotient S-ring is over " + format_group_spec(quotient_sring.group()) +
                " but G/L is " + format_group_spec(qv.quotient));

    // compatibility: the section S-rings induced on S = U/L must agree
    std::vector<char> in_s(qv.quotient.order(), 0);
    for (int u : upper.members) in_s[qv.project[u]] = 1;
    std::set<std::vector<int>> from_upper;
    for (const auto& cls : upper_classes) {
        std::vector<int> img;
        for (int x : cls) {
            require(upper.contains(x), errc::invalid_input, "upper class leaves U");
            img.push_back(qv.project[x]);
        }
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        from_upper.insert(std::move(img));
    }
    std::set<std::vector<int>> from_quotient;
    std::vector<int> outside_classes;
    for (int c = 0; c < quotient_sring.rank(); ++c) {
        bool inside = true;
        for (int q : quotient_sring.basic_set(c))
            if (!in_s[q]) { inside = false; break; }
        if (inside)
            from_quotient.insert(quotient_sring.basic_set(c));
        else
            outside_classes.push_back(c);
    }
    require(from_upper == from_quotient, errc::incompatible_section,
            "the two S-rings induce different partitions on U/L");

    std::vector<std::vector<int>> classes = upper_classes;
    for (int c : outside_classes) {
        std::vector<int> pre;
        for (int q : quotient_sring.basic_set(c)) {
            require(!in_s[q], errc::incompatible_section,
                    "quotient class straddles the section subgroup");
            for (int x : qv.fibers[q]) pre.push_back(x);
        }
        std::sort(pre.begin(), pre.end());
        classes.push_back(std::move(pre));
    }
    return SRing::validate_partition(g, std::move(classes));
}

/// Pulls the classes of an S-ring over an abstract copy of a subgroup back to
/// parent element indices, through the canonical subgroup view.
inline std::vector<std::vector<int>> pull_back_classes(const Group& g, const Subgroup& h,
                                                       const SRing& a_h) {
    SectionView hv = section_view(g, h, Subgroup{{0}});
    require(a_h.group() == hv.quotient, errc::quotient_mismatch,
            "subgroup S-ring is over " + format_group_spec(a_h.group()) +
                " but the subgroup is a " + format_group_spec(hv.quotient));
    std::vector<std::vector<int>> out;
    for (int c = 0; c < a_h.rank(); ++c) {
        std::vector<int> cls;
        for (int q : a_h.basic_set(c)) cls.push_back(hv.fibers[q][0]);
        std::sort(cls.begin(), cls.end());
        out.push_back(std::move(cls));
    }
    return out;
}

}  // namespace detail

/// S-wreath product A_U wr_{U/L} A_{G/L}. The classes inside U come from the
/// first argument (given in parent element indices); outside U they are the
/// L-coset preimages of the quotient classes outside S = U/L. Refuses when the
/// two inputs induce different S-rings on S.
inline SRing s_wreath(const Group& g, const Subgroup& upper, const Subgroup& lower,
                      const std::vector<std::vector<int>>& upper_classes,
                      const SRing& quotient_sring) {
    return detail::s_wreath_core(g, upper, lower, upper_classes, quotient_sring);
}

/// Overload taking A_U as an S-ring over the abstract copy of U.
inline SRing s_wreath(const Group& g, const Subgroup& upper, const Subgroup& lower,
                      const SRing& upper_sring, const SRing& quotient_sring) {
    return detail::s_wreath_core(g, upper, lower,
                                 detail::pull_back_classes(g, upper, upper_sring), quotient_sring);
}

/// Wreath product A_L wr A_{G/L} (the S-wreath with U = L).
inline SRing wreath(const Group& g, const Subgroup& lower, const SRing& lower_sring,
                    const SRing& quotient_sring) {
    return detail::s_wreath_core(g, lower, lower,
                                 detail::pull_back_classes(g, lower, lower_sring), quotient_sring);
}

/// Cyclotomic S-ring cyc(K, G): classes are the orbits of the group generated
/// by the given automorphisms.
inline SRing cyclotomic(const Group& g, const std::vector<GroupMap>& maps) {
    for (const auto& f : maps) {
        require(f.source == g && f.target == g && f.is_bijective(), errc::non_automorphism,
                "cyclotomic input must be automorphisms of G");
        for (int x = 0; x < g.order(); ++x)
            for (int y = 0; y < x; ++y)
                if (f.image[g.add(x, y)] != g.add(f.image[x], f.image[y]))
                    fail(errc::non_automorphism, "map is not a homomorphism");
    }
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return SRing::validate_partition(g, orbits(maps, all));
}

/// Subdirect product data: K0 <| K <= Aut(H1), M0 <| M <= Aut(H2), and psi an
/// isomorphism K/K0 -> M/M0 described by the image of one generating coset.
/// The designated generator of K/K0 is the coset of the first K generator
/// (the toolkit rejects non-cyclic quotients).
struct SubdirectSpec {
    Group h1, h2;
    std::vector<GroupMap> k_gens, k0_gens;
    std::vector<GroupMap> m_gens, m0_gens;
    GroupMap psi_rep;  // element of M whose coset is the image of the designated generator
};

struct SubdirectProduct {
    ProductGroup pg;
    std::vector<GroupMap> elements;  // the subgroup W <= Aut(H1 x H2)
};

namespace detail {

inline std::vector<GroupMap> close_maps(const Group& g, std::vector<GroupMap> gens) {
    std::set<std::vector<int>> seen;
    std::vector<GroupMap> out;
    out.push_back(identity_map(g));
    seen.insert(out[0].image);
    for (size_t head = 0; head < out.size(); ++head)
        for (const auto& f : gens) {
            GroupMap h = compose(out[head], f);
            if (seen.insert(h.image).second) out.push_back(std::move(h));
        }
    return out;
}

inline bool contains_map(const std::vector<GroupMap>& group, const std::vector<int>& image) {
    for (const auto& f : group)
        if (f.image == image) return true;
    return false;
}

/// Discrete log of a coset in the cyclic quotient generated by `gen`'s coset.
/// Returns -1 if unreachable.
inline int coset_log(const Group& g, const std::vector<GroupMap>& sub, const GroupMap& gen,
                     const GroupMap& elem, int quotient_order) {
    GroupMap cur = identity_map(g);
    for (int j = 0; j < quotient_order; ++j) {
        // elem in cur*sub ?
        GroupMap shifted = compose(inverse_map(cur), elem);
        if (contains_map(sub, shifted.image)) return j;
        cur = compose(cur, gen);
    }
    return -1;
}

}  // namespace detail

/// W(K, K0, M, M0, psi) = matching automorphism pairs on H1 x H2.
/// |W| = |K0| * |M|.
inline SubdirectProduct subdirect(const SubdirectSpec& spec) {
    for (const auto& f : spec.k_gens)
        require(f.source == spec.h1 && f.is_bijective(), errc::invalid_spec, "K generator invalid");
    for (const auto& f : spec.m_gens)
        require(f.source == spec.h2 && f.is_bijective(), errc::invalid_spec, "M generator invalid");

    auto K = detail::close_maps(spec.h1, spec.k_gens);
    auto K0 = detail::close_maps(spec.h1, spec.k0_gens);
    auto M = detail::close_maps(spec.h2, spec.m_gens);
    auto M0 = detail::close_maps(spec.h2, spec.m0_gens);

    for (const auto& f : K0)
        require(detail::contains_map(K, f.image), errc::invalid_spec, "K0 not contained in K");
    for (const auto& f : M0)
        require(detail::contains_map(M, f.image), errc::invalid_spec, "M0 not contained in M");
    for (const auto& g : K)
        for (const auto& x : K0)
            require(detail::contains_map(K0, compose(compose(inverse_map(g), x), g).image),
                    errc::invalid_spec, "K0 not normal in K");
    for (const auto& g : M)
        for (const auto& x : M0)
            require(detail::contains_map(M0, compose(compose(inverse_map(g), x), g).image),
                    errc::invalid_spec, "M0 not normal in M");

    require(K.size() % K0.size() == 0 && M.size() % M0.size() == 0, errc::invalid_spec,
            "subgroup order mismatch");
    int dk = (int)(K.size() / K0.size());
    int dm = (int)(M.size() / M0.size());
    require(dk == dm, errc::invalid_spec,
            "|K/K0| = " + std::to_string(dk) + " but |M/M0| = " + std::to_string(dm));

    // designated generator of K/K0: first K generator if its coset generates,
    // otherwise the first element of K that works
    GroupMap k_rep = spec.k_gens.empty() ? identity_map(spec.h1) : spec.k_gens[0];
    auto coset_order = [&](const Group& g, const std::vector<GroupMap>& sub, const GroupMap& e) {
        GroupMap cur = e;
        for (int j = 1;; ++j) {
            if (detail::contains_map(sub, cur.image)) return j;
            cur = compose(cur, e);
        }
    };
    if (dk > 1 && coset_order(spec.h1, K0, k_rep) != dk) {
        bool found = false;
        for (const auto& e : K)
            if (coset_order(spec.h1, K0, e) == dk) { k_rep = e; found = true; break; }
        require(found, errc::invalid_spec, "K/K0 is not cyclic");
    }
    require(coset_order(spec.h2, M0, spec.psi_rep) == dk || dk == 1, errc::invalid_spec,
            "psi image does not generate M/M0");

    SubdirectProduct out{direct_product(spec.h1, spec.h2), {}};
    for (const auto& alpha : K) {
        int ja = detail::coset_log(spec.h1, K0, k_rep, alpha, dk);
        require(ja >= 0, errc::internal_invariant_failure, "coset log failed on K");
        for (const auto& beta : M) {
            int jb = detail::coset_log(spec.h2, M0, spec.psi_rep, beta, dk);
            require(jb >= 0, errc::internal_invariant_failure, "coset log failed on M");
            if (ja == jb) out.elements.push_back(combine_maps(out.pg, alpha, beta));
        }
    }
    require(out.elements.size() == K0.size() * M.size(), errc::internal_invariant_failure,
            "|W| != |K0|*|M|");
    return out;
}

}  // namespace schurkit

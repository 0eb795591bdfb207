#pragma once

#include <array>
#include <string>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/products.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

/// One line of the automorphism-pair catalog over E9 = <a> x <b>: a subgroup
/// K <= Aut(E9) with a designated normal subgroup K0. Generator images are
/// (coefficient of a, coefficient of b) pairs for the images of a and b.
struct CyclotomicLine {
    int line_no;
    const char* k_name;
    int k_order;
    std::vector<std::array<int, 4>> k_gens;   // {a1,a2,b1,b2}: a -> a1*a+a2*b, b -> b1*a+b2*b
    std::vector<std::array<int, 4>> k0_gens;  // empty list = trivial subgroup
    int index;                                // |K : K0|
};

inline const std::vector<CyclotomicLine>& cyclotomic_lines() {
    static const std::vector<CyclotomicLine> lines = {
        {1, "C2", 2, {{2, 0, 0, 2}}, {}, 2},
        {2, "E4", 4, {{2, 0, 0, 1}, {1, 0, 0, 2}}, {{2, 0, 0, 2}}, 2},
        {3, "C3", 3, {{1, 0, 1, 1}}, {}, 3},
        {4, "C6", 6, {{2, 0, 1, 2}}, {{2, 0, 0, 2}}, 3},
        {5, "C6", 6, {{2, 0, 1, 2}}, {}, 6},
        {6, "D8", 8, {{0, 2, 1, 0}, {0, 1, 1, 0}}, {{2, 0, 0, 2}, {2, 0, 0, 1}}, 2},
        {7, "C4", 4, {{0, 2, 1, 0}}, {{2, 0, 0, 2}}, 2},
        {8, "C4", 4, {{0, 2, 1, 0}}, {}, 4},
        {9, "C8", 8, {{1, 1, 2, 1}}, {{0, 2, 1, 0}}, 2},
        {10, "C8", 8, {{1, 1, 2, 1}}, {{2, 0, 0, 2}}, 4},
        {11, "C8", 8, {{1, 1, 2, 1}}, {}, 8},
    };
    return lines;
}

/// A built S-ring family member together with its parameters and, where
/// meaningful, the designated generators inside the underlying group.
struct FamilyInstance {
    std::string family;  // "A0", "A1*", "A2*", "A3*", "A1".."A11"
    int p = 0;
    char flavor = 'E';   // 'C' or 'E' for the star families
    int m_order = 0;     // |M| for the cyclotomic families
    SRing sring;
    int a = -1, b = -1, c = -1, z = -1;
};

namespace detail {

inline void require_prime_ge5(int p) {
    require(is_prime(p) && p >= 5, errc::out_of_range,
            "p = " + std::to_string(p) + " must be a prime >= 5");
}

inline long long pow_mod(long long base, long long e, long long mod) {
    long long r = 1 % mod;
    base %= mod;
    while (e > 0) {
        if (e & 1) r = r * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return r;
}

inline GroupMap e9_aut(const Group& e9, const std::array<int, 4>& images) {
    return hom_from_generator_images(
        e9, e9, {e9.index_of({images[0], images[1]}), e9.index_of({images[2], images[3]})});
}

inline int find_factor_position(const Group& g, int order, int skip = -1) {
    for (int i = 0; i < g.num_factors(); ++i)
        if (g.factors()[i] == order && i != skip) return i;
    fail(errc::internal_invariant_failure, "expected cyclic factor missing");
}

}  // namespace detail

/// cyc(W0, C_3p): the unique nontrivial subdirect product of Aut(C3) and
/// Aut(Cp) acting on the cyclic group of order 3p. Rank 5; both proper
/// restrictions have rank 2.
inline FamilyInstance build_A0(int p) {
    detail::require_prime_ge5(p);
    Group g = make_group({3 * p});
    int r = primitive_root(p);
    std::vector<char> is_square(p, 0);
    for (int j = 0; j < p - 1; j += 2) is_square[(int)detail::pow_mod(r, j, p)] = 1;
    std::vector<GroupMap> w0;
    for (int m = 1; m < 3 * p; ++m) {
        if (std::gcd(m, 3 * p) != 1) continue;
        bool square = is_square[m % p];
        if ((m % 3 == 1 && square) || (m % 3 == 2 && !square)) w0.push_back(multiplier_map(g, m));
    }
    FamilyInstance inst{"A0", p, 'C', 0, cyclotomic(g, w0)};
    inst.z = 3;  // order-p generator
    inst.a = p;  // order-3 generator
    return inst;
}

/// The three S-wreath families over a group of order 9p (flavor C: C9 x Cp,
/// flavor E: E9 x Cp): the A0 pattern on a cyclic subgroup U of order 3p glued
/// over U/L to a choice of quotient S-ring on G/L of order 3p.
inline FamilyInstance build_A_star(int i, char flavor, int p) {
    require(i >= 1 && i <= 3, errc::invalid_input, "star family index must be 1, 2 or 3");
    require(flavor == 'C' || flavor == 'E', errc::invalid_input, "flavor must be C or E");
    detail::require_prime_ge5(p);

    Group g = flavor == 'C' ? make_group({9, p}) : make_group({3, 3, p});
    int pz = detail::find_factor_position(g, p);
    int z = g.unit(pz);
    FamilyInstance inst{"A" + std::to_string(i) + "*", p, flavor, 0, rank2_sring(g)};
    inst.z = z;
    int u3;  // generator of the order-3 subgroup L
    if (flavor == 'C') {
        inst.c = g.unit(detail::find_factor_position(g, 9));
        u3 = g.scalar_mul(3, inst.c);
    } else {
        int pa = detail::find_factor_position(g, 3);
        int pb = detail::find_factor_position(g, 3, pa);
        inst.a = g.unit(pa);
        inst.b = g.unit(pb);
        u3 = inst.a;
    }
    Subgroup lower = subgroup_generated(g, {u3});
    Subgroup upper = subgroup_generated(g, {u3, z});

    // transport the A0 pattern onto U along k -> k*u for a generator u of U
    SRing a0 = build_A0(p).sring;
    int u = g.add(u3, z);
    std::vector<std::vector<int>> upper_classes;
    for (int cl = 0; cl < a0.rank(); ++cl) {
        std::vector<int> cls;
        for (int k : a0.basic_set(cl)) cls.push_back(g.scalar_mul(k, u));
        std::sort(cls.begin(), cls.end());
        upper_classes.push_back(std::move(cls));
    }

    Subgroup all{[&] {
        std::vector<int> v(g.order());
        std::iota(v.begin(), v.end(), 0);
        return v;
    }()};
    SectionView qv = section_view(g, all, lower);
    const Group& q = qv.quotient;
    require(q.factors() == std::vector<int>{3 * p}, errc::internal_invariant_failure,
            "G/L is not cyclic of order 3p");

    SRing a_q = [&] {
        if (i == 3) return a0;  // same abstract group, multiplier-invariant pattern
        Subgroup t3 = subgroup_generated(q, {p});
        Subgroup pq = subgroup_generated(q, {3});
        std::vector<std::vector<int>> classes;
        if (i == 1) {
            for (int t : t3.members) classes.push_back({t});
            for (int t : t3.members) {
                std::vector<int> cls;
                for (int x : pq.members)
                    if (x != 0) cls.push_back(q.add(t, x));
                std::sort(cls.begin(), cls.end());
                classes.push_back(std::move(cls));
            }
        } else {
            classes.push_back({0});
            std::vector<int> t_rest, p_rest, mixed;
            for (int t : t3.members)
                if (t != 0) t_rest.push_back(t);
            for (int x : pq.members)
                if (x != 0) p_rest.push_back(x);
            for (int t : t_rest)
                for (int x : p_rest) mixed.push_back(q.add(t, x));
            std::sort(mixed.begin(), mixed.end());
            classes.push_back(t_rest);
            classes.push_back(p_rest);
            classes.push_back(mixed);
        }
        return SRing::validate_partition(q, std::move(classes));
    }();

    inst.sring = s_wreath(g, upper, lower, upper_classes, a_q);
    return inst;
}

/// The cyclotomic family over E9 x Cp defined by line `line_no` of the
/// automorphism catalog coupled to the order-k multiplier group M <= Aut(Cp).
/// Well-defined iff |K:K0| divides k and k divides p-1.
inline FamilyInstance build_A_iM(int line_no, int p, int m_order) {
    require(line_no >= 1 && line_no <= 11, errc::invalid_input, "line number must be in 1..11");
    detail::require_prime_ge5(p);
    require(m_order >= 1 && (p - 1) % m_order == 0, errc::not_well_defined,
            "m-order " + std::to_string(m_order) + " does not divide p-1");
    const CyclotomicLine& line = cyclotomic_lines()[line_no - 1];
    require(m_order % line.index == 0, errc::not_well_defined,
            "line " + std::to_string(line_no) + " has index " + std::to_string(line.index) +
                ", which does not divide m-order " + std::to_string(m_order));

    Group e9 = make_group({3, 3});
    Group cp = make_group({p});
    SubdirectSpec spec;
    spec.h1 = e9;
    spec.h2 = cp;
    for (const auto& im : line.k_gens) spec.k_gens.push_back(detail::e9_aut(e9, im));
    for (const auto& im : line.k0_gens) spec.k0_gens.push_back(detail::e9_aut(e9, im));
    int r = primitive_root(p);
    int s = (int)detail::pow_mod(r, (p - 1) / m_order, p);
    GroupMap mu = multiplier_map(cp, s);
    spec.m_gens = {mu};
    spec.m0_gens = {multiplier_map(cp, detail::pow_mod(s, line.index, p))};
    spec.psi_rep = mu;

    SubdirectProduct w = subdirect(spec);
    FamilyInstance inst{"A" + std::to_string(line_no), p, 'E', m_order,
                        cyclotomic(w.pg.product, w.elements)};
    inst.a = w.pg.embed1.image[e9.unit(0)];
    inst.b = w.pg.embed1.image[e9.unit(1)];
    inst.z = w.pg.embed2.image[cp.unit(0)];
    return inst;
}

/// The unique subgroup of order p of the instance's group.
inline Subgroup order_p_subgroup(const FamilyInstance& inst) {
    const Group& g = inst.sring.group();
    for (int x = 1; x < g.order(); ++x)
        if (g.element_order(x) == inst.p) return subgroup_generated(g, {x});
    fail(errc::internal_invariant_failure, "no element of order p");
}

/// N(A_P): the size profile of the restriction to the order-p subgroup.
inline std::vector<int> profile_inside_p(const FamilyInstance& inst) {
    Subgroup p_sub = order_p_subgroup(inst);
    std::vector<int> out;
    for (int c : classes_inside(inst.sring, p_sub))
        if (inst.sring.basic_set(c)[0] != 0) out.push_back(inst.sring.class_size(c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The expected extra size-profile entries for a family, with p and k = |M|
/// substituted. N(A) is expected to equal this row united with N(A_P).
inline std::vector<int> expected_profile_row(const std::string& family, int p, int k) {
    std::vector<int> row;
    if (family == "A1*") row = {2, 3, p - 1, 3 * (p - 1)};
    else if (family == "A2*") row = {2, 6, p - 1, 6 * (p - 1)};
    else if (family == "A3*") row = {2, 6, p - 1, 3 * (p - 1)};
    else if (family == "A1") row = {2, k};
    else if (family == "A2") row = {2, 4, 2 * k};
    else if (family == "A3") row = {1, 3, k};
    else if (family == "A4") row = {2, 6, 2 * k};
    else if (family == "A5") row = {2, 6, k};
    else if (family == "A6") row = {4, 2 * k, 4 * k};
    else if (family == "A7") row = {4, 2 * k};
    else if (family == "A8") row = {4, k};
    else if (family == "A9") row = {8, 4 * k};
    else if (family == "A10") row = {8, 2 * k};
    else if (family == "A11") row = {8, k};
    else fail(errc::invalid_input, "no expected profile for family " + family);
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    return row;
}

/// Checks N(A) == expected row united with N(A_P), as sets.
inline bool profile_check(const FamilyInstance& inst) {
    std::vector<int> expected = expected_profile_row(inst.family, inst.p, inst.m_order);
    for (int s : profile_inside_p(inst)) expected.push_back(s);
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    return expected == inst.sring.size_profile();
}

/// Witness conditions. X is a subset of the group, given as a sorted set.
inline bool witness_c1_generates(const Group& g, const std::vector<int>& x) {
    return subgroup_generated(g, x).order() == g.order();
}

inline bool witness_c2_not_all(const Group& g, const std::vector<int>& x) {
    return (int)x.size() != g.order() - 1;
}

/// (C3): X is not of the form X_U x X_V for a nontrivial direct decomposition
/// U x V = G. A product with a singleton factor (X confined to one coset) does
/// not count: the condition rules out genuine product structure, and every set
/// is trivially {u} x (X - u) for a suitable coset.
inline bool witness_c3_not_subproduct(const Group& g, const std::vector<int>& x) {
    auto subs = all_subgroups(g);
    std::vector<char> in_x(g.order(), 0);
    for (int e : x) in_x[e] = 1;
    for (const auto& u : subs) {
        if (u.order() == 1 || u.order() == g.order()) continue;
        for (const auto& v : subs) {
            if ((long long)u.order() * v.order() != g.order()) continue;
            bool trivial_meet = true;
            for (int m : v.members)
                if (m != 0 && u.contains(m)) { trivial_meet = false; break; }
            if (!trivial_meet) continue;
            // projections onto the two factors of the internal decomposition
            std::vector<char> xu(g.order(), 0), xv(g.order(), 0);
            int nu = 0, nv = 0;
            for (int e : x) {
                for (int m : v.members)
                    if (u.contains(g.sub(e, m))) {
                        nu += !xu[g.sub(e, m)];
                        xu[g.sub(e, m)] = 1;
                        break;
                    }
                for (int m : u.members)
                    if (v.contains(g.sub(e, m))) {
                        nv += !xv[g.sub(e, m)];
                        xv[g.sub(e, m)] = 1;
                        break;
                    }
            }
            if (nu < 2 || nv < 2) continue;
            bool equal = true;
            long long count = 0;
            for (int eu = 0; eu < g.order() && equal; ++eu) {
                if (!xu[eu]) continue;
                for (int ev = 0; ev < g.order(); ++ev) {
                    if (!xv[ev]) continue;
                    ++count;
                    if (!in_x[g.add(eu, ev)]) { equal = false; break; }
                }
            }
            if (equal && count == (long long)x.size()) return false;
        }
    }
    return true;
}

/// (C4): every nonempty subset of X has trivial radical. Equivalent to: no
/// coset of a nontrivial cyclic subgroup is contained in X.
inline bool witness_c4_trivial_subset_radicals(const Group& g, const std::vector<int>& x) {
    std::vector<char> in_x(g.order(), 0);
    for (int e : x) in_x[e] = 1;
    for (int t = 1; t < g.order(); ++t) {
        for (int e : x) {
            bool inside = true;
            int v = g.add(e, t);
            while (v != e) {
                if (!in_x[v]) { inside = false; break; }
                v = g.add(v, t);
            }
            if (inside) return false;
        }
    }
    return true;
}

inline bool witness_conditions_hold(const Group& g, const std::vector<int>& x) {
    return witness_c1_generates(g, x) && witness_c2_not_all(g, x) &&
           witness_c3_not_subproduct(g, x) && witness_c4_trivial_subset_radicals(g, x);
}

/// A generating witness set for a cyclotomic family instance: for lines 1 and
/// 7 the explicit three-class union through a, b and the orbit of z; for the
/// remaining lines the first basic set passing the witness conditions.
inline std::vector<int> witness_set(const FamilyInstance& inst) {
    require(inst.family.size() >= 2 && inst.family[0] == 'A' && inst.family.back() != '*',
            errc::invalid_input, "witness sets are defined for the cyclotomic families");
    int line_no = std::stoi(inst.family.substr(1));
    const SRing& a = inst.sring;
    const Group& g = a.group();
    if (line_no == 1 || line_no == 7) {
        std::vector<int> seeds = {inst.a, g.add(inst.a, inst.z),
                                  g.add(line_no == 1 ? inst.b : g.add(inst.a, inst.b), inst.z)};
        std::vector<int> x;
        for (int s : seeds)
            for (int e : a.basic_set(a.class_of(s))) x.push_back(e);
        std::sort(x.begin(), x.end());
        require(x.size() ==
                    a.basic_set(a.class_of(seeds[0])).size() +
                        a.basic_set(a.class_of(seeds[1])).size() +
                        a.basic_set(a.class_of(seeds[2])).size(),
                errc::internal_invariant_failure, "witness classes are not distinct");
        return x;
    }
    for (int c = 1; c < a.rank(); ++c)
        if (witness_conditions_hold(g, a.basic_set(c))) return a.basic_set(c);
    fail(errc::no_witness_found,
         "no basic set of " + inst.family + " satisfies the witness conditions");
}

}  // namespace schurkit

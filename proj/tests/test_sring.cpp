#include "doctest.h"

#include "schurkit/sring.hpp"

#include "test_support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace schurkit;
using schurkit_test::oracle_all_srings;

TEST_CASE("validate_partition basics") {
    Group c5 = make_group({5});
    SRing a = full_sring(c5);
    CHECK(a.rank() == 5);

    Group c4 = make_group({4});
    SRing b = SRing::validate_partition(c4, {{0}, {2}, {1, 3}});
    CHECK(b.rank() == 3);
    // (g + g^3)^2 = 2e + 2g^2
    int cls13 = b.class_of(1);
    CHECK(b.structure_constant(cls13, cls13, b.class_of(0)) == 2);
    CHECK(b.structure_constant(cls13, cls13, b.class_of(2)) == 2);

    CHECK_THROWS_AS(SRing::validate_partition(c4, {{0}, {1}, {2, 3}}), error);
    try {
        SRing::validate_partition(c4, {{0}, {1}, {2, 3}});
    } catch (const error& e) {
        CHECK(e.code() == errc::not_inverse_closed);
    }
    CHECK_THROWS_AS(SRing::validate_partition(c4, {{0, 1}, {2, 3}}), error);
    // inverse-closed but not multiplicatively closed over C5:
    Group c5b = make_group({5});
    CHECK_THROWS_AS(SRing::validate_partition(c5b, {{0}, {1, 4}, {2}, {3}}), error);
}

TEST_CASE("structure constant examples") {
    Group c9 = make_group({9});
    SRing t9 = rank2_sring(c9);
    CHECK(t9.structure_constant(1, 1, 1) == 7);
    CHECK(t9.structure_constant(1, 1, 0) == 8);

    Group c5 = make_group({5});
    SRing cyc5 = SRing::validate_partition(c5, {{0}, {1, 4}, {2, 3}});
    int x = cyc5.class_of(1);
    CHECK(cyc5.structure_constant(x, x, cyc5.class_of(2)) == 1);
    // c^{e}_{X, X^{-1}} = |X| for every class of every ring here
    for (const SRing& a : {t9, cyc5})
        for (int c = 0; c < a.rank(); ++c) {
            CHECK(a.structure_constant(c, a.inverse_class(c), 0) == a.class_size(c));
            for (int d = 0; d < a.rank(); ++d)
                if (d != a.inverse_class(c)) CHECK(a.structure_constant(c, d, 0) == 0);
        }
}

TEST_CASE("row sums match |X||Y|") {
    Group g = make_group({9, 2});
    SRing a = wielandt_closure_sets(g, {{g.index_of({1, 1})}});
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) {
            long long total = 0;
            for (auto [z, c] : a.product_row(i, j)) total += (long long)c * a.class_size(z);
            CHECK(total == (long long)a.class_size(i) * a.class_size(j));
        }
}

TEST_CASE("A-sets and A-subgroups") {
    Group c5 = make_group({5});
    SRing cyc5 = SRing::validate_partition(c5, {{0}, {1, 4}, {2, 3}});
    CHECK(cyc5.is_a_set({1, 4}));
    CHECK(cyc5.is_a_set({0}));
    CHECK(cyc5.is_a_set({0, 1, 2, 3, 4}));
    CHECK_FALSE(cyc5.is_a_set({1, 2}));

    Group g = make_group({9, 5});
    CHECK(a_subgroups(full_sring(g)).size() == all_subgroups(g).size());
    CHECK(a_subgroups(rank2_sring(g)).size() == 2);
}

TEST_CASE("radical, generated subgroup, power set") {
    Group c15 = make_group({15});
    std::vector<int> nonids;
    for (int x = 1; x < 15; ++x) nonids.push_back(x);
    CHECK(radical(c15, nonids).members == std::vector<int>{0});
    CHECK(radical(c15, {3, 6, 9, 12}).members == std::vector<int>{0});
    // a union of L-cosets has radical containing L
    CHECK(radical(c15, {1, 6, 11}).members == std::vector<int>{0, 5, 10});
    CHECK_THROWS_AS(radical(c15, {}), error);

    CHECK(generated_subgroup(c15, {5, 10}).members == std::vector<int>{0, 5, 10});
    CHECK(power_set(c15, {1, 2, 4, 8}, 2) == std::vector<int>{1, 2, 4, 8});
    CHECK(power_set(c15, {1, 2, 4, 8}, 1) == std::vector<int>{1, 2, 4, 8});
}

TEST_CASE("multiplier invariance") {
    Group c5 = make_group({5});
    for (auto classes : {std::vector<std::vector<int>>{{0}, {1, 4}, {2, 3}},
                         std::vector<std::vector<int>>{{0}, {1, 2, 3, 4}}}) {
        SRing a = SRing::validate_partition(c5, classes);
        for (int m = 1; m < 5; ++m) CHECK(multiplier_image(a, m) == a);
    }
    Group c15 = make_group({15});
    SRing a0 = wielandt_closure_sets(c15, {{1, 2, 4, 8}});
    CHECK_THROWS_AS(multiplier_image(a0, 3), error);
    auto perm = multiplier_class_perm(a0, -1);
    for (int c = 0; c < a0.rank(); ++c) CHECK(perm[c] == a0.inverse_class(c));
}

TEST_CASE("section S-rings") {
    Group g = make_group({9, 5});
    auto subs = all_subgroups(g);
    Subgroup full = subs.back(), order5, order3;
    for (auto& h : subs) {
        if (h.order() == 5) order5 = h;
        if (h.order() == 3) order3 = h;
    }
    SRing zg = full_sring(g);
    Section s = make_section(g, full, order3);
    CHECK(section_sring(zg, s).rank() == 15);  // (ZG)_S = Z(U/L)

    Group c15 = make_group({15});
    SRing a0 = wielandt_closure_sets(c15, {{1, 2, 4, 8}});
    Subgroup c5sub = subgroup_generated(c15, {3});
    auto [restr, view] = subgroup_sring(a0, c5sub);
    CHECK(restr.rank() == 2);
    Section qs = make_section(c15, Subgroup{{[] {
                                  std::vector<int> v(15);
                                  std::iota(v.begin(), v.end(), 0);
                                  return v;
                              }()}},
                              c5sub);
    CHECK(section_sring(a0, qs).rank() == 2);

    SRing t = rank2_sring(g);
    Section bad = make_section(g, full, order3);
    CHECK_THROWS_AS(section_sring(t, bad), error);  // order3 is not an A-subgroup of rank-2
}

TEST_CASE("intersection profile") {
    Group c15 = make_group({15});
    SRing a0 = wielandt_closure_sets(c15, {{1, 2, 4, 8}});
    Subgroup h = subgroup_generated(c15, {5});
    int cls = a0.class_of(1);
    int v = intersection_profile(a0, h, cls);
    CHECK(v == 1);
    CHECK(intersection_profile(a0, Subgroup{{0}}, cls) == 1);
    // X inside H: |X ∩ Hx| = |X|
    Subgroup h5 = subgroup_generated(c15, {3});
    int inner = a0.class_of(3);
    CHECK(intersection_profile(a0, h5, inner) == a0.class_size(inner));
}

TEST_CASE("wielandt closure basics") {
    Group g = make_group({9, 5});
    CHECK(wielandt_closure(g, {}) == rank2_sring(g));

    std::vector<std::vector<long long>> singles;
    for (int x = 0; x < g.order(); ++x) {
        std::vector<long long> v(g.order(), 0);
        v[x] = 1;
        singles.push_back(v);
    }
    CHECK(wielandt_closure(g, singles) == full_sring(g));

    Group c5 = make_group({5});
    SRing cyc = wielandt_closure_sets(c5, {{1, 4}});
    CHECK(cyc == SRing::validate_partition(c5, {{0}, {1, 4}, {2, 3}}));
}

TEST_CASE("closure is extensive, monotone, idempotent") {
    Group g = make_group({2, 2, 3});
    std::vector<std::vector<int>> seeds1 = {{1, 5}};
    std::vector<std::vector<int>> seeds2 = {{1, 5}, {7}};
    SRing a1 = wielandt_closure_sets(g, seeds1);
    SRing a2 = wielandt_closure_sets(g, seeds2);
    // extensive: every seed is an A-set of its closure
    CHECK(a1.is_a_set({1, 5}));
    CHECK(a2.is_a_set({1, 5}));
    CHECK(a2.is_a_set({7}));
    // monotone: closure with more seeds refines
    for (int c = 0; c < a1.rank(); ++c) CHECK(a2.is_a_set(a1.basic_set(c)));
    // idempotent: reclosing the classes reproduces the ring
    CHECK(wielandt_closure_sets(g, a1.classes()) == a1);
    CHECK(wielandt_closure_sets(g, a2.classes()) == a2);
}

TEST_CASE("generated subgroup and radical of A-sets are A-subgroups") {
    Group c15 = make_group({15});
    SRing a0 = wielandt_closure_sets(c15, {{1, 2, 4, 8}});
    for (int c = 0; c < a0.rank(); ++c) {
        CHECK(a0.is_a_set(generated_subgroup(c15, a0.basic_set(c)).members));
        CHECK(a0.is_a_set(radical(c15, a0.basic_set(c)).members));
    }
}

TEST_CASE("validate agrees with the axiom oracle on small groups") {
    for (auto spec : {std::vector<int>{4}, std::vector<int>{2, 2}, std::vector<int>{5},
                      std::vector<int>{6}, std::vector<int>{7}, std::vector<int>{8}}) {
        Group g = make_group(spec);
        auto oracle = oracle_all_srings(g);
        int accepted = 0;
        // the oracle enumerates partitions; validate_partition must accept exactly those
        for (auto& classes : oracle) {
            CHECK_NOTHROW(SRing::validate_partition(g, classes));
            ++accepted;
        }
        CHECK(accepted == (int)oracle.size());
    }
    // spot check: a non-S-ring partition is rejected while the oracle misses it too
    Group c8 = make_group({8});
    CHECK_THROWS_AS(SRing::validate_partition(c8, {{0}, {1, 7}, {2, 3, 5, 6}, {4}}), error);
}

TEST_CASE("size profile") {
    Group c15 = make_group({15});
    SRing a0 = wielandt_closure_sets(c15, {{1, 2, 4, 8}});
    CHECK(a0.size_profile() == std::vector<int>{2, 4});
    CHECK(rank2_sring(c15).size_profile() == std::vector<int>{14});
}

TEST_CASE("validate accepts exactly the oracle partitions on tiny groups") {
    // enumerate every partition of G with {e} singleton and compare verdicts
    for (auto spec : {std::vector<int>{4}, std::vector<int>{5}, std::vector<int>{6}}) {
        Group g = make_group(spec);
        int n = g.order();
        auto oracle = oracle_all_srings(g);
        std::set<std::vector<std::vector<int>>> accepted_by_oracle;
        for (auto classes : oracle) {
            for (auto& c : classes) std::sort(c.begin(), c.end());
            std::sort(classes.begin(), classes.end());
            accepted_by_oracle.insert(classes);
        }
        std::vector<int> assign(n, 0);
        auto rec = [&](auto&& self, int x, int maxc) -> void {
            if (x == n) {
                std::vector<std::vector<int>> classes(maxc);
                for (int e = 0; e < n; ++e) classes[assign[e]].push_back(e);
                bool ok = true;
                try {
                    SRing::validate_partition(g, classes);
                } catch (const error&) {
                    ok = false;
                }
                for (auto& c : classes) std::sort(c.begin(), c.end());
                std::sort(classes.begin(), classes.end());
                CHECK(ok == (accepted_by_oracle.count(classes) > 0));
                return;
            }
            for (int c = 1; c <= maxc; ++c) {
                assign[x] = c;
                self(self, x + 1, std::max(maxc, c + 1));
            }
        };
        rec(rec, 1, 1);
    }
}

TEST_CASE("A-subgroup orders of the order-15 subdirect ring") {
    Group c15 = make_group({15});
    SRing a0 = wielandt_closure_sets(c15, {{1, 2, 4, 8}});
    std::vector<int> orders;
    for (auto& h : a_subgroups(a0)) orders.push_back(h.order());
    CHECK(orders == std::vector<int>{1, 3, 5, 15});
}

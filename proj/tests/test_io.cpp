#include "doctest.h"

#include "schurkit/constructions.hpp"
#include "schurkit/json_io.hpp"

using namespace schurkit;

TEST_CASE("sring json round trip") {
    for (const SRing& a : {build_A0(5).sring, build_A_star(2, 'E', 5).sring,
                           rank2_sring(make_group({9, 2}))}) {
        SRing back = sring_from_json(sring_to_json(a));
        CHECK(back == a);
    }
    // malformed input is rejected with a validation error
    json bad = {{"group", "4"}, {"classes", {{0}, {1}, {2, 3}}}};
    CHECK_THROWS_AS(sring_from_json(bad), error);
}

TEST_CASE("structure constant export") {
    SRing a = build_A0(5).sring;
    json rows = structure_constants_to_json(a);
    for (auto& row : rows) {
        REQUIRE(row.size() == 4);
        CHECK(a.structure_constant(row[0], row[1], row[2]) == row[3].get<int>());
    }
    // every nonzero constant appears
    long long nonzero = 0;
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) nonzero += (long long)a.product_row(i, j).size();
    CHECK((long long)rows.size() == nonzero);
}

TEST_CASE("subdirect spec json round trip") {
    Group c3 = make_group({3}), c5 = make_group({5});
    SubdirectSpec spec;
    spec.h1 = c3;
    spec.h2 = c5;
    spec.k_gens = {inversion_map(c3)};
    spec.m_gens = {multiplier_map(c5, 2)};
    spec.m0_gens = {multiplier_map(c5, 4)};
    spec.psi_rep = multiplier_map(c5, 2);
    SubdirectSpec back = subdirect_spec_from_json(subdirect_spec_to_json(spec));
    auto w1 = subdirect(spec);
    auto w2 = subdirect(back);
    REQUIRE(w1.elements.size() == w2.elements.size());
    CHECK(cyclotomic(w1.pg.product, w1.elements) == cyclotomic(w2.pg.product, w2.elements));
}

TEST_CASE("graph json forms") {
    json by_group = {{"group", "9x2"}, {"connection_set", {1, 17}}};
    PairColoring c1 = coloring_from_json(by_group);
    CHECK(c1.n == 18);

    Group g = parse_group_spec("9x2");
    json arcs = json::array();
    for (int u = 0; u < 18; ++u)
        for (int x : {1, 17}) arcs.push_back({u, g.add(u, x)});
    PairColoring c2 = coloring_from_json({{"n", 18}, {"arcs", arcs}});
    CHECK(c1.color == c2.color);
}

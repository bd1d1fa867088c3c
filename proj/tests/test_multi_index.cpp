#include <random>

#include "doctest.h"
#include "holocurve/multi_index.hpp"

using namespace holocurve;

TEST_CASE("total degree") {
    CHECK(MultiIndex({0, 0}).total_degree() == 0);
    CHECK(MultiIndex({1, 2, 0}).total_degree() == 3);
    CHECK(MultiIndex::unit(3, 1).total_degree() == 1);
}

TEST_CASE("multinomial values") {
    CHECK(multinomial(MultiIndex({2, 1}), MultiIndex({1, 0})) == 2);
    CHECK(multinomial(MultiIndex({4, 3}), MultiIndex({0, 0})) == 1);
    CHECK(multinomial(MultiIndex({3}), MultiIndex({1})) == 3);
    CHECK_THROWS_AS(multinomial(MultiIndex({1}), MultiIndex({2})), std::invalid_argument);
}

TEST_CASE("enumeration order and bounds") {
    auto g = enumerate_total_degree(2, 1);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == MultiIndex({0, 0}));
    CHECK(g[1] == MultiIndex({1, 0}));
    CHECK(g[2] == MultiIndex({0, 1}));

    auto h = enumerate_total_degree(1, 2);
    REQUIRE(h.size() == 3);
    CHECK(h[2] == MultiIndex({2}));

    auto e = enumerate_entrywise(MultiIndex({1, 1}));
    REQUIRE(e.size() == 4);
    CHECK(e[0] == MultiIndex({0, 0}));
    CHECK(e[1] == MultiIndex({1, 0}));
    CHECK(e[2] == MultiIndex({0, 1}));
    CHECK(e[3] == MultiIndex({1, 1}));
}

TEST_CASE("enumeration is strictly ordered, no duplicates") {
    auto g = enumerate_total_degree(3, 5);
    for (size_t k = 1; k < g.size(); ++k) {
        CHECK(MultiIndex::grlex_less(g[k - 1], g[k]));
        CHECK_FALSE(g[k - 1] == g[k]);
    }
}

TEST_CASE("Pascal identity for multinomials") {
    // multinomial(J+e_l, K) = multinomial(J, K-e_l) + multinomial(J, K),
    // absent terms contributing zero
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(0, 4), dim(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        int m = dim(rng);
        std::vector<int> je(m), ke(m);
        for (int k = 0; k < m; ++k) je[k] = entry(rng);
        MultiIndex J(je);
        int l = std::uniform_int_distribution<int>(0, m - 1)(rng);
        MultiIndex Jl = J.plus_unit(l);
        for (int k = 0; k < m; ++k) ke[k] = std::uniform_int_distribution<int>(0, Jl[k])(rng);
        MultiIndex K(ke);
        if (K[l] < 1) continue;
        std::uint64_t lhs = multinomial(Jl, K);
        MultiIndex Kml = K.minus(MultiIndex::unit(m, l));
        std::uint64_t rhs = (Kml.leq(J) ? multinomial(J, Kml) : 0) +
                            (K.leq(J) ? multinomial(J, K) : 0);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("IndexTable lookup and splits") {
    auto tab = IndexTable::get(2, 3);
    for (int pos = 0; pos < tab->size(); ++pos)
        CHECK(tab->position(tab->at(pos)) == pos);
    CHECK(tab->position(MultiIndex({4, 0})) == -1);
    for (int out = 0; out < tab->size(); ++out) {
        for (const auto& [a, b] : tab->splits(out))
            CHECK(tab->at(a).plus(tab->at(b)) == tab->at(out));
    }
}

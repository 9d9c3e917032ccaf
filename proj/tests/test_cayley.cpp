#include <bit>

#include "doctest.h"
#include "hamflow/cayley.hpp"
#include "test_util.hpp"

using namespace hamflow;
using hamflow::testutil::expect_error;

namespace {

CayleyGraph cyc(int n, std::vector<int> gens) {
    AbelianGroup G(std::vector<int>{n});
    std::vector<GroupElement> S;
    for (int g : gens) S.push_back({g});
    return build_graph(G, S);
}

}  // namespace

TEST_CASE("build_graph validation") {
    AbelianGroup Z12(std::vector<int>{12});
    expect_error(ErrorCode::IdentityInS, [&] { build_graph(Z12, {{1}, {11}, {0}}); });
    expect_error(ErrorCode::NotSymmetric, [&] { build_graph(Z12, {{1}, {6}}); });
    expect_error(ErrorCode::NotGenerating, [&] { build_graph(Z12, {{2}, {10}, {6}}); });
    expect_error(ErrorCode::NotGenerating, [&] { build_graph(Z12, {}); });
}

TEST_CASE("graph structure") {
    auto X = cyc(6, {1, 5, 3});
    CHECK(X.degree() == 3);
    CHECK(X.vertex_count() == 6);
    CHECK(X.edge_count() == 9);
    CHECK(X.to_string() == "Cay(Z6; {1,3,5})");
    for (int v = 0; v < 6; ++v) {
        CHECK(std::popcount(X.masks()[v]) == 3);
        CHECK(((X.masks()[v] >> v) & 1) == 0);
    }
    // Neighbors follow the sorted connection set.
    CHECK(X.neighbor(2, 0) == 3);
    CHECK(X.neighbor(2, 1) == 5);
    CHECK(X.neighbor(2, 2) == 1);

    // Duplicated generators collapse.
    AbelianGroup Z5(std::vector<int>{5});
    auto Y = build_graph(Z5, {{1}, {4}, {1}});
    CHECK(Y.degree() == 2);
}

TEST_CASE("bipartiteness") {
    CHECK(cyc(6, {1, 5, 3}).is_bipartite());  // K_{3,3}
    CHECK_FALSE(cyc(5, {1, 4}).is_bipartite());
    CHECK(cyc(8, {1, 7}).is_bipartite());
    CHECK_FALSE(cyc(10, {2, 8, 3, 7}).is_bipartite());
    auto X = cyc(6, {1, 5, 3});
    const auto& side = X.bipartition();
    REQUIRE(side.size() == 6);
    CHECK(side[0] == 0);
    for (int v = 0; v < 6; ++v) {
        for (int k = 0; k < 3; ++k) CHECK(side[v] != side[X.neighbor(v, k)]);
    }
    CHECK(cyc(5, {1, 4}).bipartition().empty());
}

TEST_CASE("classify: degree at most two") {
    CHECK(classify(cyc(7, {1, 6})).tag == Tag::DegreeAtMostTwo);
    AbelianGroup Z2(std::vector<int>{2});
    CHECK(classify(build_graph(Z2, {{1}})).tag == Tag::DegreeAtMostTwo);
}

TEST_CASE("classify: cubic graphs") {
    auto m3 = classify(cyc(6, {1, 5, 3}));
    CHECK(m3.tag == Tag::MobiusLadder);
    CHECK(m3.params.at("n") == 3);

    auto m6 = classify(cyc(12, {1, 11, 6}));
    CHECK(m6.tag == Tag::MobiusLadder);
    CHECK(m6.params.at("n") == 6);

    // Same graph presented with relabeled generators.
    auto m7 = classify(cyc(14, {3, 11, 7}));
    CHECK(m7.tag == Tag::MobiusLadder);
    CHECK(m7.params.at("n") == 7);

    AbelianGroup G24(std::vector<int>{2, 4});
    auto p4 = classify(build_graph(G24, {{0, 1}, {0, 3}, {1, 0}}));
    CHECK(p4.tag == Tag::PrismOverCycle);
    CHECK(p4.params.at("n") == 4);

    // Prism over C_5 inside a cyclic group.
    auto p5 = classify(cyc(10, {2, 8, 5}));
    CHECK(p5.tag == Tag::PrismOverCycle);
    CHECK(p5.params.at("n") == 5);

    // The cube graph is the prism over C_4 even when presented on Z_2^3.
    AbelianGroup Z222({2, 2, 2});
    auto cube = classify(build_graph(Z222, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(cube.tag == Tag::PrismOverCycle);
    CHECK(cube.params.at("n") == 4);

    // K_4 stays outside the ladder families.
    CHECK(classify(cyc(4, {1, 3, 2})).tag == Tag::OtherCubic);
    AbelianGroup Z22({2, 2});
    CHECK(classify(build_graph(Z22, {{0, 1}, {1, 0}, {1, 1}})).tag == Tag::OtherCubic);
}

TEST_CASE("classify: square of an even cycle") {
    auto sq8 = classify(cyc(8, {1, 7, 2, 6}));
    CHECK(sq8.tag == Tag::SquareOfEvenCycle);
    CHECK(sq8.params.at("n") == 8);
    CHECK(sq8.roles.at("t") == 2 * sq8.roles.at("s") % 8);

    // Octahedron.
    CHECK(classify(cyc(6, {1, 5, 2, 4})).tag == Tag::SquareOfEvenCycle);

    // Odd square is generic odd.
    CHECK(classify(cyc(9, {1, 8, 2, 7})).tag == Tag::OddOrderGeneric);

    // Degree-4 circulant without the doubling relation.
    CHECK(classify(cyc(12, {1, 11, 5, 7})).tag == Tag::GenericEvenOrder);
}

TEST_CASE("classify: weird four-valent case") {
    auto w = classify(cyc(10, {2, 8, 3, 7}));
    CHECK(w.tag == Tag::Weird4);
    CHECK(w.roles.at("t") == 2);
    CHECK(w.roles.at("u") == 3);
    CHECK(w.params.at("m") == 5);
    CHECK(w.params.at("n") == 2);

    auto w2 = classify(cyc(30, {12, 18, 5, 25}));
    CHECK(w2.tag == Tag::Weird4);
    CHECK(w2.params.at("m") == 5);
    CHECK(w2.params.at("n") == 6);

    // Bipartite companion falls through to the generic label.
    CHECK(classify(cyc(10, {1, 9, 3, 7})).tag == Tag::GenericEvenOrder);
    // Order divisible by 4 falls through as well.
    CHECK(classify(cyc(12, {3, 9, 4, 8})).tag == Tag::GenericEvenOrder);
}

TEST_CASE("classify: K3 box K3 and generic odd") {
    AbelianGroup Z33({3, 3});
    CHECK(classify(build_graph(Z33, {{1, 0}, {2, 0}, {0, 1}, {0, 2}})).tag == Tag::K3xK3);
    // Any independent generating pair gives the same product graph.
    CHECK(classify(build_graph(Z33, {{1, 0}, {2, 0}, {1, 1}, {2, 2}})).tag == Tag::K3xK3);
    // The circulant of order 9 with doubling is not the box product.
    CHECK(classify(cyc(9, {1, 8, 3, 6})).tag == Tag::OddOrderGeneric);
    CHECK(classify(cyc(7, {1, 6, 2, 5})).tag == Tag::OddOrderGeneric);
    CHECK(classify(cyc(9, {1, 8, 2, 7, 4, 5})).tag == Tag::OddOrderGeneric);
}

TEST_CASE("classify: generic even order") {
    CHECK(classify(cyc(8, {1, 7, 3, 5})).tag == Tag::GenericEvenOrder);
    CHECK(classify(cyc(6, {1, 5, 2, 4, 3})).tag == Tag::GenericEvenOrder);
    AbelianGroup G26({2, 6});
    CHECK(classify(build_graph(G26, {{1, 0}, {0, 1}, {0, 5}, {1, 3}})).tag ==
          Tag::GenericEvenOrder);
}

TEST_CASE("classify invariant under group automorphism relabeling") {
    auto a = classify(cyc(12, {1, 11, 6}));
    auto b = classify(cyc(12, {5, 7, 6}));  // image under x -> 5x
    CHECK(a.tag == b.tag);
    CHECK(a.params == b.params);

    CHECK(classify(cyc(9, {2, 7, 6, 3})).tag == classify(cyc(9, {1, 8, 3, 6})).tag);
}

TEST_CASE("graph isomorphism") {
    auto mob = cyc(8, {1, 7, 4});
    AbelianGroup G24({2, 4});
    auto prism = build_graph(G24, {{0, 1}, {0, 3}, {1, 0}});
    CHECK_FALSE(graph_isomorphism(mob, prism).has_value());

    auto c6a = cyc(6, {1, 5});
    auto c6b = cyc(6, {2, 4, 3});  // not even a cycle; degree differs
    CHECK_FALSE(graph_isomorphism(c6a, c6b).has_value());

    auto m7a = cyc(14, {1, 13, 7});
    auto m7b = cyc(14, {3, 11, 7});
    auto map = graph_isomorphism(m7a, m7b);
    REQUIRE(map.has_value());
    // Verify it really is an isomorphism.
    for (int v = 0; v < 14; ++v) {
        for (int k = 0; k < 3; ++k) {
            int w = m7a.neighbor(v, k);
            bool adj = false;
            for (int k2 = 0; k2 < 3; ++k2) adj |= m7b.neighbor((*map)[v], k2) == (*map)[w];
            CHECK(adj);
        }
    }
}

TEST_CASE("predicted quotients table") {
    auto pq = [](const CayleyGraph& X) { return predicted_quotients(classify(X), X); };

    SUBCASE("cycles have everything trivial") {
        auto q = pq(cyc(7, {1, 6}));
        CHECK(q.fh.trivial());
        CHECK(q.eh.trivial());
    }
    SUBCASE("bipartite Mobius ladder") {
        auto q = pq(cyc(6, {1, 5, 3}));
        CHECK(q.fh == QuotientDescriptor{0, {3}});
        CHECK(q.eh == QuotientDescriptor{0, {3}});
    }
    SUBCASE("non-bipartite Mobius ladder") {
        auto q = pq(cyc(12, {1, 11, 6}));
        CHECK(q.fh == QuotientDescriptor{0, {2}});
        CHECK(q.eh.trivial());
    }
    SUBCASE("bipartite prism") {
        AbelianGroup G24({2, 4});
        auto q = pq(build_graph(G24, {{0, 1}, {0, 3}, {1, 0}}));
        CHECK(q.fh == QuotientDescriptor{0, {3}});
        CHECK(q.eh == QuotientDescriptor{0, {3}});
    }
    SUBCASE("non-bipartite prism") {
        auto q = pq(cyc(10, {2, 8, 5}));
        CHECK(q.fh == QuotientDescriptor{1, {4}});
        CHECK(q.eh == QuotientDescriptor{1, {4}});
    }
    SUBCASE("K4") {
        auto q = pq(cyc(4, {1, 3, 2}));
        CHECK(q.fh == QuotientDescriptor{0, {2}});
        CHECK(q.eh.trivial());
    }
    SUBCASE("square of C_8") {
        auto q = pq(cyc(8, {1, 7, 2, 6}));
        CHECK(q.fh == QuotientDescriptor{0, {6}});
        CHECK(q.eh == QuotientDescriptor{0, {3}});
    }
    SUBCASE("square of C_6") {
        auto q = pq(cyc(6, {1, 5, 2, 4}));
        CHECK(q.fh == QuotientDescriptor{0, {4}});
        CHECK(q.eh == QuotientDescriptor{0, {2}});
    }
    SUBCASE("weird case") {
        auto q = pq(cyc(10, {2, 8, 3, 7}));
        CHECK(q.fh == QuotientDescriptor{0, {4}});
        CHECK(q.eh == QuotientDescriptor{0, {2}});
    }
    SUBCASE("K3 box K3") {
        AbelianGroup Z33({3, 3});
        auto q = pq(build_graph(Z33, {{1, 0}, {2, 0}, {0, 1}, {0, 2}}));
        CHECK(q.fh == QuotientDescriptor{0, {3}});
        CHECK(q.eh == QuotientDescriptor{0, {3}});
    }
    SUBCASE("generic odd order") {
        auto q = pq(cyc(9, {1, 8, 3, 6}));
        CHECK(q.fh.trivial());
        CHECK(q.eh.trivial());
    }
    SUBCASE("generic even order, bipartite") {
        auto q = pq(cyc(8, {1, 7, 3, 5}));
        CHECK(q.fh.trivial());
        CHECK(q.eh.trivial());
    }
    SUBCASE("generic even order, non-bipartite") {
        auto q = pq(cyc(6, {1, 5, 2, 4, 3}));
        CHECK(q.fh == QuotientDescriptor{0, {2}});
        CHECK(q.eh.trivial());
    }
}

TEST_CASE("quotient descriptor rendering") {
    CHECK(QuotientDescriptor{}.to_string() == "0");
    CHECK(QuotientDescriptor{1, {4}}.to_string() == "Z + Z_4");
    CHECK(QuotientDescriptor{2, {}}.to_string() == "Z^2");
    CHECK(QuotientDescriptor{0, {2, 6}}.to_string() == "Z_2 + Z_6");
}

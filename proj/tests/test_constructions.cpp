#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "hamflow/abelian_group.hpp"
#include "hamflow/cayley.hpp"
#include "hamflow/constructions.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/flows.hpp"
#include "hamflow/lattice.hpp"
#include "hamflow/path_dsl.hpp"
#include "test_util.hpp"

using namespace hamflow;
using hamflow::testutil::expect_error;

namespace {

CayleyGraph graph(const std::vector<int>& factors, const std::vector<GroupElement>& conn) {
    return build_graph(AbelianGroup(factors), conn);
}

Bindings st(GroupElement s, GroupElement t) {
    Bindings b;
    b.elements["s"] = std::move(s);
    b.elements["t"] = std::move(t);
    return b;
}

Bindings stu(GroupElement s, GroupElement t, GroupElement u) {
    Bindings b = st(std::move(s), std::move(t));
    b.elements["u"] = std::move(u);
    return b;
}

void check_spanning(const std::string& name, const CayleyGraph& X, const Bindings& b) {
    Walk w = named_cycle(name, X, b);
    CHECK(classify_walk(X, w) == WalkKind::HamiltonianCycle);
    CHECK(static_cast<int>(w.steps.size()) == X.vertex_count());
}

/* Row span of every oriented square [v](g, h, g^-1, h^-1). */
IntegerMatrix square_lattice(const CayleyGraph& X, const CanonicalEdges& E) {
    const AbelianGroup& G = X.group();
    const auto& conn = X.conn().elements();
    std::vector<std::vector<std::int64_t>> rows;
    for (int v = 0; v < X.vertex_count(); ++v) {
        GroupElement base = G.element_of(v);
        for (size_t i = 0; i < conn.size(); ++i)
            for (size_t j = i + 1; j < conn.size(); ++j) {
                if (G.neg(conn[i]) == conn[j]) continue;
                rows.push_back(basic_four_cycle(E, base, conn[i], conn[j]).coeffs);
            }
    }
    return IntegerMatrix::from_rows(rows, static_cast<size_t>(E.count()));
}

std::set<int> box_of(const AbelianGroup& G, const GroupElement& s, const GroupElement& t,
                     const GroupElement& u) {
    std::set<int> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 2; ++k)
                out.insert(G.index_of(G.add(G.add(G.mul(s, i), G.mul(t, j)), G.mul(u, k))));
    return out;
}

Walk expand_on(const CayleyGraph& X, const std::string& text, const Bindings& b) {
    return expand_walk(*parse_path(text), X.group(), b);
}

}  // namespace

TEST_CASE("catalog shape") {
    const auto& cat = construction_catalog();
    CHECK(cat.size() == 11);
    std::set<std::string> names;
    for (const auto& e : cat) {
        names.insert(e.name);
        CHECK(!e.summary.empty());
        CHECK(!e.templates.empty());
        for (const auto& text : e.templates) CHECK_NOTHROW(parse_path(text));
    }
    CHECK(names == std::set<std::string>{"Hstar", "Hminus-4cyc", "E=H+2F-even", "H1H2-odd",
                                         "deg5-H1", "Mobius2layers-H", "PrismChords-H", "Ho",
                                         "He", "Cab", "OddHeight-C"});
    CHECK(catalog_entry("Hstar").element_symbols == std::vector<std::string>{"s", "t"});
    CHECK(catalog_entry("Cab").int_symbols == std::vector<std::string>{"a", "b"});
    expect_error(ErrorCode::UnknownName, [] { return catalog_entry("nope"); });
    auto X = graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}});
    expect_error(ErrorCode::UnknownName, [&] { return named_cycle("nope", X, {}); });
}

TEST_CASE("Hstar and Hminus-4cyc") {
    auto z4z3 = graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}});
    auto z12 = graph({12}, {{3}, {9}, {1}, {11}});
    auto z4z4 = graph({4, 4}, {{1, 0}, {3, 0}, {0, 1}, {0, 3}});
    for (const char* name : {"Hstar", "Hminus-4cyc"}) {
        check_spanning(name, z4z3, st({1, 0}, {0, 1}));
        check_spanning(name, z12, st({3}, {1}));
        check_spanning(name, z4z4, st({1, 0}, {0, 1}));
    }

    auto z3z3 = graph({3, 3}, {{1, 0}, {2, 0}, {0, 1}, {0, 2}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("Hstar", z3z3, st({1, 0}, {0, 1})); });
    auto z2z4 = graph({2, 4}, {{0, 1}, {0, 3}, {1, 0}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("Hstar", z2z4, st({0, 1}, {1, 0})); });
    auto z2z2z3 = graph({2, 2, 3}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 2}});
    expect_error(ErrorCode::HypothesisViolated, [&] {
        return named_cycle("Hminus-4cyc", z2z2z3, st({1, 0, 0}, {0, 0, 1}));
    });
    expect_error(ErrorCode::UnboundSymbol,
                 [&] { return named_cycle("Hstar", z4z3, Bindings{}); });
}

TEST_CASE("E=H+2F-even sweeps") {
    check_spanning("E=H+2F-even", graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}}),
                   st({1, 0}, {0, 1}));
    check_spanning("E=H+2F-even", graph({10}, {{1}, {9}, {2}, {8}}), st({1}, {2}));
    check_spanning("E=H+2F-even", graph({2, 6}, {{1, 0}, {0, 1}, {0, 5}}),
                   st({1, 0}, {0, 1}));

    // explicit subgroup cycle through two generators
    auto mixed = graph({2, 2, 3}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 2}});
    Bindings b;
    b.elements["s"] = {1, 0, 0};
    b.elements["t_1"] = {0, 0, 1};
    b.elements["t_2"] = {0, 0, 1};
    b.elements["t_3"] = {0, 1, 0};
    b.elements["t_4"] = {0, 0, 2};
    b.elements["t_5"] = {0, 0, 2};
    b.elements["t_6"] = {0, 1, 0};
    check_spanning("E=H+2F-even", mixed, b);

    // odd index
    auto z3z3 = graph({3, 3}, {{1, 0}, {2, 0}, {0, 1}, {0, 2}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("E=H+2F-even", z3z3, st({1, 0}, {0, 1})); });
    // odd trace prefix at s^-m
    auto z10 = graph({10}, {{3}, {7}, {4}, {6}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("E=H+2F-even", z10, st({3}, {4})); });
    // shorthand t spans a proper part of the subgroup
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("E=H+2F-even", mixed, st({1, 0, 0}, {0, 0, 1})); });
    // repeated vertex on the subgroup trace
    Bindings bad;
    bad.elements["s"] = {1, 0};
    bad.elements["t_1"] = {0, 1};
    bad.elements["t_2"] = {0, 2};
    bad.elements["t_3"] = {0, 1};
    auto z4z3 = graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("E=H+2F-even", z4z3, bad); });
    // missing t_2 once t_1 is bound
    Bindings partial;
    partial.elements["s"] = {1, 0};
    partial.elements["t_1"] = {0, 1};
    expect_error(ErrorCode::UnboundSymbol,
                 [&] { return named_cycle("E=H+2F-even", z4z3, partial); });
}

TEST_CASE("H1H2-odd variants") {
    auto z4z3 = graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}});
    auto z10 = graph({10}, {{1}, {9}, {2}, {8}});
    auto z3z3 = graph({3, 3}, {{1, 0}, {2, 0}, {0, 1}, {0, 2}});
    auto z6z3 = graph({6, 3}, {{1, 0}, {5, 0}, {0, 1}, {0, 2}});

    check_spanning("H1H2-odd", z4z3, st({1, 0}, {0, 1}));
    check_spanning("H1H2-odd", z10, st({1}, {2}));
    check_spanning("H1H2-odd", z3z3, st({1, 0}, {0, 1}));
    check_spanning("H1H2-odd", z6z3, st({1, 0}, {0, 1}));
    for (auto* pair : {&z4z3, &z10, &z6z3}) {
        Bindings b = pair == &z10 ? st({1}, {2}) : st({1, 0}, {0, 1});
        b.ints["which"] = 2;
        check_spanning("H1H2-odd", *pair, b);
    }

    // variant 2 requires even index
    {
        Bindings b = st({1, 0}, {0, 1});
        b.ints["which"] = 2;
        expect_error(ErrorCode::HypothesisViolated,
                     [&] { return named_cycle("H1H2-odd", z3z3, b); });
    }
    {
        Bindings b = st({1, 0}, {0, 1});
        b.ints["which"] = 3;
        expect_error(ErrorCode::HypothesisViolated,
                     [&] { return named_cycle("H1H2-odd", z4z3, b); });
    }
    // s an involution
    auto z2z6 = graph({2, 6}, {{1, 0}, {0, 1}, {0, 5}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("H1H2-odd", z2z6, st({1, 0}, {0, 1})); });
    // even subgroup order
    auto z4z4 = graph({4, 4}, {{1, 0}, {3, 0}, {0, 1}, {0, 3}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("H1H2-odd", z4z4, st({1, 0}, {0, 1})); });
    // odd trace prefix
    auto z10b = graph({10}, {{3}, {7}, {4}, {6}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("H1H2-odd", z10b, st({3}, {4})); });
}

TEST_CASE("H1 minus H2 plus twice the subgroup cycle lies in the square span") {
    auto X = graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}});
    CanonicalEdges E(X);
    Bindings b1 = st({1, 0}, {0, 1});
    Bindings b2 = st({1, 0}, {0, 1});
    b2.ints["which"] = 2;
    Flow f1 = cycle_to_flow(E, named_cycle("H1H2-odd", X, b1));
    Flow f2 = cycle_to_flow(E, named_cycle("H1H2-odd", X, b2));
    Walk sub{{0, 0}, {{0, 1}, {0, 1}, {0, 1}}};
    Flow fsub = cycle_to_flow(E, sub);
    Flow combo = add_flows(add_flows(f1, scale_flow(-1, f2)), scale_flow(2, fsub));
    CHECK(lattice_contains(square_lattice(X, E), combo.coeffs));
}

TEST_CASE("deg5-H1 sweeps") {
    auto z2z3z3 = graph({2, 3, 3},
                        {{1, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1}, {0, 0, 2}});
    check_spanning("deg5-H1", z2z3z3, stu({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));
    auto z2z15 = graph({2, 15}, {{1, 0}, {0, 5}, {0, 10}, {0, 3}, {0, 12}});
    check_spanning("deg5-H1", z2z15, stu({1, 0}, {0, 5}, {0, 3}));
    check_spanning("deg5-H1", z2z15, stu({1, 0}, {0, 3}, {0, 5}));

    // t generates the whole odd part
    auto z2z9 = graph({2, 9}, {{1, 0}, {0, 1}, {0, 8}, {0, 2}, {0, 7}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("deg5-H1", z2z9, stu({1, 0}, {0, 1}, {0, 2})); });
    // s not an involution
    expect_error(ErrorCode::HypothesisViolated, [&] {
        return named_cycle("deg5-H1", z2z3z3, stu({0, 1, 0}, {0, 0, 1}, {1, 0, 0}));
    });
    // even odd-part order
    auto z2z12 = graph({2, 12}, {{1, 0}, {0, 1}, {0, 11}, {0, 2}, {0, 10}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("deg5-H1", z2z12, stu({1, 0}, {0, 1}, {0, 2})); });
}

TEST_CASE("Mobius2layers-H sweeps") {
    check_spanning("Mobius2layers-H", graph({2, 4}, {{0, 1}, {0, 3}, {0, 2}, {1, 0}}),
                   stu({0, 2}, {0, 1}, {1, 0}));
    auto z2z6 = graph({2, 6}, {{0, 1}, {0, 5}, {0, 3}, {1, 0}});
    check_spanning("Mobius2layers-H", z2z6, stu({0, 3}, {0, 1}, {1, 0}));
    check_spanning("Mobius2layers-H", graph({2, 8}, {{0, 1}, {0, 7}, {0, 4}, {1, 0}}),
                   stu({0, 4}, {0, 1}, {1, 0}));
    // the crossing involution may carry a shift
    auto shifted = graph({2, 6}, {{0, 1}, {0, 5}, {0, 3}, {1, 3}});
    check_spanning("Mobius2layers-H", shifted, stu({0, 3}, {0, 1}, {1, 3}));

    // s must be the half-turn of t
    auto z2z4 = graph({2, 4}, {{1, 0}, {0, 1}, {0, 3}, {0, 2}});
    expect_error(ErrorCode::HypothesisViolated, [&] {
        return named_cycle("Mobius2layers-H", z2z4, stu({1, 0}, {0, 1}, {0, 2}));
    });
    // u inside <t>
    expect_error(ErrorCode::HypothesisViolated, [&] {
        return named_cycle("Mobius2layers-H", z2z4, stu({0, 2}, {0, 1}, {0, 2}));
    });
    // |t| odd
    auto z2z5 = graph({2, 5}, {{0, 1}, {0, 4}, {1, 0}});
    expect_error(ErrorCode::HypothesisViolated, [&] {
        return named_cycle("Mobius2layers-H", z2z5, stu({1, 0}, {0, 1}, {1, 0}));
    });
}

TEST_CASE("PrismChords-H sweeps") {
    auto z10 = graph({10}, {{5}, {2}, {8}, {4}, {6}});
    check_spanning("PrismChords-H", z10, stu({5}, {2}, {4}));
    auto z14 = graph({14}, {{7}, {2}, {12}, {8}, {6}});
    check_spanning("PrismChords-H", z14, stu({7}, {2}, {8}));
    auto z2z5 = graph({2, 5}, {{1, 0}, {0, 1}, {0, 4}, {0, 2}, {0, 3}});
    check_spanning("PrismChords-H", z2z5, stu({1, 0}, {0, 1}, {0, 2}));

    // odd chord exponent: the inverse binding is the valid one
    auto z10b = graph({10}, {{5}, {2}, {8}, {6}, {4}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("PrismChords-H", z10b, stu({5}, {2}, {6})); });
    check_spanning("PrismChords-H", z10b, stu({5}, {2}, {4}));
    // even |t|
    auto z12 = graph({12}, {{6}, {1}, {11}, {2}, {10}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("PrismChords-H", z12, stu({6}, {1}, {2})); });
    // <t> not of index 2
    auto z15 = graph({15}, {{5}, {10}, {1}, {14}, {2}, {13}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("PrismChords-H", z15, stu({5}, {1}, {2})); });
}

TEST_CASE("Ho and He sweeps") {
    auto box = graph({3, 3, 2}, {{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1}});
    auto z18 = graph({18}, {{1}, {17}, {3}, {15}, {9}});
    for (const char* name : {"Ho", "He"}) {
        check_spanning(name, box, stu({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));
        check_spanning(name, z18, stu({1}, {3}, {9}));
    }
    auto z3z3 = graph({3, 3}, {{1, 0}, {2, 0}, {0, 1}, {0, 2}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("Ho", z3z3, stu({1, 0}, {0, 1}, {0, 2})); });
    auto crowded = graph({18}, {{1}, {17}, {2}, {16}, {9}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("He", crowded, stu({1}, {2}, {9})); });
}

TEST_CASE("Ho sums nine squares, He eight") {
    auto X = graph({3, 3, 2}, {{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1}});
    CanonicalEdges E(X);
    Bindings b = stu({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    GroupElement s{1, 0, 0}, t{0, 1, 0}, u{0, 0, 1};

    struct Square {
        GroupElement base, g, h;
    };
    std::vector<Square> nine = {
        {{0, 0, 0}, u, s}, {{1, 0, 0}, u, t}, {{2, 0, 0}, u, t},
        {{1, 2, 0}, s, u}, {{0, 1, 0}, t, u}, {{0, 0, 0}, s, t},
        {{1, 0, 0}, s, t}, {{0, 1, 0}, s, t}, {{1, 1, 0}, s, t},
    };
    std::vector<Square> eight = {
        {{1, 1, 0}, u, t}, {{1, 2, 0}, u, s}, {{2, 1, 0}, t, u}, {{2, 0, 0}, t, u},
        {{1, 0, 0}, s, u}, {{0, 0, 0}, s, u}, {{0, 1, 0}, s, t}, {{0, 1, 0}, t, u},
    };
    auto total = [&](const std::vector<Square>& squares) {
        Flow acc = zero_flow(E);
        for (const auto& sq : squares)
            acc = add_flows(acc, basic_four_cycle(E, sq.base, sq.g, sq.h));
        return acc;
    };
    CHECK(total(nine) == cycle_to_flow(E, named_cycle("Ho", X, b)));
    CHECK(total(eight) == cycle_to_flow(E, named_cycle("He", X, b)));

    IntegerMatrix squares = square_lattice(X, E);
    CHECK(lattice_contains(squares, cycle_to_flow(E, named_cycle("Ho", X, b)).coeffs));
    CHECK(lattice_contains(squares, cycle_to_flow(E, named_cycle("He", X, b)).coeffs));
}

TEST_CASE("Cab sweeps") {
    auto bind = [](GroupElement x, GroupElement y, GroupElement u, int a, int b) {
        Bindings out;
        out.elements["x"] = std::move(x);
        out.elements["y"] = std::move(y);
        out.elements["u"] = std::move(u);
        out.ints["a"] = a;
        out.ints["b"] = b;
        return out;
    };
    check_spanning("Cab", graph({2, 2, 2}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                   bind({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 2, 2));
    check_spanning("Cab", graph({8}, {{1}, {7}, {2}, {6}, {4}}), bind({1}, {2}, {4}, 2, 2));
    auto z2z3z2 = graph({2, 3, 2}, {{1, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1}});
    check_spanning("Cab", z2z3z2, bind({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 2, 3));
    check_spanning("Cab", graph({2, 4, 2}, {{1, 0, 0}, {0, 1, 0}, {0, 3, 0}, {0, 0, 1}}),
                   bind({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 2, 4));
    check_spanning("Cab",
                   graph({3, 3, 2}, {{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1}}),
                   bind({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 3, 3));

    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("Cab", z2z3z2, bind({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 3, 3)); });
    auto z8 = graph({8}, {{1}, {7}, {3}, {5}, {4}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("Cab", z8, bind({1}, {3}, {4}, 2, 2)); });
    Bindings no_ints = stu({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    no_ints.elements["x"] = {1, 0, 0};
    no_ints.elements["y"] = {0, 1, 0};
    expect_error(ErrorCode::UnboundSymbol,
                 [&] { return named_cycle("Cab", z2z3z2, no_ints); });
}

TEST_CASE("OddHeight-C covers the box complement") {
    struct Instance {
        std::vector<int> factors;
        GroupElement s, t, u;
    };
    std::vector<Instance> instances = {
        {{3, 8}, {1, 0}, {0, 1}, {0, 5}},
        {{3, 12}, {1, 0}, {0, 1}, {0, 7}},
        {{5, 8}, {1, 0}, {0, 1}, {0, 5}},
        {{5, 12}, {1, 0}, {0, 1}, {0, 7}},
    };
    for (const auto& inst : instances) {
        AbelianGroup G(inst.factors);
        std::vector<GroupElement> conn{inst.s, G.neg(inst.s), inst.t, G.neg(inst.t),
                                       inst.u, G.neg(inst.u)};
        CayleyGraph X = build_graph(G, conn);
        Walk w = named_cycle("OddHeight-C", X, stu(inst.s, inst.t, inst.u));
        CHECK(classify_walk(X, w) == WalkKind::Cycle);
        CHECK(w.base == G.mul(inst.t, 3));
        CHECK(w.steps.front() == inst.s);
        std::set<int> box = box_of(G, inst.s, inst.t, inst.u);
        CHECK(static_cast<int>(w.steps.size()) == G.order() - 18);
        std::set<int> visited;
        GroupElement cur = w.base;
        for (const auto& step : w.steps) {
            visited.insert(G.index_of(cur));
            CHECK(box.count(G.index_of(cur)) == 0);
            cur = G.add(cur, step);
        }
        CHECK(static_cast<int>(visited.size()) == G.order() - 18);
    }

    // even index
    auto even_index = graph({6, 8}, {{1, 0}, {5, 0}, {0, 1}, {0, 7}, {0, 5}, {0, 3}});
    expect_error(ErrorCode::HypothesisViolated, [&] {
        return named_cycle("OddHeight-C", even_index, stu({1, 0}, {0, 1}, {0, 5}));
    });
    // chord exponent out of range: the inverse binding is the valid one
    auto z3z8 = graph({3, 8}, {{1, 0}, {2, 0}, {0, 1}, {0, 7}, {0, 3}, {0, 5}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("OddHeight-C", z3z8, stu({1, 0}, {0, 1}, {0, 3})); });
    auto z3z12 = graph({3, 12}, {{1, 0}, {2, 0}, {0, 1}, {0, 11}, {0, 10}, {0, 2}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("OddHeight-C", z3z12, stu({1, 0}, {0, 1}, {0, 10})); });
    // u outside <t>
    auto twisted = graph({3, 8}, {{1, 0}, {2, 0}, {0, 1}, {0, 7}, {1, 5}, {2, 3}});
    expect_error(ErrorCode::HypothesisViolated,
                 [&] { return named_cycle("OddHeight-C", twisted, stu({1, 0}, {0, 1}, {1, 5})); });
}

TEST_CASE("surgery reroutes the prism cycles") {
    auto X = graph({10}, {{5}, {2}, {8}, {4}, {6}});
    CanonicalEdges E(X);
    Bindings b = stu({5}, {2}, {4});
    Walk hplus = expand_on(X, "(s,u,s^{-1},t,t,s,t^{-1},u^{-1},s^{-1},t^{-1})", b);
    Walk hminus = expand_on(X, "(t^4,s,t^{-4},s^{-1})", b);
    REQUIRE(classify_walk(X, hplus) == WalkKind::HamiltonianCycle);
    REQUIRE(classify_walk(X, hminus) == WalkKind::HamiltonianCycle);

    SurgerySpec sum_spec{SurgeryKind::Sum, {6}, {2}, {5}, {2}};
    SurgerySpec diff_spec{SurgeryKind::Difference, {6}, {2}, {5}, {2}};
    SurgeryResult plus = lemma4c_surgery(X, hplus, sum_spec);
    SurgeryResult minus = lemma4c_surgery(X, hminus, diff_spec);
    CHECK(classify_walk(X, plus.surgered) == WalkKind::HamiltonianCycle);
    CHECK(classify_walk(X, minus.surgered) == WalkKind::HamiltonianCycle);

    Flow q6 = basic_four_cycle(E, {6}, {2}, {5});
    Flow q8 = basic_four_cycle(E, {8}, {2}, {5});
    CHECK(plus.delta == add_flows(q6, q8));
    CHECK(minus.delta == add_flows(q6, scale_flow(-1, q8)));
    CHECK(add_flows(plus.delta, minus.delta) == scale_flow(2, q6));

    CHECK(plus.delta == add_flows(cycle_to_flow(E, hplus),
                                  scale_flow(-1, cycle_to_flow(E, plus.surgered))));
}

TEST_CASE("surgery on the Hstar cycle") {
    auto X = graph({4, 3}, {{1, 0}, {3, 0}, {0, 1}, {0, 2}});
    CanonicalEdges E(X);
    Walk h = named_cycle("Hstar", X, st({1, 0}, {0, 1}));
    SurgerySpec spec{SurgeryKind::Difference, {2, 2}, {1, 0}, {0, 2}, {1, 0}};
    SurgeryResult res = lemma4c_surgery(X, h, spec);
    CHECK(classify_walk(X, res.surgered) == WalkKind::HamiltonianCycle);
    Flow expected = add_flows(basic_four_cycle(E, {2, 2}, {1, 0}, {0, 2}),
                              scale_flow(-1, basic_four_cycle(E, {3, 2}, {1, 0}, {0, 2})));
    CHECK(res.delta == expected);
    CHECK(lattice_contains(square_lattice(X, E), res.delta.coeffs));
}

TEST_CASE("surgery errors") {
    auto X = graph({10}, {{5}, {2}, {8}, {4}, {6}});
    Bindings b = stu({5}, {2}, {4});
    Walk hminus = expand_on(X, "(t^4,s,t^{-4},s^{-1})", b);

    // path absent at the anchor
    expect_error(ErrorCode::MissingPath, [&] {
        return lemma4c_surgery(X, hminus, {SurgeryKind::Sum, {0}, {2}, {5}, {2}});
    });
    // path present, rerouting edge absent
    expect_error(ErrorCode::MissingEdge, [&] {
        return lemma4c_surgery(X, hminus, {SurgeryKind::Sum, {6}, {2}, {5}, {2}});
    });
    // generator outside the connection set
    expect_error(ErrorCode::InvalidInput, [&] {
        return lemma4c_surgery(X, hminus, {SurgeryKind::Sum, {6}, {1}, {5}, {2}});
    });
    // operand that is not a hamiltonian cycle
    Walk small = expand_on(X, "(t,t,t,t,t)", b);
    expect_error(ErrorCode::InvalidInput, [&] {
        return lemma4c_surgery(X, small, {SurgeryKind::Sum, {0}, {2}, {5}, {2}});
    });

    // rerouting edge inside the replaced path
    auto mobius = graph({2, 6}, {{0, 1}, {0, 5}, {0, 3}, {1, 0}});
    Walk band = named_cycle("Mobius2layers-H", mobius, stu({0, 3}, {0, 1}, {1, 0}));
    expect_error(ErrorCode::SurgeryNotSimple, [&] {
        return lemma4c_surgery(mobius, band,
                               {SurgeryKind::Difference, {0, 2}, {0, 3}, {1, 0}, {1, 0}});
    });
}

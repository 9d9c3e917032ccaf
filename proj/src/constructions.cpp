#include "hamflow/constructions.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hamflow/abelian_group.hpp"
#include "hamflow/errors.hpp"

namespace hamflow {

namespace {

// Template texts.  Caller-facing symbols are documented per entry in the
// catalog; m, n, r, q, h, p, eps are derived here before expansion.

const char* const kHstarText =
    "(t^{n-1},s^{|s|-1},t^{-1},s^{-(|s|-2)},t^{-(n-2)},"
    "(s,t^{n-3},s,t^{-(n-3)})^{(|s|-2)/2},s)";

const char* const kHminusText =
    "((s,t^{n-2},s,t^{-(n-2)})^{(|s|-2)/2},s,t^{n-1},s^{-(|s|-1)},t^{-(n-1)})";

const char* const kTwoLayerText =
    "((s^{m-1},t_{2*i-1},s^{-(m-1)},t_{2*i})_{i=1}^{r/2},"
    "((t_{r+i})_{i=1}^{n-r-1},s,(t_{n-i}^{-1})_{i=1}^{n-r-1},s)^{m/2})";

const char* const kH1Text =
    "((t_{n-i+1}^{-1})_{i=1}^{n-r-1+2*eps},"
    "(s^{m-1},t_{r-2*i+1}^{-1},s^{-(m-1)},t_{r-2*i}^{-1})_{i=1}^{eps*(r-2)/2},"
    "s,(s^{m-2})^{eps},t_1^{-1},(s^{-(m-2)})^{eps},"
    "(t_{n-2*i+2}^{-1},s^{m-2},t_{n-2*i+1}^{-1},s^{-(m-2)})_{i=1}^{(n-r-3+2*eps)/2},"
    "t_{r+3-2*eps}^{-1},s^{m-2},(t_2^{-1},s^{-(m-3)},t_1^{-1},s^{m-3})^{1-eps},s)";

const char* const kDeg5Text =
    "(t^{n-1},u^{p-2},t^{-(n-3)},u,t^{n-1},s,t^{n-1},u^{-(p-1)},t,"
    "(t^{n-2},u,t^{-(n-2)},u)^{(p-1)/2}#,s,t^{-1},"
    "(u^{-1},t^{n-2},u^{-1},t^{-(n-2)})^{(p-3)/2},u^{-1})";

const char* const kMobiusText = "((s,t)^n#,u,(s,t^{-1})^n#,u)";

const char* const kPrismText =
    "(t^{q-1},s,t^{-(q-1)},u,(s^{-1},t,s,t)^{(|t|-q-1)/2},s^{-1},t)";

const char* const kHoText =
    "(u,s,t,u^{-1},t^{-1},s,u,t,u^{-1},t,u,s^{-1},u^{-1},s^{-1},u,t^{-1},u^{-1},t^{-1})";

const char* const kHeText =
    "(s^2,t^2,s^{-2},u,t^{-1},u^{-1},s,u,t,s,t^{-2},s^{-2},u^{-1})";

const char* const kCabText =
    "((x^{a-1},y,x^{-(a-1)},y)^h,(x^{a-1},u,x^{-(a-1)})^{eps},"
    "(x^{a-1},y,x^{-(a-1)},u,x^{a-1},y^{-1},x^{-(a-1)})^{1-eps},"
    "(y^{-1},x^{a-1},y^{-1},x^{-(a-1)})^h,u^{-1})";

const char* const kOddHeightC1Text =
    "[c1](s,(s^{m-2},t,s^{-(m-2)},t)^{(|t|-2*q)/2}#,s^{-1},t^{-(|t|-2*q-1)})";

const char* const kOddHeightC2Text =
    "[c2](t,s^{-1},t^{-1},(s^{-(m-5)},t^{-1},s^{m-5},t^{-1})^q#,s,t^{2*q-1})";

const char* const kOddHeightC3Text =
    "[c3](t^{-1},s,t^{q-3},s,t^{-(q-4)},u^{-1},t^{q-4},s^{-1},t^{-(q-4)},"
    "s^{-1},t^{q-4},u,t^{-(q-4)})";

[[noreturn]] void violated(const std::string& entry, const std::string& what) {
    fail(ErrorCode::HypothesisViolated, entry + ": " + what);
}

void require(bool ok, const std::string& entry, const std::string& what) {
    if (!ok) violated(entry, what);
}

GroupElement canon(const AbelianGroup& G, const GroupElement& e) {
    return G.canonicalize(std::vector<long long>(e.begin(), e.end()));
}

GroupElement need_element(const AbelianGroup& G, const Bindings& b, const std::string& entry,
                          const std::string& sym) {
    auto it = b.elements.find(sym);
    if (it == b.elements.end())
        fail(ErrorCode::UnboundSymbol, entry + " needs element binding " + sym);
    return canon(G, it->second);
}

std::int64_t need_int(const Bindings& b, const std::string& entry, const std::string& sym) {
    auto it = b.ints.find(sym);
    if (it == b.ints.end())
        fail(ErrorCode::UnboundSymbol, entry + " needs integer binding " + sym);
    return it->second;
}

/* Fetches, canonicalizes, and rebinds one caller element; it must lie in S. */
GroupElement generator(const CayleyGraph& X, Bindings& b, const std::string& entry,
                       const std::string& sym) {
    GroupElement e = need_element(X.group(), b, entry, sym);
    require(X.conn().contains_index(X.group().index_of(e)), entry,
            sym + " must lie in the connection set");
    b.elements[sym] = e;
    return e;
}

/* k with k*t == target and 0 <= k < |t|; -1 when target is outside <t>. */
std::int64_t discrete_log(const AbelianGroup& G, const GroupElement& t,
                          const GroupElement& target) {
    GroupElement cur = G.identity();
    int ord = G.element_order(t);
    for (int k = 0; k < ord; ++k) {
        if (cur == target) return k;
        cur = G.add(cur, t);
    }
    return -1;
}

/* Indices of i*a + j*b + k*c over the given ranges; collisions shrink the set. */
std::set<int> box_products(const AbelianGroup& G, const GroupElement& a, const GroupElement& b,
                           const GroupElement& c, int ia, int jb, int kc) {
    std::set<int> out;
    for (int i = 0; i < ia; ++i)
        for (int j = 0; j < jb; ++j)
            for (int k = 0; k < kc; ++k)
                out.insert(G.index_of(
                    G.add(G.add(G.mul(a, i), G.mul(b, j)), G.mul(c, k))));
    return out;
}

bool in_sorted(const std::vector<int>& sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::string prepare_two_generator(const CayleyGraph& X, Bindings& b, const std::string& entry,
                                  bool star) {
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    GroupElement t = generator(X, b, entry, "t");
    int os = G.element_order(s);
    require(os % 2 == 0, entry, "the order of s must be even");
    require(static_cast<int>(G.subgroup({s, t}).size()) == G.order(), entry,
            "s and t must generate the group");
    int n = G.order() / os;
    require(n >= 3, entry, "the index of <s> must be at least 3");
    b.ints["n"] = n;
    return star ? kHstarText : kHminusText;
}

/*
 * Shared setup for the layered entries: the t_i must trace a hamiltonian cycle
 * of the subgroup avoiding s, and r marks where that trace passes s^-m.
 * Binds m, n, r and t_1..t_n (shorthand: binding t alone copies it to every
 * t_i when <t> is the whole subgroup).
 */
struct LayerData {
    int n = 0;
    int m = 0;
    int r = 0;
};

LayerData prepare_layers(const CayleyGraph& X, Bindings& b, const std::string& entry) {
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    int s_idx = G.index_of(s);
    int ns_idx = G.neg_index(s_idx);
    std::vector<GroupElement> others;
    for (const GroupElement& g : X.conn().elements()) {
        int gi = G.index_of(g);
        if (gi != s_idx && gi != ns_idx) others.push_back(g);
    }
    require(!others.empty(), entry,
            "the connection set must contain generators besides s and s^-1");
    std::vector<int> sub = G.subgroup(others);
    int n = static_cast<int>(sub.size());
    require(n >= 3, entry, "the subgroup avoiding s must have order at least 3");
    int m = G.order() / n;
    require(m >= 2, entry, "s must lie outside the subgroup avoiding s");

    std::vector<GroupElement> steps(n);
    if (b.elements.count("t_1")) {
        for (int i = 1; i <= n; ++i) {
            auto it = b.elements.find("t_" + std::to_string(i));
            if (it == b.elements.end())
                fail(ErrorCode::UnboundSymbol,
                     entry + " needs element binding t_" + std::to_string(i));
            steps[i - 1] = canon(G, it->second);
        }
    } else {
        GroupElement t = need_element(G, b, entry, "t");
        require(G.subgroup({t}) == sub, entry,
                "shorthand binding t must generate the subgroup avoiding s");
        for (auto& st : steps) st = t;
    }
    for (int i = 0; i < n; ++i) {
        int gi = G.index_of(steps[i]);
        require(X.conn().contains_index(gi), entry, "every t_i must lie in the connection set");
        require(gi != s_idx && gi != ns_idx, entry, "every t_i must differ from s and s^-1");
        b.elements["t_" + std::to_string(i + 1)] = steps[i];
    }

    GroupElement target = G.mul(s, -static_cast<std::int64_t>(m));
    GroupElement cur = G.identity();
    std::set<int> seen;
    int r = -1;
    for (int i = 0; i < n; ++i) {
        require(seen.insert(G.index_of(cur)).second, entry,
                "t_1..t_n must trace a cycle without repeated vertices");
        if (cur == target) r = i;
        cur = G.add(cur, steps[i]);
    }
    require(G.is_identity(cur), entry, "t_1..t_n must return to the identity");
    if (r < 0)
        fail(ErrorCode::InternalCheckFailed, entry + ": s^-m missing from the subgroup trace");
    b.ints["m"] = m;
    b.ints["n"] = n;
    b.ints["r"] = r;
    return {n, m, r};
}

std::string prepare_two_layer(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "E=H+2F-even";
    LayerData d = prepare_layers(X, b, entry);
    require(d.m % 2 == 0, entry, "the index of the subgroup avoiding s must be even");
    require(d.r % 2 == 0, entry,
            "the trace prefix reaching s^-m must have even length; reverse the t_i otherwise");
    return kTwoLayerText;
}

std::string prepare_h1h2(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "H1H2-odd";
    std::int64_t which = b.ints.count("which") ? b.ints.at("which") : 1;
    require(which == 1 || which == 2, entry, "which must be 1 or 2");
    LayerData d = prepare_layers(X, b, entry);
    const AbelianGroup& G = X.group();
    require(G.element_order(b.elements.at("s")) > 2, entry, "s must not be an involution");
    require(d.n % 2 == 1, entry, "the subgroup avoiding s must have odd order");
    require(d.r % 2 == 0, entry,
            "the trace prefix reaching s^-m must have even length; reverse the t_i otherwise");
    if (d.r == 0) require(d.m > 2, entry, "when r = 0 the index m must exceed 2");
    b.ints["eps"] = d.r == 0 ? 0 : 1;
    b.ints["which"] = which;
    if (which == 2) {
        require(d.m % 2 == 0, entry, "variant 2 needs an even index m");
        return kTwoLayerText;
    }
    return kH1Text;
}

std::string prepare_deg5(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "deg5-H1";
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    GroupElement t = generator(X, b, entry, "t");
    GroupElement u = generator(X, b, entry, "u");
    require(G.element_order(s) == 2, entry, "s must be an involution");
    std::set<int> named{G.index_of(s), G.index_of(t), G.neg_index(G.index_of(t)),
                        G.index_of(u), G.neg_index(G.index_of(u))};
    require(named.size() == 5 && X.conn().size() == 5, entry,
            "the connection set must be exactly {s, t, t^-1, u, u^-1}");
    std::vector<int> sub = G.subgroup({t, u});
    int sub_order = static_cast<int>(sub.size());
    require(sub_order % 2 == 1, entry, "the subgroup <t, u> must have odd order");
    require(2 * sub_order == G.order(), entry, "the subgroup <t, u> must have index 2");
    int n = G.element_order(t);
    int p = sub_order / n;
    require(p > 1, entry, "t must not generate <t, u>");
    require(G.element_order(u) != sub_order, entry, "u must not generate <t, u>");
    b.ints["n"] = n;
    b.ints["p"] = p;
    return kDeg5Text;
}

std::string prepare_mobius(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "Mobius2layers-H";
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    GroupElement t = generator(X, b, entry, "t");
    GroupElement u = generator(X, b, entry, "u");
    int ot = G.element_order(t);
    require(ot % 2 == 0 && ot >= 4, entry, "the order of t must be even and at least 4");
    int n = ot / 2;
    require(s == G.mul(t, n), entry, "s must equal t raised to half its order");
    require(G.element_order(u) == 2, entry, "u must be an involution");
    require(!in_sorted(G.subgroup({t}), G.index_of(u)), entry, "u must lie outside <t>");
    require(G.order() == 2 * ot, entry, "<t> must have index 2");
    b.ints["n"] = n;
    return kMobiusText;
}

std::string prepare_prism(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "PrismChords-H";
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    GroupElement t = generator(X, b, entry, "t");
    GroupElement u = generator(X, b, entry, "u");
    int ot = G.element_order(t);
    require(ot % 2 == 1, entry, "the order of t must be odd");
    std::int64_t q = discrete_log(G, t, u);
    require(q >= 0, entry, "u must be a power of t");
    require(q % 2 == 0, entry, "the exponent of u on t must be even; bind u^-1 otherwise");
    require(q >= 2 && q <= ot - 2, entry, "u must differ from the identity, t, and t^-1");
    require(G.order() == 2 * ot, entry, "<t> must have index 2");
    require(!in_sorted(G.subgroup({t}), G.index_of(s)), entry, "s must lie outside <t>");
    b.ints["q"] = q;
    return kPrismText;
}

void require_box18(const CayleyGraph& X, Bindings& b, const std::string& entry) {
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    GroupElement t = generator(X, b, entry, "t");
    GroupElement u = generator(X, b, entry, "u");
    require(G.order() == 18, entry, "the group must have order 18");
    require(box_products(G, s, t, u, 3, 3, 2).size() == 18, entry,
            "the products i*s + j*t + k*u over 3 x 3 x 2 must be distinct");
}

std::string prepare_cab(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "Cab";
    const AbelianGroup& G = X.group();
    GroupElement x = generator(X, b, entry, "x");
    GroupElement y = generator(X, b, entry, "y");
    GroupElement u = generator(X, b, entry, "u");
    std::int64_t a = need_int(b, entry, "a");
    std::int64_t bb = need_int(b, entry, "b");
    require(a >= 2 && bb >= 2, entry, "a and b must be at least 2");
    require(a <= G.order() && bb <= G.order() && G.order() == 2 * a * bb, entry,
            "the group order must equal 2ab");
    require(static_cast<std::int64_t>(box_products(G, x, y, u, static_cast<int>(a),
                                                   static_cast<int>(bb), 2)
                                          .size()) == 2 * a * bb,
            entry, "the products i*x + j*y + k*u over a x b x 2 must be distinct");
    b.ints["h"] = (bb - 1) / 2;
    b.ints["eps"] = bb % 2;
    return kCabText;
}

/*
 * Complement cycle for the odd-index entry: up to three component cycles whose
 * flow sum is a single simple cycle through every vertex outside the 3 x 3 x 2
 * box, passing the marked edge [3t](s).  Opposite traversals of shared edges
 * cancel in the sum, which is what merges the components.
 */
Walk odd_height_cycle(const CayleyGraph& X, Bindings& b) {
    const std::string entry = "OddHeight-C";
    const AbelianGroup& G = X.group();
    GroupElement s = generator(X, b, entry, "s");
    GroupElement t = generator(X, b, entry, "t");
    GroupElement u = generator(X, b, entry, "u");
    int ot = G.element_order(t);
    require(ot % 2 == 0, entry, "the order of t must be even");
    std::set<int> named{G.index_of(s), G.neg_index(G.index_of(s)),
                        G.index_of(t), G.neg_index(G.index_of(t)),
                        G.index_of(u), G.neg_index(G.index_of(u))};
    require(named.size() == 6 && X.conn().size() == 6, entry,
            "the connection set must be exactly {s^+-1, t^+-1, u^+-1} with six elements");
    std::int64_t q = discrete_log(G, t, G.neg(u));
    require(q >= 0, entry, "u must be a power of t");
    require(q > 2 && 2 * q < ot, entry,
            "the exponent q with u = t^-q must satisfy 2 < q < |t|/2; bind u^-1 otherwise");
    int m = G.order() / ot;
    require(m % 2 == 1 && m >= 3, entry, "the index of <t> must be odd and at least 3");
    std::set<int> box = box_products(G, s, t, u, 3, 3, 2);
    require(static_cast<int>(box.size()) == 18, entry,
            "the products i*s + j*t + k*u over 3 x 3 x 2 must be distinct");
    b.ints["m"] = m;
    b.ints["q"] = q;
    b.elements["c1"] = G.mul(t, 3);
    b.elements["c2"] = G.add(G.mul(s, m - 1), G.mul(t, 2));
    b.elements["c3"] = G.mul(t, -(2 * q - 3));

    CanonicalEdges E(X);
    Flow total = zero_flow(E);
    auto add_component = [&](const char* text) {
        Walk w = expand_walk(*parse_path(text), G, b);
        if (classify_walk(X, w) != WalkKind::Cycle)
            fail(ErrorCode::InternalCheckFailed, entry + ": component walk is not a simple cycle");
        total = add_flows(total, cycle_to_flow(E, w));
    };
    add_component(kOddHeightC1Text);
    if (m >= 5) add_component(kOddHeightC2Text);
    if (q > 3) add_component(kOddHeightC3Text);

    int N = G.order();
    std::vector<int> next(N, -1);
    std::vector<GroupElement> step(N);
    int support = 0;
    for (int e = 0; e < E.count(); ++e) {
        std::int64_t c = total.coeffs[e];
        if (c == 0) continue;
        if (c != 1 && c != -1)
            fail(ErrorCode::InternalCheckFailed, entry + ": component cycles do not merge cleanly");
        int tail = E.rep_tail(e);
        int gi = E.conn_indices()[E.rep_gen_pos(e)];
        int head = G.add_index(tail, gi);
        int from = c == 1 ? tail : head;
        if (next[from] != -1)
            fail(ErrorCode::InternalCheckFailed, entry + ": merged flow branches at a vertex");
        next[from] = c == 1 ? head : tail;
        step[from] = c == 1 ? G.element_of(gi) : G.neg(G.element_of(gi));
        ++support;
    }
    if (support != N - 18)
        fail(ErrorCode::InternalCheckFailed, entry + ": merged cycle has the wrong length");
    for (int v : box)
        if (next[v] != -1)
            fail(ErrorCode::InternalCheckFailed, entry + ": merged cycle touches the box");

    int start = G.index_of(b.elements.at("c1"));
    if (next[start] == -1 || !(step[start] == s))
        fail(ErrorCode::InternalCheckFailed, entry + ": merged cycle misses the marked s-edge");
    Walk out{b.elements.at("c1"), {}};
    out.steps.reserve(support);
    int cur = start;
    do {
        out.steps.push_back(step[cur]);
        cur = next[cur];
        if (static_cast<int>(out.steps.size()) > support) break;
    } while (cur != start);
    if (cur != start || static_cast<int>(out.steps.size()) != support)
        fail(ErrorCode::InternalCheckFailed, entry + ": merged flow splits into several cycles");
    if (classify_walk(X, out) != WalkKind::Cycle)
        fail(ErrorCode::InternalCheckFailed, entry + ": merged walk is not a simple cycle");
    return out;
}

}  // namespace

const std::vector<NamedConstruction>& construction_catalog() {
    static const std::vector<NamedConstruction> entries = {
        {"Hstar",
         "spanning cycle from generators s, t with |s| even and <s> of index at least 3",
         {"s", "t"},
         {},
         {kHstarText}},
        {"Hminus-4cyc",
         "companion spanning cycle to Hstar under the same hypotheses",
         {"s", "t"},
         {},
         {kHminusText}},
        {"E=H+2F-even",
         "layered sweep over a subgroup cycle t_1..t_n (shorthand: t) when the index m is even",
         {"s", "t"},
         {},
         {kTwoLayerText}},
        {"H1H2-odd",
         "spanning cycles over an odd-order subgroup cycle; integer which picks variant 1 or 2",
         {"s", "t"},
         {"which"},
         {kH1Text, kTwoLayerText}},
        {"deg5-H1",
         "spanning cycle for S = {s, t^+-1, u^+-1} with s an involution over an odd subgroup",
         {"s", "t", "u"},
         {},
         {kDeg5Text}},
        {"Mobius2layers-H",
         "spanning cycle of the double band: s the half-turn of t, u an involution across",
         {"s", "t", "u"},
         {},
         {kMobiusText}},
        {"PrismChords-H",
         "spanning cycle of the prism over an odd cycle <t> with chords u = t^q",
         {"s", "t", "u"},
         {},
         {kPrismText}},
        {"Ho",
         "spanning cycle of the order-18 box; sums nine oriented squares",
         {"s", "t", "u"},
         {},
         {kHoText}},
        {"He",
         "spanning cycle of the order-18 box; sums eight oriented squares",
         {"s", "t", "u"},
         {},
         {kHeText}},
        {"Cab",
         "spanning cycle of the a x b x 2 box on generators x, y, u",
         {"x", "y", "u"},
         {"a", "b"},
         {kCabText}},
        {"OddHeight-C",
         "simple cycle covering everything outside the 3 x 3 x 2 box when <t> has odd index",
         {"s", "t", "u"},
         {},
         {kOddHeightC1Text, kOddHeightC2Text, kOddHeightC3Text}},
    };
    return entries;
}

const NamedConstruction& catalog_entry(const std::string& name) {
    for (const NamedConstruction& e : construction_catalog())
        if (e.name == name) return e;
    fail(ErrorCode::UnknownName, "no construction named " + name);
}

Walk named_cycle(const std::string& name, const CayleyGraph& X, const Bindings& caller) {
    catalog_entry(name);
    Bindings b = caller;
    if (name == "OddHeight-C") return odd_height_cycle(X, b);

    std::string text;
    if (name == "Hstar") {
        text = prepare_two_generator(X, b, name, true);
    } else if (name == "Hminus-4cyc") {
        text = prepare_two_generator(X, b, name, false);
    } else if (name == "E=H+2F-even") {
        text = prepare_two_layer(X, b);
    } else if (name == "H1H2-odd") {
        text = prepare_h1h2(X, b);
    } else if (name == "deg5-H1") {
        text = prepare_deg5(X, b);
    } else if (name == "Mobius2layers-H") {
        text = prepare_mobius(X, b);
    } else if (name == "PrismChords-H") {
        text = prepare_prism(X, b);
    } else if (name == "Ho" || name == "He") {
        require_box18(X, b, name);
        text = name == "Ho" ? kHoText : kHeText;
    } else if (name == "Cab") {
        text = prepare_cab(X, b);
    } else {
        fail(ErrorCode::InternalCheckFailed, "catalog entry " + name + " has no expander");
    }

    Walk w = expand_walk(*parse_path(text), X.group(), b);
    if (classify_walk(X, w) != WalkKind::HamiltonianCycle)
        fail(ErrorCode::InternalCheckFailed,
             name + ": template expansion is not a hamiltonian cycle");
    return w;
}

const char* surgery_kind_name(SurgeryKind k) {
    return k == SurgeryKind::Sum ? "sum" : "difference";
}

SurgeryResult lemma4c_surgery(const CayleyGraph& X, const Walk& H, const SurgerySpec& spec) {
    const AbelianGroup& G = X.group();
    GroupElement anchor = canon(G, spec.anchor);
    GroupElement x = canon(G, spec.x);
    GroupElement y = canon(G, spec.y);
    GroupElement z = canon(G, spec.z);
    for (const GroupElement* g : {&x, &y, &z})
        if (!X.conn().contains_index(G.index_of(*g)))
            fail(ErrorCode::InvalidInput, "surgery generators must lie in the connection set");
    if (classify_walk(X, H) != WalkKind::HamiltonianCycle)
        fail(ErrorCode::InvalidInput, "surgery needs a hamiltonian cycle to operate on");

    int N = X.vertex_count();
    std::vector<int> verts(N), pos(N);
    int cur = G.index_of(canon(G, H.base));
    for (int i = 0; i < N; ++i) {
        verts[i] = cur;
        pos[cur] = i;
        cur = G.add_index(cur, G.index_of(H.steps[i]));
    }
    auto step_at = [&](int i) -> const GroupElement& { return H.steps[i % N]; };

    int p = pos[G.index_of(anchor)];
    GroupElement negx = G.neg(x);
    if (!(step_at(p) == x && step_at(p + 1) == y && step_at(p + 2) == negx))
        fail(ErrorCode::MissingPath,
             "the cycle does not contain the oriented path [anchor](x, y, x^-1)");

    bool sum = spec.kind == SurgeryKind::Sum;
    GroupElement etail = G.add(G.add(anchor, x), z);
    if (!sum) etail = G.add(etail, y);
    GroupElement estep = sum ? y : G.neg(y);
    int q = pos[G.index_of(etail)];
    if (!(step_at(q) == estep))
        fail(ErrorCode::MissingEdge,
             sum ? "the cycle does not contain the oriented edge [anchor+x+z](y)"
                 : "the cycle does not contain the oriented edge [anchor+x+y+z](y^-1)");
    if (((q - p) % N + N) % N <= 2)
        fail(ErrorCode::SurgeryNotSimple, "the rerouted edge overlaps the replaced path");

    int va = verts[(p + 1) % N];
    int vb = verts[(p + 2) % N];
    std::vector<int> order;
    order.reserve(N);
    for (int i = 0; i < N; ++i) {
        if (i == 1 || i == 2) continue;
        int idx = (p + i) % N;
        order.push_back(verts[idx]);
        if (idx == q) {
            order.push_back(sum ? va : vb);
            order.push_back(sum ? vb : va);
        }
    }

    Walk out{G.element_of(order[0]), {}};
    out.steps.reserve(N);
    for (int i = 0; i < N; ++i) {
        GroupElement diff =
            G.sub(G.element_of(order[(i + 1) % N]), G.element_of(order[i]));
        if (!X.conn().contains_index(G.index_of(diff)))
            fail(ErrorCode::InternalCheckFailed, "surgery produced a step outside the connection set");
        out.steps.push_back(diff);
    }
    if (classify_walk(X, out) != WalkKind::HamiltonianCycle)
        fail(ErrorCode::SurgeryNotSimple, "the rerouted walk is not a hamiltonian cycle");

    CanonicalEdges E(X);
    Flow delta = add_flows(cycle_to_flow(E, H), scale_flow(-1, cycle_to_flow(E, out)));
    Flow q1 = basic_four_cycle(E, anchor, x, y);
    Flow q2 = basic_four_cycle(E, G.add(anchor, x), z, y);
    Flow predicted = sum ? add_flows(q1, q2) : add_flows(q1, scale_flow(-1, q2));
    if (!(delta == predicted))
        fail(ErrorCode::InternalCheckFailed, "surgery delta does not match the rerouting squares");
    return {out, delta};
}

}  // namespace hamflow

#include "hamflow/flows.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "hamflow/errors.hpp"

namespace hamflow {

CanonicalEdges::CanonicalEdges(const CayleyGraph& X)
    : group_(X.group()), conn_indices_(X.conn().indices()) {
    const int n = group_.order();
    const int deg = static_cast<int>(conn_indices_.size());
    dir_.assign(static_cast<size_t>(n) * deg, 0);
    rep_tail_.reserve(X.edge_count());
    rep_gen_pos_.reserve(X.edge_count());
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < deg; ++k) {
            int g = conn_indices_[k];
            int w = X.neighbor(v, k);
            int gr = group_.neg_index(g);
            // Keep (v,g) iff it beats the reversed presentation (w,gr).
            if (std::pair(v, g) < std::pair(w, gr)) {
                int id = static_cast<int>(rep_tail_.size());
                rep_tail_.push_back(v);
                rep_gen_pos_.push_back(k);
                int kr = X.conn().position_of(gr);
                dir_[static_cast<size_t>(v) * deg + k] = id;
                dir_[static_cast<size_t>(w) * deg + kr] = ~id;
            }
        }
    }
    if (static_cast<int>(rep_tail_.size()) != X.edge_count()) {
        fail(ErrorCode::InternalCheckFailed, "canonical edge count mismatch");
    }
}

OrientedEdge CanonicalEdges::rep(int edge_id) const {
    return {group_.element_of(rep_tail_[edge_id]),
            group_.element_of(conn_indices_[rep_gen_pos_[edge_id]])};
}

std::pair<int, int> CanonicalEdges::locate(const OrientedEdge& e) const {
    int v = group_.index_of(e.tail);
    int g = group_.index_of(e.gen);
    auto it = std::lower_bound(conn_indices_.begin(), conn_indices_.end(), g);
    if (it == conn_indices_.end() || *it != g) {
        fail(ErrorCode::NotAnEdge, "generator " + group_.element_to_string(e.gen) +
                                       " is not in the connection set");
    }
    return directed(v, static_cast<int>(it - conn_indices_.begin()));
}

int CanonicalEdges::head_of(int edge_id) const {
    return group_.add_index(rep_tail_[edge_id], conn_indices_[rep_gen_pos_[edge_id]]);
}

Flow zero_flow(const CanonicalEdges& E) { return Flow{std::vector<std::int64_t>(E.count(), 0)}; }

std::int64_t edge_flow(const CanonicalEdges& E, const Flow& f, const OrientedEdge& e) {
    if (static_cast<int>(f.coeffs.size()) != E.count()) {
        fail(ErrorCode::GraphMismatch, "flow has wrong edge count");
    }
    auto [id, sign] = E.locate(e);
    return sign * f.coeffs[id];
}

std::int64_t weight_on(const CanonicalEdges& E, const Weighting& w, const OrientedEdge& e) {
    if (static_cast<int>(w.weights.size()) != E.count()) {
        fail(ErrorCode::GraphMismatch, "weighting has wrong edge count");
    }
    auto [id, sign] = E.locate(e);
    return sign * w.weights[id];
}

Flow cycle_to_flow(const CanonicalEdges& E, const Walk& w) {
    const AbelianGroup& G = E.group();
    Flow f = zero_flow(E);
    int cur = G.index_of(w.base);
    std::vector<int> visited;
    visited.reserve(w.steps.size());
    for (const auto& s : w.steps) {
        visited.push_back(cur);
        int g = G.index_of(s);
        int k = -1;
        const auto& conn = E.conn_indices();
        auto it = std::lower_bound(conn.begin(), conn.end(), g);
        if (it != conn.end() && *it == g) k = static_cast<int>(it - conn.begin());
        if (k < 0) {
            fail(ErrorCode::StepNotInS,
                 "walk step " + G.element_to_string(s) + " is not in the connection set");
        }
        auto [id, sign] = E.directed(cur, k);
        f.coeffs[id] = checked_add(f.coeffs[id], sign);
        cur = G.add_index(cur, g);
    }
    if (cur != G.index_of(w.base)) fail(ErrorCode::NotClosed, "walk does not return to its base");
    std::vector<int> sorted = visited;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        fail(ErrorCode::RepeatedVertex, "walk revisits a vertex");
    }
    return f;
}

Flow basic_four_cycle(const CanonicalEdges& E, const GroupElement& base, const GroupElement& g,
                      const GroupElement& h) {
    const AbelianGroup& G = E.group();
    Walk w{base, {g, h, G.neg(g), G.neg(h)}};
    return cycle_to_flow(E, w);
}

bool is_even(const Flow& f) {
    std::int64_t parity = 0;
    for (auto c : f.coeffs) parity ^= (c & 1);
    return parity == 0;
}

std::int64_t weighted_sum(const Flow& f, const Weighting& w) {
    if (f.coeffs.size() != w.weights.size()) {
        fail(ErrorCode::GraphMismatch, "flow and weighting live on different graphs");
    }
    std::int64_t total = 0;
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        total = checked_add(total, checked_mul(f.coeffs[i], w.weights[i]));
    }
    return total;
}

Flow translate_flow(const CanonicalEdges& E, const GroupElement& v, const Flow& f) {
    if (static_cast<int>(f.coeffs.size()) != E.count()) {
        fail(ErrorCode::GraphMismatch, "flow has wrong edge count");
    }
    const AbelianGroup& G = E.group();
    int vi = G.index_of(v);
    Flow out = zero_flow(E);
    for (int e = 0; e < E.count(); ++e) {
        if (f.coeffs[e] == 0) continue;
        int tail = G.add_index(E.rep_tail(e), vi);
        auto [id, sign] = E.directed(tail, E.rep_gen_pos(e));
        out.coeffs[id] = checked_add(out.coeffs[id], sign * f.coeffs[e]);
    }
    return out;
}

Flow add_flows(const Flow& a, const Flow& b) {
    if (a.coeffs.size() != b.coeffs.size()) {
        fail(ErrorCode::GraphMismatch, "flows live on different graphs");
    }
    Flow out = a;
    for (size_t i = 0; i < out.coeffs.size(); ++i) {
        out.coeffs[i] = checked_add(out.coeffs[i], b.coeffs[i]);
    }
    return out;
}

Flow scale_flow(std::int64_t k, const Flow& f) {
    Flow out = f;
    for (auto& c : out.coeffs) c = checked_mul(c, k);
    return out;
}

bool is_conservative(const CanonicalEdges& E, const Flow& f) {
    if (static_cast<int>(f.coeffs.size()) != E.count()) return false;
    const int n = E.group().order();
    const int deg = E.degree();
    for (int v = 0; v < n; ++v) {
        std::int64_t net = 0;
        for (int k = 0; k < deg; ++k) {
            auto [id, sign] = E.directed(v, k);
            net = checked_add(net, sign * f.coeffs[id]);
        }
        if (net != 0) return false;
    }
    return true;
}

namespace {

/* Directed weight rule on a definitional graph: (tail index, gen index) -> weight. */
using DirectedRule = std::function<std::int64_t(int, int)>;

struct WeightingPlan {
    Weighting w;
    std::int64_t divisor;
    // Non-bipartite prism: f must take opposite values on these two edges.
    std::optional<std::pair<OrientedEdge, OrientedEdge>> pin;
};

Weighting materialize(const CanonicalEdges& E, const DirectedRule& rule) {
    Weighting w;
    w.weights.resize(E.count());
    const auto& conn = E.conn_indices();
    for (int e = 0; e < E.count(); ++e) {
        w.weights[e] = rule(E.rep_tail(e), conn[E.rep_gen_pos(e)]);
    }
    return w;
}

/* Pulls a directed rule on definitional graph D back through an isomorphism
   X -> D (as a vertex map). */
Weighting pull_back(const CanonicalEdges& E, const CayleyGraph& D,
                    const std::vector<int>& map, const DirectedRule& rule_on_D) {
    const AbelianGroup& GD = D.group();
    Weighting w;
    w.weights.resize(E.count());
    for (int e = 0; e < E.count(); ++e) {
        int a = map[E.rep_tail(e)];
        int b = map[E.head_of(e)];
        int g = GD.index_of(GD.sub(GD.element_of(b), GD.element_of(a)));
        if (!D.conn().contains_index(g)) {
            fail(ErrorCode::InternalCheckFailed, "isomorphism does not carry edges to edges");
        }
        w.weights[e] = rule_on_D(a, g);
    }
    return w;
}

std::int64_t require_param(const ClassificationLabel& label, const std::string& key) {
    auto it = label.params.find(key);
    if (it == label.params.end()) {
        fail(ErrorCode::RoleMismatch, "label is missing parameter '" + key + "'");
    }
    return it->second;
}

int require_role(const ClassificationLabel& label, const std::string& key) {
    auto it = label.roles.find(key);
    if (it == label.roles.end()) {
        fail(ErrorCode::RoleMismatch, "label is missing generator role '" + key + "'");
    }
    return it->second;
}

CayleyGraph definitional_mobius(int n) {
    AbelianGroup Z(std::vector<int>{2 * n});
    return build_graph(Z, {{1}, {2 * n - 1}, {n}});
}

CayleyGraph definitional_prism(int n) {
    AbelianGroup G(std::vector<int>{2, n});
    return build_graph(G, {{0, 1}, {0, n - 1}, {1, 0}});
}

CayleyGraph definitional_k3box() {
    AbelianGroup G(std::vector<int>{3, 3});
    return build_graph(G, {{1, 0}, {2, 0}, {0, 1}, {0, 2}});
}

/* Identity when X is literally the definitional presentation (keeps the
   lemma's stated weights on the nose there), else a backtracking search. */
std::optional<std::vector<int>> find_iso(const CayleyGraph& X, const CayleyGraph& D) {
    if (X.group() == D.group() && X.conn().indices() == D.conn().indices()) {
        std::vector<int> id(X.vertex_count());
        for (int v = 0; v < X.vertex_count(); ++v) id[v] = v;
        return id;
    }
    return graph_isomorphism(X, D);
}

WeightingPlan plan_weighting(const CayleyGraph& X, const ClassificationLabel& label) {
    const AbelianGroup& G = X.group();
    CanonicalEdges E(X);
    WeightingPlan plan{Weighting{}, 0, std::nullopt};

    switch (label.tag) {
        case Tag::MobiusLadder: {
            std::int64_t n = require_param(label, "n");
            if (!X.is_bipartite()) {
                fail(ErrorCode::NotExceptionalClass,
                     "non-bipartite Mobius ladders have no weighting test (membership is "
                     "evenness)");
            }
            CayleyGraph D = definitional_mobius(static_cast<int>(n));
            auto iso = find_iso(X, D);
            if (!iso) fail(ErrorCode::RoleMismatch, "graph is not the labeled Mobius ladder");
            int u = static_cast<int>(n);
            plan.w = pull_back(E, D, *iso, [u](int v, int g) -> std::int64_t {
                if (g != u) return 0;
                return (v % 2 == 0) ? 1 : -1;
            });
            plan.divisor = n;
            break;
        }
        case Tag::PrismOverCycle: {
            std::int64_t n = require_param(label, "n");
            CayleyGraph D = definitional_prism(static_cast<int>(n));
            auto iso = find_iso(X, D);
            if (!iso) fail(ErrorCode::RoleMismatch, "graph is not the labeled prism");
            const AbelianGroup& GD = D.group();
            int t = GD.index_of({0, 1});
            int tn = GD.index_of({0, static_cast<int>(n) - 1});
            if (n % 2 == 0) {
                // Bipartite prism: (-1)^j on each cycle edge leaving (i,j).
                plan.w = pull_back(E, D, *iso, [&GD, t, tn](int v, int g) -> std::int64_t {
                    if (g != t && g != tn) return 0;
                    return (GD.element_of(v)[1] % 2 == 0) ? 1 : -1;
                });
            } else {
                // Non-bipartite prism: +1 on bottom-cycle edges, in the t direction.
                plan.w = pull_back(E, D, *iso, [&GD, t, tn](int v, int g) -> std::int64_t {
                    if (GD.element_of(v)[0] != 0) return 0;
                    if (g == t) return 1;
                    if (g == tn) return -1;
                    return 0;
                });
                // Pinned pair: edges (0,0)->(0,1) and (1,0)->(1,1) carried into X.
                std::vector<int> pre(G.order());
                for (int v = 0; v < G.order(); ++v) pre[(*iso)[v]] = v;
                auto carry = [&](int a, int b) -> OrientedEdge {
                    GroupElement ta = G.element_of(pre[a]);
                    GroupElement hb = G.element_of(pre[b]);
                    return OrientedEdge{ta, G.sub(hb, ta)};
                };
                plan.pin = {carry(GD.index_of({0, 0}), GD.index_of({0, 1})),
                            carry(GD.index_of({1, 0}), GD.index_of({1, 1}))};
            }
            plan.divisor = n - 1;
            break;
        }
        case Tag::K3xK3: {
            CayleyGraph D = definitional_k3box();
            auto iso = find_iso(X, D);
            if (!iso) fail(ErrorCode::RoleMismatch, "graph is not K_3 box K_3");
            const AbelianGroup& GD = D.group();
            int t = GD.index_of({1, 0});
            int tn = GD.index_of({2, 0});
            plan.w = pull_back(E, D, *iso, [&GD, t, tn](int v, int g) -> std::int64_t {
                if (g != t && g != tn) return 0;
                static constexpr std::int64_t by_coset[3] = {1, -1, 0};
                std::int64_t base = by_coset[GD.element_of(v)[1]];
                return g == t ? base : -base;
            });
            plan.divisor = 3;
            break;
        }
        case Tag::SquareOfEvenCycle: {
            int s = require_role(label, "s");
            int t = require_role(label, "t");
            int tn = G.neg_index(t);
            std::int64_t N = G.order();
            if (N % 2 != 0 || G.add_index(s, s) != t ||
                G.element_order(G.element_of(t)) < 3 || !X.conn().contains_index(s) ||
                !X.conn().contains_index(t) || X.degree() != 4) {
                fail(ErrorCode::RoleMismatch, "roles do not present a square of an even cycle");
            }
            // pos[v] = i with v = i*s; s generates, so this covers every vertex.
            std::vector<int> pos(G.order(), -1);
            int cur = 0;
            for (int i = 0; i < G.order(); ++i) {
                pos[cur] = i;
                cur = G.add_index(cur, s);
            }
            if (cur != 0 || std::count(pos.begin(), pos.end(), -1) > 0) {
                fail(ErrorCode::RoleMismatch, "role s does not generate the group");
            }
            plan.w = materialize(E, [&pos, t, tn](int v, int g) -> std::int64_t {
                if (g != t && g != tn) return 0;
                std::int64_t base = (pos[v] % 2 == 0) ? 1 : -1;
                return g == t ? base : -base;
            });
            plan.divisor = N - 2;
            break;
        }
        case Tag::Weird4: {
            int t = require_role(label, "t");
            int u = require_role(label, "u");
            int tn = G.neg_index(t);
            int m = G.element_order(G.element_of(t));
            if (G.order() % 4 != 2 || X.is_bipartite() || m % 2 == 0 || m < 3 ||
                !X.conn().contains_index(t) || !X.conn().contains_index(u) || X.degree() != 4) {
                fail(ErrorCode::RoleMismatch, "roles do not present the sporadic four-valent case");
            }
            // Coset coordinate: v = (elt of <t>) + j*u with j in [0, n).
            int n = G.order() / m;
            std::vector<int> coset(G.order(), -1);
            auto T = G.subgroup({G.element_of(t)});
            int shift = 0;
            for (int j = 0; j < n; ++j) {
                for (int h : T) {
                    int v = G.add_index(h, shift);
                    if (coset[v] != -1) {
                        fail(ErrorCode::RoleMismatch, "u does not enumerate the <t>-cosets");
                    }
                    coset[v] = j;
                }
                shift = G.add_index(shift, u);
            }
            plan.w = materialize(E, [&coset, t, tn](int v, int g) -> std::int64_t {
                if (g != t && g != tn) return 0;
                std::int64_t base = (coset[v] % 2 == 0) ? 1 : -1;
                return g == t ? base : -base;
            });
            plan.divisor = 4;
            break;
        }
        default:
            fail(ErrorCode::NotExceptionalClass,
                 std::string("no weighting characterization for class ") + tag_name(label.tag));
    }
    return plan;
}

}  // namespace

Weighting standard_weighting(const CayleyGraph& X, const ClassificationLabel& label) {
    return plan_weighting(X, label).w;
}

bool membership_by_weighting(const CayleyGraph& X, const ClassificationLabel& label,
                             const Flow& f) {
    WeightingPlan plan = plan_weighting(X, label);
    if (f.coeffs.size() != plan.w.weights.size()) {
        fail(ErrorCode::GraphMismatch, "flow has wrong edge count");
    }
    std::int64_t sum = weighted_sum(f, plan.w);
    if (sum % plan.divisor != 0) return false;
    if (plan.pin) {
        CanonicalEdges E(X);
        if (edge_flow(E, f, plan.pin->first) != -edge_flow(E, f, plan.pin->second)) return false;
    }
    return true;
}

}  // namespace hamflow

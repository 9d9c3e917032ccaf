#include "hamflow/torus.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "hamflow/errors.hpp"
#include "hamflow/path_dsl.hpp"

namespace hamflow {

namespace {

GroupElement canon(const AbelianGroup& G, const GroupElement& e) {
    return G.canonicalize(std::vector<long long>(e.begin(), e.end()));
}

[[noreturn]] void not_weird(const std::string& what) {
    fail(ErrorCode::NotWeirdConfiguration, what);
}

/* Lift direction of a step: t moves (+-1, 0), u moves (0, +-1). */
std::array<int, 2> step_dir(const TorusEmbedding& emb, const GroupElement& raw) {
    const AbelianGroup& G = emb.X.group();
    GroupElement s = canon(G, raw);
    if (s == emb.t) return {1, 0};
    if (s == G.neg(emb.t)) return {-1, 0};
    if (s == emb.u) return {0, 1};
    if (s == G.neg(emb.u)) return {0, -1};
    fail(ErrorCode::StepNotInS,
         "step " + G.element_to_string(s) + " is not one of t, t^-1, u, u^-1");
}

std::int64_t mod4(std::int64_t x) { return ((x % 4) + 4) % 4; }

/* Rejects open or non-simple walks with the matching error. */
WalkKind require_simple_cycle(const TorusEmbedding& emb, const Walk& c, const char* who) {
    WalkKind kind = classify_walk(emb.X, c);
    if (kind == WalkKind::Path) fail(ErrorCode::NotClosed, std::string(who) + " needs a cycle");
    if (kind == WalkKind::NotSimple) {
        fail(ErrorCode::NotSimple, std::string(who) + " needs a simple cycle");
    }
    return kind;
}

}  // namespace

TorusEmbedding build_embedding(const CayleyGraph& X, const GroupElement& t_in,
                               const GroupElement& u_in) {
    const AbelianGroup& G = X.group();
    GroupElement t = canon(G, t_in);
    GroupElement u = canon(G, u_in);

    if (X.degree() != 4) not_weird("the connection set must have four elements");
    std::vector<int> want{G.index_of(t), G.neg_index(G.index_of(t)), G.index_of(u),
                          G.neg_index(G.index_of(u))};
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (want.size() != 4 || want != X.conn().indices()) {
        not_weird("the connection set must be exactly {t, t^-1, u, u^-1}");
    }
    int m = G.element_order(t);
    if (m % 2 == 0 || m < 3) not_weird("t must have odd order at least 3");
    if (G.order() % 4 != 2) not_weird("the group order must be 2 mod 4");
    GroupElement uu = G.mul(u, 2);
    if (t == uu || t == G.neg(uu)) not_weird("t must not be u^2 or u^-2");

    TorusEmbedding emb{X, t, u, m, G.order() / m, 0, {}, {}};
    if (emb.n % 4 != 2) {
        fail(ErrorCode::InternalCheckFailed, "index of <t> is not 2 mod 4");
    }

    const int N = G.order();
    const int ti = G.index_of(t);
    const int ui = G.index_of(u);
    emb.t_coord.assign(N, -1);
    emb.u_coord.assign(N, -1);
    int shift = G.index_of(G.identity());
    for (int j = 0; j < emb.n; ++j) {
        int v = shift;
        for (int a = 0; a < m; ++a) {
            if (emb.t_coord[v] != -1) {
                fail(ErrorCode::InternalCheckFailed, "vertex address collision");
            }
            emb.t_coord[v] = a;
            emb.u_coord[v] = j;
            v = G.add_index(v, ti);
        }
        shift = G.add_index(shift, ui);
    }

    // u^n lies in <t>; r is the smallest nonnegative even exponent hitting it.
    int nui = G.index_of(G.mul(u, emb.n));
    if (emb.u_coord[nui] != 0) fail(ErrorCode::InternalCheckFailed, "u^n escapes <t>");
    int k = emb.t_coord[nui];
    emb.r = k % 2 == 0 ? k : k + m;
    return emb;
}

std::vector<std::array<std::int64_t, 2>> lift_walk(const TorusEmbedding& emb, const Walk& c) {
    const AbelianGroup& G = emb.X.group();
    int b = G.index_of(canon(G, c.base));
    std::vector<std::array<std::int64_t, 2>> pts;
    pts.reserve(c.steps.size() + 1);
    std::array<std::int64_t, 2> cur{emb.t_coord[b], emb.u_coord[b]};
    pts.push_back(cur);
    for (const GroupElement& s : c.steps) {
        auto d = step_dir(emb, s);
        cur[0] += d[0];
        cur[1] += d[1];
        pts.push_back(cur);
    }
    return pts;
}

KnotClass knot_class(const TorusEmbedding& emb, const Walk& c) {
    const AbelianGroup& G = emb.X.group();
    GroupElement base = canon(G, c.base);
    GroupElement cur = base;
    std::int64_t dx = 0, dy = 0;
    for (const GroupElement& s : c.steps) {
        auto d = step_dir(emb, s);
        dx += d[0];
        dy += d[1];
        cur = G.add(cur, s);
    }
    if (!(cur == base)) fail(ErrorCode::NotClosed, "the walk does not return to its base");
    if (dy % emb.n != 0) {
        fail(ErrorCode::InternalCheckFailed, "vertical wrap is not divisible by n");
    }
    std::int64_t q = dy / emb.n;
    std::int64_t x = dx + q * emb.r;
    if (x % emb.m != 0) {
        fail(ErrorCode::InternalCheckFailed, "horizontal wrap is not divisible by m");
    }
    std::int64_t p = x / emb.m;
    if (p < 0 || (p == 0 && q < 0)) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

bool is_essential(const TorusEmbedding& emb, const Walk& c) {
    return knot_class(emb, c) != KnotClass{};
}

int blue_count(const TorusEmbedding& emb, const Walk& c) {
    auto pts = lift_walk(emb, c);
    int count = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i][1] == pts[i + 1][1] && (pts[i][1] & 1) == 0) ++count;
    }
    return count;
}

std::int64_t walk_weight(const TorusEmbedding& emb, const Walk& c) {
    auto pts = lift_walk(emb, c);
    std::int64_t wt = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        std::int64_t dx = pts[i + 1][0] - pts[i][0];
        if (dx == 0) continue;
        wt += (pts[i][1] & 1) == 0 ? dx : -dx;
    }
    return wt;
}

CayleyGraph double_cover(const TorusEmbedding& emb) {
    const AbelianGroup& G = emb.X.group();
    std::vector<int> factors = G.factors();
    factors.push_back(2);
    AbelianGroup G2(factors);
    std::vector<GroupElement> S;
    for (const GroupElement& s : {emb.t, G.neg(emb.t), emb.u, G.neg(emb.u)}) {
        GroupElement lifted = s;
        lifted.push_back(1);
        S.push_back(lifted);
    }
    return build_graph(G2, S);
}

int imbalance(const TorusEmbedding& emb, const Walk& c) {
    const AbelianGroup& G = emb.X.group();
    require_simple_cycle(emb, c, "imbalance");
    if (!is_essential(emb, c)) fail(ErrorCode::NotEssential, "the cycle is not essential");
    if (c.steps.size() % 2 != 0) fail(ErrorCode::OddCycle, "imbalance needs an even cycle");

    const int N = G.order();
    const int ti = G.index_of(emb.t), tn = G.neg_index(ti);
    const int ui = G.index_of(emb.u), un = G.neg_index(ui);
    auto vid = [N](int v, int sheet) { return v + sheet * N; };

    /* Cover vertices are (v, sheet); both lifts of C are walked at once,
       marking their edges by tail id. The t-edge at w is (w, w + (t,1)),
       the u-edge (w, w + (u,1)). */
    std::vector<char> t_edge(2 * N, 0), u_edge(2 * N, 0), covered(N, 0);
    const int b = G.index_of(canon(G, c.base));
    for (int sheet = 0; sheet < 2; ++sheet) {
        int v = b, e = sheet;
        for (const GroupElement& s : c.steps) {
            covered[v] = 1;
            auto d = step_dir(emb, s);
            if (d[0] == 1) {
                t_edge[vid(v, e)] = 1;
                v = G.add_index(v, ti);
            } else if (d[0] == -1) {
                int w = G.add_index(v, tn);
                t_edge[vid(w, e ^ 1)] = 1;
                v = w;
            } else if (d[1] == 1) {
                u_edge[vid(v, e)] = 1;
                v = G.add_index(v, ui);
            } else {
                int w = G.add_index(v, un);
                u_edge[vid(w, e ^ 1)] = 1;
                v = w;
            }
            e ^= 1;
        }
    }

    /* Quadrilateral faces of the cover's torus grid, keyed by their corner
       id a (corners a, a+(t,1), a+(u,1), a+(t,1)+(u,1)). Faces are adjacent
       when the shared edge is not on a lifted cycle; the components of this
       adjacency are the components of the cut torus. */
    std::vector<int> comp(2 * N, -1);
    int ncomp = 0;
    std::vector<int> stack;
    for (int seed = 0; seed < 2 * N; ++seed) {
        if (comp[seed] != -1) continue;
        comp[seed] = ncomp;
        stack.assign(1, seed);
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            int v = a % N, e = a / N;
            int right = vid(G.add_index(v, ti), e ^ 1);
            int left = vid(G.add_index(v, tn), e ^ 1);
            int up = vid(G.add_index(v, ui), e ^ 1);
            int down = vid(G.add_index(v, un), e ^ 1);
            const std::array<std::pair<int, bool>, 4> nbs{{
                {right, !u_edge[right]},
                {left, !u_edge[a]},
                {up, !t_edge[up]},
                {down, !t_edge[a]},
            }};
            for (const auto& [face, open] : nbs) {
                if (open && comp[face] == -1) {
                    comp[face] = ncomp;
                    stack.push_back(face);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp != 2) {
        fail(ErrorCode::InternalCheckFailed,
             "the lifted cycles do not cut the torus into two parts");
    }

    /* An uncovered vertex inherits the component of its corner face; its two
       lifts land in different components, and the bipartition class of the
       cover is the sheet. Count black minus white in component 0. */
    std::int64_t kw = 0;
    for (int v = 0; v < N; ++v) {
        if (covered[v]) continue;
        int c0 = comp[vid(v, 0)], c1 = comp[vid(v, 1)];
        if (c0 == c1) {
            fail(ErrorCode::InternalCheckFailed, "both lifts of a vertex share a component");
        }
        kw += c0 == 0 ? 1 : -1;
    }
    if (kw % 2 != 0) {
        fail(ErrorCode::InternalCheckFailed, "color excess differs between components");
    }
    auto out = static_cast<int>(mod4(kw));
    if (out != 0 && out != 2) fail(ErrorCode::InternalCheckFailed, "imbalance escaped {0, 2}");
    return out;
}

std::int64_t enclosed_vertices(const TorusEmbedding& emb, const Walk& c) {
    require_simple_cycle(emb, c, "the enclosed-vertex count");
    auto pts = lift_walk(emb, c);
    if (!(pts.front() == pts.back())) {
        fail(ErrorCode::InvalidInput, "an essential cycle does not lift to a closed polygon");
    }
    const size_t len = pts.size() - 1;

    std::set<std::array<std::int64_t, 2>> boundary(pts.begin(), pts.end() - 1);
    std::vector<std::array<std::int64_t, 2>> vertical;  // (x, lower y) per vertical edge
    std::int64_t minx = pts[0][0], maxx = pts[0][0], miny = pts[0][1], maxy = pts[0][1];
    for (size_t i = 0; i < len; ++i) {
        minx = std::min(minx, pts[i][0]);
        maxx = std::max(maxx, pts[i][0]);
        miny = std::min(miny, pts[i][1]);
        maxy = std::max(maxy, pts[i][1]);
        if (pts[i][0] == pts[i + 1][0]) {
            vertical.push_back({pts[i][0], std::min(pts[i][1], pts[i + 1][1])});
        }
    }

    /* Even-odd ray casting from (x, y + 1/2): a unit vertical edge crosses
       the ray exactly when its lower end sits at height y, strictly right
       of x. The half offset cannot change sides, since edges sit on integer
       coordinates and (x, y) is not on the polygon. */
    std::int64_t inside = 0;
    for (std::int64_t x = minx + 1; x < maxx; ++x) {
        for (std::int64_t y = miny + 1; y < maxy; ++y) {
            if (boundary.count({x, y}) != 0) continue;
            int crossings = 0;
            for (const auto& edge : vertical) {
                if (edge[1] == y && edge[0] > x) ++crossings;
            }
            if (crossings % 2 == 1) ++inside;
        }
    }

    // Lattice-polygon area identity: 2*area = len + 2*inside - 2.
    std::int64_t twice_area = 0;
    for (size_t i = 0; i < len; ++i) {
        twice_area += pts[i][0] * pts[i + 1][1] - pts[i + 1][0] * pts[i][1];
    }
    twice_area = std::llabs(twice_area);
    if (twice_area != static_cast<std::int64_t>(len) + 2 * inside - 2) {
        fail(ErrorCode::InternalCheckFailed, "ray casting disagrees with the polygon area");
    }
    return inside;
}

CongruenceReport check_congruences(const TorusEmbedding& emb, const Walk& c) {
    WalkKind kind = require_simple_cycle(emb, c, "the congruence check");
    CongruenceReport rep;
    rep.len = static_cast<int>(c.steps.size());
    rep.wt = walk_weight(emb, c);
    rep.knot = knot_class(emb, c);
    rep.essential = rep.knot != KnotClass{};
    rep.hamiltonian = kind == WalkKind::HamiltonianCycle;
    if (rep.essential && rep.len % 2 == 0) {
        rep.imb = imbalance(emb, c);
        rep.congruence = "wt = len + imb + 2 (mod 4)";
        rep.holds = mod4(rep.wt - rep.len - *rep.imb - 2) == 0;
    } else if (!rep.essential) {
        rep.interior = enclosed_vertices(emb, c);
        rep.congruence = "wt = len + 2*interior - 2 (mod 4)";
        rep.holds = mod4(rep.wt - rep.len - 2 * *rep.interior + 2) == 0;
    } else {
        rep.congruence = "none (odd essential cycle)";
        rep.holds = true;
    }
    if (rep.hamiltonian) {
        rep.congruence += " and wt = 0 (mod 4)";
        rep.holds = rep.holds && mod4(rep.wt) == 0;
    }
    return rep;
}

}  // namespace hamflow

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamflow/cayley.hpp"

namespace hamflow {

/*
 * Torus machinery for the sporadic four-valent class: S = {t,t^-1,u,u^-1}
 * with |t| odd, |G| = 2 mod 4, and t not a square of u. The graph embeds on
 * the torus by sending t^a u^b to (a/m + rb/mn, b/n); everything here works
 * with the integer lift instead of real coordinates.
 */
struct TorusEmbedding {
    CayleyGraph X;
    GroupElement t, u;
    int m = 0;  // |t|, odd
    int n = 0;  // index of <t>, always 2 mod 4
    int r = 0;  // smallest nonnegative even r with n*u = r*t
    /* Per-vertex address: v = t_coord[v]*t + u_coord[v]*u with
       t_coord in [0,m) and u_coord in [0,n). */
    std::vector<int> t_coord, u_coord;
};

/** Validates the configuration and picks r. Errors: NotWeirdConfiguration. */
TorusEmbedding build_embedding(const CayleyGraph& X, const GroupElement& t,
                               const GroupElement& u);

/*
 * Homology class of a closed walk: displacement of the lift decomposed in
 * the deck basis {(m,0), (-r,n)}, normalized so the first nonzero entry is
 * positive ((p,q) and (-p,-q) are the same class).
 */
struct KnotClass {
    std::int64_t p = 0;
    std::int64_t q = 0;
    bool operator==(const KnotClass& o) const { return p == o.p && q == o.q; }
    bool operator!=(const KnotClass& o) const { return !(*this == o); }
};

/**
 * Vertex sequence of the lift to the integer grid: t steps move (+-1, 0),
 * u steps move (0, +-1), starting at the base address. Length len+1; works
 * on open walks. Errors: StepNotInS.
 */
std::vector<std::array<std::int64_t, 2>> lift_walk(const TorusEmbedding& emb, const Walk& c);

/** Errors: NotClosed, StepNotInS. The decomposition is exact for closed walks. */
KnotClass knot_class(const TorusEmbedding& emb, const Walk& c);

/** True iff the knot class is nonzero, i.e. the lift is not closed. */
bool is_essential(const TorusEmbedding& emb, const Walk& c);

/** Number of traversed t-edges at even u-height in the lift. */
int blue_count(const TorusEmbedding& emb, const Walk& c);

/**
 * Weighted sum of the walk's edge flows under the class weighting: a t-edge
 * at u-height j weighs (-1)^j, u-edges weigh 0; traversal direction signs.
 */
std::int64_t walk_weight(const TorusEmbedding& emb, const Walk& c);

/**
 * Bipartite double cover Cay(G x Z_2; {(t,1),(u,1)} symmetrized): every
 * step flips the sheet, each vertex of X has one preimage per sheet.
 */
CayleyGraph double_cover(const TorusEmbedding& emb);

/**
 * For an essential even cycle: lift to the two disjoint cycles in the double
 * cover, cut the torus along them, 2-color one complementary component by
 * the cover's bipartition, and return (#black - #white) mod 4. The value is
 * 0 or 2 and does not depend on the component or color choice.
 * Errors: NotClosed, NotSimple, NotEssential, OddCycle.
 */
int imbalance(const TorusEmbedding& emb, const Walk& c);

/**
 * Number of grid vertices strictly inside the lifted polygon of a
 * non-essential simple cycle (even-odd ray casting; the exact lattice area
 * identity is asserted internally). Errors: NotClosed, NotSimple,
 * InvalidInput for essential input.
 */
std::int64_t enclosed_vertices(const TorusEmbedding& emb, const Walk& c);

struct CongruenceReport {
    int len = 0;
    std::int64_t wt = 0;
    KnotClass knot;
    bool essential = false;
    bool hamiltonian = false;
    std::optional<int> imb;                 // essential even cycles
    std::optional<std::int64_t> interior;   // non-essential cycles
    std::string congruence;                 // what was asserted
    bool holds = false;
};

/**
 * Checks the congruence that applies to the given simple cycle:
 *   essential even:  wt = len + imb + 2      (mod 4)
 *   non-essential:   wt = len + 2*interior - 2 (mod 4)
 *   hamiltonian:     additionally wt = 0     (mod 4)
 * Essential odd cycles have nothing to assert and report holds = true.
 * Errors: NotClosed, NotSimple, StepNotInS.
 */
CongruenceReport check_congruences(const TorusEmbedding& emb, const Walk& c);

}  // namespace hamflow

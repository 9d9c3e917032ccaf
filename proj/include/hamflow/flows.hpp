#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hamflow/cayley.hpp"

namespace hamflow {

/** Directed edge presentation: from tail along gen (gen must lie in S). */
struct OrientedEdge {
    GroupElement tail;
    GroupElement gen;
};

/**
 * One oriented representative per undirected edge.
 *
 * The representative of {v, v+s} is whichever of (v,s), (v+s,-s) has the
 * lexicographically smaller (tail index, generator index) pair; for an
 * involution generator that is the smaller tail. Representatives are listed
 * in increasing (tail, generator) order, and that order indexes Flow and
 * Weighting coefficient vectors.
 */
class CanonicalEdges {
  public:
    explicit CanonicalEdges(const CayleyGraph& X);

    int count() const { return static_cast<int>(rep_tail_.size()); }
    const AbelianGroup& group() const { return group_; }
    int degree() const { return static_cast<int>(conn_indices_.size()); }
    const std::vector<int>& conn_indices() const { return conn_indices_; }

    int rep_tail(int edge_id) const { return rep_tail_[edge_id]; }
    int rep_gen_pos(int edge_id) const { return rep_gen_pos_[edge_id]; }
    OrientedEdge rep(int edge_id) const;

    /** (edge id, +1) if (v, conn[k]) is the representative, (edge id, -1) otherwise. */
    std::pair<int, int> directed(int v, int k) const {
        int d = dir_[static_cast<size_t>(v) * conn_indices_.size() + k];
        return {d >= 0 ? d : ~d, d >= 0 ? 1 : -1};
    }
    /** Same, from an explicit presentation; NotAnEdge if gen is not in S. */
    std::pair<int, int> locate(const OrientedEdge& e) const;

    int head_of(int edge_id) const;

  private:
    AbelianGroup group_;
    std::vector<int> conn_indices_;
    std::vector<int> rep_tail_, rep_gen_pos_;
    std::vector<int> dir_;  // edge id, bitwise-complemented when reversed
};

/** Integer flow: one coefficient per canonical edge, conservative at vertices. */
struct Flow {
    std::vector<std::int64_t> coeffs;

    bool operator==(const Flow& o) const { return coeffs == o.coeffs; }
};

/** Edge weighting; reversed-orientation queries negate. */
struct Weighting {
    std::vector<std::int64_t> weights;
};

Flow zero_flow(const CanonicalEdges& E);

/** Signed coefficient of f on e (negated when e is the reversed presentation). */
std::int64_t edge_flow(const CanonicalEdges& E, const Flow& f, const OrientedEdge& e);
std::int64_t weight_on(const CanonicalEdges& E, const Weighting& w, const OrientedEdge& e);

/** Unit circulation around a simple closed walk. */
Flow cycle_to_flow(const CanonicalEdges& E, const Walk& w);

/** Unit circulation around [base](g, h, g^-1, h^-1); g, h in S, the four corners distinct. */
Flow basic_four_cycle(const CanonicalEdges& E, const GroupElement& base, const GroupElement& g,
                      const GroupElement& h);

/** Parity of the sum of canonical-edge coefficients. */
bool is_even(const Flow& f);

std::int64_t weighted_sum(const Flow& f, const Weighting& w);

/** Image of f under the graph automorphism x -> v+x. */
Flow translate_flow(const CanonicalEdges& E, const GroupElement& v, const Flow& f);

Flow add_flows(const Flow& a, const Flow& b);
Flow scale_flow(std::int64_t k, const Flow& f);

/** Checks conservation at every vertex. */
bool is_conservative(const CanonicalEdges& E, const Flow& f);

/**
 * The classification's membership weighting for the five exceptional classes
 * (bipartite Mobius ladder, prism over a cycle, K_3 box K_3, square of an even
 * cycle, and the sporadic four-valent class on orders 2 mod 4).
 */
Weighting standard_weighting(const CayleyGraph& X, const ClassificationLabel& label);

/**
 * Divisibility test deciding f ∈ H for the exceptional classes; the
 * non-bipartite prism additionally pins one rung-adjacent edge pair.
 */
bool membership_by_weighting(const CayleyGraph& X, const ClassificationLabel& label,
                             const Flow& f);

}  // namespace hamflow

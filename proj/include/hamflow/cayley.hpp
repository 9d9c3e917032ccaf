#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamflow/abelian_group.hpp"

namespace hamflow {

/** Symmetric, identity-free connection set. Stored sorted by element index. */
class ConnectionSet {
  public:
    ConnectionSet(const AbelianGroup& G, std::vector<GroupElement> elements);

    const std::vector<GroupElement>& elements() const { return elements_; }
    const std::vector<int>& indices() const { return indices_; }
    size_t size() const { return elements_.size(); }
    bool contains_index(int idx) const;
    /** Position of element index within the sorted set, or -1. */
    int position_of(int idx) const;

    std::string to_string(const AbelianGroup& G) const;

  private:
    std::vector<GroupElement> elements_;  // sorted by index
    std::vector<int> indices_;
};

/** Closed walk or path: base vertex plus steps, all steps elements of S. */
struct Walk {
    GroupElement base;
    std::vector<GroupElement> steps;
};

/**
 * Connected Cayley graph Cay(G;S) on a finite abelian group.
 * Vertices are group-element indices; regular of degree |S|.
 */
class CayleyGraph {
  public:
    CayleyGraph(AbelianGroup G, ConnectionSet S);

    const AbelianGroup& group() const { return group_; }
    const ConnectionSet& conn() const { return conn_; }
    int degree() const { return static_cast<int>(conn_.size()); }
    int vertex_count() const { return group_.order(); }
    int edge_count() const { return edge_count_; }

    /** Neighbor of v along generator position k. */
    int neighbor(int v, int k) const { return adj_[static_cast<size_t>(v) * conn_.size() + k]; }
    const std::vector<int>& adjacency_flat() const { return adj_; }
    /** Adjacency bitmask per vertex (vertex_count ≤ 64 in all harness uses). */
    const std::vector<std::uint64_t>& masks() const { return masks_; }

    bool is_bipartite() const { return bipartite_; }
    /** Side (0/1) per vertex when bipartite; empty otherwise. */
    const std::vector<int>& bipartition() const { return side_; }

    std::string to_string() const;

  private:
    AbelianGroup group_;
    ConnectionSet conn_;
    std::vector<int> adj_;  // vertex_count x degree
    std::vector<std::uint64_t> masks_;
    int edge_count_;
    bool bipartite_;
    std::vector<int> side_;
};

CayleyGraph build_graph(const AbelianGroup& G, const std::vector<GroupElement>& S);

enum class Tag {
    DegreeAtMostTwo,
    MobiusLadder,
    PrismOverCycle,
    OtherCubic,
    SquareOfEvenCycle,
    Weird4,
    K3xK3,
    OddOrderGeneric,
    GenericEvenOrder,
};

const char* tag_name(Tag tag);

/** Classification outcome; params/roles are tag-specific (see classify). */
struct ClassificationLabel {
    Tag tag;
    std::map<std::string, std::int64_t> params;
    /* Generator roles as element indices, when the tag fixes them (e.g. s/t for
       SquareOfEvenCycle, t/u for Weird4). */
    std::map<std::string, int> roles;
};

ClassificationLabel classify(const CayleyGraph& X);

struct QuotientDescriptor {
    std::int64_t free_rank = 0;
    std::vector<std::int64_t> torsion;  // divisibility chain, entries >= 2

    bool operator==(const QuotientDescriptor& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const;
};

struct QuotientPair {
    QuotientDescriptor fh;
    QuotientDescriptor eh;
};

/** The classification's predicted F/H and E/(H∩E) shapes for the labeled graph. */
QuotientPair predicted_quotients(const ClassificationLabel& label, const CayleyGraph& X);

/**
 * Isomorphism from A onto B as a vertex map, if one exists.
 * Backtracking matcher; intended for the small definitional reference graphs.
 */
std::optional<std::vector<int>> graph_isomorphism(const CayleyGraph& A, const CayleyGraph& B);

}  // namespace hamflow

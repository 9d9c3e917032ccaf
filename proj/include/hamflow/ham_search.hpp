#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hamflow/lattice.hpp"

namespace hamflow {

struct EnumConfig {
    std::optional<std::int64_t> cycle_limit;  // cap on emitted cycles, >= 1
    bool canonicalize = true;                 // one orientation per undirected cycle
    int flood_period = 4;                     // connectivity prune every k levels
};

struct Enumeration {
    std::vector<Walk> cycles;
    bool truncated = false;
};

/*
 * Streams every undirected hamiltonian cycle exactly once as its vertex path
 * [0, v_1, ..., v_{n-1}], based at vertex 0 with v_1 < v_{n-1}. Paths arrive
 * in lexicographic order. Return false from visit to stop the search early;
 * the return value reports whether the search ran to completion.
 */
bool for_each_hamiltonian_cycle(const CayleyGraph& X,
                                const std::function<bool(const std::vector<int>&)>& visit,
                                int flood_period = 4);

/** Closed walk through the given vertex indices, in order. */
Walk path_to_walk(const AbelianGroup& G, const std::vector<int>& path);

Enumeration enumerate_hamiltonian_cycles(const CayleyGraph& X, const EnumConfig& cfg = {});

/** Rows are each cycle's flow in basis coordinates; the row lattice is H. */
IntegerMatrix hamiltonian_lattice(const FundamentalCycleBasis& basis, const Enumeration& e);
IntegerMatrix hamiltonian_lattice(const CayleyGraph& X, const FundamentalCycleBasis& basis);

}  // namespace hamflow

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamflow/cayley.hpp"
#include "hamflow/flows.hpp"
#include "hamflow/lattice.hpp"

namespace hamflow {

/*
 * Brute-force verification harness: enumerate small Cayley graphs, compute
 * the quotients F/H and E/(H ∩ E) from the actual hamiltonian cycles, and
 * compare them with the classification's predictions.
 */

struct SuiteConfig {
    int max_order = 16;  // at least 3
    /* Hard cap on |S|; 0 means none. Independently of it, orders above 12
       are always capped at degree 5 to keep the run tractable. */
    int max_degree = 0;
    int jobs = 0;                     // worker threads; 0 picks the hardware count
    std::int64_t cycle_cap = 200000;  // per-graph enumeration budget; 0 means none
    std::string out_path;             // report destination; empty writes no file
};

struct Verdict {
    std::string group;
    std::string conn;
    std::string label;
    QuotientPair expected;
    QuotientPair computed;  // meaningless when truncated
    bool match = false;
    bool truncated = false;
    std::int64_t ham_count = 0;  // cycles visited (total count unless frozen early)
    double ms = 0.0;
};

struct SuiteSummary {
    std::int64_t total = 0;
    std::int64_t matched = 0;
    std::int64_t mismatched = 0;
    std::int64_t truncated = 0;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<Verdict> verdicts;
    SuiteSummary summary;
};

struct QuotientComputation {
    QuotientPair pair;
    std::int64_t ham_count = 0;
    bool frozen = false;    // stopped early: H already reached its ceiling (E or F)
    bool complete = false;  // frozen, or the enumeration was exhausted
};

/*
 * F/H and E/(H ∩ E) from the hamiltonian cycles of X. H grows incrementally;
 * once it reaches its a-priori ceiling (the even sublattice E for even order,
 * all of F for odd) the enumeration stops, since no further cycle can change
 * it. A graph that exhausts cycle_cap without freezing or finishing comes
 * back incomplete.
 */
QuotientComputation compute_quotients_detail(const CayleyGraph& X, std::int64_t cycle_cap);

/** As above, but an incomplete enumeration raises TruncatedEnumeration. */
QuotientPair compute_quotients(const CayleyGraph& X, std::int64_t cycle_cap = 0);

/** Classify, predict, compute, compare. Raises TruncatedEnumeration as above. */
Verdict check_against_theory(const CayleyGraph& X, std::int64_t cycle_cap = 0);

/*
 * Every (group, connection set) the suite covers: all abelian groups given by
 * invariant-factor chains with 3 <= order <= max_order, and all symmetric
 * identity-free generating subsets within the degree bounds. Deterministic
 * order; exact duplicates never repeat, isomorphic presentations may.
 */
std::vector<std::pair<AbelianGroup, ConnectionSet>> enumerate_universe(const SuiteConfig& cfg);

/** Full run over the universe on a worker pool; verdicts in universe order. */
SuiteReport run_suite(const SuiteConfig& cfg,
                      const std::function<void(std::size_t, std::size_t)>& progress = {});

struct MembershipCrossCheck {
    std::int64_t trials = 0;
    std::int64_t agreements = 0;
    std::int64_t discrepancies = 0;
    std::int64_t members = 0;      // flows the exact lattice test accepted
    std::optional<Flow> witness;   // first flow the two tests disagreed on
};

/*
 * Seeded random flows (coefficients in [-3,3] over the fundamental cycle
 * basis, resampled to even flows when even_only is set) checked against both
 * membership tests: the weighting shortcut and exact lattice containment.
 * The label must be one of the exceptional classes with a weighting.
 */
MembershipCrossCheck cross_validate_membership(const CayleyGraph& X,
                                               const ClassificationLabel& label,
                                               std::int64_t trials, std::uint64_t seed,
                                               bool even_only = false);

}  // namespace hamflow

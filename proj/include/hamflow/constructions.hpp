#pragma once

#include <string>
#include <vector>

#include "hamflow/cayley.hpp"
#include "hamflow/flows.hpp"
#include "hamflow/path_dsl.hpp"

namespace hamflow {

/*
 * Catalog of parameterized hamiltonian cycle constructions.  Each entry stores
 * path-notation template text together with the bindings a caller must supply;
 * derived quantities (subgroup orders, indices, parity flags) are computed at
 * expansion time and the hypotheses under which the template is valid are
 * checked before any expansion happens.
 */
struct NamedConstruction {
    std::string name;
    std::string summary;
    std::vector<std::string> element_symbols;  // caller-supplied element bindings
    std::vector<std::string> int_symbols;      // caller-supplied integer bindings
    std::vector<std::string> templates;        // template text, multiple for branching entries
};

/** All entries, fixed order. */
const std::vector<NamedConstruction>& construction_catalog();

/** Lookup by name; UnknownName if absent. */
const NamedConstruction& catalog_entry(const std::string& name);

/*
 * Expands the named template under the given bindings.  HypothesisViolated
 * names the specific condition that failed; UnboundSymbol names a missing
 * required binding.  Every expansion is verified before it is returned, and a
 * verified failure raises InternalCheckFailed: a stored template that does not
 * produce what it promises must never pass silently.
 *
 * "OddHeight-C" returns a simple cycle covering exactly the complement of the
 * 18-element box {i*s + j*t + k*u : 0<=i,j<=2, 0<=k<=1}; every other entry
 * returns a hamiltonian cycle of X.
 */
Walk named_cycle(const std::string& name, const CayleyGraph& X, const Bindings& b);

enum class SurgeryKind { Sum, Difference };

const char* surgery_kind_name(SurgeryKind k);

/*
 * Reroute data for a cycle surgery.  H must contain the oriented path
 * [anchor](x, y, x^-1) and the oriented edge [anchor+x+z](y) for Sum, or
 * [anchor+x+y+z](y^-1) for Difference, edge-disjoint from the path.
 */
struct SurgerySpec {
    SurgeryKind kind = SurgeryKind::Sum;
    GroupElement anchor;
    GroupElement x;
    GroupElement y;
    GroupElement z;
};

struct SurgeryResult {
    Walk surgered;
    Flow delta;  // cycle_to_flow(H) - cycle_to_flow(surgered)
};

/*
 * Replaces the path [anchor](x, y, x^-1) of the hamiltonian cycle H by the
 * chord [anchor](y) and reroutes the matching y-edge through the two freed
 * vertices.  The returned delta equals
 *     [anchor]Q(x,y) + [anchor+x]Q(z,y)   for Sum,
 *     [anchor]Q(x,y) - [anchor+x]Q(z,y)   for Difference,
 * where Q(g,h) is the unit circulation around (g, h, g^-1, h^-1); the identity
 * is rechecked edge by edge.  Errors: MissingPath, MissingEdge,
 * SurgeryNotSimple.
 */
SurgeryResult lemma4c_surgery(const CayleyGraph& X, const Walk& H, const SurgerySpec& spec);

}  // namespace hamflow

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hamflow/cayley.hpp"

namespace hamflow {

struct IntExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;

/* Arithmetic allowed in exponents, subscripts, and family bounds: integer
   literals, bound symbols, |s| for the order of a bound generator, and
   +, -, *, / with division required to be exact. */
struct IntExpr {
    enum class Kind { Literal, Symbol, Order, Neg, Add, Sub, Mul, Div };
    Kind kind = Kind::Literal;
    std::int64_t value = 0;
    std::string symbol;
    IntExprPtr lhs, rhs;  // Neg uses lhs only
};

struct PathExpr;
using PathExprPtr = std::shared_ptr<const PathExpr>;

/*
 * Path notation AST. Surface syntax, all ASCII:
 *
 *   [v]           optional base-point prefix (element literal or bound symbol)
 *   t, t_2, t_i   generator references, optionally subscripted
 *   e^k           repetition; negative k inverts (generator operands only)
 *   e#            truncation: drop the last step of e's expansion
 *   a,b,c         concatenation
 *   (body)_{i=a}^{b}   indexed family, body repeated for i = a..b
 */
struct PathExpr {
    enum class Kind { Gen, Power, Sharp, Sequence, Family, Base };
    Kind kind = Kind::Gen;
    std::string symbol;              // Gen name; Family index; Base vertex text
    IntExprPtr subscript;            // Gen, may be null
    PathExprPtr child;               // Power/Sharp operand, Family body, Base body
    IntExprPtr exponent;             // Power
    std::vector<PathExprPtr> items;  // Sequence
    IntExprPtr lower, upper;         // Family bounds
};

bool same_expr(const PathExpr& a, const PathExpr& b);

PathExprPtr parse_path(const std::string& text);

/** Surface text that reparses to an identical AST. */
std::string render(const PathExpr& e);

/* Expansion-time values: integers for exponent symbols, group elements for
   generator symbols. Subscripted references look up keys like "t_2". */
struct Bindings {
    std::map<std::string, std::int64_t> ints;
    std::map<std::string, GroupElement> elements;
};

/** One generator occurrence with all arithmetic resolved. */
struct SymbolicStep {
    std::string symbol;
    std::optional<std::int64_t> subscript;
    int sign = 1;

    std::string key() const;
    std::string to_string() const;
    bool operator==(const SymbolicStep&) const = default;
};

/** Flattens e to its step sequence; generators stay symbolic. */
std::vector<SymbolicStep> expand_steps(const PathExpr& e, const AbelianGroup& G,
                                       const Bindings& b);

/** Full expansion: resolves the base point and every step to group elements. */
Walk expand_walk(const PathExpr& e, const AbelianGroup& G, const Bindings& b);

enum class WalkKind { Path, Cycle, HamiltonianCycle, NotSimple };

const char* walk_kind_name(WalkKind kind);

WalkKind classify_walk(const CayleyGraph& X, const Walk& w);

}  // namespace hamflow

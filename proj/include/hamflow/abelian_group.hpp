#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamflow/errors.hpp"

namespace hamflow {

/** Element of a finite abelian group, stored as one residue per factor. */
using GroupElement = std::vector<int>;

/**
 * Finite abelian group presented as Z_{d1} x ... x Z_{dk}.
 *
 * Factors need not be invariant factors; any list with every d_i >= 2 is
 * accepted. Elements are enumerated in lexicographic coordinate order, and the
 * enumeration index doubles as the dense vertex id used everywhere else.
 */
class AbelianGroup {
  public:
    explicit AbelianGroup(std::vector<int> factors);

    const std::vector<int>& factors() const { return factors_; }
    int order() const { return order_; }
    size_t rank() const { return factors_.size(); }

    /* index <-> element; index order equals lexicographic coordinate order. */
    int index_of(const GroupElement& e) const;
    GroupElement element_of(int index) const;

    GroupElement identity() const { return GroupElement(factors_.size(), 0); }
    bool is_identity(const GroupElement& e) const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    /* k may be negative; scalar multiple (additive power). */
    GroupElement mul(const GroupElement& a, std::int64_t k) const;

    int add_index(int a, int b) const;
    int neg_index(int a) const;

    /** Order of the cyclic subgroup generated by e. */
    int element_order(const GroupElement& e) const;

    /** Sorted element indices of the subgroup generated by gens. */
    std::vector<int> subgroup(const std::vector<GroupElement>& gens) const;

    /** Validates coordinates (CoordOutOfRange) and returns the canonical element. */
    GroupElement canonicalize(const std::vector<long long>& coords) const;

    std::string to_string() const;                       // e.g. "Z4xZ6"
    std::string element_to_string(const GroupElement& e) const;  // "(a,b)" or "a"

    bool operator==(const AbelianGroup& other) const { return factors_ == other.factors_; }

  private:
    std::vector<int> factors_;
    int order_;
};

/** Parses "Z6", "Z4xZ6", case-insensitive z/x. */
AbelianGroup parse_group(const std::string& text);

/** Parses "(a,b)" or a bare integer (single-factor groups), reducing mod factors. */
GroupElement parse_element(const AbelianGroup& G, const std::string& text);

/** Splits "1,5,3" or "(1,0),(0,1),(0,2)" into element literals (paren-aware). */
std::vector<std::string> split_element_list(const std::string& text);

}  // namespace hamflow

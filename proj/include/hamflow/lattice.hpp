#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hamflow/flows.hpp"

namespace hamflow {

using BigInt = boost::multiprecision::cpp_int;

/** Dense rows x cols matrix of arbitrary-precision integers. */
class IntegerMatrix {
  public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntegerMatrix identity(size_t n);
    static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                   size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    BigInt& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const BigInt& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    IntegerMatrix multiply(const IntegerMatrix& other) const;
    bool operator==(const IntegerMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

  private:
    size_t rows_, cols_;
    std::vector<BigInt> a_;
};

struct SnfResult {
    IntegerMatrix U, D, V;  // U*M*V = D
};

/**
 * Smith normal form by gcd-driven row/column reduction on the minimal pivot.
 * U, V unimodular; D diagonal, nonnegative, with each entry dividing the next.
 */
SnfResult snf(const IntegerMatrix& M);

/** Row-style Hermite form: echelon rows spanning the same lattice as M's rows. */
struct HermiteForm {
    IntegerMatrix rows;            // nonzero rows only, pivot columns increasing
    std::vector<size_t> pivots;    // pivot column per row
    IntegerMatrix transform;       // transform * M = (rows padded with zero rows)
};
HermiteForm hermite_form(const IntegerMatrix& M);

/**
 * Shape of Z^ambient_rank / (row span of gens), as free rank plus torsion
 * divisors (> 1, in divisibility order).
 */
QuotientDescriptor quotient_invariants(std::int64_t ambient_rank, const IntegerMatrix& gens);

/** Whether v lies in the integer row span of gens. */
bool lattice_contains(const IntegerMatrix& gens, const std::vector<BigInt>& v);
bool lattice_contains(const IntegerMatrix& gens, const std::vector<std::int64_t>& v);

/**
 * Fundamental cycles of a breadth-first spanning tree rooted at the identity.
 * Basis flow i is +1 on chord i plus the tree path closing it, so a flow's
 * basis coordinates are just its chord coefficients.
 */
class FundamentalCycleBasis {
  public:
    explicit FundamentalCycleBasis(const CayleyGraph& X);

    const CanonicalEdges& edges() const { return edges_; }
    int rank() const { return static_cast<int>(chords_.size()); }
    const std::vector<int>& tree_edges() const { return tree_; }
    const std::vector<int>& chord_edges() const { return chords_; }
    const std::vector<Flow>& basis() const { return basis_; }

    /** Exact coordinates of f in this basis (chord coefficients). */
    std::vector<std::int64_t> coords(const Flow& f) const;
    /** Rebuilds the flow with the given basis coordinates. */
    Flow from_coords(const std::vector<std::int64_t>& coords) const;

  private:
    CanonicalEdges edges_;
    std::vector<int> tree_, chords_;
    std::vector<Flow> basis_;
};

/**
 * Generator rows for the even sublattice E in basis coordinates: everything
 * when all basis flows are even (bipartite), else the parity kernel plus one
 * doubled odd vector.
 */
IntegerMatrix even_sublattice(const FundamentalCycleBasis& basis);

/**
 * Incremental Hermite-form builder: maintains an echelon basis of the lattice
 * spanned by the vectors inserted so far.
 */
class LatticeBuilder {
  public:
    explicit LatticeBuilder(size_t dim) : dim_(dim) {}

    /** Inserts v; returns true when the lattice grew (v was not already in it). */
    bool insert(const std::vector<std::int64_t>& v);
    bool contains(const std::vector<std::int64_t>& v) const;

    size_t dim() const { return dim_; }
    size_t rank() const { return rows_.size(); }
    IntegerMatrix generator_matrix() const;

  private:
    size_t dim_;
    std::vector<std::vector<BigInt>> rows_;  // echelon, pivots strictly increasing
    std::vector<size_t> pivots_;
};

}  // namespace hamflow

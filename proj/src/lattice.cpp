#include "hamflow/lattice.hpp"

#include <algorithm>
#include <deque>

#include "hamflow/errors.hpp"

namespace hamflow {

IntegerMatrix IntegerMatrix::identity(size_t n) {
    IntegerMatrix I(n, n);
    for (size_t i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                       size_t cols) {
    IntegerMatrix M(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorCode::DimensionMismatch, "ragged row list");
        for (size_t j = 0; j < cols; ++j) M.at(i, j) = rows[i][j];
    }
    return M;
}

IntegerMatrix IntegerMatrix::multiply(const IntegerMatrix& other) const {
    if (cols_ != other.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shapes");
    IntegerMatrix R(rows_, other.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const BigInt& a = at(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < other.cols_; ++j) R.at(i, j) += a * other.at(k, j);
        }
    }
    return R;
}

namespace {

void add_row_multiple(IntegerMatrix& M, size_t dst, size_t src, const BigInt& q) {
    for (size_t j = 0; j < M.cols(); ++j) M.at(dst, j) -= q * M.at(src, j);
}

void add_col_multiple(IntegerMatrix& M, size_t dst, size_t src, const BigInt& q) {
    for (size_t i = 0; i < M.rows(); ++i) M.at(i, dst) -= q * M.at(i, src);
}

void swap_rows(IntegerMatrix& M, size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < M.cols(); ++j) std::swap(M.at(a, j), M.at(b, j));
}

void swap_cols(IntegerMatrix& M, size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < M.rows(); ++i) std::swap(M.at(i, a), M.at(i, b));
}

void negate_row(IntegerMatrix& M, size_t r) {
    for (size_t j = 0; j < M.cols(); ++j) M.at(r, j) = -M.at(r, j);
}

}  // namespace

SnfResult snf(const IntegerMatrix& M) {
    SnfResult out{IntegerMatrix::identity(M.rows()), M, IntegerMatrix::identity(M.cols())};
    IntegerMatrix& A = out.D;
    IntegerMatrix& U = out.U;
    IntegerMatrix& V = out.V;
    const size_t r = A.rows(), c = A.cols();

    for (size_t t = 0; t < std::min(r, c); ++t) {
        while (true) {
            // Minimal nonzero entry of the trailing submatrix becomes the pivot.
            size_t pi = t, pj = t;
            bool found = false;
            for (size_t i = t; i < r; ++i) {
                for (size_t j = t; j < c; ++j) {
                    const BigInt& x = A.at(i, j);
                    if (x == 0) continue;
                    if (!found || abs(x) < abs(A.at(pi, pj))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            }
            if (!found) return out;  // trailing block is zero
            swap_rows(A, t, pi);
            swap_rows(U, t, pi);
            swap_cols(A, t, pj);
            swap_cols(V, t, pj);

            const BigInt pivot = A.at(t, t);
            bool leftover = false;
            for (size_t i = t + 1; i < r; ++i) {
                if (A.at(i, t) == 0) continue;
                BigInt q = A.at(i, t) / pivot;
                add_row_multiple(A, i, t, q);
                add_row_multiple(U, i, t, q);
                leftover |= A.at(i, t) != 0;
            }
            for (size_t j = t + 1; j < c; ++j) {
                if (A.at(t, j) == 0) continue;
                BigInt q = A.at(t, j) / pivot;
                add_col_multiple(A, j, t, q);
                add_col_multiple(V, j, t, q);
                leftover |= A.at(t, j) != 0;
            }
            if (leftover) continue;

            // Enforce the divisor chain before moving on.
            bool fixed = true;
            for (size_t i = t + 1; i < r && fixed; ++i) {
                for (size_t j = t + 1; j < c && fixed; ++j) {
                    if (A.at(i, j) % pivot != 0) {
                        add_row_multiple(A, t, i, BigInt(-1));
                        add_row_multiple(U, t, i, BigInt(-1));
                        fixed = false;
                    }
                }
            }
            if (fixed) break;
        }
        if (A.at(t, t) < 0) {
            negate_row(A, t);
            negate_row(U, t);
        }
    }
    return out;
}

HermiteForm hermite_form(const IntegerMatrix& M) {
    IntegerMatrix A = M;
    IntegerMatrix T = IntegerMatrix::identity(M.rows());
    const size_t r = A.rows(), c = A.cols();
    size_t top = 0;
    std::vector<size_t> pivots;

    auto floor_div = [](const BigInt& a, const BigInt& b) {
        BigInt q = a / b, rem = a % b;
        if (rem != 0 && ((rem < 0) != (b < 0))) --q;
        return q;
    };

    for (size_t col = 0; col < c && top < r; ++col) {
        while (true) {
            size_t best = r;
            for (size_t i = top; i < r; ++i) {
                if (A.at(i, col) == 0) continue;
                if (best == r || abs(A.at(i, col)) < abs(A.at(best, col))) best = i;
            }
            if (best == r) break;  // column clear below top
            swap_rows(A, top, best);
            swap_rows(T, top, best);
            bool leftover = false;
            for (size_t i = top + 1; i < r; ++i) {
                if (A.at(i, col) == 0) continue;
                BigInt q = A.at(i, col) / A.at(top, col);
                add_row_multiple(A, i, top, q);
                add_row_multiple(T, i, top, q);
                leftover |= A.at(i, col) != 0;
            }
            if (!leftover) {
                if (A.at(top, col) < 0) {
                    negate_row(A, top);
                    negate_row(T, top);
                }
                // Canonical form: entries above the pivot in [0, pivot).
                for (size_t i = 0; i < top; ++i) {
                    if (A.at(i, col) == 0) continue;
                    BigInt q = floor_div(A.at(i, col), A.at(top, col));
                    if (q != 0) {
                        add_row_multiple(A, i, top, q);
                        add_row_multiple(T, i, top, q);
                    }
                }
                pivots.push_back(col);
                ++top;
                break;
            }
        }
    }

    HermiteForm out;
    out.rows = IntegerMatrix(top, c);
    for (size_t i = 0; i < top; ++i) {
        for (size_t j = 0; j < c; ++j) out.rows.at(i, j) = A.at(i, j);
    }
    out.pivots = std::move(pivots);
    out.transform = std::move(T);
    return out;
}

QuotientDescriptor quotient_invariants(std::int64_t ambient_rank, const IntegerMatrix& gens) {
    if (static_cast<std::int64_t>(gens.cols()) != ambient_rank && gens.rows() != 0) {
        fail(ErrorCode::ColumnMismatch, "generator columns do not match the ambient rank");
    }
    QuotientDescriptor q;
    SnfResult s = snf(gens);
    std::int64_t nonzero = 0;
    for (size_t t = 0; t < std::min(s.D.rows(), s.D.cols()); ++t) {
        const BigInt& d = s.D.at(t, t);
        if (d == 0) break;
        ++nonzero;
        if (d > 1) q.torsion.push_back(static_cast<std::int64_t>(d));
    }
    q.free_rank = ambient_rank - nonzero;
    return q;
}

bool lattice_contains(const IntegerMatrix& gens, const std::vector<BigInt>& v) {
    if (v.size() != gens.cols()) fail(ErrorCode::DimensionMismatch, "vector length");
    HermiteForm H = hermite_form(gens);
    std::vector<BigInt> x = v;
    for (size_t i = 0; i < H.rows.rows(); ++i) {
        size_t p = H.pivots[i];
        if (x[p] == 0) continue;
        if (x[p] % H.rows.at(i, p) != 0) return false;
        BigInt q = x[p] / H.rows.at(i, p);
        for (size_t j = p; j < x.size(); ++j) x[j] -= q * H.rows.at(i, j);
    }
    return std::all_of(x.begin(), x.end(), [](const BigInt& e) { return e == 0; });
}

bool lattice_contains(const IntegerMatrix& gens, const std::vector<std::int64_t>& v) {
    return lattice_contains(gens, std::vector<BigInt>(v.begin(), v.end()));
}

FundamentalCycleBasis::FundamentalCycleBasis(const CayleyGraph& X) : edges_(X) {
    const int n = X.vertex_count();
    const int deg = X.degree();

    // BFS tree from the identity; parent_edge holds the canonical edge id and
    // the sign of the parent-to-child direction.
    std::vector<int> parent(n, -1), parent_edge(n, -1), parent_sign(n, 0), depth(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<char> in_tree(edges_.count(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int k = 0; k < deg; ++k) {
            int w = X.neighbor(v, k);
            if (seen[w]) continue;
            seen[w] = 1;
            auto [id, sign] = edges_.directed(v, k);
            parent[w] = v;
            parent_edge[w] = id;
            parent_sign[w] = sign;
            depth[w] = depth[v] + 1;
            in_tree[id] = 1;
            queue.push_back(w);
        }
    }

    for (int e = 0; e < edges_.count(); ++e) {
        (in_tree[e] ? tree_ : chords_).push_back(e);
    }

    // Adds the tree path v -> root into f with the given sign.
    auto add_path_to_root = [&](Flow& f, int v, int sgn) {
        while (v != 0) {
            // Parent-to-child direction carries parent_sign; child-to-parent negates.
            f.coeffs[parent_edge[v]] -= sgn * parent_sign[v];
            v = parent[v];
        }
    };

    basis_.reserve(chords_.size());
    for (int chord : chords_) {
        Flow f = zero_flow(edges_);
        f.coeffs[chord] = 1;
        int tail = edges_.rep_tail(chord);
        int head = edges_.head_of(chord);
        add_path_to_root(f, head, +1);
        add_path_to_root(f, tail, -1);
        basis_.push_back(std::move(f));
    }
}

std::vector<std::int64_t> FundamentalCycleBasis::coords(const Flow& f) const {
    if (static_cast<int>(f.coeffs.size()) != edges_.count()) {
        fail(ErrorCode::GraphMismatch, "flow has wrong edge count");
    }
    std::vector<std::int64_t> out(chords_.size());
    for (size_t i = 0; i < chords_.size(); ++i) out[i] = f.coeffs[chords_[i]];
    return out;
}

Flow FundamentalCycleBasis::from_coords(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != chords_.size()) {
        fail(ErrorCode::DimensionMismatch, "coordinate count does not match the rank");
    }
    Flow f = zero_flow(edges_);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        for (int e = 0; e < edges_.count(); ++e) {
            f.coeffs[e] = checked_add(f.coeffs[e], checked_mul(coords[i], basis_[i].coeffs[e]));
        }
    }
    return f;
}

IntegerMatrix even_sublattice(const FundamentalCycleBasis& basis) {
    const size_t m = static_cast<size_t>(basis.rank());
    std::vector<int> parity(m);
    int first_odd = -1;
    for (size_t i = 0; i < m; ++i) {
        parity[i] = is_even(basis.basis()[i]) ? 0 : 1;
        if (parity[i] == 1 && first_odd < 0) first_odd = static_cast<int>(i);
    }
    IntegerMatrix E(m, m);
    for (size_t i = 0; i < m; ++i) {
        if (first_odd < 0 || parity[i] == 0) {
            E.at(i, i) = 1;
        } else if (static_cast<int>(i) == first_odd) {
            E.at(i, i) = 2;
        } else {
            E.at(i, i) = 1;
            E.at(i, static_cast<size_t>(first_odd)) = 1;
        }
    }
    return E;
}

bool LatticeBuilder::insert(const std::vector<std::int64_t>& v) {
    if (v.size() != dim_) fail(ErrorCode::DimensionMismatch, "vector length");
    std::vector<BigInt> x(v.begin(), v.end());
    bool changed = false;
    size_t p = 0;
    while (true) {
        while (p < dim_ && x[p] == 0) ++p;
        if (p == dim_) return changed;
        // Row owning pivot p, if any.
        size_t i = 0;
        while (i < rows_.size() && pivots_[i] < p) ++i;
        if (i == rows_.size() || pivots_[i] != p) {
            if (x[p] < 0) {
                for (auto& e : x) e = -e;
            }
            rows_.insert(rows_.begin() + i, std::move(x));
            pivots_.insert(pivots_.begin() + i, p);
            return true;
        }
        auto& row = rows_[i];
        while (x[p] != 0) {
            BigInt q = x[p] / row[p];
            if (q != 0) {
                for (size_t j = p; j < dim_; ++j) x[j] -= q * row[j];
            }
            if (x[p] == 0) break;
            std::swap(x, row);
            changed = true;
        }
        if (row[p] < 0) {
            for (auto& e : row) e = -e;
        }
    }
}

bool LatticeBuilder::contains(const std::vector<std::int64_t>& v) const {
    if (v.size() != dim_) fail(ErrorCode::DimensionMismatch, "vector length");
    std::vector<BigInt> x(v.begin(), v.end());
    size_t p = 0, i = 0;
    while (true) {
        while (p < dim_ && x[p] == 0) ++p;
        if (p == dim_) return true;
        while (i < rows_.size() && pivots_[i] < p) ++i;
        if (i == rows_.size() || pivots_[i] != p) return false;
        if (x[p] % rows_[i][p] != 0) return false;
        BigInt q = x[p] / rows_[i][p];
        for (size_t j = p; j < dim_; ++j) x[j] -= q * rows_[i][j];
    }
}

IntegerMatrix LatticeBuilder::generator_matrix() const {
    IntegerMatrix M(rows_.size(), dim_);
    for (size_t i = 0; i < rows_.size(); ++i) {
        for (size_t j = 0; j < dim_; ++j) M.at(i, j) = rows_[i][j];
    }
    return M;
}

}  // namespace hamflow

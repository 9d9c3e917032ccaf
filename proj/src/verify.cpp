#include "hamflow/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "hamflow/errors.hpp"
#include "hamflow/ham_search.hpp"
#include "hamflow/json_io.hpp"

namespace hamflow {

namespace {

std::vector<std::int64_t> small_row(const IntegerMatrix& M, size_t r) {
    std::vector<std::int64_t> out(M.cols());
    for (size_t c = 0; c < M.cols(); ++c) out[c] = M.at(r, c).convert_to<std::int64_t>();
    return out;
}

/*
 * E/(H ∩ E) invariants. When H has odd rows, H ∩ E is the parity kernel of H
 * (index 2: even generators, differences of odd ones, one doubled odd one);
 * its rows are then rewritten in coordinates of E's echelon basis, where the
 * quotient shape is a plain SNF question.
 */
QuotientDescriptor even_quotient(const FundamentalCycleBasis& basis, const IntegerMatrix& H) {
    const size_t r = static_cast<size_t>(basis.rank());
    HermiteForm ef = hermite_form(even_sublattice(basis));
    if (ef.rows.rows() != r) fail(ErrorCode::InternalCheckFailed, "even sublattice lost rank");

    std::vector<int> basis_parity(r);
    for (size_t i = 0; i < r; ++i) basis_parity[i] = is_even(basis.basis()[i]) ? 0 : 1;
    auto row_parity = [&](const std::vector<BigInt>& v) {
        int p = 0;
        for (size_t i = 0; i < r; ++i) {
            if (basis_parity[i] != 0 && v[i] % 2 != 0) p ^= 1;
        }
        return p;
    };

    std::vector<std::vector<BigInt>> rows;
    for (size_t i = 0; i < H.rows(); ++i) {
        std::vector<BigInt> v(r);
        for (size_t c = 0; c < r; ++c) v[c] = H.at(i, c);
        rows.push_back(std::move(v));
    }
    std::vector<std::vector<BigInt>> even_rows;
    std::vector<std::vector<BigInt>> odd_rows;
    for (auto& v : rows) (row_parity(v) == 0 ? even_rows : odd_rows).push_back(std::move(v));
    if (!odd_rows.empty()) {
        const std::vector<BigInt>& anchor = odd_rows.front();
        for (size_t i = 1; i < odd_rows.size(); ++i) {
            std::vector<BigInt> diff(r);
            for (size_t c = 0; c < r; ++c) diff[c] = odd_rows[i][c] - anchor[c];
            even_rows.push_back(std::move(diff));
        }
        std::vector<BigInt> doubled(r);
        for (size_t c = 0; c < r; ++c) doubled[c] = 2 * anchor[c];
        even_rows.push_back(std::move(doubled));
    }

    // Rewrite each intersection row in E's basis by echelon back-substitution.
    IntegerMatrix M(even_rows.size(), r);
    for (size_t i = 0; i < even_rows.size(); ++i) {
        std::vector<BigInt>& v = even_rows[i];
        for (size_t k = 0; k < r; ++k) {
            size_t piv = ef.pivots[k];
            const BigInt& d = ef.rows.at(k, piv);
            BigInt q = v[piv] / d;
            if (q * d != v[piv]) {
                fail(ErrorCode::InternalCheckFailed, "hamiltonian row escapes the even sublattice");
            }
            for (size_t c = piv; c < r; ++c) v[c] -= q * ef.rows.at(k, c);
            M.at(i, k) = q;
        }
        for (size_t c = 0; c < r; ++c) {
            if (v[c] != 0) {
                fail(ErrorCode::InternalCheckFailed, "hamiltonian row escapes the even sublattice");
            }
        }
    }
    return quotient_invariants(static_cast<std::int64_t>(r), M);
}

bool pair_matches(const QuotientPair& a, const QuotientPair& b) {
    return a.fh == b.fh && a.eh == b.eh;
}

/** check_against_theory, except truncation is reported instead of raised. */
Verdict graph_verdict(const CayleyGraph& X, std::int64_t cycle_cap) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    v.group = X.group().to_string();
    v.conn = X.conn().to_string(X.group());
    ClassificationLabel label = classify(X);
    v.label = label_to_string(label);
    v.expected = predicted_quotients(label, X);
    QuotientComputation qc = compute_quotients_detail(X, cycle_cap);
    v.ham_count = qc.ham_count;
    if (qc.complete) {
        v.computed = qc.pair;
        v.match = pair_matches(v.expected, v.computed);
    } else {
        v.truncated = true;
    }
    v.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
               .count();
    return v;
}

void divisor_chains(int n, int min_d, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (n == 1) {
        out.push_back(cur);
        return;
    }
    for (int d = std::max(2, min_d); d <= n; ++d) {
        if (n % d != 0) continue;
        if (min_d > 1 && d % min_d != 0) continue;
        cur.push_back(d);
        divisor_chains(n / d, d, cur, out);
        cur.pop_back();
    }
}

}  // namespace

QuotientComputation compute_quotients_detail(const CayleyGraph& X, std::int64_t cycle_cap) {
    const AbelianGroup& G = X.group();
    FundamentalCycleBasis basis(X);
    const size_t r = static_cast<size_t>(basis.rank());
    const bool even_order = G.order() % 2 == 0;

    // H's a-priori ceiling: the even sublattice for even order, all of F else.
    std::vector<std::vector<std::int64_t>> ceiling;
    if (even_order) {
        IntegerMatrix E = even_sublattice(basis);
        for (size_t i = 0; i < E.rows(); ++i) ceiling.push_back(small_row(E, i));
    } else {
        for (size_t i = 0; i < r; ++i) {
            std::vector<std::int64_t> unit(r, 0);
            unit[i] = 1;
            ceiling.push_back(std::move(unit));
        }
    }

    LatticeBuilder builder(r);
    auto at_ceiling = [&]() {
        for (const auto& row : ceiling) {
            if (!builder.contains(row)) return false;
        }
        return true;
    };

    QuotientComputation out;
    bool capped = false;
    bool exhausted = for_each_hamiltonian_cycle(X, [&](const std::vector<int>& path) {
        ++out.ham_count;
        Flow f = cycle_to_flow(basis.edges(), path_to_walk(G, path));
        if (!is_conservative(basis.edges(), f)) {
            fail(ErrorCode::InternalCheckFailed, "hamiltonian flow is not conservative");
        }
        if (even_order && !is_even(f)) {
            fail(ErrorCode::InternalCheckFailed, "odd hamiltonian flow on an even-order graph");
        }
        if (builder.insert(basis.coords(f)) && at_ceiling()) {
            out.frozen = true;
            return false;
        }
        if (cycle_cap > 0 && out.ham_count >= cycle_cap) {
            capped = true;
            return false;
        }
        return true;
    });
    out.complete = out.frozen || (exhausted && !capped);
    if (!out.complete) return out;

    IntegerMatrix H = builder.generator_matrix();
    out.pair.fh = quotient_invariants(static_cast<std::int64_t>(r), H);
    out.pair.eh = even_quotient(basis, H);
    return out;
}

QuotientPair compute_quotients(const CayleyGraph& X, std::int64_t cycle_cap) {
    QuotientComputation qc = compute_quotients_detail(X, cycle_cap);
    if (!qc.complete) {
        fail(ErrorCode::TruncatedEnumeration,
             "cycle cap hit after " + std::to_string(qc.ham_count) +
                 " cycles before the quotients were decided");
    }
    return qc.pair;
}

Verdict check_against_theory(const CayleyGraph& X, std::int64_t cycle_cap) {
    Verdict v = graph_verdict(X, cycle_cap);
    if (v.truncated) {
        fail(ErrorCode::TruncatedEnumeration,
             "cycle cap hit after " + std::to_string(v.ham_count) +
                 " cycles before the quotients were decided");
    }
    return v;
}

std::vector<std::pair<AbelianGroup, ConnectionSet>> enumerate_universe(const SuiteConfig& cfg) {
    if (cfg.max_order < 3) fail(ErrorCode::InvalidInput, "max_order must be at least 3");
    std::vector<std::pair<AbelianGroup, ConnectionSet>> out;
    for (int n = 3; n <= cfg.max_order; ++n) {
        int degree_cap = cfg.max_degree > 0 ? cfg.max_degree : n;
        if (n > 12) degree_cap = std::min(degree_cap, 5);

        std::vector<std::vector<int>> chains;
        std::vector<int> cur;
        divisor_chains(n, 1, cur, chains);
        for (const auto& factors : chains) {
            AbelianGroup G(factors);
            std::vector<std::vector<int>> classes;  // {e} or {e, -e}, by smallest index
            std::vector<char> seen(static_cast<size_t>(n), 0);
            for (int idx = 1; idx < n; ++idx) {
                if (seen[idx]) continue;
                int ng = G.neg_index(idx);
                seen[idx] = 1;
                seen[ng] = 1;
                if (ng == idx) {
                    classes.push_back({idx});
                } else {
                    classes.push_back({idx, ng});
                }
            }
            const size_t k = classes.size();
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
                int size = 0;
                for (size_t i = 0; i < k; ++i) {
                    if (mask >> i & 1) size += static_cast<int>(classes[i].size());
                }
                if (size > degree_cap) continue;
                std::vector<GroupElement> reps;
                std::vector<GroupElement> elements;
                for (size_t i = 0; i < k; ++i) {
                    if (!(mask >> i & 1)) continue;
                    reps.push_back(G.element_of(classes[i][0]));
                    for (int idx : classes[i]) elements.push_back(G.element_of(idx));
                }
                if (static_cast<int>(G.subgroup(reps).size()) != n) continue;
                out.emplace_back(G, ConnectionSet(G, elements));
            }
        }
    }
    return out;
}

SuiteReport run_suite(const SuiteConfig& cfg,
                      const std::function<void(std::size_t, std::size_t)>& progress) {
    auto universe = enumerate_universe(cfg);
    SuiteReport rep;
    rep.config = cfg;
    rep.verdicts.resize(universe.size());

    int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(universe.size())));

    std::atomic<std::size_t> next{0}, done{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= universe.size()) return;
            try {
                CayleyGraph X(universe[i].first, universe[i].second);
                rep.verdicts[i] = graph_verdict(X, cfg.cycle_cap);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(universe.size());
                return;
            }
            std::size_t finished = done.fetch_add(1) + 1;
            if (progress) progress(finished, universe.size());
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const Verdict& v : rep.verdicts) {
        ++rep.summary.total;
        if (v.truncated) {
            ++rep.summary.truncated;
        } else if (v.match) {
            ++rep.summary.matched;
        } else {
            ++rep.summary.mismatched;
        }
    }
    return rep;
}

MembershipCrossCheck cross_validate_membership(const CayleyGraph& X,
                                               const ClassificationLabel& label,
                                               std::int64_t trials, std::uint64_t seed,
                                               bool even_only) {
    if (trials < 1) fail(ErrorCode::InvalidInput, "trials must be at least 1");
    FundamentalCycleBasis basis(X);
    IntegerMatrix H = hamiltonian_lattice(X, basis);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);

    MembershipCrossCheck out;
    out.trials = trials;
    std::vector<std::int64_t> coords(static_cast<size_t>(basis.rank()));
    for (std::int64_t t = 0; t < trials; ++t) {
        Flow f;
        for (int attempts = 0;; ++attempts) {
            for (auto& c : coords) c = coeff(rng);
            f = basis.from_coords(coords);
            if (!even_only || is_even(f)) break;
            if (attempts > 10000) {
                fail(ErrorCode::InternalCheckFailed, "even flow sampling stalled");
            }
        }
        bool by_weighting = membership_by_weighting(X, label, f);
        bool by_lattice = lattice_contains(H, coords);
        if (by_lattice) ++out.members;
        if (by_weighting == by_lattice) {
            ++out.agreements;
        } else {
            ++out.discrepancies;
            if (!out.witness) out.witness = f;
        }
    }
    return out;
}

}  // namespace hamflow

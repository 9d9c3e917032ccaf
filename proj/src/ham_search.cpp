#include "hamflow/ham_search.hpp"

#include <bit>

#include "hamflow/errors.hpp"

namespace hamflow {

namespace {

class Searcher {
  public:
    Searcher(const CayleyGraph& X, const std::function<bool(const std::vector<int>&)>& visit,
             int flood_period)
        : adj_(X.masks()), visit_(visit), n_(X.vertex_count()), flood_period_(flood_period) {
        if (adj_.empty()) {
            fail(ErrorCode::InvalidInput, "cycle enumeration supports at most 64 vertices");
        }
        if (flood_period < 1) fail(ErrorCode::InvalidInput, "flood period must be positive");
        full_ = n_ == 64 ? ~0ull : (1ull << n_) - 1;
        path_.reserve(n_);
    }

    // Returns false when the visitor stopped the search.
    bool run() {
        if (n_ < 3) return true;  // no cycles at all
        path_.push_back(0);
        return extend(0, 1ull);
    }

  private:
    bool extend(int cur, std::uint64_t used) {
        if (static_cast<int>(path_.size()) == n_) {
            // Close the cycle and keep one orientation of each.
            if ((adj_[cur] & 1ull) && path_[1] < path_.back()) return visit_(path_);
            return true;
        }
        if (prune(cur, used)) return true;
        std::uint64_t candidates = adj_[cur] & ~used;
        while (candidates) {
            int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            path_.push_back(v);
            if (!extend(v, used | (1ull << v))) return false;
            path_.pop_back();
        }
        return true;
    }

    bool prune(int cur, std::uint64_t used) {
        std::uint64_t unvisited = full_ & ~used;
        if (!unvisited) return false;

        // Every unvisited vertex still needs two usable incidences.
        std::uint64_t usable = unvisited | (1ull << cur) | 1ull;
        for (std::uint64_t bits = unvisited; bits;) {
            int v = std::countr_zero(bits);
            bits &= bits - 1;
            if (std::popcount(adj_[v] & usable) < 2) return true;
        }

        if (static_cast<int>(path_.size()) % flood_period_ != 0) return false;

        // The rest of the cycle walks from cur through every unvisited vertex,
        // so all of them must be reachable inside the unvisited region.
        std::uint64_t reach = adj_[cur] & unvisited;
        if (!reach) return true;
        while (true) {
            std::uint64_t grown = reach;
            for (std::uint64_t bits = reach; bits;) {
                int v = std::countr_zero(bits);
                bits &= bits - 1;
                grown |= adj_[v] & unvisited;
            }
            if (grown == reach) break;
            reach = grown;
        }
        return reach != unvisited;
    }

    const std::vector<std::uint64_t>& adj_;
    const std::function<bool(const std::vector<int>&)>& visit_;
    int n_;
    int flood_period_;
    std::uint64_t full_;
    std::vector<int> path_;
};

Walk reversed_walk(const AbelianGroup& G, const Walk& w) {
    Walk r;
    r.base = w.base;
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) r.steps.push_back(G.neg(*it));
    return r;
}

}  // namespace

Walk path_to_walk(const AbelianGroup& G, const std::vector<int>& path) {
    Walk w;
    w.base = G.element_of(path[0]);
    for (size_t i = 0; i < path.size(); ++i) {
        int from = path[i];
        int to = path[(i + 1) % path.size()];
        w.steps.push_back(G.element_of(G.add_index(to, G.neg_index(from))));
    }
    return w;
}

bool for_each_hamiltonian_cycle(const CayleyGraph& X,
                                const std::function<bool(const std::vector<int>&)>& visit,
                                int flood_period) {
    return Searcher(X, visit, flood_period).run();
}

Enumeration enumerate_hamiltonian_cycles(const CayleyGraph& X, const EnumConfig& cfg) {
    if (cfg.cycle_limit && *cfg.cycle_limit < 1) {
        fail(ErrorCode::InvalidInput, "cycle limit must be at least 1");
    }
    const AbelianGroup& G = X.group();
    Enumeration out;
    // Checking capacity before each push makes the flag exact: truncated only
    // when a found cycle was actually dropped.
    auto push = [&](Walk w) {
        if (cfg.cycle_limit &&
            static_cast<std::int64_t>(out.cycles.size()) >= *cfg.cycle_limit) {
            return false;
        }
        out.cycles.push_back(std::move(w));
        return true;
    };
    out.truncated = !for_each_hamiltonian_cycle(
        X,
        [&](const std::vector<int>& path) {
            Walk w = path_to_walk(G, path);
            if (!cfg.canonicalize) {
                Walk r = reversed_walk(G, w);
                return push(std::move(w)) && push(std::move(r));
            }
            return push(std::move(w));
        },
        cfg.flood_period);
    return out;
}

IntegerMatrix hamiltonian_lattice(const FundamentalCycleBasis& basis, const Enumeration& e) {
    if (e.truncated) {
        fail(ErrorCode::TruncatedEnumeration,
             "the cycle list is partial; the row lattice would not be H");
    }
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(e.cycles.size());
    for (const Walk& w : e.cycles) {
        rows.push_back(basis.coords(cycle_to_flow(basis.edges(), w)));
    }
    return IntegerMatrix::from_rows(rows, static_cast<size_t>(basis.rank()));
}

IntegerMatrix hamiltonian_lattice(const CayleyGraph& X, const FundamentalCycleBasis& basis) {
    return hamiltonian_lattice(basis, enumerate_hamiltonian_cycles(X, EnumConfig{}));
}

}  // namespace hamflow

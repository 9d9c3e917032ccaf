#include "hamflow/abelian_group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace hamflow {

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) fail(ErrorCode::EmptyFactors, "group needs at least one cyclic factor");
    long long n = 1;
    for (int d : factors_) {
        if (d < 2) fail(ErrorCode::FactorBelowTwo, "cyclic factor " + std::to_string(d));
        n *= d;
        if (n > 1'000'000) fail(ErrorCode::InvalidInput, "group order too large");
    }
    order_ = static_cast<int>(n);
}

int AbelianGroup::index_of(const GroupElement& e) const {
    if (e.size() != factors_.size()) fail(ErrorCode::CoordOutOfRange, "coordinate count mismatch");
    int idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (e[i] < 0 || e[i] >= factors_[i])
            fail(ErrorCode::CoordOutOfRange, "coordinate " + std::to_string(e[i]) + " outside Z_" + std::to_string(factors_[i]));
        idx = idx * factors_[i] + e[i];
    }
    return idx;
}

GroupElement AbelianGroup::element_of(int index) const {
    if (index < 0 || index >= order_) fail(ErrorCode::CoordOutOfRange, "element index out of range");
    GroupElement e(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
        e[i] = index % factors_[i];
        index /= factors_[i];
    }
    return e;
}

bool AbelianGroup::is_identity(const GroupElement& e) const {
    return std::all_of(e.begin(), e.end(), [](int c) { return c == 0; });
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) r[i] = (a[i] + b[i]) % factors_[i];
    return r;
}

GroupElement AbelianGroup::neg(const GroupElement& a) const {
    GroupElement r(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) r[i] = (factors_[i] - a[i]) % factors_[i];
    return r;
}

GroupElement AbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, neg(b));
}

GroupElement AbelianGroup::mul(const GroupElement& a, std::int64_t k) const {
    GroupElement r(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t v = (static_cast<std::int64_t>(a[i]) * k) % factors_[i];
        if (v < 0) v += factors_[i];
        r[i] = static_cast<int>(v);
    }
    return r;
}

int AbelianGroup::add_index(int a, int b) const {
    return index_of(add(element_of(a), element_of(b)));
}

int AbelianGroup::neg_index(int a) const { return index_of(neg(element_of(a))); }

int AbelianGroup::element_order(const GroupElement& e) const {
    long long ord = 1;
    for (size_t i = 0; i < factors_.size(); ++i) {
        int d = factors_[i] / std::gcd(factors_[i], e[i]);
        ord = std::lcm(ord, static_cast<long long>(d));
    }
    return static_cast<int>(ord);
}

std::vector<int> AbelianGroup::subgroup(const std::vector<GroupElement>& gens) const {
    std::set<int> seen{index_of(identity())};
    std::vector<int> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            for (const auto& g : gens) {
                int w = index_of(add(element_of(v), g));
                if (seen.insert(w).second) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    return std::vector<int>(seen.begin(), seen.end());
}

GroupElement AbelianGroup::canonicalize(const std::vector<long long>& coords) const {
    if (coords.size() != factors_.size())
        fail(ErrorCode::CoordOutOfRange, "expected " + std::to_string(factors_.size()) + " coordinates");
    GroupElement e(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        long long v = coords[i] % factors_[i];
        if (v < 0) v += factors_[i];
        e[i] = static_cast<int>(v);
    }
    return e;
}

std::string AbelianGroup::to_string() const {
    std::string s;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += "x";
        s += "Z" + std::to_string(factors_[i]);
    }
    return s;
}

std::string AbelianGroup::element_to_string(const GroupElement& e) const {
    if (factors_.size() == 1) return std::to_string(e[0]);
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

AbelianGroup parse_group(const std::string& text) {
    std::vector<int> factors;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    while (i < text.size()) {
        if (std::tolower(static_cast<unsigned char>(text[i])) != 'z')
            fail(ErrorCode::InvalidInput, "bad group literal '" + text + "'");
        ++i;
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail(ErrorCode::InvalidInput, "missing modulus in group literal '" + text + "'");
        factors.push_back(std::stoi(text.substr(start, i - start)));
        skip_ws();
        if (i < text.size()) {
            if (std::tolower(static_cast<unsigned char>(text[i])) != 'x')
                fail(ErrorCode::InvalidInput, "bad separator in group literal '" + text + "'");
            ++i;
            skip_ws();
        }
    }
    return AbelianGroup(factors);
}

GroupElement parse_element(const AbelianGroup& G, const std::string& text) {
    std::vector<long long> coords;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_int = [&]() -> long long {
        skip_ws();
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i || (i - start == 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            fail(ErrorCode::InvalidInput, "bad element literal '" + text + "'");
        return std::stoll(text.substr(start, i - start));
    };
    skip_ws();
    if (i < text.size() && text[i] == '(') {
        ++i;
        while (true) {
            coords.push_back(read_int());
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            break;
        }
        skip_ws();
        if (i >= text.size() || text[i] != ')') fail(ErrorCode::InvalidInput, "unterminated element literal '" + text + "'");
        ++i;
    } else {
        coords.push_back(read_int());
    }
    skip_ws();
    if (i != text.size()) fail(ErrorCode::InvalidInput, "trailing junk in element literal '" + text + "'");
    if (coords.size() == 1 && G.rank() > 1)
        fail(ErrorCode::InvalidInput, "bare integer element needs a single-factor group");
    return G.canonicalize(coords);
}

std::vector<std::string> split_element_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

}  // namespace hamflow

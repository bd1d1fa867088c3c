#include "holocurve/multi_index.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace holocurve {

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
    for (int v : e_)
        if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
}

MultiIndex MultiIndex::zero(int m) { return MultiIndex(std::vector<int>(m, 0)); }

MultiIndex MultiIndex::unit(int m, int coord) {
    if (coord < 0 || coord >= m) throw std::invalid_argument("MultiIndex::unit: coord out of range");
    std::vector<int> e(m, 0);
    e[coord] = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

bool MultiIndex::leq(const MultiIndex& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    for (int k = 0; k < dim(); ++k)
        if (e_[k] > o.e_[k]) return false;
    return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    std::vector<int> e(e_);
    for (int k = 0; k < dim(); ++k) e[k] += o.e_[k];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus_unit(int coord) const {
    std::vector<int> e(e_);
    e.at(coord) += 1;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
    if (!o.leq(*this)) throw std::invalid_argument("MultiIndex: subtraction would go negative");
    std::vector<int> e(e_);
    for (int k = 0; k < dim(); ++k) e[k] -= o.e_[k];
    return MultiIndex(std::move(e));
}

bool MultiIndex::grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // within a degree: lexicographically descending entries
    return a.entries() > b.entries();
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int k = 2; k <= n; ++k) r *= static_cast<std::uint64_t>(k);
    return r;
}

std::uint64_t factorial(const MultiIndex& I) {
    std::uint64_t r = 1;
    for (int k = 0; k < I.dim(); ++k) r *= factorial(I[k]);
    return r;
}

std::uint64_t multinomial(const MultiIndex& I, const MultiIndex& I1) {
    if (!I1.leq(I)) throw std::invalid_argument("multinomial: I1 must satisfy I1 <= I");
    // product of per-coordinate binomials, each computed without overflow
    std::uint64_t r = 1;
    for (int k = 0; k < I.dim(); ++k) {
        int n = I[k], j = I1[k];
        std::uint64_t b = 1;
        for (int t = 1; t <= j; ++t) b = b * static_cast<std::uint64_t>(n - j + t) / t;
        r *= b;
    }
    return r;
}

namespace {

void enumerate_degree_rec(int m, int degree, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (m == 1) {
        cur.push_back(degree);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int lead = degree; lead >= 0; --lead) {
        cur.push_back(lead);
        enumerate_degree_rec(m - 1, degree - lead, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_total_degree(int m, int degree_cap) {
    if (m < 1) throw std::invalid_argument("enumerate_total_degree: m >= 1 required");
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    for (int d = 0; d <= degree_cap; ++d) enumerate_degree_rec(m, d, cur, out);
    return out;
}

std::vector<MultiIndex> enumerate_entrywise(const MultiIndex& bound) {
    std::vector<MultiIndex> out = enumerate_total_degree(bound.dim(), bound.total_degree());
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const MultiIndex& I) { return !I.leq(bound); }),
              out.end());
    return out;
}

IndexTable::IndexTable(int m, int cap) : m_(m), cap_(cap) {
    list_ = enumerate_total_degree(m, cap);
    radix_ = cap + 1;
    int dense = 1;
    for (int k = 0; k < m; ++k) dense *= radix_;
    lookup_.assign(dense, -1);
    for (int pos = 0; pos < size(); ++pos) {
        int key = 0;
        for (int k = 0; k < m; ++k) key = key * radix_ + list_[pos][k];
        lookup_[key] = pos;
    }
    splits_.resize(size());
    for (int out = 0; out < size(); ++out) {
        for (int a = 0; a < size(); ++a) {
            if (!list_[a].leq(list_[out])) continue;
            int b = position(list_[out].minus(list_[a]));
            splits_[out].emplace_back(a, b);
        }
    }
}

int IndexTable::position(const MultiIndex& I) const {
    if (I.total_degree() > cap_) return -1;
    int key = 0;
    for (int k = 0; k < m_; ++k) {
        if (I[k] > cap_) return -1;
        key = key * radix_ + I[k];
    }
    return lookup_[key];
}

std::shared_ptr<const IndexTable> IndexTable::get(int m, int cap) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const IndexTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{m, cap}];
    if (!slot) slot = std::shared_ptr<const IndexTable>(new IndexTable(m, cap));
    return slot;
}

}  // namespace holocurve

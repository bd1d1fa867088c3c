#ifndef HOLOCURVE_MULTI_INDEX_HPP
#define HOLOCURVE_MULTI_INDEX_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace holocurve {

/// Element of Z_+^m. Entrywise partial order; subtraction only when it
/// stays non-negative. Value type, freely copyable.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int m);
    static MultiIndex unit(int m, int coord);

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int k) const { return e_[k]; }
    int total_degree() const;

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }
    bool leq(const MultiIndex& o) const;   // entrywise <=

    MultiIndex plus(const MultiIndex& o) const;
    MultiIndex plus_unit(int coord) const;
    MultiIndex minus(const MultiIndex& o) const;  // requires o.leq(*this)

    const std::vector<int>& entries() const { return e_; }

    /// Graded-lex comparison: total degree first, then lexicographic with
    /// larger leading entries first, so (1,0) precedes (0,1).
    static bool grlex_less(const MultiIndex& a, const MultiIndex& b);

private:
    std::vector<int> e_;
};

/// I! as a double-safe integer (degrees in this artifact stay far below
/// overflow range).
std::uint64_t factorial(const MultiIndex& I);
std::uint64_t factorial(int n);

/// I!/(I1!(I-I1)!), exact integer arithmetic. Throws std::invalid_argument
/// unless I1 <= I entrywise.
std::uint64_t multinomial(const MultiIndex& I, const MultiIndex& I1);

/// All I in Z_+^m with |I| <= degree_cap, graded-lex order.
std::vector<MultiIndex> enumerate_total_degree(int m, int degree_cap);

/// All I with I <= bound entrywise, graded-lex order.
std::vector<MultiIndex> enumerate_entrywise(const MultiIndex& bound);

/// Shared enumeration of {|I| <= cap} with position lookup and a
/// precomputed divisor table for Cauchy-product convolutions.
class IndexTable {
public:
    static std::shared_ptr<const IndexTable> get(int m, int cap);

    int m() const { return m_; }
    int cap() const { return cap_; }
    int size() const { return static_cast<int>(list_.size()); }
    const MultiIndex& at(int pos) const { return list_[pos]; }
    const std::vector<MultiIndex>& list() const { return list_; }

    /// Position of I, or -1 when |I| > cap.
    int position(const MultiIndex& I) const;

    /// All (a, b) with at(a) + at(b) == at(out).
    const std::vector<std::pair<int, int>>& splits(int out) const { return splits_[out]; }

private:
    IndexTable(int m, int cap);
    int m_, cap_;
    std::vector<MultiIndex> list_;
    std::vector<std::vector<std::pair<int, int>>> splits_;
    std::vector<int> lookup_;  // dense mixed-radix lookup
    int radix_;
};

}  // namespace holocurve

#endif

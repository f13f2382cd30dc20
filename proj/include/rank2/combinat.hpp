#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "rank2/bigint.hpp"

namespace rank2 {

/*
 * Integer sequences and binomials shared by all expansions of the cluster
 * variables of A(c,c).
 *
 *   a_1 = 0, a_2 = 1, a_n = c a_{n-1} - a_{n-2}      (a_0 = -1 by extension)
 *
 * (a_{n-1}, a_{n-2}) is the denominator vector of x_n, and
 * a_{n-1} a_{n-3} - a_{n-2}^2 = -1 for every n >= 3.
 */
class ClusterContext {
public:
    static constexpr int kDefaultCapacity = 96;

    explicit ClusterContext(std::int64_t c, int capacity = kDefaultCapacity)
        : c_(c) {
        if (capacity < 3) capacity = 3;
        exact_.reserve(static_cast<std::size_t>(capacity) + 1);
        exact_.emplace_back(-1);
        exact_.emplace_back(0);
        exact_.emplace_back(1);
        for (int n = 3; n <= capacity; ++n) {
            const auto k = exact_.size();
            exact_.push_back(BigInt(c_) * exact_[k - 1] - exact_[k - 2]);
        }
        small_.reserve(exact_.size());
        for (const auto& v : exact_) {
            if (v > std::numeric_limits<std::int64_t>::max() ||
                v < std::numeric_limits<std::int64_t>::min())
                break;
            small_.push_back(v.convert_to<std::int64_t>());
        }
    }

    std::int64_t c() const noexcept { return c_; }

    /// Exact a_n for n >= 0. The memo table is filled in the constructor and
    /// never mutated, so concurrent readers are safe; larger n is recomputed.
    BigInt a_exact(std::int64_t n) const {
        if (n < 0) throw DomainError("a_seq: index " + std::to_string(n) + " < 0");
        if (n < static_cast<std::int64_t>(exact_.size()))
            return exact_[static_cast<std::size_t>(n)];
        BigInt prev = exact_[exact_.size() - 2];
        BigInt cur = exact_.back();
        for (auto k = static_cast<std::int64_t>(exact_.size()); k <= n; ++k) {
            BigInt next = BigInt(c_) * cur - prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }

    /// a_n as a machine integer; throws when it does not fit.
    std::int64_t a(std::int64_t n) const {
        if (n < 0) throw DomainError("a_seq: index " + std::to_string(n) + " < 0");
        if (n < static_cast<std::int64_t>(small_.size()))
            return small_[static_cast<std::size_t>(n)];
        throw DomainError("a_seq: a_" + std::to_string(n) + " exceeds 64-bit range");
    }

private:
    std::int64_t c_;
    std::vector<BigInt> exact_;
    std::vector<std::int64_t> small_;
};

/// a_n under the context's recurrence (a_0 = -1).
inline BigInt a_seq(const ClusterContext& ctx, std::int64_t n) { return ctx.a_exact(n); }

/*
 * Modified binomial coefficient [A; B]:
 *   0 if A < B, 1 if A = B, otherwise prod_{i<A-B} (A-i)/(A-B-i) = C(A, A-B)
 * as a generalized binomial, integral for every integer A.
 */
inline BigInt mod_binom(std::int64_t top, std::int64_t bottom) {
    if (top < bottom) return BigInt(0);
    if (top == bottom) return BigInt(1);
    const std::int64_t k = top - bottom;
    if (top >= 0 && k > top) return BigInt(0);
    BigInt num(1);
    BigInt den(1);
    for (std::int64_t i = 0; i < k; ++i) {
        num *= top - i;
        den *= i + 1;
    }
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (!r.is_zero())
        throw std::logic_error("mod_binom: non-integral quotient");
    return q;
}

/// Memoized mod_binom for hot enumeration loops. Not thread-safe; use one per worker.
class ModBinomCache {
public:
    const BigInt& operator()(std::int64_t top, std::int64_t bottom) {
        if (top < bottom) return zero_;
        if (top == bottom) return one_;
        if (top >= 0 && top - bottom > top) return zero_;
        const Key key{top, bottom};
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
        return table_.emplace(key, mod_binom(top, bottom)).first->second;
    }

    std::size_t size() const noexcept { return table_.size(); }

private:
    struct Key {
        std::int64_t top;
        std::int64_t bottom;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            const auto h = static_cast<std::uint64_t>(k.top) * 0x9E3779B97F4A7C15ull;
            return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(k.bottom) + (h << 6) + (h >> 2)));
        }
    };

    std::unordered_map<Key, BigInt, KeyHash> table_;
    BigInt zero_{0};
    BigInt one_{1};
};

/*
 * A tuple (t_0, ..., t_k) with its running sums
 *   s_i = sum_{j<i} a_{i-j+1} t_j,   s_i = 0 for i <= 0,
 * maintained through s_i = c s_{i-1} - s_{i-2} + t_{i-1}.
 */
class SPrefix {
public:
    SPrefix() : s_{0} {}

    const std::vector<std::int64_t>& entries() const noexcept { return t_; }
    const std::vector<std::int64_t>& s_values() const noexcept { return s_; }
    std::size_t length() const noexcept { return t_.size(); }

    /// s_i for any integer i up to length(); zero for i <= 0.
    std::int64_t s(std::int64_t i) const {
        if (i <= 0) return 0;
        if (i >= static_cast<std::int64_t>(s_.size()))
            throw DomainError("SPrefix: s_" + std::to_string(i) + " not yet determined");
        return s_[static_cast<std::size_t>(i)];
    }

    void push(std::int64_t c, std::int64_t t_next) {
        const auto i = static_cast<std::int64_t>(t_.size()) + 1;  // index of the new s
        t_.push_back(t_next);
        s_.push_back(c * s(i - 1) - s(i - 2) + t_next);
    }

    void pop() {
        t_.pop_back();
        s_.pop_back();
    }

private:
    std::vector<std::int64_t> t_;
    std::vector<std::int64_t> s_;
};

/// Appends t_next and the s value it determines.
inline SPrefix s_prefix_extend(const ClusterContext& ctx, SPrefix prefix, std::int64_t t_next) {
    prefix.push(ctx.c(), t_next);
    return prefix;
}

/// Dimension vector of a representation of the c-arrow Kronecker quiver.
struct DimVector {
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    bool operator==(const DimVector&) const = default;
};

/// Euler form <d, f> = d1 f1 + d2 f2 - c d1 f2 for c arrows 1 -> 2.
inline std::int64_t euler_form(const ClusterContext& ctx, DimVector d, DimVector f) {
    return d.d1 * f.d1 + d.d2 * f.d2 - ctx.c() * d.d1 * f.d2;
}

}  // namespace rank2

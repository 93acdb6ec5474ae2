#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <boost/container/small_vector.hpp>

namespace boolecc {

/// A point of {0,1}^n. Bits are packed into 64-bit words; the two-word
/// inline buffer keeps points up to n=128 allocation-free.
class PointN {
public:
    PointN() : n_(0) {}
    explicit PointN(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static PointN zeros(std::uint32_t n) { return PointN(n); }
    static PointN ones(std::uint32_t n) {
        PointN p(n);
        for (auto& w : p.w_) w = ~0ULL;
        p.trim();
        return p;
    }
    static PointN from_string(const std::string& bits) {
        PointN p(static_cast<std::uint32_t>(bits.size()));
        for (std::uint32_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') p.set(i, true);
            else if (bits[i] != '0') throw std::invalid_argument("bad bit string");
        }
        return p;
    }
    static PointN from_words(std::uint32_t n, std::span<const std::uint64_t> words) {
        PointN p(n);
        for (size_t i = 0; i < p.w_.size() && i < words.size(); ++i) p.w_[i] = words[i];
        p.trim();
        return p;
    }

    std::uint32_t n() const { return n_; }

    bool get(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint32_t i, bool v) {
        std::uint64_t m = 1ULL << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::uint32_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    std::uint32_t weight() const {
        std::uint32_t c = 0;
        for (auto w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
        return c;
    }

    PointN xored(const PointN& o) const {
        if (n_ != o.n_) throw std::invalid_argument("point length mismatch");
        PointN p(n_);
        for (size_t i = 0; i < w_.size(); ++i) p.w_[i] = w_[i] ^ o.w_[i];
        return p;
    }

    std::uint32_t hamming(const PointN& o) const {
        if (n_ != o.n_) throw std::invalid_argument("point length mismatch");
        std::uint32_t c = 0;
        for (size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::uint32_t>(std::popcount(w_[i] ^ o.w_[i]));
        return c;
    }

    bool operator==(const PointN& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const PointN& o) const { return !(*this == o); }
    bool operator<(const PointN& o) const {  // for ordered containers
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

    std::span<const std::uint64_t> words() const { return {w_.data(), w_.size()}; }
    std::span<std::uint64_t> words_mut() { return {w_.data(), w_.size()}; }

    // low word; convenient when n <= 64
    std::uint64_t bits64() const { return w_.empty() ? 0 : w_[0]; }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::uint32_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    /// Point with bits of `mask` in the low n positions (n <= 64).
    static PointN from_bits64(std::uint32_t n, std::uint64_t mask) {
        if (n > 64) throw std::invalid_argument("from_bits64 needs n <= 64");
        PointN p(n);
        if (n) p.w_[0] = (n == 64) ? mask : (mask & ((1ULL << n) - 1));
        return p;
    }

private:
    void trim() {
        if (n_ == 0) return;
        std::uint32_t rem = n_ & 63;
        if (rem) w_.back() &= (1ULL << rem) - 1;
    }
    std::uint32_t n_;
    boost::container::small_vector<std::uint64_t, 2> w_;
};

}  // namespace boolecc

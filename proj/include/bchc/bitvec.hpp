#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bchc {

// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool none() const {
        for (std::uint64_t w : w_)
            if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    // index of lowest set bit, or size() if none
    std::size_t lowest() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
        return n_;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    // parity of |a & b|
    static bool and_parity(const BitVec& a, const BitVec& b) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < a.w_.size(); ++i) acc ^= a.w_[i] & b.w_[i];
        return std::popcount(acc) & 1u;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace bchc

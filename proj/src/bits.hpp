#ifndef POWHAM_BITS_HPP
#define POWHAM_BITS_HPP

#include <bit>
#include <cstdint>
#include <cassert>
#include <vector>

namespace powham {

// Dynamic word-packed bitset over vertex ids [0, n). All neighborhood
// algebra in the library is built on this.
class Bits {
  public:
    Bits() = default;
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int universe() const { return n_; }

    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { for (auto &w : w_) w = 0; }

    void fill() {
        for (auto &w : w_) w = ~uint64_t{0};
        trim();
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bits &operator&=(const Bits &o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits &operator|=(const Bits &o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this := this & ~o
    Bits &andnot(const Bits &o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bits operator&(Bits a, const Bits &b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits &b) { return a |= b; }

    Bits complement() const {
        Bits r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool operator==(const Bits &o) const { return n_ == o.n_ && w_ == o.w_; }

    int intersect_count(const Bits &o) const {
        assert(n_ == o.n_);
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    bool intersects(const Bits &o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    // true iff this is a subset of o
    bool subset_of(const Bits &o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // first set bit >= from, or -1
    int next(int from = 0) const {
        if (from >= n_) return -1;
        int wi = from >> 6;
        uint64_t w = w_[wi] & (~uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (wi << 6) + std::countr_zero(w);
            if (++wi >= (int)w_.size()) return -1;
            w = w_[wi];
        }
    }

    template <typename F>
    void for_each(F &&f) const {
        for (int v = next(0); v >= 0; v = next(v + 1)) f(v);
    }

    std::vector<int> to_vector() const {
        std::vector<int> r;
        r.reserve(count());
        for_each([&](int v) { r.push_back(v); });
        return r;
    }

    uint64_t word(size_t i) const { return w_[i]; }
    size_t words() const { return w_.size(); }

    static Bits of(int n, const std::vector<int> &vs) {
        Bits b(n);
        for (int v : vs) b.set(v);
        return b;
    }

    static Bits full(int n) {
        Bits b(n);
        b.fill();
        return b;
    }

  private:
    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace powham

#endif

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "davenport/errors.hpp"

namespace dav {

using elem = uint16_t;

// Subset of the elements of one group, as a bit vector indexed by element.
// Sets remember the universe size; operations refuse to mix different sizes,
// which is how "never mix sets from different groups" is enforced at runtime.
class ElementSet {
  public:
    ElementSet() : n_(0) {}
    explicit ElementSet(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int universe() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    ElementSet& operator|=(const ElementSet& o) {
        check(o);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    ElementSet& operator&=(const ElementSet& o) {
        check(o);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    bool operator==(const ElementSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const ElementSet& o) const { return !(*this == o); }
    // Lexicographic on the word vector; a stable total order for dedup/sort.
    bool operator<(const ElementSet& o) const { return w_ < o.w_; }

    bool is_subset_of(const ElementSet& o) const {
        check(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                int b = std::countr_zero(w);
                f(int(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<elem> to_vector() const {
        std::vector<elem> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(elem(i)); });
        return v;
    }

    const std::vector<uint64_t>& words() const { return w_; }

  private:
    void check(const ElementSet& o) const {
        if (n_ != o.n_) fail(Errc::BadParameter, "element sets over different groups");
    }
    int n_;
    std::vector<uint64_t> w_;
};

}  // namespace dav

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "davenport/group.hpp"

namespace dav {

// Right-multiplication of a bit set of elements by a fixed element:
// dst |= { x*h : x in src }.  Three strategies by group size:
//   n <= 16 : one lookup per translate, table indexed by the whole 16-bit set
//   n <= 64 : one lookup per byte of the set word
//   else    : iterate set bits (used only on cold paths)
class Translator {
  public:
    void init(const FiniteGroup& G) {
        G_ = &G;
        n_ = G.n;
        W_ = (n_ + 63) / 64;
        if (n_ <= 16) {
            lut16_.assign(size_t(n_) << 16, 0);
            for (int h = 0; h < n_; ++h) {
                uint16_t* t = lut16_.data() + (size_t(h) << 16);
                for (uint32_t s = 1; s < (uint32_t(1) << n_); ++s) {
                    uint32_t low = s & (s - 1);
                    int b = std::countr_zero(s);
                    t[s] = uint16_t(t[low] | (uint16_t(1) << G.op(elem(b), elem(h))));
                }
            }
        } else if (n_ <= 64) {
            int chunks = (n_ + 7) / 8;
            lut8_.assign(size_t(n_) * chunks * 256, 0);
            for (int h = 0; h < n_; ++h)
                for (int c = 0; c < chunks; ++c) {
                    uint64_t* t = lut8_.data() + (size_t(h) * chunks + c) * 256;
                    for (uint32_t b = 1; b < 256; ++b) {
                        int bit = c * 8 + std::countr_zero(b);
                        uint64_t one =
                            bit < n_ ? (uint64_t(1) << G.op(elem(bit), elem(h))) : 0;
                        t[b] = t[b & (b - 1)] | one;
                    }
                }
        }
    }

    int words() const { return W_; }

    void or_translate(uint64_t* dst, const uint64_t* src, elem h) const {
        if (!lut16_.empty()) {
            dst[0] |= lut16_[(size_t(h) << 16) | (src[0] & 0xFFFF)];
        } else if (!lut8_.empty()) {
            int chunks = (n_ + 7) / 8;  // W_ == 1 in this regime
            const uint64_t* t = lut8_.data() + size_t(h) * chunks * 256;
            uint64_t s = src[0], r = 0;
            for (int c = 0; c < chunks; ++c) r |= t[size_t(c) * 256 + ((s >> (8 * c)) & 0xFF)];
            dst[0] |= r;
        } else {
            for (int w = 0; w < W_; ++w) {
                uint64_t s = src[w];
                while (s) {
                    int b = w * 64 + std::countr_zero(s);
                    s &= s - 1;
                    int y = G_->op(elem(b), h);
                    dst[y >> 6] |= uint64_t(1) << (y & 63);
                }
            }
        }
    }

  private:
    const FiniteGroup* G_ = nullptr;
    int n_ = 0, W_ = 0;
    std::vector<uint16_t> lut16_;
    std::vector<uint64_t> lut8_;
};

}  // namespace dav

#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace trisect4 {

/// A permutation of {0,1,2,3,4}, stored by images.
class Perm5 {
  public:
    constexpr Perm5() : img_{0, 1, 2, 3, 4} {}
    constexpr Perm5(int a, int b, int c, int d, int e)
        : img_{uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d), uint8_t(e)} {}
    constexpr explicit Perm5(const std::array<uint8_t, 5>& images) : img_(images) {}

    static constexpr Perm5 identity() { return Perm5(); }
    static constexpr Perm5 transposition(int a, int b) {
        Perm5 p;
        p.img_[a] = uint8_t(b);
        p.img_[b] = uint8_t(a);
        return p;
    }

    constexpr int operator[](int i) const { return img_[i]; }
    constexpr int preImageOf(int j) const {
        for (int i = 0; i < 5; ++i)
            if (img_[i] == j)
                return i;
        return -1;
    }

    /// Composition: (*this * q)(i) = (*this)(q(i)).
    constexpr Perm5 operator*(const Perm5& q) const {
        Perm5 r;
        for (int i = 0; i < 5; ++i)
            r.img_[i] = img_[q.img_[i]];
        return r;
    }

    constexpr Perm5 inverse() const {
        Perm5 r;
        for (int i = 0; i < 5; ++i)
            r.img_[img_[i]] = uint8_t(i);
        return r;
    }

    constexpr int sign() const {
        int inversions = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                if (img_[i] > img_[j])
                    ++inversions;
        return (inversions % 2) ? -1 : 1;
    }

    constexpr bool isValid() const {
        unsigned seen = 0;
        for (int i = 0; i < 5; ++i) {
            if (img_[i] > 4)
                return false;
            seen |= 1u << img_[i];
        }
        return seen == 0x1F;
    }

    /// Image of a vertex bitmask.
    constexpr unsigned imageMask(unsigned mask) const {
        unsigned r = 0;
        for (int i = 0; i < 5; ++i)
            if (mask & (1u << i))
                r |= 1u << img_[i];
        return r;
    }

    /// Lexicographic index in [0,120); isomorphism signatures encode
    /// gluings by this index.
    int orderedIndex() const;
    static Perm5 fromOrderedIndex(int idx);

    /// Five digits "i0i1i2i3i4".
    std::string str() const;

    constexpr const std::array<uint8_t, 5>& images() const { return img_; }

    friend constexpr bool operator==(const Perm5&, const Perm5&) = default;
    friend constexpr auto operator<=>(const Perm5& a, const Perm5& b) { return a.img_ <=> b.img_; }

  private:
    std::array<uint8_t, 5> img_;
};

}  // namespace trisect4

#include "trisect4/perm.hpp"

#include <algorithm>

namespace trisect4 {

namespace {

struct OrderedTable {
    std::array<Perm5, 120> perms;
    OrderedTable() {
        std::array<uint8_t, 5> a{0, 1, 2, 3, 4};
        int i = 0;
        do {
            perms[i++] = Perm5(a);
        } while (std::next_permutation(a.begin(), a.end()));
    }
};

const OrderedTable& table() {
    static const OrderedTable t;
    return t;
}

}  // namespace

int Perm5::orderedIndex() const {
    int idx = 0;
    int factorial[5] = {24, 6, 2, 1, 1};
    for (int i = 0; i < 5; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < 5; ++j)
            if (img_[j] < img_[i])
                ++smaller;
        idx += smaller * factorial[i];
    }
    return idx;
}

Perm5 Perm5::fromOrderedIndex(int idx) {
    return table().perms.at(size_t(idx));
}

std::string Perm5::str() const {
    std::string s(5, '0');
    for (int i = 0; i < 5; ++i)
        s[i] = char('0' + img_[i]);
    return s;
}

}  // namespace trisect4

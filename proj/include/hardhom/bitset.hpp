#ifndef HARDHOM_BITSET_HPP
#define HARDHOM_BITSET_HPP

#include <cstdint>
#include <vector>

namespace hardhom
{

// Fixed-size bitset sized at runtime. Used for adjacency rows and solver
// domains, where word-level intersection tests dominate the running time.
class DynBitset
{
public:
    DynBitset() = default;

    explicit DynBitset(int size, bool fill = false) :
        size_(size),
        words_((size + 63) / 64, fill ? ~std::uint64_t{0} : 0)
    {
        trim();
    }

    auto size() const -> int { return size_; }

    auto test(int i) const -> bool
    {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    auto set(int i) -> void { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    auto reset(int i) -> void { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    auto count() const -> int
    {
        int c = 0;
        for (auto w : words_)
            c += __builtin_popcountll(w);
        return c;
    }

    auto any() const -> bool
    {
        for (auto w : words_)
            if (w)
                return true;
        return false;
    }

    auto none() const -> bool { return ! any(); }

    // Lowest set bit, or -1 when empty.
    auto first() const -> int
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i])
                return int(i) * 64 + __builtin_ctzll(words_[i]);
        return -1;
    }

    // Lowest set bit strictly greater than i, or -1.
    auto next(int i) const -> int
    {
        ++i;
        if (i >= size_)
            return -1;
        std::size_t w = std::size_t(i) >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (cur)
                return int(w) * 64 + __builtin_ctzll(cur);
            if (++w >= words_.size())
                return -1;
            cur = words_[w];
        }
    }

    auto operator&=(const DynBitset & o) -> DynBitset &
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }

    auto operator|=(const DynBitset & o) -> DynBitset &
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }

    auto intersects(const DynBitset & o) const -> bool
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i])
                return true;
        return false;
    }

    auto operator==(const DynBitset & o) const -> bool
    {
        return size_ == o.size_ && words_ == o.words_;
    }

private:
    auto trim() -> void
    {
        if (size_ & 63)
            words_.back() &= (~std::uint64_t{0}) >> (64 - (size_ & 63));
    }

    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

}

#endif

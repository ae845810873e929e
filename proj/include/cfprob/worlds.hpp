#pragma once
#ifndef CFPROB_WORLDS_HPP
#define CFPROB_WORLDS_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace cfprob {

/// A total truth assignment. Bit i of `index` is the truth value of atom i
/// in the vocabulary's declared order, so worlds over n atoms are 0..2^n-1.
struct World {
    std::uint32_t index = 0;

    constexpr bool holds(std::size_t atom) const noexcept { return (index >> atom) & 1U; }

    friend constexpr auto operator<=>(World, World) = default;
};

/// A subset of the 2^n worlds of a vocabulary, stored as a bitset.
class WorldSet {
public:
    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = World;
        using difference_type = std::ptrdiff_t;
        using pointer = const World*;
        using reference = World;

        const_iterator() = default;
        const_iterator(const WorldSet* set, std::size_t pos) : set_(set), pos_(pos) { seek(); }

        World operator*() const { return World{static_cast<std::uint32_t>(pos_)}; }

        const_iterator& operator++()
        {
            ++pos_;
            seek();
            return *this;
        }
        const_iterator operator++(int)
        {
            auto copy = *this;
            ++*this;
            return copy;
        }

        friend bool operator==(const const_iterator& a, const const_iterator& b)
        {
            return a.pos_ == b.pos_;
        }

    private:
        void seek()
        {
            const std::size_t n = set_->universe_;
            while (pos_ < n) {
                const std::uint64_t word = set_->words_[pos_ / 64] >> (pos_ % 64);
                if (word != 0) {
                    pos_ += static_cast<std::size_t>(std::countr_zero(word));
                    return;
                }
                pos_ = (pos_ / 64 + 1) * 64;
            }
            pos_ = n;
        }

        const WorldSet* set_ = nullptr;
        std::size_t pos_ = 0;
    };

    WorldSet() = default;

    /// Empty set over a universe of `universe` worlds.
    explicit WorldSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static WorldSet all(std::size_t universe)
    {
        WorldSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }

    bool contains(World w) const noexcept
    {
        return w.index < universe_ && ((words_[w.index / 64] >> (w.index % 64)) & 1U);
    }

    void insert(World w)
    {
        assert(w.index < universe_);
        words_[w.index / 64] |= std::uint64_t{1} << (w.index % 64);
    }

    void erase(World w)
    {
        assert(w.index < universe_);
        words_[w.index / 64] &= ~(std::uint64_t{1} << (w.index % 64));
    }

    std::size_t size() const noexcept
    {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const noexcept
    {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    bool is_subset_of(const WorldSet& other) const noexcept
    {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~other.words_[i]) != 0) return false;
        return true;
    }

    bool intersects(const WorldSet& other) const noexcept
    {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & other.words_[i]) != 0) return true;
        return false;
    }

    WorldSet& operator&=(const WorldSet& other)
    {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    WorldSet& operator|=(const WorldSet& other)
    {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    /// Set difference.
    WorldSet& operator-=(const WorldSet& other)
    {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
    friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
    friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

    /// Complement relative to the universe.
    friend WorldSet operator~(WorldSet a)
    {
        for (auto& w : a.words_) w = ~w;
        a.trim();
        return a;
    }

    friend bool operator==(const WorldSet&, const WorldSet&) = default;

    /// Orders by universe, then lexicographically by member indices.
    friend bool operator<(const WorldSet& a, const WorldSet& b)
    {
        if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

    const_iterator begin() const { return const_iterator(this, 0); }
    const_iterator end() const { return const_iterator(this, universe_); }

    std::vector<World> to_vector() const { return {begin(), end()}; }

    /// Stable hash for deduplication tables.
    std::size_t hash() const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL ^ universe_;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }

private:
    void trim()
    {
        const std::size_t tail = universe_ % 64;
        if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct WorldSetHash {
    std::size_t operator()(const WorldSet& s) const noexcept { return s.hash(); }
};

}  // namespace cfprob

#endif  // CFPROB_WORLDS_HPP

// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "dsflow/errors.hpp"

namespace dsflow {

/// Subset of a fixed universe [0, universe_size), stored as a bit vector.
/// All binary operations require both operands to share the same universe
/// size and throw UniverseMismatch otherwise.
class IndexSet {
  public:
    IndexSet() = default;

    explicit IndexSet(std::uint32_t universe_size)
        : universe_(universe_size), words_((universe_size + 63) / 64, 0) {}

    static IndexSet full(std::uint32_t universe_size) {
        IndexSet s(universe_size);
        for (auto& w : s.words_)
            w = ~std::uint64_t{0};
        s.mask_tail();
        return s;
    }

    std::uint32_t universe_size() const { return universe_; }

    bool contains(std::uint32_t i) const {
        return i < universe_ && (words_[i / 64] >> (i % 64)) & 1;
    }

    void insert(std::uint32_t i) {
        check_index(i);
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    void erase(std::uint32_t i) {
        check_index(i);
        words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }

    std::uint32_t count() const {
        std::uint32_t n = 0;
        for (auto w : words_)
            n += static_cast<std::uint32_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    IndexSet& operator&=(const IndexSet& o) {
        check_universe(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] &= o.words_[k];
        return *this;
    }

    IndexSet& operator|=(const IndexSet& o) {
        check_universe(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] |= o.words_[k];
        return *this;
    }

    /// Set difference: removes every element of `o` from this set.
    IndexSet& operator-=(const IndexSet& o) {
        check_universe(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] &= ~o.words_[k];
        return *this;
    }

    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
    friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

    bool operator==(const IndexSet& o) const = default;

    bool is_subset_of(const IndexSet& o) const {
        check_universe(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k])
                return false;
        return true;
    }

    /// Calls fn(i) for every member, in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const auto bit = static_cast<std::uint32_t>(std::countr_zero(w));
                fn(static_cast<std::uint32_t>(k * 64 + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> v;
        v.reserve(count());
        for_each([&](std::uint32_t i) { v.push_back(i); });
        return v;
    }

  private:
    void check_index(std::uint32_t i) const {
        if (i >= universe_)
            throw UniverseMismatch("index " + std::to_string(i) +
                                   " outside universe of size " + std::to_string(universe_));
    }

    void check_universe(const IndexSet& o) const {
        if (universe_ != o.universe_)
            throw UniverseMismatch("set universes differ: " + std::to_string(universe_) +
                                   " vs " + std::to_string(o.universe_));
    }

    void mask_tail() {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::uint32_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace dsflow

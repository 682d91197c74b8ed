// Copyright 2026 The pqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQEC_BIT_VEC_H
#define PQEC_BIT_VEC_H

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pqec {

/// Growable packed bit vector over GF(2). Words are little-endian in bit order.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }

    bool operator[](size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    /// Grows (zero filled) or truncates to the given length.
    void resize(size_t num_bits) {
        num_bits_ = num_bits;
        words_.resize((num_bits + 63) / 64, 0);
        if (num_bits & 63) {
            words_.back() &= (uint64_t{1} << (num_bits & 63)) - 1;
        }
    }

    BitVec &operator^=(const BitVec &other) {
        if (other.words_.size() > words_.size()) {
            words_.resize(other.words_.size(), 0);
        }
        num_bits_ = std::max(num_bits_, other.num_bits_);
        for (size_t k = 0; k < other.words_.size(); k++) {
            words_[k] ^= other.words_[k];
        }
        return *this;
    }
    BitVec operator^(const BitVec &other) const {
        BitVec result = *this;
        result ^= other;
        return result;
    }

    bool any() const {
        for (uint64_t w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    bool none() const {
        return !any();
    }
    size_t popcount() const {
        size_t n = 0;
        for (uint64_t w : words_) {
            n += std::popcount(w);
        }
        return n;
    }

    /// Index of the lowest set bit, or size() when empty.
    size_t first_one() const {
        for (size_t k = 0; k < words_.size(); k++) {
            if (words_[k]) {
                return k * 64 + std::countr_zero(words_[k]);
            }
        }
        return num_bits_;
    }

    template <typename F>
    void for_each_one(F &&callback) const {
        for (size_t k = 0; k < words_.size(); k++) {
            uint64_t w = words_[k];
            while (w) {
                callback(k * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<uint32_t> ones() const {
        std::vector<uint32_t> result;
        for_each_one([&](size_t k) { result.push_back((uint32_t)k); });
        return result;
    }

    /// Equality ignores trailing zero words so vectors of different capacity compare by content.
    bool operator==(const BitVec &other) const {
        size_t n = std::max(words_.size(), other.words_.size());
        for (size_t k = 0; k < n; k++) {
            uint64_t a = k < words_.size() ? words_[k] : 0;
            uint64_t b = k < other.words_.size() ? other.words_[k] : 0;
            if (a != b) {
                return false;
            }
        }
        return true;
    }

    size_t hash() const {
        size_t h = 0x9E3779B97F4A7C15ULL;
        size_t n = words_.size();
        while (n > 0 && words_[n - 1] == 0) {
            n--;
        }
        for (size_t k = 0; k < n; k++) {
            h ^= std::hash<uint64_t>{}(words_[k]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

struct BitVecHash {
    size_t operator()(const BitVec &v) const {
        return v.hash();
    }
};

}  // namespace pqec

#endif

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "monisect/error.hpp"

namespace monisect {

// Unsigned arbitrary-precision integer covering the handful of operations the
// library needs: factorial/lcm exponents, the halve/decrement loop of the SLP
// power construction, binary exponentiation, and expansion-length arithmetic.
// Little-endian base-2^32 limbs with no trailing zero limb; empty means zero.
class BigUint {
public:
    BigUint() = default;

    BigUint(std::uint64_t v) {
        if (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            if (v >> 32)
                limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
        }
    }

    static BigUint factorial(std::uint64_t n) {
        BigUint r(1);
        for (std::uint64_t i = 2; i <= n; ++i)
            r.mul_small(static_cast<std::uint32_t>(i));
        return r;
    }

    static BigUint lcm_of(const std::vector<std::uint64_t>& xs) {
        std::uint64_t l = 1;
        for (std::uint64_t x : xs)
            if (x != 0)
                l = std::lcm(l, x);
        return BigUint(l);
    }

    static BigUint from_decimal(const std::string& s) {
        if (s.empty())
            fail("parse_error", "empty integer literal");
        BigUint r;
        for (char c : s) {
            if (c < '0' || c > '9')
                fail("parse_error", "bad digit in integer literal: " + s);
            r.mul_small(10);
            r.add_small(static_cast<std::uint32_t>(c - '0'));
        }
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

    bool fits_u64() const { return limbs_.size() <= 2; }

    std::uint64_t to_u64() const {
        if (!fits_u64())
            fail("overflow", "value does not fit in 64 bits");
        std::uint64_t v = 0;
        if (limbs_.size() > 1)
            v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty())
            v |= limbs_[0];
        return v;
    }

    // Number of significant bits; zero for zero.
    std::size_t bit_length() const {
        if (limbs_.empty())
            return 0;
        std::uint32_t top = limbs_.back();
        std::size_t bits = (limbs_.size() - 1) * 32;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    bool bit(std::size_t i) const {
        std::size_t limb = i / 32;
        if (limb >= limbs_.size())
            return false;
        return (limbs_[limb] >> (i % 32)) & 1u;
    }

    void decrement() {
        if (is_zero())
            fail("underflow", "decrement of zero");
        for (std::size_t i = 0;; ++i) {
            if (limbs_[i]-- != 0)
                break;
        }
        trim();
    }

    void halve() {
        std::uint32_t carry = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint32_t next = limbs_[i] & 1u;
            limbs_[i] = (limbs_[i] >> 1) | (carry << 31);
            carry = next;
        }
        trim();
    }

    BigUint& mul_small(std::uint32_t f) {
        if (f == 0) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t v = static_cast<std::uint64_t>(limb) * f + carry;
            limb = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        if (carry)
            limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    BigUint& add_small(std::uint32_t a) {
        std::uint64_t carry = a;
        for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
            std::uint64_t v = limbs_[i] + carry;
            limbs_[i] = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        if (carry)
            limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    friend BigUint operator+(const BigUint& a, const BigUint& b) {
        BigUint r;
        r.limbs_.resize(std::max(a.limbs_.size(), b.limbs_.size()), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
            std::uint64_t v = carry;
            if (i < a.limbs_.size())
                v += a.limbs_[i];
            if (i < b.limbs_.size())
                v += b.limbs_[i];
            r.limbs_[i] = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        if (carry)
            r.limbs_.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        BigUint r;
        if (a.is_zero() || b.is_zero())
            return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t v = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j]
                                  + r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(v);
                carry = v >> 32;
            }
            r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        return r;
    }

    bool operator==(const BigUint&) const = default;

    std::strong_ordering operator<=>(const BigUint& o) const {
        if (limbs_.size() != o.limbs_.size())
            return limbs_.size() <=> o.limbs_.size();
        for (std::size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != o.limbs_[i])
                return limbs_[i] <=> o.limbs_[i];
        return std::strong_ordering::equal;
    }

    std::string to_decimal() const {
        if (is_zero())
            return "0";
        std::vector<std::uint32_t> work = limbs_;
        std::string out;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t v = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(v / 1000000000u);
                rem = v % 1000000000u;
            }
            while (!work.empty() && work.back() == 0)
                work.pop_back();
            std::string chunk = std::to_string(rem);
            if (work.empty()) {
                out.insert(0, chunk);
            } else {
                out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
            }
        }
        return out;
    }

private:
    std::vector<std::uint32_t> limbs_;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0)
            limbs_.pop_back();
    }
};

} // namespace monisect

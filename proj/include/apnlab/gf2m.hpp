/**************************************************************************
 * gf2m.hpp
 *
 * Copyright 2026 The apnlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

/**
 * @file gf2m.hpp
 * @brief Arithmetic in GF(2^m), 1 <= m <= 24, in a polynomial basis.
 *
 * Elements are plain m-bit integers: bit i is the coefficient of X^i.
 * A FieldSpec is immutable once built and all member functions are const,
 * so a single instance can be shared between threads.
 */

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace apnlab {

using Elem = std::uint32_t;

namespace poly2 {

// Polynomials over F_2 packed into a 64-bit word (bit i = coeff of X^i).

[[nodiscard]] inline int degree(std::uint64_t p) noexcept { return msb_index(p); }

[[nodiscard]] inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) noexcept {
    const int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
    return a;
}

[[nodiscard]] inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

/// a * b mod m, with deg a, deg b < deg m <= 31.
[[nodiscard]] inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
    }
    return mod(r, m);
}

/// Smallest k in [1, deg/2] with gcd(X^(2^k) + X, p) != 1, or 0 when p is
/// irreducible. The returned k is the degree of the smallest factor.
[[nodiscard]] inline int smallest_factor_degree(std::uint64_t p) noexcept {
    const int d = degree(p);
    if (d <= 1) return 0;
    if ((p & 1) == 0) return 1;  // X divides p
    std::uint64_t x_pow = mod(0b10, p);  // X^(2^k) mod p
    for (int k = 1; k <= d / 2; ++k) {
        x_pow = mulmod(x_pow, x_pow, p);
        if (gcd(p, x_pow ^ 0b10) != 1) return k;
    }
    return 0;
}

inline std::string to_string(std::uint64_t p) {
    if (p == 0) return "0";
    std::string s;
    for (int i = degree(p); i >= 0; --i) {
        if (!((p >> i) & 1)) continue;
        if (!s.empty()) s += "+";
        if (i == 0) s += "1";
        else if (i == 1) s += "X";
        else s += "X^" + std::to_string(i);
    }
    return s;
}

/// Parses a polynomial written MSB first as a bit string, e.g. "1011" -> X^3+X+1.
[[nodiscard]] inline std::uint64_t from_bitstring(const std::string& bits) {
    if (bits.empty() || bits.size() > 63) throw InputError("polynomial bit string must have 1..63 digits");
    std::uint64_t p = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InputError("polynomial bit string may only contain 0/1: " + bits);
        p = (p << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return p;
}

}  // namespace poly2

class FieldSpec {
public:
    static constexpr unsigned kMaxDegree = 24;

    /// Builds GF(2^m) for the given modulus; std::nullopt selects the
    /// lexicographically smallest irreducible polynomial of degree m.
    static FieldSpec make(unsigned m, std::optional<std::uint64_t> modulus = std::nullopt) {
        if (m < 1 || m > kMaxDegree)
            throw InputError("field degree m must lie in [1, 24], got " + std::to_string(m));
        if (!modulus) return FieldSpec(m, default_modulus(m));
        const std::uint64_t p = *modulus;
        if (poly2::degree(p) != static_cast<int>(m))
            throw InputError("modulus " + poly2::to_string(p) + " does not have degree " + std::to_string(m));
        if ((p & 1) == 0)
            throw InputError("modulus " + poly2::to_string(p) + " is reducible: factor of degree 1 found");
        if (const int k = poly2::smallest_factor_degree(p); k != 0)
            throw InputError("modulus " + poly2::to_string(p) + " is reducible: factor of degree " +
                             std::to_string(k) + " found");
        return FieldSpec(m, p);
    }

    static std::uint64_t default_modulus(unsigned m) {
        for (std::uint64_t p = (1ull << m) | 1; p < (1ull << (m + 1)); p += 2)
            if (poly2::smallest_factor_degree(p) == 0) return p;
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    [[nodiscard]] unsigned m() const noexcept { return m_; }
    [[nodiscard]] std::uint64_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] Elem size() const noexcept { return Elem{1} << m_; }
    [[nodiscard]] Elem order() const noexcept { return size() - 1; }
    [[nodiscard]] bool contains(Elem a) const noexcept { return a < size(); }

    [[nodiscard]] static constexpr Elem add(Elem a, Elem b) noexcept { return a ^ b; }

    [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept {
        if (table_) return (*table_)[(static_cast<std::size_t>(a) << m_) | b];
        return mul_slow(a, b);
    }

    [[nodiscard]] Elem square(Elem a) const noexcept { return mul(a, a); }

    [[nodiscard]] Elem pow(Elem a, std::uint64_t k) const noexcept {
        Elem r = 1;
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    /// a^(2^k)
    [[nodiscard]] Elem frobenius(Elem a, unsigned k) const noexcept {
        for (unsigned i = 0; i < k % m_; ++i) a = mul(a, a);
        return a;
    }

    [[nodiscard]] Elem inv(Elem a) const {
        if (a == 0) throw DomainError("inverse of 0 in GF(2^" + std::to_string(m_) + ")");
        return pow(a, (std::uint64_t{1} << m_) - 2);
    }

    /// Unique square root (Frobenius is bijective).
    [[nodiscard]] Elem sqrt(Elem a) const noexcept { return frobenius(a, m_ - 1); }

    /// Absolute trace onto F_2.
    [[nodiscard]] unsigned trace(Elem a) const noexcept {
        Elem t = 0, s = a;
        for (unsigned i = 0; i < m_; ++i) {
            t ^= s;
            s = mul(s, s);
        }
        return t & 1;  // t is 0 or 1
    }

    /// Relative trace onto the subfield of size 2^k: sum of a^(2^(k*i)).
    [[nodiscard]] Elem relative_trace(Elem a, unsigned k) const {
        if (k == 0 || m_ % k != 0)
            throw DomainError("relative trace needs k | m (k=" + std::to_string(k) + ", m=" + std::to_string(m_) + ")");
        Elem t = 0, s = a;
        for (unsigned i = 0; i < m_ / k; ++i) {
            t ^= s;
            s = frobenius(s, k);
        }
        return t;
    }

    /// True iff x^7 = u has a solution in the field.
    [[nodiscard]] bool is_seventh_power(Elem u) const noexcept {
        if (u == 0) return true;
        const std::uint64_t q1 = order();
        if (q1 % 7 != 0) return true;
        return pow(u, q1 / 7) == 1;
    }

    /// Some x with x^7 = u, if one exists (smallest by bits-value).
    [[nodiscard]] std::optional<Elem> seventh_root(Elem u) const {
        if (!is_seventh_power(u)) return std::nullopt;
        for (Elem x = 0; x < size(); ++x)
            if (pow(x, 7) == u) return x;
        return std::nullopt;
    }

    /// Evaluates a polynomial with field coefficients (index = degree).
    [[nodiscard]] Elem eval(std::span<const Elem> coeffs, Elem x) const noexcept {
        Elem r = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) r = mul(r, x) ^ coeffs[i];
        return r;
    }

    /// All roots in the field of a nonzero polynomial, ascending by bits.
    /// The number of distinct roots is first obtained as
    /// deg gcd(p, X^(2^m) + X), so the scan stops as soon as all are found.
    [[nodiscard]] std::vector<Elem> find_roots(std::span<const Elem> coeffs) const {
        std::vector<Elem> p(coeffs.begin(), coeffs.end());
        trim(p);
        if (p.empty()) throw DomainError("find_roots: zero polynomial");
        for (Elem c : p)
            if (!contains(c)) throw InputError("find_roots: coefficient outside the field");
        const std::size_t expected = distinct_root_count(p);
        std::vector<Elem> roots;
        for (Elem x = 0; x < size() && roots.size() < expected; ++x)
            if (eval(p, x) == 0) roots.push_back(x);
        return roots;
    }

    /// Roots of a polynomial with F_2 coefficients given as a bit mask.
    [[nodiscard]] std::vector<Elem> find_roots_f2(std::uint64_t poly) const {
        std::vector<Elem> c;
        for (int i = 0; i <= poly2::degree(poly); ++i) c.push_back(static_cast<Elem>((poly >> i) & 1));
        if (c.empty()) throw DomainError("find_roots: zero polynomial");
        return find_roots(c);
    }

    /// Minimal polynomial over F_2 of a (bit mask).
    [[nodiscard]] std::uint64_t minimal_polynomial(Elem a) const {
        // product of (X + a^(2^i)) over the distinct conjugates
        std::vector<Elem> conj{a};
        for (Elem c = square(a); c != a; c = square(c)) conj.push_back(c);
        std::vector<Elem> poly{1};
        for (Elem r : conj) {
            std::vector<Elem> next(poly.size() + 1, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] ^= poly[i];
                next[i] ^= mul(poly[i], r);
            }
            poly = std::move(next);
        }
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (poly[i] > 1) throw std::logic_error("minimal polynomial not over F_2");
            bits |= static_cast<std::uint64_t>(poly[i]) << i;
        }
        return bits;
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
        return a.m_ == b.m_ && a.modulus_ == b.modulus_;
    }

private:
    FieldSpec(unsigned m, std::uint64_t modulus) : m_(m), modulus_(modulus) {
        if (m_ <= 8) {
            auto t = std::make_shared<std::vector<Elem>>(std::size_t{1} << (2 * m_));
            for (Elem a = 0; a < size(); ++a)
                for (Elem b = 0; b < size(); ++b) (*t)[(static_cast<std::size_t>(a) << m_) | b] = mul_slow(a, b);
            table_ = std::move(t);
        }
    }

    [[nodiscard]] Elem mul_slow(Elem a, Elem b) const noexcept {
        std::uint64_t r = 0, x = a;
        while (b) {
            if (b & 1) r ^= x;
            b >>= 1;
            x <<= 1;
        }
        for (int i = 2 * static_cast<int>(m_) - 2; i >= static_cast<int>(m_); --i)
            if ((r >> i) & 1) r ^= modulus_ << (i - m_);
        return static_cast<Elem>(r);
    }

    static void trim(std::vector<Elem>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    // Polynomial helpers over the field for the root count.
    std::vector<Elem> poly_mod(std::vector<Elem> a, const std::vector<Elem>& b) const {
        trim(a);
        const Elem lead_inv = inv(b.back());
        while (a.size() >= b.size()) {
            const Elem f = mul(a.back(), lead_inv);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] ^= mul(f, b[i]);
            trim(a);
        }
        return a;
    }

    std::vector<Elem> poly_mulmod(const std::vector<Elem>& a, const std::vector<Elem>& b,
                                  const std::vector<Elem>& md) const {
        if (a.empty() || b.empty()) return {};
        std::vector<Elem> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= mul(a[i], b[j]);
        return poly_mod(std::move(r), md);
    }

    std::size_t distinct_root_count(const std::vector<Elem>& p) const {
        if (p.size() == 1) return 0;
        // X^(2^m) mod p by m squarings of X.
        std::vector<Elem> x_pow = poly_mod({0, 1}, p);
        for (unsigned i = 0; i < m_; ++i) x_pow = poly_mulmod(x_pow, x_pow, p);
        if (x_pow.size() < 2) x_pow.resize(2, 0);
        x_pow[1] ^= 1;
        trim(x_pow);
        std::vector<Elem> a = p, b = x_pow;
        while (!b.empty()) {
            a = poly_mod(std::move(a), b);
            std::swap(a, b);
        }
        return a.size() - 1;
    }

    unsigned m_;
    std::uint64_t modulus_;
    std::shared_ptr<const std::vector<Elem>> table_;
};

}  // namespace apnlab

/**************************************************************************
 * vbf.hpp
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
 * @file vbf.hpp
 * @brief Vectorial Boolean functions F_2^n -> F_2^n as lookup tables.
 *
 * Inner products are the plain dot product on packed bit vectors. The
 * Walsh coefficient at (a, b) is
 *
 *     W(a, b) = sum_x (-1)^(a.x + b.F(x)).
 *
 * Exhaustive spectra (DDT, Walsh, thickness) are restricted to n <= 18;
 * quadratic functions have kernel-based shortcuts that scale further.
 */

#include <array>
#include <cstdlib>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "gf2m.hpp"
#include "linalg.hpp"

namespace apnlab {

class VBF {
public:
    static constexpr unsigned kMaxBits = 24;
    static constexpr unsigned kMaxSpectrumBits = 18;

    VBF() = default;

    static VBF from_table(unsigned n, std::vector<std::uint32_t> entries) {
        if (n > kMaxBits) throw CapacityError("VBF supports n <= 24, got " + std::to_string(n));
        if (entries.size() != (std::size_t{1} << n))
            throw InputError("table for n=" + std::to_string(n) + " must have " +
                             std::to_string(std::size_t{1} << n) + " entries, got " +
                             std::to_string(entries.size()));
        const std::uint32_t bound = std::uint32_t{1} << n;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] >= bound)
                throw InputError("table entry at index " + std::to_string(i) + " is out of range: " +
                                 std::to_string(entries[i]));
        VBF f;
        f.n_ = n;
        f.table_ = std::move(entries);
        return f;
    }

    /// Evaluates sum of c * x^e over the whole field.
    static VBF from_univariate(const FieldSpec& field, std::span<const std::pair<Elem, std::uint64_t>> monomials) {
        for (const auto& [c, e] : monomials) {
            if (!field.contains(c)) throw InputError("monomial coefficient outside the field");
            if (e >= field.size()) throw InputError("monomial exponent " + std::to_string(e) + " >= 2^m");
        }
        std::vector<std::uint32_t> t(field.size());
        for (Elem x = 0; x < field.size(); ++x) {
            Elem y = 0;
            for (const auto& [c, e] : monomials) y ^= field.mul(c, e == 0 ? 1 : field.pow(x, e));
            t[x] = y;
        }
        return from_table(field.m(), std::move(t));
    }

    static VBF identity(unsigned n) {
        std::vector<std::uint32_t> t(std::size_t{1} << n);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint32_t>(i);
        return from_table(n, std::move(t));
    }

    static VBF from_affine(unsigned n, const AffineMap& A) {
        std::vector<std::uint32_t> t(std::size_t{1} << n);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint32_t>(A(i));
        return from_table(n, std::move(t));
    }

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
    [[nodiscard]] const std::vector<std::uint32_t>& table() const noexcept { return table_; }
    [[nodiscard]] std::uint32_t operator()(std::uint64_t x) const noexcept { return table_[x]; }

    friend bool operator==(const VBF&, const VBF&) = default;

private:
    unsigned n_ = 0;
    std::vector<std::uint32_t> table_;
};

inline void require_spectrum_size(const VBF& F, const char* what) {
    if (F.n() > VBF::kMaxSpectrumBits)
        throw CapacityError(std::string(what) + " is exhaustive and limited to n <= 18 (n=" +
                            std::to_string(F.n()) + "); use the kernel-based quadratic routines instead");
}

// ---------------------------------------------------------------------------
// Permutations and algebra of tables

[[nodiscard]] inline std::size_t image_size(const VBF& F) {
    std::vector<bool> seen(F.size(), false);
    std::size_t count = 0;
    for (auto y : F.table())
        if (!seen[y]) {
            seen[y] = true;
            ++count;
        }
    return count;
}

[[nodiscard]] inline bool is_permutation(const VBF& F) { return image_size(F) == F.size(); }

[[nodiscard]] inline VBF inverse(const VBF& F) {
    const std::size_t im = image_size(F);
    if (im != F.size())
        throw DomainError("function is not a permutation (image size " + std::to_string(im) + " of " +
                          std::to_string(F.size()) + ")");
    std::vector<std::uint32_t> t(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) t[F(x)] = static_cast<std::uint32_t>(x);
    return VBF::from_table(F.n(), std::move(t));
}

/// F o G
[[nodiscard]] inline VBF compose(const VBF& F, const VBF& G) {
    if (F.n() != G.n()) throw InputError("compose: dimension mismatch");
    std::vector<std::uint32_t> t(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) t[x] = F(G(x));
    return VBF::from_table(F.n(), std::move(t));
}

[[nodiscard]] inline VBF add(const VBF& F, const VBF& G) {
    if (F.n() != G.n()) throw InputError("add: dimension mismatch");
    std::vector<std::uint32_t> t(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) t[x] = F(x) ^ G(x);
    return VBF::from_table(F.n(), std::move(t));
}

/// A2 o F o A1 + A3.
[[nodiscard]] inline VBF ea_transform(const VBF& F, const AffineMap& A1, const AffineMap& A2, const AffineMap& A3) {
    const unsigned n = F.n();
    for (const auto* A : {&A1, &A2}) {
        if (A->linear.rows() != n || A->linear.cols() != n)
            throw InputError("EA transform: affine bijection must be " + std::to_string(n) + "x" + std::to_string(n));
        if (const unsigned r = A->linear.rank(); r != n)
            throw DomainError("EA transform: " + std::string(A == &A1 ? "A1" : "A2") +
                              " is singular (rank " + std::to_string(r) + " < " + std::to_string(n) + ")");
    }
    if (A3.linear.rows() != n || A3.linear.cols() != n) throw InputError("EA transform: A3 has wrong shape");
    std::vector<std::uint32_t> t(F.size());
    for (std::size_t x = 0; x < F.size(); ++x)
        t[x] = static_cast<std::uint32_t>(A2(F(A1(x))) ^ A3(x));
    return VBF::from_table(n, std::move(t));
}

// ---------------------------------------------------------------------------
// Differential uniformity

struct DDTReport {
    unsigned differential_uniformity = 0;
    /// histogram[v] = number of (alpha != 0, beta) entries equal to v; only
    /// filled when requested.
    std::map<unsigned, std::uint64_t> histogram;
};

[[nodiscard]] inline DDTReport ddt(const VBF& F, bool with_histogram = false, unsigned jobs = 0) {
    require_spectrum_size(F, "DDT");
    const std::size_t N = F.size();
    const unsigned workers = resolve_jobs(jobs);
    std::vector<unsigned> best(workers, 0);
    std::vector<std::map<unsigned, std::uint64_t>> hist(workers);
    parallel_chunks(
        N - 1,
        [&](std::size_t b, std::size_t e, unsigned w) {
            std::vector<std::uint32_t> counts(N);
            for (std::size_t i = b; i < e; ++i) {
                const std::size_t a = i + 1;
                std::fill(counts.begin(), counts.end(), 0);
                for (std::size_t x = 0; x < N; ++x) ++counts[F(x) ^ F(x ^ a)];
                for (auto c : counts) {
                    best[w] = std::max<unsigned>(best[w], c);
                    if (with_histogram) ++hist[w][c];
                }
            }
        },
        workers);
    DDTReport r;
    for (unsigned w = 0; w < workers; ++w) {
        r.differential_uniformity = std::max(r.differential_uniformity, best[w]);
        for (auto [k, v] : hist[w]) r.histogram[k] += v;
    }
    return r;
}

[[nodiscard]] inline unsigned differential_uniformity(const VBF& F, unsigned jobs = 0) {
    return ddt(F, false, jobs).differential_uniformity;
}

// ---------------------------------------------------------------------------
// Walsh transform

/// In-place fast Walsh-Hadamard transform (butterfly network, log2 |v| levels).
inline void fwht(std::span<std::int32_t> v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1)
        for (std::size_t i = 0; i < v.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
}

/// Packed truth table of the component x -> b.F(x), 64 inputs per word.
[[nodiscard]] inline std::vector<std::uint64_t> component_bits(const VBF& F, std::uint64_t b) {
    std::vector<std::uint64_t> bits((F.size() + 63) / 64, 0);
    for (std::size_t x = 0; x < F.size(); ++x)
        bits[x >> 6] |= static_cast<std::uint64_t>(parity(b & F(x))) << (x & 63);
    return bits;
}

/// Walsh spectrum a -> W(a, b) of one component.
[[nodiscard]] inline std::vector<std::int32_t> walsh_component(const VBF& F, std::uint64_t b) {
    require_spectrum_size(F, "Walsh transform");
    const auto bits = component_bits(F, b);
    std::vector<std::int32_t> v(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) v[x] = ((bits[x >> 6] >> (x & 63)) & 1) ? -1 : 1;
    fwht(v);
    return v;
}

enum class WalshMode { full, per_component, single };

struct WalshReport {
    std::int64_t linearity = 0;
    /// max_a |W(a, b)| indexed by b (entry 0 is 2^n).
    std::vector<std::int64_t> component_max;
    /// Row-major spectrum[b * 2^n + a]; present in full mode (n <= 12) and,
    /// for one row, in single mode.
    std::vector<std::int32_t> spectrum;
};

/// Full spectra are only stored up to this size (2^24 coefficients).
inline constexpr unsigned kMaxStoredSpectrumBits = 12;

[[nodiscard]] inline WalshReport walsh(const VBF& F, WalshMode mode = WalshMode::per_component, std::uint64_t b = 1,
                                       unsigned jobs = 0) {
    require_spectrum_size(F, "Walsh transform");
    const std::size_t N = F.size();
    WalshReport r;
    if (mode == WalshMode::single) {
        if (b >= N) throw InputError("component index out of range");
        r.spectrum = walsh_component(F, b);
        for (auto v : r.spectrum) r.linearity = std::max<std::int64_t>(r.linearity, std::abs(v));
        r.component_max = {r.linearity};
        return r;
    }
    if (mode == WalshMode::full && F.n() > kMaxStoredSpectrumBits)
        throw CapacityError("full Walsh spectrum storage is limited to n <= 12; use per-component mode");
    r.component_max.assign(N, 0);
    if (mode == WalshMode::full) r.spectrum.assign(N * N, 0);
    parallel_for(
        N,
        [&](std::size_t comp) {
            const auto w = walsh_component(F, comp);
            std::int64_t mx = 0;
            for (auto v : w) mx = std::max<std::int64_t>(mx, std::abs(v));
            r.component_max[comp] = mx;
            if (mode == WalshMode::full) std::copy(w.begin(), w.end(), r.spectrum.begin() + comp * N);
        },
        jobs);
    for (std::size_t comp = 1; comp < N; ++comp) r.linearity = std::max(r.linearity, r.component_max[comp]);
    return r;
}

[[nodiscard]] inline std::int64_t linearity(const VBF& F, unsigned jobs = 0) {
    return walsh(F, WalshMode::per_component, 1, jobs).linearity;
}

// ---------------------------------------------------------------------------
// Algebraic normal form and degrees

using Bitset = std::vector<std::uint64_t>;

/// Binary Moebius transform of a packed truth table (an involution).
inline void moebius(Bitset& t, unsigned n) {
    static constexpr std::uint64_t kLow[6] = {0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
                                              0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
    for (unsigned lvl = 0; lvl < std::min(n, 6u); ++lvl)
        for (auto& w : t) w ^= (w & kLow[lvl]) << (1u << lvl);
    for (std::size_t h = 1; h < t.size(); h <<= 1)
        for (std::size_t i = 0; i < t.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) t[j + h] ^= t[j];
}

/// ANF of each output coordinate: anf[i] has bit u set iff the monomial
/// x^u (u read as a subset of input bits) appears in coordinate i.
[[nodiscard]] inline std::vector<Bitset> anf(const VBF& F) {
    std::vector<Bitset> out;
    for (unsigned i = 0; i < F.n(); ++i) {
        auto t = component_bits(F, std::uint64_t{1} << i);
        moebius(t, F.n());
        out.push_back(std::move(t));
    }
    return out;
}

/// Rebuilds a table from coordinate ANFs.
[[nodiscard]] inline VBF from_anf(unsigned n, const std::vector<Bitset>& coords) {
    std::vector<std::uint32_t> t(std::size_t{1} << n, 0);
    for (unsigned i = 0; i < coords.size(); ++i) {
        Bitset b = coords[i];
        moebius(b, n);
        for (std::size_t x = 0; x < t.size(); ++x)
            if ((b[x >> 6] >> (x & 63)) & 1) t[x] |= std::uint32_t{1} << i;
    }
    return VBF::from_table(n, std::move(t));
}

/// Degree of a Boolean function given by its ANF; -1 for the zero function.
[[nodiscard]] inline int anf_degree(const Bitset& a) {
    // masks[k] = positions j < 64 with popcount(j) >= k
    static const auto masks = [] {
        std::array<std::uint64_t, 7> m{};
        for (unsigned j = 0; j < 64; ++j)
            for (int k = 0; k <= std::popcount(j); ++k) m[k] |= 1ull << j;
        return m;
    }();
    int best = -1;
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (!a[w]) continue;
        int k = 6;
        while (!(a[w] & masks[k])) --k;
        best = std::max(best, std::popcount(w) + k);
    }
    return best;
}

[[nodiscard]] inline int algebraic_degree(const VBF& F) {
    int d = 0;
    for (const auto& c : anf(F)) d = std::max(d, anf_degree(c));
    return d;
}

struct DegreeSpectrum {
    /// degree -> number of nonzero components with that degree
    std::map<int, std::uint64_t> counts;

    /// True when no nonzero component is affine (degree <= 1).
    [[nodiscard]] bool non_degenerate() const {
        for (auto [d, c] : counts)
            if (d <= 1 && c > 0) return false;
        return true;
    }

    friend bool operator==(const DegreeSpectrum&, const DegreeSpectrum&) = default;
    friend auto operator<=>(const DegreeSpectrum&, const DegreeSpectrum&) = default;
};

inline constexpr unsigned kMaxDegreeSpectrumBits = 16;

/// Degrees of all 2^n - 1 nonzero components. Component ANFs are XORs of
/// coordinate ANFs, visited in Gray-code order.
[[nodiscard]] inline std::vector<int> component_degrees(const VBF& F) {
    if (F.n() > kMaxDegreeSpectrumBits)
        throw CapacityError("degree spectrum is limited to n <= 16");
    const auto coords = anf(F);
    std::vector<int> deg(F.size(), -1);
    Bitset cur(coords.empty() ? 1 : coords[0].size(), 0);
    std::uint64_t b = 0;
    for (std::uint64_t i = 1; i < F.size(); ++i) {
        const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
        b ^= std::uint64_t{1} << bit;
        for (std::size_t w = 0; w < cur.size(); ++w) cur[w] ^= coords[bit][w];
        deg[b] = std::max(0, anf_degree(cur));
    }
    return deg;
}

[[nodiscard]] inline DegreeSpectrum degree_spectrum(const VBF& F) {
    DegreeSpectrum s;
    const auto deg = component_degrees(F);
    for (std::size_t b = 1; b < deg.size(); ++b) ++s.counts[deg[b]];
    return s;
}

// ---------------------------------------------------------------------------
// Quadratic shortcuts

inline void require_quadratic(const VBF& F) {
    if (const int d = algebraic_degree(F); d > 2)
        throw DomainError("function has algebraic degree " + std::to_string(d) + " > 2");
}

namespace detail {

/// F at 0, at each unit vector, and at each pair of unit vectors.
struct QuadraticSamples {
    unsigned n;
    std::uint32_t f0;
    std::vector<std::uint32_t> unit;                  // F(e_i)
    std::vector<std::vector<std::uint32_t>> pairs;    // F(e_i + e_j), i < j

    explicit QuadraticSamples(const VBF& F) : n(F.n()), f0(F(0)), unit(n), pairs(n, std::vector<std::uint32_t>(n)) {
        for (unsigned i = 0; i < n; ++i) {
            unit[i] = F(std::uint64_t{1} << i);
            for (unsigned j = i + 1; j < n; ++j) pairs[i][j] = F((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
        }
    }

    /// Radical dimension of the alternating form of component b.
    [[nodiscard]] unsigned radical_dim(std::uint64_t b) const {
        std::uint64_t rows[64] = {};
        const unsigned p0 = parity(b & f0);
        for (unsigned i = 0; i < n; ++i) {
            const unsigned pi = parity(b & unit[i]);
            for (unsigned j = i + 1; j < n; ++j) {
                const unsigned v = p0 ^ pi ^ parity(b & unit[j]) ^ parity(b & pairs[i][j]);
                if (v) {
                    rows[i] |= std::uint64_t{1} << j;
                    rows[j] |= std::uint64_t{1} << i;
                }
            }
        }
        return n - rank_of(std::span<const std::uint64_t>(rows, n));
    }
};

}  // namespace detail

/// Dimension of the linear space of the component b.F (degree <= 2 required).
[[nodiscard]] inline unsigned quadratic_ls_dimension(const VBF& F, std::uint64_t b) {
    require_quadratic(F);
    if (b == 0 || b >= F.size()) throw InputError("component index must be nonzero and < 2^n");
    return detail::QuadraticSamples(F).radical_dim(b);
}

/// Linearity of a quadratic function from its components' linear spaces:
/// every component is plateaued with amplitude 2^((n + d_b)/2).
[[nodiscard]] inline std::int64_t quadratic_linearity(const VBF& F, unsigned jobs = 0) {
    require_quadratic(F);
    const detail::QuadraticSamples s(F);
    const unsigned workers = resolve_jobs(jobs);
    std::vector<unsigned> best(workers, 0);
    parallel_chunks(
        F.size() - 1,
        [&](std::size_t b, std::size_t e, unsigned w) {
            for (std::size_t i = b; i < e; ++i) best[w] = std::max(best[w], s.radical_dim(i + 1));
        },
        workers);
    const unsigned d = *std::max_element(best.begin(), best.end());
    return std::int64_t{1} << ((F.n() + d) / 2);
}

/// Kernel dimension of the linear part of x -> F(x) + F(x + a).
[[nodiscard]] inline unsigned derivative_kernel_dim(const VBF& F, std::uint64_t a) {
    const unsigned n = F.n();
    std::uint64_t cols[64];
    const std::uint32_t base = F(0) ^ F(a);
    for (unsigned i = 0; i < n; ++i) {
        const std::uint64_t e = std::uint64_t{1} << i;
        cols[i] = F(e) ^ F(e ^ a) ^ base;
    }
    return n - rank_of(std::span<const std::uint64_t>(cols, n));
}

/// Differential uniformity of a quadratic function: each derivative is
/// affine, so every nonempty preimage has 2^(dim ker) elements.
[[nodiscard]] inline unsigned quadratic_diff_uniformity(const VBF& F, unsigned jobs = 0) {
    require_quadratic(F);
    const unsigned workers = resolve_jobs(jobs);
    std::vector<unsigned> best(workers, 0);
    parallel_chunks(
        F.size() - 1,
        [&](std::size_t b, std::size_t e, unsigned w) {
            for (std::size_t i = b; i < e; ++i) best[w] = std::max(best[w], derivative_kernel_dim(F, i + 1));
        },
        workers);
    return 1u << *std::max_element(best.begin(), best.end());
}

}  // namespace apnlab

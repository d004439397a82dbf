/**************************************************************************
 * walsh_geometry.hpp
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
 * @file walsh_geometry.hpp
 * @brief Walsh zeroes, the n-dimensional vector spaces they contain,
 *        thickness spectra and permutation-concatenation tests.
 *
 * A pair (a, b) in F_2^n x F_2^n is packed as a | b << n, so the output
 * side ("right half") of a packed vector is its high n bits.
 */

#include <map>
#include <optional>

#include "vbf.hpp"

namespace apnlab {

/// Zero-set storage is a bit array over F_2^(2n).
inline constexpr unsigned kMaxZeroSetBits = 14;

class ZeroSet {
public:
    ZeroSet() = default;

    /// Empty set (except (0,0)) over F_2^(2n).
    explicit ZeroSet(unsigned n) : n_(n) {
        if (n > kMaxZeroSetBits)
            throw CapacityError("Walsh zero sets are stored as 2^(2n)-bit arrays and limited to n <= 14");
        bits_.assign(((std::size_t{1} << (2 * n)) + 63) / 64, 0);
        insert(0);
    }

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] bool contains(std::uint64_t v) const noexcept { return (bits_[v >> 6] >> (v & 63)) & 1; }
    void insert(std::uint64_t v) noexcept { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); }

    [[nodiscard]] std::size_t size() const noexcept {
        std::size_t s = 0;
        for (auto w : bits_) s += static_cast<std::size_t>(std::popcount(w));
        return s;
    }

    /// Members in increasing packed order.
    [[nodiscard]] std::vector<std::uint64_t> members() const {
        std::vector<std::uint64_t> out;
        for (std::size_t w = 0; w < bits_.size(); ++w)
            for (std::uint64_t x = bits_[w]; x; x &= x - 1) out.push_back(w * 64 + std::countr_zero(x));
        return out;
    }

    [[nodiscard]] static std::uint64_t pack(std::uint64_t a, std::uint64_t b, unsigned n) noexcept { return a | (b << n); }

    [[nodiscard]] const std::uint64_t* words() const noexcept { return bits_.data(); }

    friend bool operator==(const ZeroSet&, const ZeroSet&) = default;

private:
    unsigned n_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Z_F = {(a, b) : W(a, b) = 0} together with (0, 0).
inline ZeroSet walsh_zeroes(const VBF& F, unsigned jobs = 0) {
    require_spectrum_size(F, "Walsh zero set");
    const unsigned n = F.n();
    ZeroSet Z(n);
    const std::size_t N = F.size();
    // a -> (a, 0) is a zero for every a != 0 regardless of F.
    for (std::size_t a = 1; a < N; ++a) Z.insert(a);
    std::vector<std::vector<std::uint64_t>> rows(N);
    parallel_for(
        N - 1,
        [&](std::size_t i) {
            const std::size_t b = i + 1;
            const auto w = walsh_component(F, b);
            for (std::size_t a = 0; a < N; ++a)
                if (w[a] == 0) rows[b].push_back(ZeroSet::pack(a, b, n));
        },
        jobs);
    for (const auto& r : rows)
        for (auto v : r) Z.insert(v);
    return Z;
}

// ---------------------------------------------------------------------------
// Space extraction

namespace detail {

/// Depth-first enumeration of subspaces of a zero set in canonical
/// (MSB-pivot reduced echelon) form. cand holds, for the current partial
/// basis, every vector x that is reduced against it, has its top bit above
/// the last pivot and satisfies x + span ⊆ Z; in_cand is its bit array.
class SpaceExtractor {
public:
    SpaceExtractor(const ZeroSet& Z, unsigned dim)
        : Z_(Z), width_(2 * Z.n()), dim_(dim), cand_(dim + 1), in_cand_(dim + 1), basis_(dim) {
        const std::size_t words = ((std::size_t{1} << width_) + 63) / 64;
        for (unsigned d = 1; d <= dim; ++d) in_cand_[d].assign(words, 0);
    }

    /// Extends from the root, using only first vectors in [first_lo, first_hi)
    /// of the root candidate list.
    void run(const std::vector<std::uint64_t>& root, std::size_t first_lo, std::size_t first_hi,
             std::vector<VectorSpaceBasis>& out) {
        out_ = &out;
        if (dim_ == 0) {
            out.emplace_back();
            return;
        }
        descend(root, Z_.words(), 0, first_lo, first_hi);
    }

private:
    /// A completion by r more vectors with pivots q_1 < ... < q_r has
    /// 2^(i-1) reduced elements whose top bit is q_i, all of which are
    /// candidates. Greedy assignment of the smallest usable q_i decides
    /// whether such pivots exist under the per-position limits.
    [[nodiscard]] bool extendable(const std::uint32_t* per_msb, unsigned depth) const noexcept {
        unsigned i = 0;
        const unsigned r = dim_ - depth;
        for (unsigned q = 0; q < width_ && i < r; ++q) {
            if (q > width_ - r + i) return false;
            if (per_msb[q] >= (std::uint32_t{1} << i)) ++i;
        }
        return i == r;
    }

    static bool member(const std::uint64_t* bits, std::uint64_t y) noexcept { return (bits[y >> 6] >> (y & 63)) & 1; }

    void descend(const std::vector<std::uint64_t>& cand, const std::uint64_t* bits, unsigned depth, std::size_t lo,
                 std::size_t hi) {
        // the pivot of basis vector number depth (0-based) is at most
        // width - (dim - depth)
        const std::uint64_t limit = std::uint64_t{1} << (width_ - (dim_ - depth) + 1);
        auto& next = cand_[depth + 1];
        auto& next_bits = in_cand_[depth + 1];
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t v = cand[i];
            if (v >= limit) break;
            basis_[depth] = v;
            if (depth + 1 == dim_) {
                emit();
                continue;
            }
            const int p = msb_index(v);
            next.clear();
            const auto start = std::lower_bound(cand.begin(), cand.end(), std::uint64_t{2} << p);
            std::uint32_t per_msb[64] = {};
            for (auto it = start; it != cand.end(); ++it) {
                const std::uint64_t x = *it;
                if ((x >> p) & 1) continue;
                if (!member(bits, x ^ v)) continue;
                next.push_back(x);
                ++per_msb[msb_index(x)];
            }
            if (!extendable(per_msb, depth + 1)) continue;
            for (auto x : next) next_bits[x >> 6] |= std::uint64_t{1} << (x & 63);
            descend(next, next_bits.data(), depth + 1, 0, next.size());
            for (auto x : next) next_bits[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
        }
    }

    void emit() { out_->push_back(VectorSpaceBasis::span_of(basis_)); }

    const ZeroSet& Z_;
    unsigned width_;
    unsigned dim_;
    std::vector<std::vector<std::uint64_t>> cand_;
    std::vector<std::vector<std::uint64_t>> in_cand_;
    std::vector<std::uint64_t> basis_;
    std::vector<VectorSpaceBasis>* out_ = nullptr;
};

}  // namespace detail

namespace detail {

/// The search runs on coordinates interleaved as b_0 a_0 b_1 a_1 ... so
/// that low pivot positions, which the search fixes first, mix the
/// constrained output side with the unconstrained input side.
inline std::uint64_t interleave(std::uint64_t v, unsigned n) noexcept {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < n; ++i) {
        r |= ((v >> i) & 1) << (2 * i + 1);
        r |= ((v >> (n + i)) & 1) << (2 * i);
    }
    return r;
}

inline std::uint64_t deinterleave(std::uint64_t r, unsigned n) noexcept {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) {
        v |= ((r >> (2 * i + 1)) & 1) << i;
        v |= ((r >> (2 * i)) & 1) << (n + i);
    }
    return v;
}

}  // namespace detail

/// Every subspace of dimension target_dim (default n) contained in Z,
/// each once, in canonical form and sorted by basis.
inline std::vector<VectorSpaceBasis> extract_spaces(const ZeroSet& Z, std::optional<unsigned> target_dim = std::nullopt,
                                                    unsigned jobs = 0) {
    const unsigned n = Z.n();
    const unsigned dim = target_dim.value_or(n);
    if (dim > 2 * n) return {};
    if (dim == 0) return {VectorSpaceBasis{}};
    ZeroSet S(n);
    std::vector<std::uint64_t> root;
    for (auto v : Z.members()) {
        const auto w = detail::interleave(v, n);
        S.insert(w);
        if (w) root.push_back(w);
    }
    std::sort(root.begin(), root.end());
    const std::uint64_t first_limit = std::uint64_t{1} << (2 * n - dim + 1);
    const std::size_t firsts =
        static_cast<std::size_t>(std::lower_bound(root.begin(), root.end(), first_limit) - root.begin());
    const unsigned workers = resolve_jobs(jobs);
    // Interleaved small blocks balance the very uneven subtree sizes.
    const std::size_t block = 4;
    const std::size_t nblocks = (firsts + block - 1) / block;
    std::vector<std::vector<VectorSpaceBasis>> per_block(nblocks);
    parallel_chunks(
        workers,
        [&](std::size_t wb, std::size_t we, unsigned) {
            for (std::size_t w = wb; w < we; ++w) {
                detail::SpaceExtractor ex(S, dim);
                for (std::size_t k = w; k < nblocks; k += workers)
                    ex.run(root, k * block, std::min(firsts, (k + 1) * block), per_block[k]);
            }
        },
        workers);
    std::vector<VectorSpaceBasis> out;
    std::vector<std::uint64_t> g;
    for (auto& b : per_block)
        for (auto& s : b) {
            g.clear();
            for (auto w : s.basis()) g.push_back(detail::deinterleave(w, n));
            out.push_back(VectorSpaceBasis::span_of(g));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Thickness

/// Rank of the output-side halves of the basis vectors.
inline unsigned thickness(const VectorSpaceBasis& V, unsigned n) {
    std::uint64_t hi[64];
    for (unsigned i = 0; i < V.dim(); ++i) hi[i] = V.basis()[i] >> n;
    return rank_of(std::span<const std::uint64_t>(hi, V.dim()));
}

using ThicknessSpectrum = std::map<unsigned, std::uint64_t>;

inline ThicknessSpectrum thickness_spectrum(const std::vector<VectorSpaceBasis>& spaces, unsigned n) {
    ThicknessSpectrum s;
    for (const auto& V : spaces) ++s[thickness(V, n)];
    return s;
}

inline ThicknessSpectrum thickness_spectrum(const VBF& F, unsigned jobs = 0) {
    return thickness_spectrum(extract_spaces(walsh_zeroes(F, jobs), std::nullopt, jobs), F.n());
}

inline std::string to_string(const ThicknessSpectrum& s) {
    std::string out = "{";
    for (auto [t, c] : s) {
        if (out.size() > 1) out += ", ";
        out += std::to_string(t) + ": " + std::to_string(c);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Block partitions and permutation-concatenations

class BlockPartition {
public:
    /// Validates that the blocks are pairwise orthogonal and span F_2^n
    /// with dimensions summing to n.
    static BlockPartition make(unsigned n, std::vector<VectorSpaceBasis> blocks) {
        unsigned total = 0;
        std::vector<std::uint64_t> all;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            for (auto v : blocks[i].basis())
                if (v >> n) throw InputError("block " + std::to_string(i) + " has vectors outside F_2^n");
            total += blocks[i].dim();
            all.insert(all.end(), blocks[i].basis().begin(), blocks[i].basis().end());
            for (std::size_t j = 0; j < i; ++j)
                for (auto a : blocks[i].basis())
                    for (auto b : blocks[j].basis())
                        if (parity(a & b))
                            throw DomainError("blocks " + std::to_string(j) + " and " + std::to_string(i) +
                                              " are not orthogonal");
        }
        if (rank_of(all) != n || total != n)
            throw DomainError("blocks do not form a direct sum spanning F_2^" + std::to_string(n) +
                              " (rank " + std::to_string(rank_of(all)) + ", dimension sum " +
                              std::to_string(total) + ")");
        BlockPartition p;
        p.n_ = n;
        p.blocks_ = std::move(blocks);
        p.change_ = BinaryMatrix::from_columns(n, all).inverse();
        return p;
    }

    /// The classical two-block split F_2^t x F_2^(n-t).
    static BlockPartition split(unsigned n, unsigned t) {
        std::vector<std::uint64_t> lo, hi;
        for (unsigned i = 0; i < n; ++i) (i < t ? lo : hi).push_back(std::uint64_t{1} << i);
        return make(n, {VectorSpaceBasis::span_of(lo), VectorSpaceBasis::span_of(hi)});
    }

    /// Coordinate blocks of width m (e.g. the three GF(2^m) factors).
    static BlockPartition coordinate_blocks(unsigned n, unsigned m) {
        if (m == 0 || n % m) throw InputError("block width must divide n");
        std::vector<VectorSpaceBasis> blocks;
        for (unsigned s = 0; s < n; s += m) {
            std::vector<std::uint64_t> g;
            for (unsigned i = 0; i < m; ++i) g.push_back(std::uint64_t{1} << (s + i));
            blocks.push_back(VectorSpaceBasis::span_of(g));
        }
        return make(n, std::move(blocks));
    }

    [[nodiscard]] unsigned n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return blocks_.size(); }
    [[nodiscard]] const VectorSpaceBasis& block(std::size_t i) const { return blocks_.at(i); }

    /// mu: x -> coordinates of x in the concatenated block bases.
    [[nodiscard]] std::uint64_t coordinates(std::uint64_t x) const { return change_.apply(x); }

    /// rho_i(x): the B_i-component of x in the direct sum.
    [[nodiscard]] std::uint64_t project(std::size_t i, std::uint64_t x) const {
        const std::uint64_t c = coordinates(x);
        unsigned offset = 0;
        for (std::size_t j = 0; j < i; ++j) offset += blocks_[j].dim();
        std::uint64_t out = 0;
        for (unsigned k = 0; k < blocks_.at(i).dim(); ++k)
            if ((c >> (offset + k)) & 1) out ^= blocks_[i].basis()[k];
        return out;
    }

    /// B_i's complement in the partition, which equals B_i^perp.
    [[nodiscard]] VectorSpaceBasis complement(std::size_t i) const {
        std::vector<std::uint64_t> g;
        for (std::size_t j = 0; j < blocks_.size(); ++j)
            if (j != i) g.insert(g.end(), blocks_[j].basis().begin(), blocks_[j].basis().end());
        return VectorSpaceBasis::span_of(g);
    }

private:
    unsigned n_ = 0;
    std::vector<VectorSpaceBasis> blocks_;
    BinaryMatrix change_;
};

enum class ConcatMethod { direct, walsh };

/// Is rho_i o F a permutation-concatenation of block i?
///   direct: x -> rho_i(F(y + x)) is a bijection of B_i for every coset y
///   walsh:  B_i^perp x B_i lies in the Walsh zeroes
inline bool perm_concat_test(const VBF& F, const BlockPartition& P, std::size_t i, ConcatMethod method) {
    if (P.n() != F.n()) throw InputError("partition dimension does not match the function");
    const auto& B = P.block(i);
    const auto comp = P.complement(i);
    if (method == ConcatMethod::direct) {
        const auto xs = B.elements();
        std::vector<std::uint64_t> seen;
        for (auto y : comp.elements()) {
            seen.clear();
            for (auto x : xs) seen.push_back(P.project(i, F(y ^ x)));
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
        }
        return true;
    }
    const auto as = comp.elements();
    for (auto b : B.elements()) {
        if (b == 0) continue;  // (a, 0) is always a zero
        const auto w = walsh_component(F, b);
        for (auto a : as)
            if (w[a] != 0) return false;
    }
    return true;
}

/// Variant for a single subspace B; the projection is the one with kernel
/// B^perp, which requires B and B^perp to be complementary.
inline bool perm_concat_test(const VBF& F, const VectorSpaceBasis& B, ConcatMethod method) {
    const auto perp = B.orthogonal(F.n());
    std::vector<std::uint64_t> all = B.basis();
    all.insert(all.end(), perp.basis().begin(), perp.basis().end());
    if (rank_of(all) != F.n()) {
        if (method == ConcatMethod::direct)
            throw DomainError("B meets its orthogonal nontrivially, so no block partition contains it");
        // the Walsh criterion itself is still well defined
        for (auto b : B.elements()) {
            if (b == 0) continue;
            const auto w = walsh_component(F, b);
            for (auto a : perp.elements())
                if (w[a] != 0) return false;
        }
        return true;
    }
    return perm_concat_test(F, BlockPartition::make(F.n(), {B, perp}), 0, method);
}

}  // namespace apnlab

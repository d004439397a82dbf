/**************************************************************************
 * linalg.hpp
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

// Linear algebra over F_2 for vectors of at most 64 bits.

#include <random>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace apnlab {

/// Rank of a family of vectors.
[[nodiscard]] inline unsigned rank_of(std::span<const std::uint64_t> vectors) {
    std::uint64_t basis[64] = {};
    unsigned r = 0;
    for (std::uint64_t v : vectors) {
        for (int b = msb_index(v); v && b >= 0; b = msb_index(v)) {
            if (!basis[b]) {
                basis[b] = v;
                ++r;
                break;
            }
            v ^= basis[b];
        }
    }
    return r;
}

/// Row-major matrix over F_2; row i is a bit mask whose bit j is entry (i, j).
/// A matrix acts on column vectors packed as integers (bit j = coordinate j).
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), data_(rows, 0) {
        if (cols > 64) throw CapacityError("BinaryMatrix supports at most 64 columns");
    }

    static BinaryMatrix identity(unsigned n) {
        BinaryMatrix I(n, n);
        for (unsigned i = 0; i < n; ++i) I.data_[i] = 1ull << i;
        return I;
    }

    static BinaryMatrix from_rows(unsigned cols, std::vector<std::uint64_t> rows) {
        BinaryMatrix M(static_cast<unsigned>(rows.size()), cols);
        for (auto& r : rows)
            if (r & ~low_mask(cols)) throw InputError("matrix row exceeds column count");
        M.data_ = std::move(rows);
        return M;
    }

    /// Matrix whose j-th column is images[j].
    static BinaryMatrix from_columns(unsigned rows, std::span<const std::uint64_t> images) {
        BinaryMatrix M(rows, static_cast<unsigned>(images.size()));
        for (unsigned j = 0; j < images.size(); ++j)
            for (unsigned i = 0; i < rows; ++i)
                if ((images[j] >> i) & 1) M.data_[i] |= 1ull << j;
        return M;
    }

    template <class Rng>
    static BinaryMatrix random_invertible(unsigned n, Rng& rng) {
        std::uniform_int_distribution<std::uint64_t> dist(0, low_mask(n));
        for (;;) {
            BinaryMatrix M(n, n);
            for (auto& r : M.data_) r = dist(rng);
            if (M.rank() == n) return M;
        }
    }

    template <class Rng>
    static BinaryMatrix random(unsigned rows, unsigned cols, Rng& rng) {
        std::uniform_int_distribution<std::uint64_t> dist(0, low_mask(cols));
        BinaryMatrix M(rows, cols);
        for (auto& r : M.data_) r = dist(rng);
        return M;
    }

    [[nodiscard]] unsigned rows() const noexcept { return rows_; }
    [[nodiscard]] unsigned cols() const noexcept { return cols_; }
    [[nodiscard]] const std::vector<std::uint64_t>& row_bits() const noexcept { return data_; }
    [[nodiscard]] std::uint64_t row(unsigned i) const { return data_.at(i); }

    [[nodiscard]] bool get(unsigned i, unsigned j) const { return (data_.at(i) >> j) & 1; }
    void set(unsigned i, unsigned j, bool v) {
        if (v) data_.at(i) |= 1ull << j;
        else data_.at(i) &= ~(1ull << j);
    }

    [[nodiscard]] std::uint64_t apply(std::uint64_t x) const noexcept {
        std::uint64_t y = 0;
        for (unsigned i = 0; i < rows_; ++i) y |= static_cast<std::uint64_t>(parity(data_[i] & x)) << i;
        return y;
    }

    [[nodiscard]] BinaryMatrix transpose() const {
        BinaryMatrix T(cols_, rows_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned j = 0; j < cols_; ++j)
                if ((data_[i] >> j) & 1) T.data_[j] |= 1ull << i;
        return T;
    }

    friend BinaryMatrix operator*(const BinaryMatrix& A, const BinaryMatrix& B) {
        if (A.cols_ != B.rows_) throw InputError("matrix dimension mismatch");
        BinaryMatrix C(A.rows_, B.cols_);
        for (unsigned i = 0; i < A.rows_; ++i) {
            std::uint64_t acc = 0;
            for (unsigned k = 0; k < A.cols_; ++k)
                if ((A.data_[i] >> k) & 1) acc ^= B.data_[k];
            C.data_[i] = acc;
        }
        return C;
    }

    [[nodiscard]] unsigned rank() const { return rank_of(data_); }

    [[nodiscard]] bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    [[nodiscard]] BinaryMatrix inverse() const {
        if (rows_ != cols_) throw DomainError("inverse of a non-square matrix");
        const unsigned n = rows_;
        std::vector<std::uint64_t> a = data_;
        std::vector<std::uint64_t> b = identity(n).data_;
        for (unsigned c = 0; c < n; ++c) {
            unsigned p = c;
            while (p < n && !((a[p] >> c) & 1)) ++p;
            if (p == n) throw DomainError("matrix is singular (rank " + std::to_string(rank()) + ")");
            std::swap(a[p], a[c]);
            std::swap(b[p], b[c]);
            for (unsigned r = 0; r < n; ++r)
                if (r != c && ((a[r] >> c) & 1)) {
                    a[r] ^= a[c];
                    b[r] ^= b[c];
                }
        }
        return from_rows(n, std::move(b));
    }

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    unsigned rows_ = 0;
    unsigned cols_ = 0;
    std::vector<std::uint64_t> data_;
};

/// An affine map x -> M x + c.
struct AffineMap {
    BinaryMatrix linear;
    std::uint64_t constant = 0;

    [[nodiscard]] std::uint64_t operator()(std::uint64_t x) const noexcept { return linear.apply(x) ^ constant; }
};

/// Subspace of F_2^w stored as a reduced row-echelon basis: each vector's
/// most significant bit is its pivot, pivots strictly increase along the
/// basis, and every pivot column is zero in all other basis vectors.
class VectorSpaceBasis {
public:
    VectorSpaceBasis() = default;

    /// Canonical basis of the span of arbitrary generators.
    static VectorSpaceBasis span_of(std::span<const std::uint64_t> generators) {
        std::uint64_t by_pivot[64] = {};
        for (std::uint64_t v : generators) {
            for (int b = msb_index(v); v && b >= 0; b = msb_index(v)) {
                if (!by_pivot[b]) {
                    by_pivot[b] = v;
                    break;
                }
                v ^= by_pivot[b];
            }
        }
        // back-substitute so that pivot columns are cleared everywhere else
        for (int p = 0; p < 64; ++p) {
            if (!by_pivot[p]) continue;
            for (int q = p + 1; q < 64; ++q)
                if (by_pivot[q] && ((by_pivot[q] >> p) & 1)) by_pivot[q] ^= by_pivot[p];
        }
        VectorSpaceBasis out;
        for (int p = 0; p < 64; ++p)
            if (by_pivot[p]) out.basis_.push_back(by_pivot[p]);
        return out;
    }

    /// Wraps vectors that are already in canonical form (checked).
    static VectorSpaceBasis from_canonical(std::vector<std::uint64_t> basis) {
        VectorSpaceBasis out = span_of(basis);
        if (out.basis_ != basis) throw InputError("basis is not in reduced row-echelon form");
        return out;
    }

    [[nodiscard]] unsigned dim() const noexcept { return static_cast<unsigned>(basis_.size()); }
    [[nodiscard]] const std::vector<std::uint64_t>& basis() const noexcept { return basis_; }

    [[nodiscard]] std::uint64_t pivot_mask() const noexcept {
        std::uint64_t m = 0;
        for (auto v : basis_) m |= 1ull << msb_index(v);
        return m;
    }

    [[nodiscard]] std::uint64_t reduce(std::uint64_t v) const noexcept {
        for (auto it = basis_.rbegin(); it != basis_.rend(); ++it)
            if ((v >> msb_index(*it)) & 1) v ^= *it;
        return v;
    }

    [[nodiscard]] bool contains(std::uint64_t v) const noexcept { return reduce(v) == 0; }

    /// All 2^dim elements, in Gray-code order starting from 0.
    [[nodiscard]] std::vector<std::uint64_t> elements() const {
        std::vector<std::uint64_t> out;
        out.reserve(std::size_t{1} << dim());
        std::uint64_t v = 0;
        out.push_back(0);
        for (std::uint64_t i = 1; i < (std::uint64_t{1} << dim()); ++i) {
            v ^= basis_[std::countr_zero(i)];
            out.push_back(v);
        }
        return out;
    }

    /// Orthogonal complement inside F_2^width under the dot product.
    [[nodiscard]] VectorSpaceBasis orthogonal(unsigned width) const {
        std::vector<std::uint64_t> gens;
        const std::uint64_t piv = pivot_mask();
        // For each free coordinate f, the vector e_f + sum of e_p over pivots p
        // whose basis vector has bit f set is orthogonal to the space.
        for (unsigned f = 0; f < width; ++f) {
            if ((piv >> f) & 1) continue;
            std::uint64_t w = 1ull << f;
            for (auto v : basis_)
                if ((v >> f) & 1) w |= 1ull << msb_index(v);
            gens.push_back(w);
        }
        return span_of(gens);
    }

    friend bool operator==(const VectorSpaceBasis&, const VectorSpaceBasis&) = default;
    friend auto operator<=>(const VectorSpaceBasis&, const VectorSpaceBasis&) = default;

private:
    std::vector<std::uint64_t> basis_;
};

}  // namespace apnlab

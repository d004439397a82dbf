// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include <apnlab/linalg.hpp>

using namespace apnlab;

namespace {

// all elements of the span, by brute force over coefficient vectors
std::set<std::uint64_t> span_set(const std::vector<std::uint64_t>& g) {
    std::set<std::uint64_t> s;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << g.size()); ++c) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if ((c >> i) & 1) v ^= g[i];
        s.insert(v);
    }
    return s;
}

}  // namespace

TEST(Rank, MatchesSpanSize) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint64_t> g(1 + rng() % 7);
        for (auto& v : g) v = rng() & 0x3ff;
        const auto s = span_set(g);
        EXPECT_EQ(std::size_t{1} << rank_of(g), s.size());
    }
}

TEST(BinaryMatrix, InverseAndProduct) {
    std::mt19937_64 rng(5);
    for (unsigned n : {1u, 5u, 18u, 40u}) {
        const auto M = BinaryMatrix::random_invertible(n, rng);
        const auto I = BinaryMatrix::identity(n);
        EXPECT_EQ(M * M.inverse(), I);
        EXPECT_EQ(M.inverse() * M, I);
        EXPECT_EQ(M.transpose().transpose(), M);
        for (int k = 0; k < 50; ++k) {
            const std::uint64_t x = rng() & low_mask(n);
            EXPECT_EQ(M.inverse().apply(M.apply(x)), x);
        }
    }
    auto S = BinaryMatrix::from_rows(3, {0b011, 0b110, 0b101});
    EXPECT_FALSE(S.invertible());
    EXPECT_THROW((void)S.inverse(), DomainError);
}

TEST(BinaryMatrix, FromColumns) {
    const std::vector<std::uint64_t> cols = {0b01, 0b11, 0b10};
    const auto M = BinaryMatrix::from_columns(2, cols);
    for (unsigned j = 0; j < 3; ++j) EXPECT_EQ(M.apply(std::uint64_t{1} << j), cols[j]);
}

TEST(VectorSpaceBasis, CanonicalFormIsUnique) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::uint64_t> g(1 + rng() % 6);
        for (auto& v : g) v = rng() & 0xfff;
        const auto V = VectorSpaceBasis::span_of(g);
        // same space from a shuffled, recombined generating set
        std::vector<std::uint64_t> h = g;
        std::shuffle(h.begin(), h.end(), rng);
        for (std::size_t i = 1; i < h.size(); ++i) h[i] ^= h[i - 1];
        EXPECT_EQ(VectorSpaceBasis::span_of(h), V);
        const auto elems = V.elements();
        EXPECT_EQ(std::set<std::uint64_t>(elems.begin(), elems.end()), span_set(g));
        for (auto v : span_set(g)) EXPECT_TRUE(V.contains(v));
        // echelon shape
        std::uint64_t piv = 0;
        int last = -1;
        for (auto v : V.basis()) {
            EXPECT_GT(msb_index(v), last);
            last = msb_index(v);
            piv |= std::uint64_t{1} << last;
        }
        for (auto v : V.basis()) EXPECT_EQ(std::popcount(v & piv), 1);
        EXPECT_EQ(VectorSpaceBasis::from_canonical(V.basis()), V);
    }
    EXPECT_THROW((void)VectorSpaceBasis::from_canonical({0b11, 0b10}), InputError);
}

TEST(VectorSpaceBasis, OrthogonalComplement) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const unsigned w = 8;
        std::vector<std::uint64_t> g(rng() % 6);
        for (auto& v : g) v = rng() & low_mask(w);
        const auto V = VectorSpaceBasis::span_of(g);
        const auto P = V.orthogonal(w);
        EXPECT_EQ(V.dim() + P.dim(), w);
        std::set<std::uint64_t> brute;
        for (std::uint64_t x = 0; x < (1u << w); ++x) {
            bool ok = true;
            for (auto v : V.basis()) ok = ok && parity(x & v) == 0;
            if (ok) brute.insert(x);
        }
        const auto e = P.elements();
        EXPECT_EQ(std::set<std::uint64_t>(e.begin(), e.end()), brute);
    }
}

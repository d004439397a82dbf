// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include <apnlab/trivariate.hpp>
#include <apnlab/walsh_geometry.hpp>

using namespace apnlab;

namespace {

VBF random_vbf(unsigned n, std::mt19937_64& rng) {
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    for (auto& v : t) v = static_cast<std::uint32_t>(rng() & low_mask(n));
    return VBF::from_table(n, std::move(t));
}

VBF random_permutation(unsigned n, std::mt19937_64& rng) {
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint32_t>(i);
    std::shuffle(t.begin(), t.end(), rng);
    return VBF::from_table(n, std::move(t));
}

// Subspaces of a point set, grown one generator at a time. Spaces are kept
// as sorted element lists, so no echelon logic is shared with the library.
std::set<std::vector<std::uint64_t>> ref_spaces(const std::set<std::uint64_t>& Z, unsigned dim) {
    std::set<std::vector<std::uint64_t>> level{{0}};
    for (unsigned d = 0; d < dim; ++d) {
        std::set<std::vector<std::uint64_t>> next;
        for (const auto& S : level)
            for (auto v : Z) {
                if (std::binary_search(S.begin(), S.end(), v)) continue;
                std::vector<std::uint64_t> T = S;
                bool ok = true;
                for (auto s : S) {
                    if (!Z.count(s ^ v)) {
                        ok = false;
                        break;
                    }
                    T.push_back(s ^ v);
                }
                if (!ok) continue;
                std::sort(T.begin(), T.end());
                next.insert(std::move(T));
            }
        level = std::move(next);
    }
    return level;
}

std::set<std::uint64_t> ref_zeroes(const VBF& F) {
    std::set<std::uint64_t> Z{0};
    const unsigned n = F.n();
    for (std::uint64_t b = 0; b < F.size(); ++b)
        for (std::uint64_t a = 0; a < F.size(); ++a) {
            std::int64_t s = 0;
            for (std::uint64_t x = 0; x < F.size(); ++x) s += parity((a & x) ^ (b & F(x))) ? -1 : 1;
            if (s == 0) Z.insert(a | (b << n));
        }
    return Z;
}

std::vector<std::uint64_t> sorted_elements(const VectorSpaceBasis& V) {
    auto e = V.elements();
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

TEST(WalshZeroes, MatchDefinition) {
    std::mt19937_64 rng(1);
    for (unsigned n = 1; n <= 5; ++n)
        for (int t = 0; t < 3; ++t) {
            const auto F = random_vbf(n, rng);
            const auto Z = walsh_zeroes(F);
            const auto ref = ref_zeroes(F);
            const auto mem = Z.members();
            EXPECT_EQ(std::set<std::uint64_t>(mem.begin(), mem.end()), ref);
            for (std::uint64_t a = 0; a < F.size(); ++a) EXPECT_TRUE(Z.contains(a));
        }
    EXPECT_THROW((void)ZeroSet(15), CapacityError);
}

TEST(SpaceExtraction, MatchesBreadthFirstReference) {
    std::mt19937_64 rng(2);
    for (unsigned n = 2; n <= 4; ++n)
        for (int t = 0; t < 4; ++t) {
            const auto F = t % 2 ? random_permutation(n, rng) : random_vbf(n, rng);
            const auto Z = walsh_zeroes(F);
            const auto mem = Z.members();
            const std::set<std::uint64_t> zs(mem.begin(), mem.end());
            for (unsigned dim = 1; dim <= n; ++dim) {
                const auto got = extract_spaces(Z, dim);
                std::set<std::vector<std::uint64_t>> as_sets;
                for (const auto& V : got) {
                    EXPECT_EQ(V.dim(), dim);
                    as_sets.insert(sorted_elements(V));
                }
                EXPECT_EQ(as_sets.size(), got.size()) << "duplicate space";
                EXPECT_EQ(as_sets, ref_spaces(zs, dim)) << "n=" << n << " dim=" << dim;
                EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
            }
        }
}

TEST(SpaceExtraction, ApnCubeAtFive) {
    const auto F = build_gold(FieldSpec::make(5), 1);
    const auto Z = walsh_zeroes(F);
    const auto mem = Z.members();
    const auto ref = ref_spaces(std::set<std::uint64_t>(mem.begin(), mem.end()), 5);
    const auto got = extract_spaces(Z);
    std::set<std::vector<std::uint64_t>> as_sets;
    for (const auto& V : got) as_sets.insert(sorted_elements(V));
    EXPECT_EQ(as_sets, ref);
}

TEST(SpaceExtraction, IndependentOfThreadCount) {
    const auto F = build_cu(spec_from_minpoly(FieldSpec::make(2), 0b111));
    const auto Z = walsh_zeroes(F);
    const auto a = extract_spaces(Z, std::nullopt, 1);
    const auto b = extract_spaces(Z, std::nullopt, 3);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.empty());
}

TEST(Thickness, MatchesProjectionSize) {
    std::mt19937_64 rng(3);
    const auto F = random_permutation(4, rng);
    const auto spaces = extract_spaces(walsh_zeroes(F));
    ThicknessSpectrum ref;
    for (const auto& V : spaces) {
        std::set<std::uint64_t> proj;
        for (auto v : V.elements()) proj.insert(v >> 4);
        unsigned t = 0;
        while ((std::size_t{1} << t) < proj.size()) ++t;
        ASSERT_EQ(std::size_t{1} << t, proj.size());
        EXPECT_EQ(thickness(V, 4), t);
        ++ref[t];
    }
    EXPECT_EQ(thickness_spectrum(F), ref);
    // F_2^n x {0} is always present and has thickness 0; for a
    // permutation every component is balanced, so {0} x F_2^n has thickness n
    EXPECT_EQ(ref.at(0), 1u);
    EXPECT_GE(ref.at(4), 1u);
}

TEST(BlockPartition, Validation) {
    const auto split = BlockPartition::split(6, 2);
    EXPECT_EQ(split.size(), 2u);
    for (std::uint64_t x = 0; x < 64; ++x) {
        EXPECT_EQ(split.project(0, x) ^ split.project(1, x), x);
        EXPECT_EQ(split.project(0, x), x & 3);
    }
    const auto b1 = VectorSpaceBasis::span_of(std::vector<std::uint64_t>{0b011});
    const auto b2 = VectorSpaceBasis::span_of(std::vector<std::uint64_t>{0b001, 0b100});
    try {
        (void)BlockPartition::make(3, {b1, b2});
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("blocks 0 and 1"), std::string::npos);
    }
    const auto c1 = VectorSpaceBasis::span_of(std::vector<std::uint64_t>{0b001});
    const auto c2 = VectorSpaceBasis::span_of(std::vector<std::uint64_t>{0b010});
    EXPECT_THROW((void)BlockPartition::make(3, {c1, c2}), DomainError);
    // non-coordinate orthogonal blocks: <111> and its orthogonal
    const auto d1 = VectorSpaceBasis::span_of(std::vector<std::uint64_t>{0b111});
    const auto P = BlockPartition::make(3, {d1, d1.orthogonal(3)});
    for (std::uint64_t x = 0; x < 8; ++x) {
        EXPECT_TRUE(d1.contains(P.project(0, x)));
        EXPECT_EQ(P.project(0, x) ^ P.project(1, x), x);
    }
}

TEST(PermConcat, DirectAgreesWithWalshCriterion) {
    std::mt19937_64 rng(4);
    unsigned positives = 0;
    for (unsigned n = 2; n <= 6; ++n)
        for (int t = 0; t < 30; ++t) {
            VBF F = random_permutation(n, rng);
            if (t % 3 == 0) {
                // triangular shape makes the first block a concatenation
                std::vector<std::uint32_t> tab(F.size());
                const unsigned k = 1 + t % (n - 1);
                const auto perm = random_permutation(k, rng);
                for (std::uint64_t x = 0; x < F.size(); ++x)
                    tab[x] = static_cast<std::uint32_t>(perm(x & low_mask(k)) | (rng() & ~low_mask(k) & low_mask(n)));
                F = VBF::from_table(n, std::move(tab));
            }
            const unsigned k = 1 + t % (n - 1);
            const auto P = BlockPartition::split(n, k);
            for (std::size_t i = 0; i < 2; ++i) {
                const bool d = perm_concat_test(F, P, i, ConcatMethod::direct);
                EXPECT_EQ(d, perm_concat_test(F, P, i, ConcatMethod::walsh));
                positives += d;
            }
        }
    EXPECT_GT(positives, 10u);
}

TEST(PermConcat, TrivariateBlocks) {
    for (std::uint64_t mp : {0b1011u, 0b1101u}) {
        const auto s = spec_from_minpoly(FieldSpec::make(3), mp);
        const auto C = build_cu(s);
        const auto P = BlockPartition::coordinate_blocks(9, 3);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_EQ(perm_concat_test(C, P, i, ConcatMethod::direct), perm_concat_test(C, P, i, ConcatMethod::walsh));
    }
}

TEST(PermConcat, EdgeCases) {
    const auto K = VBF::from_table(3, std::vector<std::uint32_t>(8, 5));
    const auto P = BlockPartition::split(3, 1);
    EXPECT_FALSE(perm_concat_test(K, P, 0, ConcatMethod::direct));
    EXPECT_FALSE(perm_concat_test(K, P, 0, ConcatMethod::walsh));
    EXPECT_TRUE(perm_concat_test(VBF::identity(3), P, 0, ConcatMethod::direct));
    // B = <11> meets its orthogonal in F_2^2
    const auto B = VectorSpaceBasis::span_of(std::vector<std::uint64_t>{0b11});
    EXPECT_THROW((void)perm_concat_test(VBF::identity(2), B, ConcatMethod::direct), DomainError);
    EXPECT_NO_THROW((void)perm_concat_test(VBF::identity(2), B, ConcatMethod::walsh));
}

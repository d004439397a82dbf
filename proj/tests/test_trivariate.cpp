// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include <apnlab/trivariate.hpp>

using namespace apnlab;

namespace {

TrivariateSpec spec(unsigned m, std::uint64_t minpoly) {
    return spec_from_minpoly(FieldSpec::make(m), minpoly);
}

// #{v : C(v) + C(v + d) = C(d)}, counted point by point
std::uint64_t ref_solutions(const TrivariateSpec& s, const VBF& C, const DirectionTriple& d) {
    const std::uint64_t dv = s.pack(d);
    std::uint64_t c = 0;
    for (std::size_t v = 0; v < C.size(); ++v) c += (C(v) ^ C(v ^ dv)) == C(dv);
    return c;
}

}  // namespace

TEST(Trivariate, EvaluationMatchesFormula) {
    const auto s = spec(3, 0b1011);
    const auto& F = s.field;
    const auto C = build_cu(s);
    for (std::size_t v = 0; v < C.size(); ++v) {
        const Elem x = v & 7, y = (v >> 3) & 7, z = v >> 6;
        const Elem a = F.pow(x, 3) ^ F.mul(s.u, F.mul(F.pow(y, 2), z));
        const Elem b = F.pow(y, 3) ^ F.mul(s.u, F.mul(x, F.pow(z, 2)));
        const Elem c = F.pow(z, 3) ^ F.mul(s.u, F.mul(F.pow(x, 2), y));
        ASSERT_EQ(C(v), a | (b << 3) | (c << 6));
    }
}

TEST(Trivariate, SmallestRootSelection) {
    const auto F9 = FieldSpec::make(9);
    const auto s = spec_from_minpoly(F9, 0b1011);
    EXPECT_EQ(s.u, F9.find_roots_f2(0b1011).front());
    EXPECT_THROW((void)spec_from_minpoly(FieldSpec::make(3), 0b111), InputError);
}

TEST(Trivariate, ApnAndInverseForBothCubicRoots) {
    for (std::uint64_t mp : {0b1011u, 0b1101u}) {
        const auto s = spec(3, mp);
        const auto C = build_cu(s);
        EXPECT_EQ(differential_uniformity(C), 2u);
        EXPECT_TRUE(is_permutation(C));
        EXPECT_EQ(linearity(C), 32);
        const auto inv = build_cu_inverse_closed_form(s);
        EXPECT_EQ(inv, inverse(C));
        const auto ds = degree_spectrum(inv);
        EXPECT_EQ(ds.counts, (std::map<int, std::uint64_t>{{5, 511}}));
    }
    EXPECT_THROW((void)build_cu_inverse_closed_form({FieldSpec::make(3), 1}), DomainError);
    EXPECT_THROW((void)build_cu_inverse_closed_form(spec(6, 0b1011)), DomainError);
}

TEST(Trivariate, DegenerateParameters) {
    const auto F = FieldSpec::make(3);
    EXPECT_EQ(differential_uniformity(build_cu({F, 0})), 128u);
    EXPECT_EQ(differential_uniformity(build_cu({F, 1})), 32u);
    EXPECT_EQ(max_diff_uniformity_cu({F, 0}).max_count, 128u);
    EXPECT_EQ(max_diff_uniformity_cu({F, 1}).max_count, 32u);
}

TEST(Trivariate, Symmetries) {
    for (unsigned m : {3u, 4u, 6u}) {
        const auto F = FieldSpec::make(m);
        const auto rep = check_symmetries({F, F.size() - 1});
        EXPECT_TRUE(rep.ok()) << m;
        EXPECT_EQ(rep.exhaustive, m <= 4);
    }
}

TEST(Trivariate, KernelCountsMatchPointCounts) {
    // exhaustive over all directions for m = 3 and every u
    const auto F3 = FieldSpec::make(3);
    for (Elem u = 0; u < 8; ++u) {
        const TrivariateSpec s{F3, u};
        const auto C = build_cu(s);
        for (std::uint64_t v = 1; v < 512; ++v) {
            const auto [a, b, c] = s.unpack(v);
            ASSERT_EQ(diff_solution_count(s, {a, b, c}), ref_solutions(s, C, {a, b, c}));
        }
    }
    // sampled at m = 6
    const auto s6 = spec(6, 0b1000011);
    const auto C6 = build_cu(s6);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 40; ++k) {
        const auto v = 1 + rng() % ((1u << 18) - 1);
        const auto [a, b, c] = s6.unpack(v);
        EXPECT_EQ(diff_solution_count(s6, {a, b, c}), ref_solutions(s6, C6, {a, b, c}));
    }
    EXPECT_THROW((void)diff_solution_count(s6, {}), DomainError);
}

TEST(Trivariate, TraceFormMask) {
    const auto s = spec(6, 0b1000011);
    const auto& F = s.field;
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const DirectionTriple c{Elem(rng() & 63), Elem(rng() & 63), Elem(rng() & 63)};
        const auto mask = trace_form_mask(s, c);
        for (int j = 0; j < 50; ++j) {
            const auto v = rng() & low_mask(18);
            const auto [x, y, z] = s.unpack(v);
            const unsigned expect = F.trace(F.mul(c.alpha, x)) ^ F.trace(F.mul(c.beta, y)) ^ F.trace(F.mul(c.gamma, z));
            ASSERT_EQ(parity(mask & v), expect);
        }
    }
}

TEST(Trivariate, LinearStructureCountsMatchComponents) {
    for (std::uint64_t mp : {0b1011u, 0b1101u}) {
        const auto s = spec(3, mp);
        const auto C = build_cu(s);
        for (std::uint64_t v = 1; v < 512; ++v) {
            const auto [a, b, c] = s.unpack(v);
            ASSERT_EQ(ls_solution_count(s, {a, b, c}), quadratic_ls_dimension(C, trace_form_mask(s, {a, b, c})));
        }
    }
    const auto s6 = spec(6, 0b1000011);
    const auto C6 = build_cu(s6);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 30; ++k) {
        const auto v = 1 + rng() % ((1u << 18) - 1);
        const auto [a, b, c] = s6.unpack(v);
        EXPECT_EQ(ls_solution_count(s6, {a, b, c}), quadratic_ls_dimension(C6, trace_form_mask(s6, {a, b, c})));
    }
}

TEST(Trivariate, DirectionRepresentativesCoverEachOrbitOnce) {
    for (unsigned m : {2u, 3u, 4u}) {
        const auto F = FieldSpec::make(m);
        const TrivariateSpec s{F, 1};
        const auto reps = direction_representatives(s);
        std::set<std::uint64_t> rep_set;
        for (const auto& d : reps) rep_set.insert(s.pack(d));
        // orbit of every nonzero direction under rotations and scalings
        const std::uint64_t N = std::uint64_t{1} << (3 * m);
        for (std::uint64_t v = 1; v < N; ++v) {
            auto [a, b, c] = s.unpack(v);
            unsigned hits = 0;
            std::set<std::uint64_t> orbit;
            for (int r = 0; r < 3; ++r) {
                for (Elem l = 1; l < F.size(); ++l) orbit.insert(s.pack(F.mul(l, a), F.mul(l, b), F.mul(l, c)));
                std::tie(a, b, c) = std::make_tuple(b, c, a);
            }
            for (auto o : orbit) hits += rep_set.count(o);
            ASSERT_EQ(hits, 1u) << "m=" << m << " v=" << v;
        }
    }
}

TEST(Trivariate, ReducedSweepAgreesWithFullSweep) {
    for (unsigned m : {3u, 4u}) {
        const auto F = FieldSpec::make(m);
        for (Elem u = 0; u < F.size(); ++u) {
            const TrivariateSpec s{F, u};
            EXPECT_EQ(max_diff_uniformity_cu(s, DirectionReduction::symmetry).max_count,
                      max_diff_uniformity_cu(s, DirectionReduction::none).max_count);
        }
    }
}

TEST(Trivariate, NonBijectivityWitness) {
    const auto s = spec(6, 0b1000011);
    const auto w = search_nonbijectivity_witness(s);
    ASSERT_TRUE(w.found);
    const auto d = s.pack(w.direction);
    EXPECT_NE(d, 0u);
    EXPECT_EQ(s.eval_packed(w.point), s.eval_packed(w.point ^ d));
    // permutations admit no witness
    EXPECT_FALSE(search_nonbijectivity_witness(spec(3, 0b1011)).found);
}

TEST(Trivariate, GoldAndBudaghyan) {
    const auto F9 = FieldSpec::make(9);
    const auto G = build_gold(F9, 1);
    EXPECT_TRUE(is_permutation(G));
    EXPECT_EQ(quadratic_diff_uniformity(G), 2u);
    EXPECT_EQ(quadratic_linearity(G), 32);
    const auto L = budaghyan_modifier(F9, 1);
    for (Elem x = 0; x < F9.size(); ++x) EXPECT_EQ(F9.frobenius(L(x), 3), L(x));
    EXPECT_THROW((void)budaghyan_modifier(FieldSpec::make(5), 1), DomainError);
}

TEST(Trivariate, PermutationPolynomialFamily) {
    // X^12+X^3+X and X^80+X^5+X both act as X^5+X^3+X on GF(8)
    EXPECT_TRUE(permpoly_check(3, 1, 2));
    EXPECT_TRUE(permpoly_check(3, 2, 4));
    EXPECT_TRUE(permpoly_check(3, 2, 1));
    // X^6+X^3+X takes the value 1 at four points of GF(8)
    EXPECT_FALSE(permpoly_check(3, 1, 1));
    for (unsigned n : {5u, 7u, 9u})
        for (unsigned i = 1; i < n; ++i)
            for (unsigned j = 1; j < n; ++j)
                if (std::gcd(i, n) == 1 && std::gcd(j, n) == 1) {
                    EXPECT_FALSE(permpoly_check(n, i, j)) << n << i << j;
                }
}

TEST(Trivariate, InversePlusLinearIsPermutationOnlyForCubicField) {
    for (std::uint64_t mp : {0b1011u, 0b1101u}) {
        const auto s = spec(3, mp);
        const auto T = build_tfl(build_cu(s), tfl_linear_map(s.field, 3));
        ASSERT_TRUE(is_permutation(T));
        const auto Ti = inverse(T);
        EXPECT_EQ(algebraic_degree(Ti), 4);
        EXPECT_EQ(differential_uniformity(Ti), 2u);
    }
    for (unsigned m : {5u, 7u}) {
        const auto F = FieldSpec::make(m);
        const auto P = build_triangular_gold(F, 2, 1, 1);
        ASSERT_TRUE(is_permutation(P));
        EXPECT_FALSE(is_permutation(build_tfl(P, tfl_linear_map(F, 2))));
    }
}

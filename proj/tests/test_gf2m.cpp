// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>

#include <apnlab/gf2m.hpp>

using namespace apnlab;

namespace {

// Reference arithmetic: schoolbook carry-less product, then long division.
std::uint64_t ref_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
    std::uint64_t prod = 0;
    for (int i = 0; i < 32; ++i)
        if ((b >> i) & 1) prod ^= a << i;
    const int d = 63 - __builtin_clzll(modulus);
    for (int i = 63; i >= d; --i)
        if ((prod >> i) & 1) prod ^= modulus << (i - d);
    return prod;
}

bool ref_irreducible(std::uint64_t p) {
    const int d = 63 - __builtin_clzll(p);
    for (std::uint64_t q = 2; q < (std::uint64_t{1} << (d / 2 + 1)); ++q) {
        if (63 - __builtin_clzll(q) > d / 2) break;
        std::uint64_t r = p;
        const int dq = 63 - __builtin_clzll(q);
        for (int i = d; i >= dq; --i)
            if ((r >> i) & 1) r ^= q << (i - dq);
        if (r == 0) return false;
    }
    return true;
}

}  // namespace

TEST(Poly2, IrreducibilityMatchesTrialDivision) {
    for (std::uint64_t p = 2; p < (1u << 11); ++p)
        EXPECT_EQ(poly2::smallest_factor_degree(p) == 0, ref_irreducible(p)) << poly2::to_string(p);
}

TEST(Poly2, BitStringParsing) {
    EXPECT_EQ(poly2::from_bitstring("1011"), 0b1011u);
    EXPECT_EQ(poly2::from_bitstring("1000011"), 0b1000011u);
    EXPECT_THROW((void)poly2::from_bitstring("10a1"), InputError);
    EXPECT_THROW((void)poly2::from_bitstring(""), InputError);
}

TEST(FieldSpec, DefaultModuliAreSmallestIrreducible) {
    EXPECT_EQ(FieldSpec::default_modulus(3), 0b1011u);
    EXPECT_EQ(FieldSpec::default_modulus(6), 0b1000011u);
    EXPECT_EQ(FieldSpec::default_modulus(9), 0b1000000011u);
    EXPECT_EQ(FieldSpec::default_modulus(12), 0b1000000001001u);
    for (unsigned m = 1; m <= 12; ++m) {
        const auto p = FieldSpec::default_modulus(m);
        EXPECT_TRUE(ref_irreducible(p));
        for (std::uint64_t q = (std::uint64_t{1} << m) | 1; q < p; q += 2) EXPECT_FALSE(ref_irreducible(q));
    }
}

TEST(FieldSpec, RejectsReducibleModulus) {
    try {
        (void)FieldSpec::make(3, 0b1111);
        FAIL() << "expected an error";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("reducible"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("degree 1"), std::string::npos);
    }
    EXPECT_THROW((void)FieldSpec::make(4, 0b10101), InputError);  // (X^2+X+1)^2
    EXPECT_THROW((void)FieldSpec::make(3, 0b10011), InputError);  // wrong degree
    EXPECT_THROW((void)FieldSpec::make(0), InputError);
    EXPECT_THROW((void)FieldSpec::make(25), InputError);
}

TEST(FieldSpec, MultiplicationMatchesReference) {
    for (unsigned m : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        const auto F = FieldSpec::make(m);
        for (Elem a = 0; a < F.size(); ++a)
            for (Elem b = 0; b < F.size(); ++b) ASSERT_EQ(F.mul(a, b), ref_mul(a, b, F.modulus()));
    }
    for (unsigned m : {9u, 12u, 17u, 24u}) {
        const auto F = FieldSpec::make(m);
        std::mt19937_64 rng(m);
        for (int k = 0; k < 20000; ++k) {
            const Elem a = static_cast<Elem>(rng() & (F.size() - 1));
            const Elem b = static_cast<Elem>(rng() & (F.size() - 1));
            ASSERT_EQ(F.mul(a, b), ref_mul(a, b, F.modulus()));
        }
    }
}

TEST(FieldSpec, FieldAxioms) {
    const auto F = FieldSpec::make(6);
    for (Elem a = 1; a < F.size(); ++a) {
        EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
        EXPECT_EQ(F.pow(a, F.order()), 1u);
        EXPECT_EQ(F.square(F.sqrt(a)), a);
        EXPECT_EQ(F.frobenius(a, 6), a);
        EXPECT_EQ(F.frobenius(a, 2), F.pow(a, 4));
    }
    EXPECT_THROW((void)F.inv(0), DomainError);
}

TEST(FieldSpec, TraceAndRelativeTrace) {
    const auto F = FieldSpec::make(9);
    unsigned ones = 0;
    for (Elem a = 0; a < F.size(); ++a) {
        Elem s = 0;
        for (unsigned i = 0; i < 9; ++i) s ^= F.frobenius(a, i);
        ASSERT_LE(s, 1u);
        EXPECT_EQ(F.trace(a), s);
        ones += s;
        // Tr_{9/3}(a) = a + a^8 + a^64 lies in GF(8)
        const Elem r = F.relative_trace(a, 3);
        EXPECT_EQ(r, a ^ F.frobenius(a, 3) ^ F.frobenius(a, 6));
        EXPECT_EQ(F.frobenius(r, 3), r);
    }
    EXPECT_EQ(ones, 256u);
    EXPECT_THROW((void)F.relative_trace(3, 2), DomainError);
}

TEST(FieldSpec, SeventhPowers) {
    const auto F3 = FieldSpec::make(3);
    std::set<Elem> s3;
    for (Elem a = 0; a < F3.size(); ++a)
        if (F3.is_seventh_power(a)) s3.insert(a);
    EXPECT_EQ(s3, (std::set<Elem>{0, 1}));

    const auto F6 = FieldSpec::make(6);
    std::set<Elem> images;
    for (Elem a = 0; a < F6.size(); ++a) images.insert(F6.pow(a, 7));
    unsigned count = 0;
    for (Elem a = 0; a < F6.size(); ++a) {
        const bool expected = images.count(a) > 0;
        EXPECT_EQ(F6.is_seventh_power(a), expected);
        count += expected;
        if (expected) {
            auto r = F6.seventh_root(a);
            ASSERT_TRUE(r);
            EXPECT_EQ(F6.pow(*r, 7), a);
        } else {
            EXPECT_FALSE(F6.seventh_root(a));
        }
    }
    EXPECT_EQ(count, 10u);
}

TEST(FieldSpec, RootFinding) {
    const auto F9 = FieldSpec::make(9);
    const auto r = F9.find_roots_f2(0b1011);
    ASSERT_EQ(r.size(), 3u);
    for (Elem x : r) EXPECT_EQ(F9.mul(F9.square(x), x) ^ x ^ 1, 0u);
    EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));

    const auto F3 = FieldSpec::make(3);
    EXPECT_TRUE(F3.find_roots_f2(0b111).empty());

    // brute-force agreement for every polynomial of degree <= 6 over GF(2^6)
    const auto F6 = FieldSpec::make(6);
    for (std::uint64_t p = 2; p < 128; ++p) {
        std::vector<Elem> expect;
        std::vector<Elem> c;
        for (int i = 0; i <= poly2::degree(p); ++i) c.push_back(static_cast<Elem>((p >> i) & 1));
        for (Elem x = 0; x < F6.size(); ++x)
            if (F6.eval(c, x) == 0) expect.push_back(x);
        EXPECT_EQ(F6.find_roots_f2(p), expect) << poly2::to_string(p);
    }
}

TEST(FieldSpec, MinimalPolynomial) {
    const auto F = FieldSpec::make(6);
    for (Elem a = 0; a < F.size(); ++a) {
        const auto mp = F.minimal_polynomial(a);
        EXPECT_EQ(poly2::smallest_factor_degree(mp), 0);
        const auto roots = F.find_roots_f2(mp);
        EXPECT_NE(std::find(roots.begin(), roots.end(), a), roots.end());
    }
}

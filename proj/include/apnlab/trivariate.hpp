/**************************************************************************
 * trivariate.hpp
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
 * @file trivariate.hpp
 * @brief The rotation-symmetric quadratic family
 *
 *     C_u(x, y, z) = (x^3 + u y^2 z,  y^3 + u x z^2,  z^3 + u x^2 y)
 *
 * over GF(2^m)^3, together with the Gold functions and the
 * "inverse plus linear" constructions built from them.
 *
 * Packing: a triple (x, y, z) is the 3m-bit index x | y << m | z << 2m.
 */

#include <array>
#include <optional>
#include <random>

#include "vbf.hpp"

namespace apnlab {

struct DirectionTriple {
    Elem alpha = 0, beta = 0, gamma = 0;

    [[nodiscard]] bool is_zero() const noexcept { return (alpha | beta | gamma) == 0; }
    friend bool operator==(const DirectionTriple&, const DirectionTriple&) = default;
};

struct TrivariateSpec {
    FieldSpec field;
    Elem u = 0;

    [[nodiscard]] unsigned m() const noexcept { return field.m(); }
    [[nodiscard]] unsigned n() const noexcept { return 3 * field.m(); }

    [[nodiscard]] std::uint64_t pack(Elem x, Elem y, Elem z) const noexcept {
        return std::uint64_t{x} | (std::uint64_t{y} << m()) | (std::uint64_t{z} << (2 * m()));
    }
    [[nodiscard]] std::array<Elem, 3> unpack(std::uint64_t v) const noexcept {
        const auto mask = low_mask(m());
        return {static_cast<Elem>(v & mask), static_cast<Elem>((v >> m()) & mask),
                static_cast<Elem>((v >> (2 * m())) & mask)};
    }
    [[nodiscard]] std::uint64_t pack(const DirectionTriple& d) const noexcept { return pack(d.alpha, d.beta, d.gamma); }

    /// phi_u(x, y, z) = x^3 + u y^2 z
    [[nodiscard]] Elem phi(Elem x, Elem y, Elem z) const noexcept {
        const auto& F = field;
        return F.mul(F.square(x), x) ^ F.mul(u, F.mul(F.square(y), z));
    }

    [[nodiscard]] std::array<Elem, 3> eval(Elem x, Elem y, Elem z) const noexcept {
        return {phi(x, y, z), phi(y, z, x), phi(z, x, y)};
    }

    [[nodiscard]] std::uint64_t eval_packed(std::uint64_t v) const noexcept {
        const auto [x, y, z] = unpack(v);
        const auto [a, b, c] = eval(x, y, z);
        return pack(a, b, c);
    }
};

/// Spec with u chosen as the smallest root (by bits) of the given minimal
/// polynomial inside the field.
inline TrivariateSpec spec_from_minpoly(const FieldSpec& field, std::uint64_t minpoly) {
    const auto roots = field.find_roots_f2(minpoly);
    if (roots.empty())
        throw InputError("polynomial " + poly2::to_string(minpoly) + " has no root in GF(2^" +
                         std::to_string(field.m()) + ")");
    return {field, roots.front()};
}

inline VBF build_cu(const TrivariateSpec& spec) {
    if (spec.n() > VBF::kMaxBits)
        throw CapacityError("C_u table needs 3m <= 24 bits; evaluate with TrivariateSpec::eval instead");
    std::vector<std::uint32_t> t(std::size_t{1} << spec.n());
    parallel_chunks(t.size(), [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t v = b; v < e; ++v) t[v] = static_cast<std::uint32_t>(spec.eval_packed(v));
    });
    return VBF::from_table(spec.n(), std::move(t));
}

// ---------------------------------------------------------------------------
// Closed-form inverses for m = 3

namespace detail {

struct PsiTerm {
    std::uint32_t coeff_in_u;  // polynomial in u over F_2, e.g. 0b110 = u^2 + u
    unsigned ex, ey, ez;
};

// Root of X^3 + X + 1.
inline constexpr std::array<PsiTerm, 9> kPsiX3X1 = {{
    {0b110, 0, 1, 4}, {0b110, 1, 5, 6}, {0b111, 2, 2, 1}, {0b010, 4, 3, 5}, {0b001, 5, 0, 0},
    {0b010, 5, 0, 7}, {0b111, 5, 7, 0}, {0b101, 6, 4, 2}, {0b001, 7, 1, 4},
}};

// Root of X^3 + X^2 + 1.
inline constexpr std::array<PsiTerm, 9> kPsiX3X21 = {{
    {0b011, 0, 1, 4}, {0b111, 1, 5, 6}, {0b001, 2, 2, 1}, {0b010, 4, 3, 5}, {0b001, 5, 0, 0},
    {0b010, 5, 0, 7}, {0b011, 5, 7, 0}, {0b110, 6, 4, 2}, {0b100, 7, 1, 4},
}};

}  // namespace detail

inline VBF build_cu_inverse_closed_form(const TrivariateSpec& spec) {
    const auto& F = spec.field;
    if (F.m() != 3) throw DomainError("closed-form inverse exists only for m = 3");
    const std::uint64_t mp = spec.u > 1 ? F.minimal_polynomial(spec.u) : 0;
    std::span<const detail::PsiTerm> terms;
    if (mp == 0b1011) terms = detail::kPsiX3X1;
    else if (mp == 0b1101) terms = detail::kPsiX3X21;
    else throw DomainError("u must be a root of X^3+X+1 or X^3+X^2+1");

    std::vector<Elem> coeff(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        Elem c = 0;
        for (unsigned i = 0; i < 3; ++i)
            if ((terms[k].coeff_in_u >> i) & 1) c ^= F.pow(spec.u, i);
        coeff[k] = c;
    }
    auto psi = [&](Elem x, Elem y, Elem z) {
        Elem r = 0;
        for (std::size_t k = 0; k < terms.size(); ++k)
            r ^= F.mul(coeff[k], F.mul(F.pow(x, terms[k].ex), F.mul(F.pow(y, terms[k].ey), F.pow(z, terms[k].ez))));
        return r;
    };
    std::vector<std::uint32_t> t(std::size_t{1} << spec.n());
    for (std::size_t v = 0; v < t.size(); ++v) {
        const auto [x, y, z] = spec.unpack(v);
        t[v] = static_cast<std::uint32_t>(spec.pack(psi(x, y, z), psi(y, z, x), psi(z, x, y)));
    }
    return VBF::from_table(spec.n(), std::move(t));
}

// ---------------------------------------------------------------------------
// Self-equivalences

struct SymmetryReport {
    std::uint64_t rotation_cases = 0;
    std::uint64_t scaling_cases = 0;
    bool exhaustive = false;
    /// Packed inputs where C_u o r != r o C_u.
    std::vector<std::uint64_t> rotation_violations;
    /// (lambda, packed input) where C_u(lambda v) != lambda^3 C_u(v).
    std::vector<std::pair<Elem, std::uint64_t>> scaling_violations;

    [[nodiscard]] bool ok() const noexcept { return rotation_violations.empty() && scaling_violations.empty(); }
};

inline SymmetryReport check_symmetries(const TrivariateSpec& spec, std::uint64_t seed = 1) {
    const auto& F = spec.field;
    SymmetryReport rep;
    rep.exhaustive = spec.m() <= 4;
    std::mt19937_64 rng(seed);

    auto rotation_ok = [&](std::uint64_t v) {
        const auto [x, y, z] = spec.unpack(v);
        const auto lhs = spec.eval(y, z, x);  // C_u(r(v))
        const auto c = spec.eval(x, y, z);
        return lhs == std::array<Elem, 3>{c[1], c[2], c[0]};  // r(C_u(v))
    };
    auto scaling_ok = [&](Elem lam, std::uint64_t v) {
        const auto [x, y, z] = spec.unpack(v);
        const auto lhs = spec.eval(F.mul(lam, x), F.mul(lam, y), F.mul(lam, z));
        const auto c = spec.eval(x, y, z);
        const Elem l3 = F.pow(lam, 3);
        return lhs == std::array<Elem, 3>{F.mul(l3, c[0]), F.mul(l3, c[1]), F.mul(l3, c[2])};
    };

    const std::uint64_t N = std::uint64_t{1} << spec.n();
    std::uniform_int_distribution<std::uint64_t> pick(0, N - 1);
    if (spec.n() <= 18) {
        for (std::uint64_t v = 0; v < N; ++v, ++rep.rotation_cases)
            if (!rotation_ok(v)) rep.rotation_violations.push_back(v);
    } else {
        for (int k = 0; k < 4096; ++k, ++rep.rotation_cases)
            if (const auto v = pick(rng); !rotation_ok(v)) rep.rotation_violations.push_back(v);
    }
    if (rep.exhaustive) {
        for (Elem lam = 0; lam < F.size(); ++lam)
            for (std::uint64_t v = 0; v < N; ++v, ++rep.scaling_cases)
                if (!scaling_ok(lam, v)) rep.scaling_violations.emplace_back(lam, v);
    } else {
        std::uniform_int_distribution<Elem> pick_lam(0, F.order());
        for (int l = 0; l < 8; ++l) {
            const Elem lam = pick_lam(rng);
            for (int k = 0; k < 4096; ++k, ++rep.scaling_cases)
                if (const auto v = pick(rng); !scaling_ok(lam, v)) rep.scaling_violations.emplace_back(lam, v);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Solution counting through 3m x 3m binary kernels

namespace detail {

/// Columns of the F_2-linear map (x,y,z) -> eq(x,y,z) on the unit vectors.
template <class Eq>
unsigned kernel_dim_of(const TrivariateSpec& spec, Eq&& eq) {
    const unsigned m = spec.m();
    std::uint64_t cols[64];
    for (unsigned blk = 0; blk < 3; ++blk)
        for (unsigned i = 0; i < m; ++i) {
            std::array<Elem, 3> v{0, 0, 0};
            v[blk] = Elem{1} << i;
            const auto r = eq(v[0], v[1], v[2]);
            cols[blk * m + i] = spec.pack(r[0], r[1], r[2]);
        }
    return 3 * m - rank_of(std::span<const std::uint64_t>(cols, 3 * m));
}

/// Linear part of the derivative of C_u in direction d.
inline std::array<Elem, 3> derivative_linear_part(const TrivariateSpec& s, const DirectionTriple& d, Elem x, Elem y,
                                                  Elem z) {
    const auto& F = s.field;
    const Elem a = d.alpha, b = d.beta, c = d.gamma, u = s.u;
    const Elem a2 = F.square(a), b2 = F.square(b), c2 = F.square(c);
    const Elem x2 = F.square(x), y2 = F.square(y), z2 = F.square(z);
    return {
        F.mul(a, x2) ^ F.mul(a2, x) ^ F.mul(u, F.mul(c, y2)) ^ F.mul(u, F.mul(b2, z)),
        F.mul(b, y2) ^ F.mul(b2, y) ^ F.mul(u, F.mul(a, z2)) ^ F.mul(u, F.mul(c2, x)),
        F.mul(c, z2) ^ F.mul(c2, z) ^ F.mul(u, F.mul(b, x2)) ^ F.mul(u, F.mul(a2, y)),
    };
}

}  // namespace detail

/// Number of solutions of the homogeneous derivative system in direction d,
/// i.e. the size of every nonempty preimage of the derivative.
inline std::uint64_t diff_solution_count(const TrivariateSpec& spec, const DirectionTriple& d) {
    if (d.is_zero()) throw DomainError("derivative direction must be nonzero");
    const unsigned k = detail::kernel_dim_of(
        spec, [&](Elem x, Elem y, Elem z) { return detail::derivative_linear_part(spec, d, x, y, z); });
    return std::uint64_t{1} << k;
}

/// Dimension of the linear space of the component
/// Tr(alpha C_1 + beta C_2 + gamma C_3) (solutions (S, T, U) of the
/// linear-structure system).
inline unsigned ls_solution_count(const TrivariateSpec& spec, const DirectionTriple& c) {
    if (c.is_zero()) throw DomainError("component must be nonzero");
    const auto& F = spec.field;
    const Elem a = c.alpha, b = c.beta, g = c.gamma, u = spec.u;
    const Elem a2 = F.square(a), b2 = F.square(b), g2 = F.square(g), u2 = F.square(u);
    return detail::kernel_dim_of(spec, [&](Elem S, Elem T, Elem U) {
        const Elem S4 = F.frobenius(S, 2), T4 = F.frobenius(T, 2), U4 = F.frobenius(U, 2);
        return std::array<Elem, 3>{
            F.mul(a, S) ^ F.mul(a2, S4) ^ F.mul(F.mul(b2, u2), U4) ^ F.mul(F.mul(g, u), T),
            F.mul(b, T) ^ F.mul(b2, T4) ^ F.mul(F.mul(g2, u2), S4) ^ F.mul(F.mul(a, u), U),
            F.mul(g, U) ^ F.mul(g2, U4) ^ F.mul(F.mul(a2, u2), T4) ^ F.mul(F.mul(b, u), S),
        };
    });
}

/// The dot-product mask b with b.v = Tr(alpha x) + Tr(beta y) + Tr(gamma z)
/// for all packed v = (x, y, z).
inline std::uint64_t trace_form_mask(const TrivariateSpec& spec, const DirectionTriple& c) {
    std::uint64_t b = 0;
    const std::array<Elem, 3> coef{c.alpha, c.beta, c.gamma};
    for (unsigned blk = 0; blk < 3; ++blk)
        for (unsigned i = 0; i < spec.m(); ++i)
            b |= static_cast<std::uint64_t>(spec.field.trace(spec.field.mul(coef[blk], Elem{1} << i)))
                 << (blk * spec.m() + i);
    return b;
}

enum class DirectionReduction { none, symmetry };

/// Directions up to rotation and scaling: one representative per orbit,
/// namely the smallest packed index among the rotations normalized to a
/// leading 1.
inline std::vector<DirectionTriple> direction_representatives(const TrivariateSpec& spec) {
    const auto& F = spec.field;
    auto normalize = [&](DirectionTriple d) {
        const Elem lead = d.alpha ? d.alpha : (d.beta ? d.beta : d.gamma);
        const Elem s = F.inv(lead);
        return DirectionTriple{F.mul(s, d.alpha), F.mul(s, d.beta), F.mul(s, d.gamma)};
    };
    std::vector<DirectionTriple> reps;
    auto consider = [&](const DirectionTriple& d) {
        const std::uint64_t self = spec.pack(d);
        const auto r1 = normalize({d.beta, d.gamma, d.alpha});
        const auto r2 = normalize({d.gamma, d.alpha, d.beta});
        if (spec.pack(r1) >= self && spec.pack(r2) >= self) reps.push_back(d);
    };
    for (Elem b = 0; b < F.size(); ++b)
        for (Elem g = 0; g < F.size(); ++g) consider({1, b, g});
    for (Elem g = 0; g < F.size(); ++g) consider({0, 1, g});
    consider({0, 0, 1});
    return reps;
}

struct DiffSweep {
    std::uint64_t max_count = 0;
    DirectionTriple witness;
    std::uint64_t directions_examined = 0;
};

inline DiffSweep max_diff_uniformity_cu(const TrivariateSpec& spec,
                                        DirectionReduction reduction = DirectionReduction::symmetry,
                                        unsigned jobs = 0) {
    std::vector<DirectionTriple> dirs;
    if (reduction == DirectionReduction::symmetry) {
        dirs = direction_representatives(spec);
    } else {
        if (spec.n() > 30) throw CapacityError("unreduced direction sweep limited to 3m <= 30");
        for (std::uint64_t v = 1; v < (std::uint64_t{1} << spec.n()); ++v) {
            const auto [a, b, c] = spec.unpack(v);
            dirs.push_back({a, b, c});
        }
    }
    const unsigned workers = resolve_jobs(jobs);
    std::vector<DiffSweep> partial(workers);
    parallel_chunks(
        dirs.size(),
        [&](std::size_t b, std::size_t e, unsigned w) {
            for (std::size_t i = b; i < e; ++i) {
                const auto c = diff_solution_count(spec, dirs[i]);
                if (c > partial[w].max_count) partial[w] = {c, dirs[i], 0};
            }
        },
        workers);
    DiffSweep out;
    for (const auto& p : partial)
        if (p.max_count > out.max_count) out = p;  // first chunk wins ties
    out.directions_examined = dirs.size();
    return out;
}

/// Searches for a direction d and a point v with C_u(v) = C_u(v + d), which
/// proves C_u is not a permutation. Absence of a witness proves nothing
/// beyond the directions examined.
struct NonBijectivityWitness {
    bool found = false;
    DirectionTriple direction;
    std::uint64_t point = 0;
    std::uint64_t directions_examined = 0;
};

inline NonBijectivityWitness search_nonbijectivity_witness(const TrivariateSpec& spec) {
    NonBijectivityWitness w;
    for (const auto& d : direction_representatives(spec)) {
        ++w.directions_examined;
        // C_u(v) + C_u(v + d) = lin_d(v) + C_u(d) since C_u(0) = 0
        const std::uint64_t target = spec.eval_packed(spec.pack(d));
        const unsigned m = spec.m();
        std::uint64_t by_pivot[64] = {}, comb[64] = {};
        for (unsigned blk = 0; blk < 3; ++blk)
            for (unsigned i = 0; i < m; ++i) {
                std::array<Elem, 3> v{0, 0, 0};
                v[blk] = Elem{1} << i;
                const auto r = detail::derivative_linear_part(spec, d, v[0], v[1], v[2]);
                std::uint64_t col = spec.pack(r[0], r[1], r[2]);
                std::uint64_t src = std::uint64_t{1} << (blk * m + i);
                for (int p = msb_index(col); col; p = msb_index(col)) {
                    if (!by_pivot[p]) {
                        by_pivot[p] = col;
                        comb[p] = src;
                        break;
                    }
                    col ^= by_pivot[p];
                    src ^= comb[p];
                }
            }
        std::uint64_t t = target, pre = 0;
        for (int p = msb_index(t); t; p = msb_index(t)) {
            if (!by_pivot[p]) break;
            t ^= by_pivot[p];
            pre ^= comb[p];
        }
        if (t == 0) {
            w.found = true;
            w.direction = d;
            w.point = pre;
            return w;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Gold functions and inverse-plus-linear constructions

inline VBF build_gold(const FieldSpec& field, unsigned i) {
    const std::pair<Elem, std::uint64_t> mono{1, (std::uint64_t{1} << i) + 1};
    if (mono.second >= field.size()) throw InputError("Gold exponent exceeds field size");
    return VBF::from_univariate(field, std::span(&mono, 1));
}

/// x -> Tr_{n,3}(x + x^(2^(2i))); requires 3 | n.
inline VBF budaghyan_modifier(const FieldSpec& field, unsigned i) {
    if (field.m() % 3 != 0) throw DomainError("relative trace to GF(8) needs 3 | n");
    std::vector<std::uint32_t> t(field.size());
    for (Elem x = 0; x < field.size(); ++x) t[x] = field.relative_trace(x ^ field.frobenius(x, 2 * i), 3);
    return VBF::from_table(field.m(), std::move(t));
}

/// (x_1, ..., x_t) -> (x_1 + x_1^(2^(2k)), 0, ..., 0) on t blocks of m bits.
inline VBF tfl_linear_map(const FieldSpec& field, unsigned t, unsigned k = 1) {
    const unsigned n = t * field.m();
    if (n > VBF::kMaxBits) throw CapacityError("t*m must be <= 24");
    std::vector<std::uint32_t> tab(std::size_t{1} << n);
    const auto mask = low_mask(field.m());
    for (std::size_t v = 0; v < tab.size(); ++v) {
        const Elem x1 = static_cast<Elem>(v & mask);
        tab[v] = x1 ^ field.frobenius(x1, 2 * k);
    }
    return VBF::from_table(n, std::move(tab));
}

/// T_{F,L}: x -> F^{-1}(x) + L(x).
inline VBF build_tfl(const VBF& F, const VBF& L) {
    if (!is_permutation(F)) throw DomainError("T_{F,L} needs F to be a permutation");
    return add(inverse(F), L);
}

/// A permutation of GF(2^m)^t of the shape
/// (x_1^(2^k+1) + f(x_2, ..., x_t), x_2^(2^k+1), ..., x_t^(2^k+1))
/// with f = u x_2^2 x_t; a permutation whenever x -> x^(2^k+1) is one.
inline VBF build_triangular_gold(const FieldSpec& field, unsigned t, unsigned k, Elem u) {
    const unsigned m = field.m(), n = t * m;
    if (t < 2 || n > VBF::kMaxBits) throw CapacityError("need t >= 2 and t*m <= 24");
    const std::uint64_t e = (std::uint64_t{1} << k) + 1;
    std::vector<std::uint32_t> tab(std::size_t{1} << n);
    const auto mask = low_mask(m);
    for (std::size_t v = 0; v < tab.size(); ++v) {
        std::uint64_t out = 0;
        for (unsigned i = 0; i < t; ++i) out |= std::uint64_t{field.pow(static_cast<Elem>((v >> (i * m)) & mask), e)} << (i * m);
        const Elem x2 = static_cast<Elem>((v >> m) & mask), xt = static_cast<Elem>((v >> ((t - 1) * m)) & mask);
        out ^= field.mul(u, field.mul(field.square(x2), xt));
        tab[v] = static_cast<std::uint32_t>(out);
    }
    return VBF::from_table(n, std::move(tab));
}

/// Is X^((2^i+1) 2^j) + X^(2^i+1) + X a permutation of GF(2^n)?
inline bool permpoly_check(unsigned n, unsigned i, unsigned j) {
    const FieldSpec F = FieldSpec::make(n);
    const std::uint64_t e1 = (std::uint64_t{1} << i) + 1;
    std::vector<bool> seen(F.size(), false);
    for (Elem x = 0; x < F.size(); ++x) {
        const Elem g = F.pow(x, e1);
        const Elem y = F.frobenius(g, j) ^ g ^ x;
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

}  // namespace apnlab

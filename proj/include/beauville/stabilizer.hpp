#pragma once

// Constructive stabilizer elements for Beauville structures of the split and
// abelian families.
//
// With the second triple profiled as (x^k y^l c, x^m y^n d, .), a structure
// whose profile satisfies
//   Case1:  l+m = 0  and  n+l-k = 0   (mod p^e)
// is stabilized by (A o s2, A o i_h o s2) where A maps x -> y -> (xy)^-1,
// and Case2 (k+n = 0, k+m-l = 0) by the same with s1 on the second triple.
// When the profile satisfies n = -k and k^2 + lm = 1 (mod p^e) there is a
// triple-swapping stabilizer element (T o i_g, T) o tau with T(x) = u,
// T(y) = v.  The conjugators are produced by solving the two commutator
// congruences [A(u), g] = A(u)^-1 v etc., a 2x2 linear system mod p^j.

#include <optional>

#include "action.hpp"

namespace beauville {

// One side of a structure move: sigma, then conjugation, then automorphism.
struct TripleMap {
    int sigma = 0;
    Element conj;
    AutMap aut;
};

struct StructureMap {
    bool tau = false;
    TripleMap first, second;
};

inline Triple apply_triple_map(const Group& G, const TripleMap& m, const Triple& t) {
    Triple r = apply_sigma(G, m.sigma, t);
    r = conj_triple(G, r, m.conj);
    return apply_diag(G, m.aut, r);
}

inline Structure apply_structure_map(const Group& G, const StructureMap& m, const Structure& s) {
    Structure base = m.tau ? Structure{s.t2, s.t1} : s;
    return {apply_triple_map(G, m.first, base.t1), apply_triple_map(G, m.second, base.t2)};
}

namespace detail {

inline void require_witness_family(const Group& G) {
    if (G.family != Family::Abelian && G.family != Family::ClassTwoSplit)
        throw std::domain_error("stabilizer witnesses: split or abelian family required");
}

} // namespace detail

// The unique automorphism sending the generating pair (x, y) to (X, Y), when
// the assignment extends.  Works by rewriting a and b as words x^s y^t c^r
// and mapping c through comm(x,y).  For these two families the automorphism
// count equals the generating-pair count, so valid images always extend.
inline std::optional<AutMap> aut_from_pair_images(const Group& G, const Element& x, const Element& y,
                                                  const Element& X, const Element& Y) {
    detail::require_witness_family(G);
    if (!G.is_generating_pair(x, y) || !G.is_generating_pair(X, Y)) return std::nullopt;

    auto express = [&](const Element& target) {
        auto [s, t] = detail::solve_ab(G, x, y, target);
        Element rem = G.mul(G.inv(G.mul(G.pow(x, s), G.pow(y, t))), target);
        if (!G.in_derived(rem)) throw std::logic_error("aut_from_pair_images: bad remainder");
        return std::tuple<i64, i64, i64>{s, t, rem.z};
    };

    Element image_c = G.id();
    if (G.family == Family::ClassTwoSplit) {
        Element cxy = G.comm(x, y); // = c^(unit)
        i64 unit = cxy.z % G.p == 0 ? 0 : cxy.z;
        if (unit == 0) throw std::logic_error("aut_from_pair_images: degenerate commutator");
        image_c = G.pow(G.comm(X, Y), inv_mod(unit, G.zwin));
    }

    auto [sa, ta, ra] = express(G.gen_a());
    auto [sb, tb, rb] = express(G.gen_b());
    Element im_a = G.mul(G.mul(G.pow(X, sa), G.pow(Y, ta)), G.pow(image_c, ra));
    Element im_b = G.mul(G.mul(G.pow(X, sb), G.pow(Y, tb)), G.pow(image_c, rb));
    AutMap theta = make_aut(G, im_a, im_b);
    if (!validate(G, theta)) return std::nullopt;
    if (!(apply(G, theta, x) == X) || !(apply(G, theta, y) == Y))
        throw std::logic_error("aut_from_pair_images: image check failed");
    return theta;
}

namespace detail {

// Solves [A1, g] = r1 and [A2, g] = r2 for g, where r1, r2 lie in G' and
// (A1, A2) is a generating pair.  In a class-2 group [A, g] depends linearly
// on g's exponents: [A, a^{Wx} b^{Wy}] = c^{Ya Wx - Xa Wy}.
inline std::optional<Element> solve_conjugator(const Group& G, const Element& A1, const Element& r1,
                                               const Element& A2, const Element& r2) {
    if (!G.in_derived(r1) || !G.in_derived(r2)) return std::nullopt;
    if (G.family == Family::Abelian)
        return (r1 == G.id() && r2 == G.id()) ? std::optional<Element>(G.id()) : std::nullopt;
    const i64 pj = G.zwin;
    i64 det = mod_reduce((i128)A1.x * A2.y - (i128)A2.x * A1.y, pj);
    if (det % G.p == 0) return std::nullopt;
    i64 dinv = inv_mod(det, pj);
    i64 wx = mul_mod(mod_reduce((i128)A1.x * r2.z - (i128)A2.x * r1.z, pj), dinv, pj);
    i64 wy = mul_mod(mod_reduce((i128)A1.y * r2.z - (i128)A2.y * r1.z, pj), dinv, pj);
    Element g = G.make(wx, wy, 0);
    if (!(G.comm(A1, g) == r1) || !(G.comm(A2, g) == r2)) return std::nullopt;
    return g;
}

} // namespace detail

// Stabilizer witness for a Case1/Case2 structure; nullopt for Generic ones.
inline std::optional<StructureMap> build_case_stabilizer_witness(const Group& G, const Structure& s) {
    detail::require_witness_family(G);
    StructureProfile prof = profile_of(G, s);
    StabCase which = classify_stabilizer(G, prof);
    if (which == StabCase::Generic) return std::nullopt;

    const Element &x = s.t1.g1, &y = s.t1.g2;
    auto alpha = aut_from_pair_images(G, x, y, y, G.inv(G.mul(x, y)));
    if (!alpha) throw std::logic_error("case witness: rotation automorphism does not extend");

    const Element &u = s.t2.g1, &v = s.t2.g2, &w = s.t2.g3;
    Element B1, B2, t1, t2;
    if (which == StabCase::Case1) {
        B1 = apply(G, *alpha, u); t1 = v; // alpha(u)^g' = v
        B2 = apply(G, *alpha, v); t2 = w; // alpha(v)^g' = w
    } else {
        B1 = apply(G, *alpha, v); t1 = u; // alpha(v)^g' = u
        B2 = apply(G, *alpha, w); t2 = v; // alpha(w)^g' = v
    }
    auto gprime = detail::solve_conjugator(G, B1, G.mul(G.inv(B1), t1), B2, G.mul(G.inv(B2), t2));
    if (!gprime) throw std::logic_error("case witness: conjugator congruences unsolvable");
    Element g = apply(G, invert(G, *alpha), *gprime);

    StructureMap witness;
    witness.tau = false;
    witness.first = {2, G.id(), *alpha};
    witness.second = {which == StabCase::Case1 ? 2 : 1, g, *alpha};
    if (!(apply_structure_map(G, witness, s) == s))
        throw std::logic_error("case witness: constructed element does not stabilize");
    return witness;
}

// Triple-swapping stabilizer element; exists exactly when the profile
// satisfies n = -k, k^2 + lm = 1 (mod p^e).
inline std::optional<StructureMap> build_swap_witness(const Group& G, const Structure& s) {
    detail::require_witness_family(G);
    StructureProfile prof = profile_of(G, s);
    if (!satisfies_swap_congruence(G, prof)) return std::nullopt;

    const Element &x = s.t1.g1, &y = s.t1.g2;
    const Element &u = s.t2.g1, &v = s.t2.g2;
    auto theta = aut_from_pair_images(G, x, y, u, v);
    if (!theta) throw std::logic_error("swap witness: basis automorphism does not extend");

    Element B1 = apply(G, *theta, u);
    Element B2 = apply(G, *theta, v);
    auto gprime = detail::solve_conjugator(G, B1, G.mul(G.inv(B1), x), B2, G.mul(G.inv(B2), y));
    if (!gprime) throw std::logic_error("swap witness: conjugator congruences unsolvable");
    Element g = apply(G, invert(G, *theta), *gprime);

    StructureMap witness;
    witness.tau = true;
    witness.first = {0, g, *theta};
    witness.second = {0, G.id(), *theta};
    if (!(apply_structure_map(G, witness, s) == s))
        throw std::logic_error("swap witness: constructed element does not stabilize");
    return witness;
}

} // namespace beauville

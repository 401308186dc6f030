#pragma once

// Automorphisms of the four families, stored as the normal-form images of the
// two generators.  The per-family parameter windows below enumerate Aut(G)
// without repetition:
//
//   Metacyclic   t(a) = b^{m p^{e-i}} a^n,  t(b) = b^{1+r p^{e-i}} a^s,
//                m, r mod p^i,  n, s mod p^e,  p does not divide n
//   Fused        t(a) = a^{1+m p^{e-i}} b^n c^{za},  t(b) = a^{r p^{e-i}} b^s c^{zb},
//                m, n, r, s mod p^i,  p does not divide s
//   Split        t(a) = a^{xa} b^{ya} c^{za},  t(b) = a^{xb} b^{yb} c^{zb},
//                exponents mod windows, (xa ya; xb yb) invertible mod p
//   Abelian      invertible 2x2 exponent matrix mod p^e
//
// Inner automorphisms fix both generators modulo G', so cosets of Inn(G) are
// keyed by the images modulo G' (out_key below).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "group.hpp"

namespace beauville {

using bigint = boost::multiprecision::cpp_int;

struct AutMap {
    Element im_a;
    Element im_b;
    Element im_c; // comm(im_b, im_a); identity for families without c

    bool operator==(const AutMap&) const = default;
};

inline AutMap make_aut(const Group& G, const Element& im_a, const Element& im_b) {
    return {im_a, im_b, G.class_two() ? G.comm(im_b, im_a) : G.id()};
}

inline AutMap identity_aut(const Group& G) { return make_aut(G, G.gen_a(), G.gen_b()); }

inline Element apply(const Group& G, const AutMap& t, const Element& g) {
    switch (G.family) {
        case Family::Abelian:
            return G.mul(G.pow(t.im_a, g.x), G.pow(t.im_b, g.y));
        case Family::Metacyclic:
            return G.mul(G.pow(t.im_b, g.y), G.pow(t.im_a, g.x));
        default:
            return G.mul(G.pow(t.im_a, g.x), G.mul(G.pow(t.im_b, g.y), G.pow(t.im_c, g.z)));
    }
}

struct Mat2 {
    // Row per generator image in G/Phi(G): [[a->a, a->b], [b->a, b->b]].
    std::array<i64, 4> m;
    bool operator==(const Mat2&) const = default;
};

inline Mat2 induced_matrix(const Group& G, const AutMap& t) {
    auto ca = G.frattini_coords(t.im_a);
    auto cb = G.frattini_coords(t.im_b);
    return {{ca[0], ca[1], cb[0], cb[1]}};
}

inline i64 det_mod_p(const Group& G, const Mat2& M) {
    return mod_reduce((i128)M.m[0] * M.m[3] - (i128)M.m[1] * M.m[2], G.p);
}

inline Mat2 mat_mul(const Group& G, const Mat2& A, const Mat2& B) {
    return {{mod_reduce((i128)A.m[0] * B.m[0] + (i128)A.m[1] * B.m[2], G.p),
             mod_reduce((i128)A.m[0] * B.m[1] + (i128)A.m[1] * B.m[3], G.p),
             mod_reduce((i128)A.m[2] * B.m[0] + (i128)A.m[3] * B.m[2], G.p),
             mod_reduce((i128)A.m[2] * B.m[1] + (i128)A.m[3] * B.m[3], G.p)}};
}

// A candidate generator-image pair extends to an automorphism iff every
// defining relator maps to the identity and the induced map on G/Phi(G) is
// invertible (Burnside basis: generating images of a finite group give a
// surjective, hence bijective, endomorphism).
inline bool validate(const Group& G, const AutMap& t) {
    if (det_mod_p(G, induced_matrix(G, t)) == 0) return false;
    const Element one = G.id();
    switch (G.family) {
        case Family::Abelian:
            return true;
        case Family::Metacyclic:
            if (!(G.pow(t.im_a, G.pe) == one) || !(G.pow(t.im_b, G.pe) == one)) return false;
            // [a,b] = a^{p^i}
            return G.comm(t.im_a, t.im_b) == G.pow(t.im_a, G.p_power_i());
        case Family::ClassTwoSplit:
            if (!(G.pow(t.im_a, G.pe) == one) || !(G.pow(t.im_b, G.pe) == one)) return false;
            return G.pow(t.im_c, G.zwin) == one;
        case Family::ClassTwoFused:
            if (!(G.pow(t.im_a, G.pe) == one)) return false;
            if (!(G.pow(t.im_c, G.zwin) == one)) return false;
            // b^{p^i} = c^{p^k}
            return G.pow(t.im_b, G.ywin) == G.pow(t.im_c, G.p_power_k());
    }
    return false;
}

inline AutMap compose(const Group& G, const AutMap& s, const AutMap& t) {
    // (s o t)(g) = s(t(g))
    return make_aut(G, apply(G, s, t.im_a), apply(G, s, t.im_b));
}

inline bigint aut_order_big(const Group& G) {
    auto bpow = [&](i64 base, i64 exp) {
        bigint r = 1;
        for (i64 t = 0; t < exp; ++t) r *= base;
        return r;
    };
    switch (G.family) {
        case Family::Abelian:
            // |GL(2, Z/p^e)| = p^{4e-4} (p^2-1)(p^2-p)
            return bpow(G.p, 4 * G.e - 4) * (bigint(G.p) * G.p - 1) * (bigint(G.p) * G.p - G.p);
        case Family::Metacyclic:
            return bigint(G.p - 1) * bpow(G.p, 2 * G.e + 2 * G.i - 1);
        case Family::ClassTwoSplit:
            return bigint(G.p + 1) * (G.p - 1) * (G.p - 1) * bpow(G.p, 4 * G.e + 2 * G.j - 3);
        default:
            return bigint(G.p - 1) * bpow(G.p, 4 * G.i + 2 * G.j - 1);
    }
}

inline i64 aut_order(const Group& G) {
    bigint n = aut_order_big(G);
    if (n > bigint((i64)1 << 62)) throw std::overflow_error("aut_order exceeds machine word");
    return (i64)n.convert_to<i64>();
}

// theta^-1 = theta^{|Aut|-1}.
inline AutMap invert(const Group& G, const AutMap& t) {
    bigint n = aut_order_big(G) - 1;
    AutMap result = identity_aut(G);
    AutMap base = t;
    while (n > 0) {
        if ((n & 1) != 0) result = compose(G, result, base);
        base = compose(G, base, base);
        n >>= 1;
    }
    return result;
}

inline AutMap inner(const Group& G, const Element& g) {
    return make_aut(G, G.conj(G.gen_a(), g), G.conj(G.gen_b(), g));
}

inline i64 inner_order(const Group& G) { return G.order() / G.center_order(); }

// Enumerates Aut(G) through the parameter windows; calls f on every map.
// Throws if |Aut(G)| exceeds `bound`.
template <class F>
void enumerate_aut(const Group& G, F&& f, i64 bound = 10000000) {
    bigint total = aut_order_big(G);
    if (total > bound) throw std::invalid_argument("enumerate_aut: |Aut| exceeds bound");
    const i64 p = G.p, pe = G.pe;
    switch (G.family) {
        case Family::Abelian: {
            for (i64 xa = 0; xa < pe; ++xa)
                for (i64 ya = 0; ya < pe; ++ya)
                    for (i64 xb = 0; xb < pe; ++xb)
                        for (i64 yb = 0; yb < pe; ++yb) {
                            if (mod_reduce((i128)xa * yb - (i128)ya * xb, p) == 0) continue;
                            f(make_aut(G, {xa, ya, 0}, {xb, yb, 0}));
                        }
            return;
        }
        case Family::Metacyclic: {
            const i64 pi = G.p_power_i(), step = pe / pi; // p^{e-i}
            for (i64 m = 0; m < pi; ++m)
                for (i64 n = 0; n < pe; ++n) {
                    if (n % p == 0) continue;
                    for (i64 r = 0; r < pi; ++r)
                        for (i64 s = 0; s < pe; ++s)
                            f(make_aut(G, {n, m * step, 0}, {s, mod_reduce(1 + (i128)r * step, pe), 0}));
                }
            return;
        }
        case Family::ClassTwoSplit: {
            const i64 phi_x = pe / p, phi_y = pe / p, phi_z = G.zwin;
            for (i64 ra = 0; ra < p; ++ra)
                for (i64 ma = 0; ma < p; ++ma)
                    for (i64 sb = 0; sb < p; ++sb)
                        for (i64 nb = 0; nb < p; ++nb) {
                            if (mod_reduce((i128)ra * nb - (i128)ma * sb, p) == 0) continue;
                            for (i64 ua = 0; ua < phi_x; ++ua)
                                for (i64 va = 0; va < phi_y; ++va)
                                    for (i64 wa = 0; wa < phi_z; ++wa)
                                        for (i64 ub = 0; ub < phi_x; ++ub)
                                            for (i64 vb = 0; vb < phi_y; ++vb)
                                                for (i64 wb = 0; wb < phi_z; ++wb)
                                                    f(make_aut(G, {ra + p * ua, ma + p * va, wa},
                                                               {sb + p * ub, nb + p * vb, wb}));
                        }
            return;
        }
        case Family::ClassTwoFused: {
            const i64 pi = G.ywin, step = pe / pi; // p^{e-i}
            for (i64 m = 0; m < pi; ++m)
                for (i64 n = 0; n < pi; ++n)
                    for (i64 r = 0; r < pi; ++r)
                        for (i64 s = 0; s < pi; ++s) {
                            if (s % p == 0) continue;
                            for (i64 za = 0; za < G.zwin; ++za)
                                for (i64 zb = 0; zb < G.zwin; ++zb)
                                    f(make_aut(G, {mod_reduce(1 + (i128)m * step, pe), n, za},
                                               {mod_reduce((i128)r * step, pe), s, zb}));
                        }
            return;
        }
    }
}

// Key of the coset theta.Inn(G): the generator images modulo G'.  For every
// family the maps fixing a and b mod G' are exactly the inner ones.
struct OutKey {
    std::array<i64, 4> v;
    bool operator==(const OutKey&) const = default;
};

inline OutKey out_key(const Group& G, const AutMap& t) {
    auto a = G.ab_coords(t.im_a);
    auto b = G.ab_coords(t.im_b);
    return {{a[0], a[1], b[0], b[1]}};
}

inline bool is_inner(const Group& G, const AutMap& t) {
    return out_key(G, t) == out_key(G, identity_aut(G));
}

inline bigint out_order_big(const Group& G) {
    bigint d = G.derived_order();
    return aut_order_big(G) / (d * d);
}

// Enumerates one representative per coset of Inn(G) in Aut(G).
template <class F>
void enumerate_out_representatives(const Group& G, F&& f, i64 bound = 10000000) {
    if (out_order_big(G) > bound) throw std::invalid_argument("enumerate_out: |Out| exceeds bound");
    const i64 p = G.p, pe = G.pe;
    switch (G.family) {
        case Family::Abelian:
            enumerate_aut(G, f, bound);
            return;
        case Family::Metacyclic: {
            const i64 pi = G.p_power_i(), step = pe / pi;
            for (i64 m = 0; m < pi; ++m)
                for (i64 n = 0; n < pi; ++n) {
                    if (n % p == 0) continue;
                    for (i64 r = 0; r < pi; ++r)
                        for (i64 s = 0; s < pi; ++s)
                            f(make_aut(G, {n, m * step, 0}, {s, mod_reduce(1 + (i128)r * step, pe), 0}));
                }
            return;
        }
        case Family::ClassTwoSplit: {
            for (i64 xa = 0; xa < pe; ++xa)
                for (i64 ya = 0; ya < pe; ++ya)
                    for (i64 xb = 0; xb < pe; ++xb)
                        for (i64 yb = 0; yb < pe; ++yb) {
                            if (mod_reduce((i128)xa * yb - (i128)ya * xb, p) == 0) continue;
                            f(make_aut(G, {xa, ya, 0}, {xb, yb, 0}));
                        }
            return;
        }
        case Family::ClassTwoFused: {
            const i64 pi = G.ywin, step = pe / pi;
            for (i64 m = 0; m < pi; ++m)
                for (i64 n = 0; n < pi; ++n)
                    for (i64 r = 0; r < pi; ++r)
                        for (i64 s = 0; s < pi; ++s) {
                            if (s % p == 0) continue;
                            f(make_aut(G, {mod_reduce(1 + (i128)m * step, pe), n, 0},
                                       {mod_reduce((i128)r * step, pe), s, 0}));
                        }
            return;
        }
    }
}

// Number of involutions of Out(G): cosets theta.Inn with theta not inner and
// theta^2 inner, counted over the coset representatives above.
inline i64 count_out_involutions(const Group& G, i64 bound = 10000000) {
    const OutKey id_key = out_key(G, identity_aut(G));
    i64 count = 0;
    enumerate_out_representatives(G, [&](const AutMap& t) {
        if (out_key(G, t) == id_key) return;
        if (out_key(G, compose(G, t, t)) == id_key) ++count;
    }, bound);
    return count;
}

// Oracle variant: walks all of Aut(G) and divides by |Inn(G)|.
inline i64 count_out_involutions_bruteforce(const Group& G, i64 bound = 100000) {
    bigint aut = aut_order_big(G);
    if (aut > bound) throw std::invalid_argument("count_out_involutions_bruteforce: |Aut| exceeds bound");
    const OutKey id_key = out_key(G, identity_aut(G));
    i64 hits = 0;
    enumerate_aut(G, [&](const AutMap& t) {
        if (out_key(G, t) == id_key) return;
        if (out_key(G, compose(G, t, t)) == id_key) ++hits;
    }, bound);
    return hits / inner_order(G);
}

// Eigen-lines of the induced matrix: the maximal subgroups invariant under t.
inline std::vector<i64> fixed_lines(const Group& G, const AutMap& t) {
    Mat2 M = induced_matrix(G, t);
    std::vector<i64> lines;
    for (i64 line = 0; line <= G.p; ++line) {
        i64 vx = line == G.p ? 0 : 1;
        i64 vy = line == G.p ? 1 : line;
        i64 wx = mod_reduce((i128)vx * M.m[0] + (i128)vy * M.m[2], G.p);
        i64 wy = mod_reduce((i128)vx * M.m[1] + (i128)vy * M.m[3], G.p);
        if (mod_reduce((i128)wx * vy - (i128)wy * vx, G.p) == 0) lines.push_back(line);
    }
    return lines;
}

// Small fixed generating set of Aut(G) per family (one parameter moved at a
// time).  Closure-validated against aut_order in the test suite.
inline std::vector<AutMap> aut_generators(const Group& G) {
    std::vector<AutMap> gens;
    const Element a = G.gen_a(), b = G.gen_b();
    switch (G.family) {
        case Family::Abelian: {
            i64 g = primitive_root(G.p, G.e);
            gens.push_back(make_aut(G, {g, 0, 0}, {0, 1, 0}));
            gens.push_back(make_aut(G, {1, 1, 0}, {0, 1, 0}));
            gens.push_back(make_aut(G, {1, 0, 0}, {1, 1, 0}));
            break;
        }
        case Family::Metacyclic: {
            i64 g = primitive_root(G.p, G.e);
            i64 step = G.pe / G.p_power_i();
            gens.push_back(make_aut(G, {1, step, 0}, b));        // m = 1
            gens.push_back(make_aut(G, {g, 0, 0}, b));           // n = primitive root
            gens.push_back(make_aut(G, a, {0, 1 + step, 0}));    // r = 1
            gens.push_back(make_aut(G, a, {1, 1, 0}));           // s = 1
            break;
        }
        case Family::ClassTwoSplit: {
            i64 g = primitive_root(G.p, 1);
            gens.push_back(make_aut(G, {g, 0, 0}, b));
            gens.push_back(make_aut(G, {1, 1, 0}, b));
            gens.push_back(make_aut(G, a, {1, 1, 0}));
            gens.push_back(make_aut(G, {1, 0, 1}, b)); // a -> a c
            gens.push_back(make_aut(G, a, {0, 1, 1})); // b -> b c
            if (G.e >= 2) {
                gens.push_back(make_aut(G, {1 + G.p, 0, 0}, b));
                gens.push_back(make_aut(G, {1, G.p, 0}, b));
                gens.push_back(make_aut(G, a, {G.p, 1, 0}));
                gens.push_back(make_aut(G, a, {0, 1 + G.p, 0}));
            }
            break;
        }
        case Family::ClassTwoFused: {
            i64 step = G.pe / G.ywin; // p^{e-i}
            i64 g = primitive_root(G.p, G.i);
            gens.push_back(make_aut(G, {1 + step, 0, 0}, b));   // m = 1
            gens.push_back(make_aut(G, {1, 1, 0}, b));          // n = 1
            gens.push_back(make_aut(G, {1, 0, 1}, b));          // a -> a c
            gens.push_back(make_aut(G, a, {step, 1, 0}));       // r = 1
            gens.push_back(make_aut(G, a, {0, g % G.ywin, 0})); // s = primitive root mod p^i
            gens.push_back(make_aut(G, a, {0, 1, 1}));          // b -> b c
            break;
        }
    }
    for (const AutMap& t : gens) {
        if (!validate(G, t)) throw std::logic_error("aut_generators: generator fails validation");
    }
    return gens;
}

// Size of the subgroup of Aut(G) generated by `gens` (BFS closure on image
// pairs); used to validate aut_generators at enumerable orders.
inline i64 aut_closure_size(const Group& G, const std::vector<AutMap>& gens, i64 bound = 10000000) {
    if (!G.order_fits_word()) throw std::overflow_error("aut_closure_size: group too large");
    auto key = [&](const AutMap& t) -> u64 {
        return (u64)G.code(t.im_a) * (u64)G.order() + (u64)G.code(t.im_b);
    };
    std::unordered_set<u64> seen;
    std::vector<AutMap> frontier{identity_aut(G)};
    seen.insert(key(frontier.front()));
    while (!frontier.empty()) {
        std::vector<AutMap> next;
        for (const AutMap& t : gens) {
            for (const AutMap& f : frontier) {
                AutMap c = compose(G, f, t);
                if (seen.insert(key(c)).second) next.push_back(c);
            }
        }
        if ((i64)seen.size() > bound) throw std::overflow_error("aut_closure_size: exceeded bound");
        frontier.swap(next);
    }
    return (i64)seen.size();
}

// Closure size of the images of `gens` in Out(G); together with Inn-closure
// this validates generating sets whose full Aut is too large to enumerate.
inline i64 out_closure_size(const Group& G, const std::vector<AutMap>& gens, i64 bound = 10000000) {
    struct KeyHash { size_t operator()(const std::array<i64,4>& a) const {
        u64 h = 1469598103934665603ull;
        for (i64 v : a) { h ^= (u64)v; h *= 1099511628211ull; }
        return (size_t)h;
    }};
    std::unordered_set<std::array<i64, 4>, KeyHash> seen;
    std::vector<AutMap> frontier{identity_aut(G)};
    seen.insert(out_key(G, frontier.front()).v);
    while (!frontier.empty()) {
        std::vector<AutMap> next;
        for (const AutMap& t : gens) {
            for (const AutMap& f : frontier) {
                AutMap c = compose(G, f, t);
                if (seen.insert(out_key(G, c).v).second) next.push_back(c);
            }
        }
        if ((i64)seen.size() > bound) throw std::overflow_error("out_closure_size: exceeded bound");
        frontier.swap(next);
    }
    return (i64)seen.size();
}

} // namespace beauville

#pragma once

// Generating triples and Beauville structures.
//
// A triple (g1,g2,g3) has g1 g2 g3 = 1 with (g1,g2) generating.  A structure
// is an ordered pair of triples whose Sigma-sets meet only in the identity,
// where Sigma(x,y) is the union of all conjugates of <x>, <y> and <xy>.  For
// the families handled here this is equivalent to the six entries covering
// six distinct maximal subgroups, which is what the fast test checks; the
// definition-level test computes the Sigma-sets outright.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "group.hpp"
#include "oracles.hpp"

namespace beauville {

using bigint = boost::multiprecision::cpp_int;

struct Triple {
    Element g1, g2, g3;
    bool operator==(const Triple&) const = default;
};

struct Structure {
    Triple t1, t2;
    bool operator==(const Structure&) const = default;
};

inline Triple make_triple(const Group& G, const Element& x, const Element& y) {
    return {x, y, G.inv(G.mul(x, y))};
}

inline bool product_one(const Group& G, const Triple& t) {
    return G.mul(G.mul(t.g1, t.g2), t.g3) == G.id();
}

inline std::array<i64, 3> triple_type(const Group& G, const Triple& t) {
    return {G.order_of(t.g1), G.order_of(t.g2), G.order_of(t.g3)};
}

// Bitset over element codes.
struct ElementSet {
    std::vector<u64> bits;
    explicit ElementSet(i64 n) : bits(((size_t)n + 63) / 64, 0) {}
    void set(i64 c) { bits[(size_t)c >> 6] |= 1ull << (c & 63); }
    bool test(i64 c) const { return (bits[(size_t)c >> 6] >> (c & 63)) & 1; }
    bool intersects_only_identity(const ElementSet& o, i64 id_code) const {
        for (size_t w = 0; w < bits.size(); ++w) {
            u64 both = bits[w] & o.bits[w];
            if ((i64)(w << 6) <= id_code && id_code < (i64)((w + 1) << 6))
                both &= ~(1ull << (id_code & 63));
            if (both) return false;
        }
        return true;
    }
};

namespace detail {

// Transversal of Z(G) in G: one representative per central coset, by direct
// window iteration.
inline std::vector<Element> center_transversal(const Group& G) {
    std::vector<Element> reps;
    switch (G.family) {
        case Family::Abelian:
            reps.push_back(G.id());
            break;
        case Family::Metacyclic: {
            i64 w = G.pe / G.p_power_i(); // p^{e-i}
            for (i64 x = 0; x < w; ++x)
                for (i64 y = 0; y < w; ++y) reps.push_back({x, y, 0});
            break;
        }
        default: {
            i64 w = G.zwin; // p^j
            for (i64 x = 0; x < w; ++x)
                for (i64 y = 0; y < w; ++y) reps.push_back({x, y, 0});
            break;
        }
    }
    return reps;
}

inline void add_conjugates(const Group& G, const Element& g, const std::vector<Element>& conjugators,
                           ElementSet& out) {
    Element h = g;
    i64 n = G.order_of(g);
    for (i64 t = 1; t <= n; ++t) { // walk <g> once, conjugating each power
        for (const Element& w : conjugators) out.set(G.code(G.conj(h, w)));
        h = G.mul(h, g);
    }
}

} // namespace detail

// Sigma(x,y) as a code bitset.  Conjugation factors through G/Z(G): set
// `full_conjugation` to conjugate by every group element instead (slower
// second route used by the tests).
inline ElementSet sigma_set(const Group& G, const Element& x, const Element& y,
                            bool full_conjugation = false) {
    check_oracle_scale(G);
    ElementSet out(G.order());
    std::vector<Element> conjugators;
    if (full_conjugation) {
        for (i64 c = 0; c < G.order(); ++c) conjugators.push_back(G.decode(c));
    } else {
        conjugators = detail::center_transversal(G);
    }
    detail::add_conjugates(G, x, conjugators, out);
    detail::add_conjugates(G, y, conjugators, out);
    detail::add_conjugates(G, G.mul(x, y), conjugators, out);
    return out;
}

inline bool is_beauville_direct(const Group& G, const Structure& s, bool full_conjugation = false) {
    if (!G.is_generating_pair(s.t1.g1, s.t1.g2) || !G.is_generating_pair(s.t2.g1, s.t2.g2)) return false;
    ElementSet s1 = sigma_set(G, s.t1.g1, s.t1.g2, full_conjugation);
    ElementSet s2 = sigma_set(G, s.t2.g1, s.t2.g2, full_conjugation);
    return s1.intersects_only_identity(s2, G.code(G.id()));
}

inline bool is_beauville_fast(const Group& G, const Structure& s) {
    if (!G.is_generating_pair(s.t1.g1, s.t1.g2) || !G.is_generating_pair(s.t2.g1, s.t2.g2)) return false;
    const Element* els[6] = {&s.t1.g1, &s.t1.g2, &s.t1.g3, &s.t2.g1, &s.t2.g2, &s.t2.g3};
    i64 lines[6];
    for (int t = 0; t < 6; ++t) {
        if (G.in_frattini(*els[t])) return false;
        lines[t] = G.line_of(*els[t]);
    }
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            if (lines[u] == lines[v]) return false;
    return true;
}

inline bigint count_structures_big(const Group& G) {
    const i64 p = G.p;
    bigint base = bigint(p + 1) * p * (p - 1) * (p - 1) * (p - 1) * (p - 2) * (p - 3) * (p - 4);
    bigint phi = 1;
    {
        // |Phi(G)| = |G| / p^2
        bigint order = bigint(G.pe) * G.ywin * G.zwin;
        phi = order / (bigint(p) * p);
    }
    return phi * phi * phi * phi * base;
}

inline i64 count_structures(const Group& G) {
    bigint n = count_structures_big(G);
    if (n > bigint((i64)1 << 62)) throw std::overflow_error("count_structures exceeds machine word");
    return n.convert_to<i64>();
}

// Streams every Beauville structure in lexicographic order of the element
// codes (x, y, u, v).  Enumerates first triples over ordered generating
// pairs, then second triples whose three lines avoid the first triple's.
template <class F>
void for_each_structure(const Group& G, F&& f, i64 bound = (i64)1 << 62) {
    check_oracle_scale(G);
    if (count_structures_big(G) > bound)
        throw std::invalid_argument("for_each_structure: structure count exceeds bound");
    const i64 n = G.order();
    std::vector<i64> line((size_t)n);
    for (i64 c = 0; c < n; ++c) {
        Element g = G.decode(c);
        line[(size_t)c] = G.in_frattini(g) ? -1 : G.line_of(g);
    }
    for (i64 cx = 0; cx < n; ++cx) {
        if (line[(size_t)cx] < 0) continue;
        Element x = G.decode(cx);
        for (i64 cy = 0; cy < n; ++cy) {
            if (line[(size_t)cy] < 0 || line[(size_t)cy] == line[(size_t)cx]) continue;
            Element y = G.decode(cy);
            Triple t1 = make_triple(G, x, y);
            i64 l3 = line[(size_t)G.code(t1.g3)];
            for (i64 cu = 0; cu < n; ++cu) {
                i64 lu = line[(size_t)cu];
                if (lu < 0 || lu == line[(size_t)cx] || lu == line[(size_t)cy] || lu == l3) continue;
                Element u = G.decode(cu);
                for (i64 cv = 0; cv < n; ++cv) {
                    i64 lv = line[(size_t)cv];
                    if (lv < 0 || lv == line[(size_t)cx] || lv == line[(size_t)cy] || lv == l3 || lv == lu)
                        continue;
                    Element v = G.decode(cv);
                    Element uv = G.mul(u, v);
                    i64 lw = line[(size_t)G.code(uv)];
                    if (lw < 0 || lw == line[(size_t)cx] || lw == line[(size_t)cy] || lw == l3 ||
                        lw == lu || lw == lv)
                        continue;
                    f(Structure{t1, {u, v, G.inv(uv)}});
                }
            }
        }
    }
}

// First structure in enumeration order, without walking the whole set.
inline Structure first_structure(const Group& G) {
    check_oracle_scale(G);
    const i64 n = G.order();
    for (i64 cx = 0; cx < n; ++cx) {
        Element x = G.decode(cx);
        if (G.in_frattini(x)) continue;
        for (i64 cy = 0; cy < n; ++cy) {
            Element y = G.decode(cy);
            if (G.in_frattini(y) || !G.is_generating_pair(x, y)) continue;
            Triple t1 = make_triple(G, x, y);
            for (i64 cu = 0; cu < n; ++cu) {
                Element u = G.decode(cu);
                for (i64 cv = 0; cv < n; ++cv) {
                    Element v = G.decode(cv);
                    if (G.in_frattini(u) || G.in_frattini(v)) continue;
                    Structure s{t1, make_triple(G, u, v)};
                    if (is_beauville_fast(G, s)) return s;
                }
            }
        }
    }
    throw std::logic_error("first_structure: no Beauville structure found");
}

// Second triple written over the first triple's basis:
//   u = x^k y^l c,  v = x^m y^n d  with c, d in G'.
struct StructureProfile {
    i64 k, l, m, n;
    Element c, d;
};

namespace detail {

// Solves s*(ax,bx) + t*(ay,by) = (ua,ub) in G/G' (windows Wa, Wb); returns
// the canonical solution.  The exponent matrix is invertible mod p.
inline std::array<i64, 2> solve_ab(const Group& G, const Element& x, const Element& y, const Element& u) {
    const i64 pe = G.pe;
    auto xc = G.ab_coords(x), yc = G.ab_coords(y), uc = G.ab_coords(u);
    const i64 Wa = G.ab_window_a(), Wb = G.ab_window_b();
    if (Wa == pe && Wb == pe) {
        i64 det = mod_reduce((i128)xc[0] * yc[1] - (i128)yc[0] * xc[1], pe);
        i64 dinv = inv_mod(det, pe);
        i64 s = mul_mod(mod_reduce((i128)uc[0] * yc[1] - (i128)uc[1] * yc[0], pe), dinv, pe);
        i64 t = mul_mod(mod_reduce((i128)uc[1] * xc[0] - (i128)uc[0] * xc[1], pe), dinv, pe);
        return {s, t};
    }
    // Mixed windows (Wa = p^i or Wb = p^i): eliminate through the full-window
    // congruence using whichever of its coefficients is a unit.
    const i64 Wsmall = Wa < Wb ? Wa : Wb;
    const bool small_is_a = Wa < Wb;
    // full congruence: s*f1 + t*f2 = uf (mod pe); small: s*g1 + t*g2 = ug (mod Wsmall)
    i64 f1 = small_is_a ? xc[1] : xc[0];
    i64 f2 = small_is_a ? yc[1] : yc[0];
    i64 uf = small_is_a ? uc[1] : uc[0];
    i64 g1 = small_is_a ? xc[0] : xc[1];
    i64 g2 = small_is_a ? yc[0] : yc[1];
    i64 ug = small_is_a ? uc[0] : uc[1];
    if (f1 % G.p != 0) {
        i64 finv = inv_mod(f1, pe);
        // s = finv*(uf - t*f2); substitute into the small congruence.
        i64 coef = mod_reduce((i128)g2 - (i128)g1 * finv % pe * f2, Wsmall);
        i64 rhs = mod_reduce((i128)ug - (i128)g1 * finv % pe * uf, Wsmall);
        i64 t = mul_mod(rhs, inv_mod(coef, Wsmall), Wsmall);
        i64 s = mul_mod(finv, sub_mod(uf, mul_mod(t, f2, pe), pe), pe);
        return {s, t};
    }
    i64 finv = inv_mod(f2, pe);
    i64 coef = mod_reduce((i128)g1 - (i128)g2 * finv % pe * f1, Wsmall);
    i64 rhs = mod_reduce((i128)ug - (i128)g2 * finv % pe * uf, Wsmall);
    i64 s = mul_mod(rhs, inv_mod(coef, Wsmall), Wsmall);
    i64 t = mul_mod(finv, sub_mod(uf, mul_mod(s, f1, pe), pe), pe);
    return {s, t};
}

} // namespace detail

inline StructureProfile profile_of(const Group& G, const Structure& s) {
    const Element &x = s.t1.g1, &y = s.t1.g2;
    auto [k, l] = detail::solve_ab(G, x, y, s.t2.g1);
    auto [m, n] = detail::solve_ab(G, x, y, s.t2.g2);
    Element c = G.mul(G.inv(G.mul(G.pow(x, k), G.pow(y, l))), s.t2.g1);
    Element d = G.mul(G.inv(G.mul(G.pow(x, m), G.pow(y, n))), s.t2.g2);
    if (!G.in_derived(c) || !G.in_derived(d))
        throw std::logic_error("profile_of: residual is not in the derived subgroup");
    return {k, l, m, n, c, d};
}

inline Structure structure_from_profile(const Group& G, const Triple& t1, const StructureProfile& pr) {
    const Element &x = t1.g1, &y = t1.g2;
    Element u = G.mul(G.mul(G.pow(x, pr.k), G.pow(y, pr.l)), pr.c);
    Element v = G.mul(G.mul(G.pow(x, pr.m), G.pow(y, pr.n)), pr.d);
    return {t1, make_triple(G, u, v)};
}

enum class StabCase { Case1, Case2, Generic };

inline const char* stab_case_name(StabCase c) {
    switch (c) {
        case StabCase::Case1: return "case1";
        case StabCase::Case2: return "case2";
        default: return "generic";
    }
}

// Case split of the structure stabilizer by the profile congruences mod p^e;
// meaningful for the split and abelian families, where profiles are unique.
inline StabCase classify_stabilizer(const Group& G, const StructureProfile& pr) {
    if (G.family != Family::Abelian && G.family != Family::ClassTwoSplit)
        throw std::domain_error("classify_stabilizer: defined for the split and abelian families");
    const i64 pe = G.pe;
    bool c1 = add_mod(pr.l, pr.m, pe) == 0 && mod_reduce((i128)pr.n + pr.l - pr.k, pe) == 0;
    bool c2 = add_mod(pr.k, pr.n, pe) == 0 && mod_reduce((i128)pr.k + pr.m - pr.l, pe) == 0;
    if (c1 && c2) throw std::logic_error("classify_stabilizer: cases are mutually exclusive");
    return c1 ? StabCase::Case1 : c2 ? StabCase::Case2 : StabCase::Generic;
}

// Profile satisfies n = -k and k^2 + l m = 1 (mod p^e): the condition under
// which a triple-swapping stabilizer element exists.
inline bool satisfies_swap_congruence(const Group& G, const StructureProfile& pr) {
    const i64 pe = G.pe;
    return add_mod(pr.k, pr.n, pe) == 0 &&
           mod_reduce((i128)pr.k * pr.k + (i128)pr.l * pr.m - 1, pe) == 0;
}

// Count of structures whose profile satisfies the Case1 (equivalently Case2)
// congruences: (p+1)p(p-1)^3 (p-2 or p-4) |Phi|^3 |G'|, the branch chosen by
// p mod 3.
inline bigint count_case_congruence_structures_big(const Group& G) {
    if (G.family != Family::Abelian && G.family != Family::ClassTwoSplit)
        throw std::domain_error("count_case_congruence_structures: split or abelian only");
    const i64 p = G.p;
    bigint phi = (bigint(G.pe) * G.ywin * G.zwin) / (bigint(p) * p);
    bigint deriv = G.derived_order();
    i64 branch = p % 3 == 1 ? p - 4 : p - 2;
    return bigint(p + 1) * p * (p - 1) * (p - 1) * (p - 1) * branch * phi * phi * phi * deriv;
}

// Packed byte encoding: the six elements in order, each as its exponent
// tuple, little-endian fixed-width fields sized from the windows.
struct StructureCodec {
    i64 wx, wy, wz; // bytes per exponent field
    i64 stride;     // bytes per element

    explicit StructureCodec(const Group& G)
        : wx(width(G.pe)), wy(width(G.ywin)), wz(G.zwin > 1 ? width(G.zwin) : 0) {
        stride = wx + wy + wz;
    }

    static i64 width(i64 window) {
        i64 b = 1;
        u64 maxv = 255;
        while ((u64)(window - 1) > maxv) { ++b; maxv = (maxv << 8) | 255; }
        return b;
    }

    void put(std::vector<unsigned char>& out, i64 v, i64 w) const {
        for (i64 t = 0; t < w; ++t) { out.push_back((unsigned char)(v & 255)); v >>= 8; }
    }
    i64 get(const unsigned char* in, i64 w) const {
        i64 v = 0;
        for (i64 t = w - 1; t >= 0; --t) v = (v << 8) | in[t];
        return v;
    }

    std::vector<unsigned char> encode(const Group&, const Structure& s) const {
        std::vector<unsigned char> out;
        out.reserve((size_t)(6 * stride));
        const Element* els[6] = {&s.t1.g1, &s.t1.g2, &s.t1.g3, &s.t2.g1, &s.t2.g2, &s.t2.g3};
        for (const Element* g : els) {
            put(out, g->x, wx);
            put(out, g->y, wy);
            if (wz) put(out, g->z, wz);
        }
        return out;
    }

    Structure decode(const Group&, const std::vector<unsigned char>& in) const {
        if ((i64)in.size() != 6 * stride) throw std::invalid_argument("structure decode: bad length");
        Element els[6];
        for (int t = 0; t < 6; ++t) {
            const unsigned char* base = in.data() + (size_t)(t * stride);
            els[t].x = get(base, wx);
            els[t].y = get(base + wx, wy);
            els[t].z = wz ? get(base + wx + wy, wz) : 0;
        }
        return {{els[0], els[1], els[2]}, {els[3], els[4], els[5]}};
    }
};

// Uniform random generating pair / candidate structure (candidates need not
// be Beauville; both triples do generate).
inline std::pair<Element, Element> random_generating_pair(const Group& G, std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> dist(0, G.order() - 1);
    for (;;) {
        Element g = G.decode(dist(rng));
        Element h = G.decode(dist(rng));
        if (G.is_generating_pair(g, h)) return {g, h};
    }
}

inline Structure random_candidate(const Group& G, std::mt19937_64& rng) {
    auto [x, y] = random_generating_pair(G, rng);
    auto [u, v] = random_generating_pair(G, rng);
    return {make_triple(G, x, y), make_triple(G, u, v)};
}

} // namespace beauville

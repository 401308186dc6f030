#pragma once

// Brute-force structural oracles used to cross-check the closed forms in
// group.hpp.  Everything here enumerates elements by dense code and is gated
// by an explicit size guard; these routines are correctness anchors, not a
// fast path.

#include <cstdint>
#include <queue>
#include <vector>

#include "group.hpp"

namespace beauville {

constexpr i64 kOracleOrderGuard = 1000000;

inline void check_oracle_scale(const Group& G, i64 guard = kOracleOrderGuard) {
    if (!G.order_fits_word() || G.order() > guard)
        throw std::invalid_argument("oracle: group order exceeds enumeration guard");
}

// Subgroup generated by `gens` (codes); closure under right multiplication by
// the generators.  In a finite group, positive words already contain inverses.
inline std::vector<char> subgroup_closure(const Group& G, const std::vector<Element>& gens) {
    check_oracle_scale(G);
    const i64 n = G.order();
    std::vector<char> in((size_t)n, 0);
    std::queue<i64> frontier;
    in[(size_t)G.code(G.id())] = 1;
    frontier.push(G.code(G.id()));
    while (!frontier.empty()) {
        Element g = G.decode(frontier.front());
        frontier.pop();
        for (const Element& s : gens) {
            i64 c = G.code(G.mul(g, s));
            if (!in[(size_t)c]) {
                in[(size_t)c] = 1;
                frontier.push(c);
            }
        }
    }
    return in;
}

inline i64 member_count(const std::vector<char>& mask) {
    i64 c = 0;
    for (char b : mask) c += b;
    return c;
}

// Normal closure of `gens`: close under conjugation by a and b, then take the
// subgroup closure.
inline std::vector<char> normal_closure(const Group& G, const std::vector<Element>& gens) {
    check_oracle_scale(G);
    const i64 n = G.order();
    std::vector<char> conj_closed((size_t)n, 0);
    std::vector<Element> all;
    std::queue<Element> work;
    for (const Element& g : gens) work.push(g);
    while (!work.empty()) {
        Element g = work.front();
        work.pop();
        i64 c = G.code(g);
        if (conj_closed[(size_t)c]) continue;
        conj_closed[(size_t)c] = 1;
        all.push_back(g);
        work.push(G.conj(g, G.gen_a()));
        work.push(G.conj(g, G.gen_b()));
    }
    return subgroup_closure(G, all);
}

inline std::vector<char> center_scan(const Group& G) {
    check_oracle_scale(G);
    const i64 n = G.order();
    std::vector<char> in((size_t)n, 0);
    for (i64 c = 0; c < n; ++c) {
        Element g = G.decode(c);
        if (G.comm(g, G.gen_a()) == G.id() && G.comm(g, G.gen_b()) == G.id()) in[(size_t)c] = 1;
    }
    return in;
}

inline std::vector<char> derived_scan(const Group& G) {
    return normal_closure(G, {G.comm(G.gen_a(), G.gen_b())});
}

// Phi(G) = G^p G' for a p-group.
inline std::vector<char> frattini_scan(const Group& G) {
    check_oracle_scale(G);
    const i64 n = G.order();
    std::vector<Element> gens;
    std::vector<char> seen((size_t)n, 0);
    for (i64 c = 0; c < n; ++c) {
        Element gp = G.pow(G.decode(c), G.p);
        i64 cc = G.code(gp);
        if (!seen[(size_t)cc]) {
            seen[(size_t)cc] = 1;
            gens.push_back(gp);
        }
    }
    gens.push_back(G.comm(G.gen_a(), G.gen_b()));
    return subgroup_closure(G, gens);
}

// Omega_t(G) = subgroup generated by elements of order at most p^t.
inline std::vector<char> omega_scan(const Group& G, i64 t) {
    check_oracle_scale(G);
    const i64 n = G.order();
    i64 bound = checked_pow(G.p, t, (i64)1 << 62);
    std::vector<Element> gens;
    for (i64 c = 0; c < n; ++c) {
        Element g = G.decode(c);
        if (G.order_of(g) <= bound) gens.push_back(g);
    }
    return subgroup_closure(G, gens);
}

inline bool is_generating_pair_bruteforce(const Group& G, const Element& g, const Element& h) {
    return member_count(subgroup_closure(G, {g, h})) == G.order();
}

// Checks the two hypotheses under which every Beauville structure descends to
// G/Phi(G): the power map q(g) = g^{p^{e-1}} satisfies
// q(x) = q(y) <=> q(x y^-1) = 1 for all x, y, and |G : Omega_{e-1}(G)| <= p^3.
//
// The biconditional holds iff the fibers of q are exactly the right cosets of
// K = q^{-1}(1), which is checked in O(|G| * |K|) instead of over all pairs.
inline bool check_inheritance_hypotheses(const Group& G) {
    check_oracle_scale(G);
    const i64 n = G.order();
    const i64 q = checked_pow(G.p, G.e - 1, G.pe);

    std::vector<i64> power((size_t)n);
    std::vector<i64> fiber_size((size_t)n, 0);
    std::vector<Element> kernel;
    for (i64 c = 0; c < n; ++c) {
        power[(size_t)c] = G.code(G.pow(G.decode(c), q));
        ++fiber_size[(size_t)power[(size_t)c]];
        if (power[(size_t)c] == G.code(G.id())) kernel.push_back(G.decode(c));
    }
    const i64 ksize = (i64)kernel.size();
    if ((i128)n * ksize > (i128)512 * kOracleOrderGuard)
        throw std::invalid_argument("check_inheritance_hypotheses: coset check exceeds work guard");
    for (i64 c = 0; c < n; ++c) {
        if (fiber_size[(size_t)power[(size_t)c]] != ksize) return false;
        Element g = G.decode(c);
        for (const Element& kel : kernel) {
            if (power[(size_t)G.code(G.mul(kel, g))] != power[(size_t)c]) return false;
        }
    }

    i64 omega = member_count(omega_scan(G, G.e - 1));
    return n / omega <= G.p * G.p * G.p;
}

// Nilpotency class by the lower central series, as an independent check.
inline i64 nilpotency_class_bruteforce(const Group& G) {
    check_oracle_scale(G);
    std::vector<char> gamma = derived_scan(G);
    i64 cls = 1;
    while (member_count(gamma) > 1) {
        ++cls;
        std::vector<Element> next_gens;
        const i64 n = G.order();
        for (i64 c = 0; c < n; ++c) {
            if (!gamma[(size_t)c]) continue;
            Element g = G.decode(c);
            next_gens.push_back(G.comm(g, G.gen_a()));
            next_gens.push_back(G.comm(g, G.gen_b()));
        }
        gamma = normal_closure(G, next_gens);
        if (cls > 64) throw std::logic_error("nilpotency_class_bruteforce: series does not terminate");
    }
    return cls;
}

} // namespace beauville

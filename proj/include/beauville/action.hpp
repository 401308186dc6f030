#pragma once

// The permutation machinery acting on triples and on Beauville structures.
//
// Six triple moves:
//   s0 = id            s1(x,y,z) = (y,z,x)      s2(x,y,z) = (z,x,y)
//   s3(x,y,z)=(z,y,x^y) s4(x,y,z) = (y,x,z^x)   s5(x,y,z) = (x,z,y^z)
//
// beta_w conjugates a whole triple by the value of a word w in its own first
// two entries; J(G) is the group of all beta moves.  The structure action is
// generated by one-sided sigma moves, one-sided beta moves with the one-letter
// words, diagonal automorphisms, and the swap tau; its orbits on the set of
// Beauville structures are the isomorphism classes being counted.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <thread>
#include <unordered_set>
#include <vector>

#include "automorphism.hpp"
#include "beauville.hpp"

namespace beauville {

inline Triple apply_sigma(const Group& G, int idx, const Triple& t) {
    switch (idx) {
        case 0: return t;
        case 1: return {t.g2, t.g3, t.g1};
        case 2: return {t.g3, t.g1, t.g2};
        case 3: return {t.g3, t.g2, G.conj(t.g1, t.g2)};
        case 4: return {t.g2, t.g1, G.conj(t.g3, t.g1)};
        case 5: return {t.g1, t.g3, G.conj(t.g2, t.g3)};
        default: throw std::invalid_argument("apply_sigma: index out of range");
    }
}

inline Triple conj_triple(const Group& G, const Triple& t, const Element& w) {
    return {G.conj(t.g1, w), G.conj(t.g2, w), G.conj(t.g3, w)};
}

enum class BetaWord { X, Y, Xinv, Yinv };

inline Element beta_conjugator(const Group& G, const Triple& t, BetaWord w) {
    switch (w) {
        case BetaWord::X: return t.g1;
        case BetaWord::Y: return t.g2;
        case BetaWord::Xinv: return G.inv(t.g1);
        default: return G.inv(t.g2);
    }
}

inline Triple apply_beta(const Group& G, BetaWord w, const Triple& t) {
    return conj_triple(G, t, beta_conjugator(G, t, w));
}

inline Triple apply_diag(const Group& G, const AutMap& a, const Triple& t) {
    return {apply(G, a, t.g1), apply(G, a, t.g2), apply(G, a, t.g3)};
}

// ---------------------------------------------------------------------------
// Triple universe T(G): all generating triples, indexed for permutation work.

struct TripleUniverse {
    Group G;
    std::vector<u64> keys; // sorted code(x) * |G| + code(y)

    explicit TripleUniverse(const Group& G_, i64 bound = 10000000) : G(G_) {
        check_oracle_scale(G, bound);
        const i64 n = G.order();
        if ((i128)n * n > (i128)bound * 64)
            throw std::invalid_argument("TripleUniverse: pair scan exceeds bound");
        for (i64 cx = 0; cx < n; ++cx) {
            Element x = G.decode(cx);
            if (G.in_frattini(x)) continue;
            for (i64 cy = 0; cy < n; ++cy) {
                Element y = G.decode(cy);
                if (!G.is_generating_pair(x, y)) continue;
                keys.push_back((u64)cx * (u64)n + (u64)cy);
            }
        }
        std::sort(keys.begin(), keys.end());
    }

    i64 size() const { return (i64)keys.size(); }

    u64 key(const Triple& t) const { return (u64)G.code(t.g1) * (u64)G.order() + (u64)G.code(t.g2); }

    i64 index(const Triple& t) const {
        auto it = std::lower_bound(keys.begin(), keys.end(), key(t));
        if (it == keys.end() || *it != key(t)) throw std::logic_error("TripleUniverse: triple not found");
        return it - keys.begin();
    }

    Triple triple(i64 idx) const {
        u64 k = keys[(size_t)idx];
        i64 cx = (i64)(k / (u64)G.order());
        i64 cy = (i64)(k % (u64)G.order());
        return make_triple(G, G.decode(cx), G.decode(cy));
    }
};

// The 36 composition identities: s_i o s_j = beta_w o s_k, with the word
// evaluated on the output of s_k.  A word value of -1 means no beta factor;
// otherwise the BetaWord enum value.
struct TableEntry {
    int k;
    int word; // -1 or (int)BetaWord
};

inline TableEntry composition_table_entry(int i, int j) {
    static const int X = (int)BetaWord::X, Y = (int)BetaWord::Y;
    static const int Xi = (int)BetaWord::Xinv, Yi = (int)BetaWord::Yinv;
    static const TableEntry T[6][6] = {
        {{0, -1}, {1, -1}, {2, -1}, {3, -1}, {4, -1}, {5, -1}},
        {{1, -1}, {2, -1}, {0, -1}, {4, X}, {5, X}, {3, X}},
        {{2, -1}, {0, -1}, {1, -1}, {5, Yi}, {3, Yi}, {4, Yi}},
        {{3, -1}, {5, -1}, {4, -1}, {0, Y}, {2, Y}, {1, Y}},
        {{4, -1}, {3, -1}, {5, -1}, {1, -1}, {0, -1}, {2, -1}},
        {{5, -1}, {4, -1}, {3, -1}, {2, Xi}, {1, Xi}, {0, Xi}},
    };
    return T[i][j];
}

// Checks all 36 identities pointwise over T(G).
inline bool verify_composition_table(const Group& G, i64 bound = 10000000) {
    TripleUniverse universe(G, bound);
    const i64 n = universe.size();
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            TableEntry entry = composition_table_entry(i, j);
            for (i64 idx = 0; idx < n; ++idx) {
                Triple t = universe.triple(idx);
                Triple lhs = apply_sigma(G, i, apply_sigma(G, j, t));
                Triple rhs = apply_sigma(G, entry.k, t);
                if (entry.word >= 0) rhs = apply_beta(G, (BetaWord)entry.word, rhs);
                if (!(lhs == rhs)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// J(G)

// Compact signature of a beta move: the conjugator value modulo Z(G) on a
// fixed set of generating pairs.  Word concatenation evaluates to pointwise
// products, so signatures compose componentwise.
struct BetaSignatureContext {
    Group G;
    std::vector<std::pair<Element, Element>> pairs;

    explicit BetaSignatureContext(const Group& G_, bool extended = false) : G(G_) {
        const Element a = G.gen_a(), b = G.gen_b(), ab = G.mul(a, b);
        pairs = {{a, b},  {b, a},          {a, ab},          {ab, b},
                 {b, ab}, {G.inv(a), b},   {ab, a},          {G.inv(b), ab}};
        if (extended) {
            const Element a2b = G.mul(G.pow(a, 2), b), ab2 = G.mul(a, G.pow(b, 2));
            pairs.push_back({a2b, b});
            pairs.push_back({a, ab2});
            pairs.push_back({ab2, a2b});
            pairs.push_back({G.inv(ab), a2b});
        }
    }

    // Canonical representative of gZ(G).
    Element center_reduce(const Element& g) const {
        switch (G.family) {
            case Family::Abelian: return G.id();
            case Family::Metacyclic: {
                i64 w = G.pe / G.p_power_i();
                return {g.x % w, g.y % w, 0};
            }
            default:
                return {g.x % G.zwin, g.y % G.zwin, 0};
        }
    }

    std::vector<Element> signature(BetaWord w) const {
        std::vector<Element> sig;
        sig.reserve(pairs.size());
        for (const auto& [x, y] : pairs) {
            Triple t = make_triple(G, x, y);
            sig.push_back(center_reduce(beta_conjugator(G, t, w)));
        }
        return sig;
    }

    std::vector<Element> mul(const std::vector<Element>& s, const std::vector<Element>& t) const {
        std::vector<Element> r(s.size());
        for (size_t q = 0; q < s.size(); ++q) r[q] = center_reduce(G.mul(s[q], t[q]));
        return r;
    }

    i64 closure_size(i64 bound = 10000000) const {
        struct VecHash {
            size_t operator()(const std::vector<i64>& v) const {
                u64 h = 1469598103934665603ull;
                for (i64 x : v) { h ^= (u64)x; h *= 1099511628211ull; }
                return (size_t)h;
            }
        };
        auto flatten = [](const std::vector<Element>& s) {
            std::vector<i64> v;
            v.reserve(s.size() * 2);
            for (const Element& g : s) { v.push_back(g.x); v.push_back(g.y); }
            return v;
        };
        std::vector<std::vector<Element>> gens = {signature(BetaWord::X), signature(BetaWord::Y)};
        std::unordered_set<std::vector<i64>, VecHash> seen;
        std::vector<std::vector<Element>> frontier;
        std::vector<Element> id(pairs.size(), G.id());
        seen.insert(flatten(id));
        frontier.push_back(id);
        while (!frontier.empty()) {
            std::vector<std::vector<Element>> next;
            for (const auto& f : frontier) {
                for (const auto& g : gens) {
                    auto prod = mul(f, g);
                    if (seen.insert(flatten(prod)).second) next.push_back(prod);
                }
            }
            if ((i64)seen.size() > bound) throw std::overflow_error("beta closure exceeded bound");
            frontier.swap(next);
        }
        return (i64)seen.size();
    }
};

// J(G) as honest permutations of T(G); oracle for the signature computation.
inline i64 j_order_permutation_oracle(const Group& G, i64 bound = 1000000) {
    TripleUniverse universe(G, bound);
    const i64 n = universe.size();
    auto as_perm = [&](BetaWord w) {
        std::vector<i64> perm((size_t)n);
        for (i64 idx = 0; idx < n; ++idx)
            perm[(size_t)idx] = universe.index(apply_beta(G, w, universe.triple(idx)));
        return perm;
    };
    struct VecHash {
        size_t operator()(const std::vector<i64>& v) const {
            u64 h = 1469598103934665603ull;
            for (i64 x : v) { h ^= (u64)x; h *= 1099511628211ull; }
            return (size_t)h;
        }
    };
    std::vector<std::vector<i64>> gens = {as_perm(BetaWord::X), as_perm(BetaWord::Y)};
    std::unordered_set<std::vector<i64>, VecHash> seen;
    std::vector<i64> id((size_t)n);
    for (i64 t = 0; t < n; ++t) id[(size_t)t] = t;
    std::vector<std::vector<i64>> frontier{id};
    seen.insert(id);
    while (!frontier.empty()) {
        std::vector<std::vector<i64>> next;
        for (const auto& f : frontier) {
            for (const auto& g : gens) {
                std::vector<i64> prod((size_t)n);
                for (i64 t = 0; t < n; ++t) prod[(size_t)t] = g[(size_t)f[(size_t)t]];
                if (seen.insert(prod).second) next.push_back(prod);
            }
        }
        frontier.swap(next);
    }
    return (i64)seen.size();
}

struct JOrderResult {
    i64 order;
    bool closed_form;   // p^{2m} for class <= 2
    bool oracle_backed; // permutation oracle confirmed the signature closure
};

inline JOrderResult j_group_order(const Group& G, i64 oracle_bound = 600000) {
    if (G.family == Family::Abelian) return {1, true, true};
    if (G.class_two() || G.nilpotency_class() == 2) {
        i64 m = G.derived_exponent_log();
        return {checked_pow(G.p, 2 * m, (i64)1 << 62), true, true};
    }
    // Metacyclic of class > 2: signature closure, with a stability check on an
    // extended pair set; permutation oracle only when T(G) is enumerable.
    BetaSignatureContext ctx(G);
    i64 sig = ctx.closure_size();
    BetaSignatureContext ext(G, true);
    if (ext.closure_size() != sig)
        throw std::logic_error("j_group_order: signature closure unstable under extended pair set");
    bool oracle = false;
    // |T(G)| = (p^2-1)(p^2-p) |Phi|^2
    bigint phi = (bigint(G.pe) * G.ywin * G.zwin) / (bigint(G.p) * G.p);
    bigint tsize = (bigint(G.p) * G.p - 1) * (bigint(G.p) * G.p - G.p) * phi * phi;
    if (tsize <= oracle_bound) {
        if (j_order_permutation_oracle(G, oracle_bound) != sig)
            throw std::logic_error("j_group_order: signature closure disagrees with permutation oracle");
        oracle = true;
    }
    return {sig, false, oracle};
}

inline bigint a_u_order_big(const Group& G) {
    JOrderResult j = j_group_order(G);
    return bigint(72) * j.order * j.order * aut_order_big(G) * inner_order(G);
}

// ---------------------------------------------------------------------------
// S3 quotient: the six cosets s_i J(G) are distinct and multiply like S3.

inline bool verify_s3_quotient(const Group& G, i64 bound = 1000000) {
    TripleUniverse universe(G, bound);
    const i64 n = universe.size();

    auto perm_of = [&](auto&& fn) {
        std::vector<i64> perm((size_t)n);
        for (i64 idx = 0; idx < n; ++idx) perm[(size_t)idx] = universe.index(fn(universe.triple(idx)));
        return perm;
    };

    struct VecHash {
        size_t operator()(const std::vector<i64>& v) const {
            u64 h = 1469598103934665603ull;
            for (i64 x : v) { h ^= (u64)x; h *= 1099511628211ull; }
            return (size_t)h;
        }
    };

    // J as a permutation set.
    std::unordered_set<std::vector<i64>, VecHash> jset;
    {
        std::vector<std::vector<i64>> gens = {perm_of([&](const Triple& t) { return apply_beta(G, BetaWord::X, t); }),
                                              perm_of([&](const Triple& t) { return apply_beta(G, BetaWord::Y, t); })};
        std::vector<i64> id((size_t)n);
        for (i64 t = 0; t < n; ++t) id[(size_t)t] = t;
        std::vector<std::vector<i64>> frontier{id};
        jset.insert(id);
        while (!frontier.empty()) {
            std::vector<std::vector<i64>> next;
            for (const auto& f : frontier)
                for (const auto& g : gens) {
                    std::vector<i64> prod((size_t)n);
                    for (i64 t = 0; t < n; ++t) prod[(size_t)t] = g[(size_t)f[(size_t)t]];
                    if (jset.insert(prod).second) next.push_back(prod);
                }
            frontier.swap(next);
        }
    }

    std::vector<std::vector<i64>> sigma(6);
    for (int s = 0; s < 6; ++s)
        sigma[s] = perm_of([&](const Triple& t) { return apply_sigma(G, s, t); });

    auto compose_perm = [&](const std::vector<i64>& f, const std::vector<i64>& g) {
        // (f then g)
        std::vector<i64> r((size_t)n);
        for (i64 t = 0; t < n; ++t) r[(size_t)t] = g[(size_t)f[(size_t)t]];
        return r;
    };
    auto invert_perm = [&](const std::vector<i64>& f) {
        std::vector<i64> r((size_t)n);
        for (i64 t = 0; t < n; ++t) r[(size_t)f[(size_t)t]] = t;
        return r;
    };
    auto same_coset = [&](const std::vector<i64>& f, const std::vector<i64>& g) {
        // f lies in g.J  <=>  g^-1 o f in J, i.e. "f then g^-1".
        return jset.count(compose_perm(f, invert_perm(g))) > 0;
    };

    // Distinct cosets.
    for (int s = 0; s < 6; ++s)
        for (int t = s + 1; t < 6; ++t)
            if (same_coset(sigma[s], sigma[t])) return false;

    // Multiplication matches the sigma pattern of the 36-entry table.
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            // s_i o s_j: apply s_j first.
            std::vector<i64> prod = compose_perm(sigma[j], sigma[i]);
            if (!same_coset(prod, sigma[composition_table_entry(i, j).k])) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Generators of the structure action.

struct ActionGen {
    enum class Kind { SigmaFirst, SigmaSecond, BetaFirst, BetaSecond, Diag, Tau } kind;
    int sigma = 0;     // SigmaFirst/SigmaSecond
    BetaWord word = BetaWord::X;
    AutMap aut;        // Diag
    std::string label;
};

inline Structure apply_gen(const Group& G, const ActionGen& g, const Structure& s) {
    using K = ActionGen::Kind;
    switch (g.kind) {
        case K::SigmaFirst: return {apply_sigma(G, g.sigma, s.t1), s.t2};
        case K::SigmaSecond: return {s.t1, apply_sigma(G, g.sigma, s.t2)};
        case K::BetaFirst: return {apply_beta(G, g.word, s.t1), s.t2};
        case K::BetaSecond: return {s.t1, apply_beta(G, g.word, s.t2)};
        case K::Diag: return {apply_diag(G, g.aut, s.t1), apply_diag(G, g.aut, s.t2)};
        default: return {s.t2, s.t1};
    }
}

inline std::vector<ActionGen> au_generators(const Group& G) {
    std::vector<ActionGen> gens;
    using K = ActionGen::Kind;
    gens.push_back({K::SigmaFirst, 1, BetaWord::X, {}, "sigma1.first"});
    gens.push_back({K::SigmaFirst, 4, BetaWord::X, {}, "sigma4.first"});
    gens.push_back({K::SigmaSecond, 1, BetaWord::X, {}, "sigma1.second"});
    gens.push_back({K::SigmaSecond, 4, BetaWord::X, {}, "sigma4.second"});
    gens.push_back({K::BetaFirst, 0, BetaWord::X, {}, "betaX.first"});
    gens.push_back({K::BetaFirst, 0, BetaWord::Y, {}, "betaY.first"});
    gens.push_back({K::BetaSecond, 0, BetaWord::X, {}, "betaX.second"});
    gens.push_back({K::BetaSecond, 0, BetaWord::Y, {}, "betaY.second"});
    int idx = 0;
    for (const AutMap& t : aut_generators(G)) {
        gens.push_back({K::Diag, 0, BetaWord::X, t, "diag" + std::to_string(idx++)});
    }
    gens.push_back({K::Tau, 0, BetaWord::X, {}, "tau"});
    return gens;
}

// ---------------------------------------------------------------------------
// Orbit enumeration over the full structure set.
//
// States are packed as the four defining codes (x, y, u, v); the third
// entries are product-one redundancies.  The packed universe is sorted, so
// membership is binary search and the visited set is a flat bitmap.

struct OrbitStats {
    i64 orbit_count = 0;
    std::map<i64, i64> orbit_sizes; // size -> multiplicity
    i64 states = 0;
    double seconds = 0;
};

namespace detail {

inline u64 pack_state(const Group& G, const Structure& s) {
    u64 n = (u64)G.order();
    return (((u64)G.code(s.t1.g1) * n + (u64)G.code(s.t1.g2)) * n + (u64)G.code(s.t2.g1)) * n +
           (u64)G.code(s.t2.g2);
}

inline Structure unpack_state(const Group& G, u64 key) {
    u64 n = (u64)G.order();
    i64 cv = (i64)(key % n); key /= n;
    i64 cu = (i64)(key % n); key /= n;
    i64 cy = (i64)(key % n); key /= n;
    i64 cx = (i64)key;
    return {make_triple(G, G.decode(cx), G.decode(cy)), make_triple(G, G.decode(cu), G.decode(cv))};
}

} // namespace detail

// Checkpoint layout: a text header (group, codec widths, generator labels
// hash) followed by the visited states and the frontier, both as sorted
// canonical byte encodings.
inline u64 generator_list_hash(const std::vector<ActionGen>& gens) {
    u64 h = 1469598103934665603ull;
    for (const ActionGen& g : gens)
        for (char c : g.label) { h ^= (u64)(unsigned char)c; h *= 1099511628211ull; }
    return h;
}

inline void write_checkpoint(const Group& G, const std::string& path, const std::vector<u64>& universe,
                             const std::vector<char>& visited, const std::vector<i64>& frontier,
                             const std::vector<ActionGen>& gens) {
    StructureCodec codec(G);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
    out << "beauville-checkpoint 1\n"
        << "group " << G.describe() << "\n"
        << "element_bytes " << codec.stride << "\n"
        << "generators " << generator_list_hash(gens) << "\n";
    std::vector<std::vector<unsigned char>> rows;
    for (size_t idx = 0; idx < visited.size(); ++idx)
        if (visited[idx]) rows.push_back(codec.encode(G, detail::unpack_state(G, universe[idx])));
    std::sort(rows.begin(), rows.end());
    out << "visited " << rows.size() << "\n";
    for (auto& r : rows) out.write((const char*)r.data(), (std::streamsize)r.size());
    rows.clear();
    for (i64 idx : frontier) rows.push_back(codec.encode(G, detail::unpack_state(G, universe[(size_t)idx])));
    std::sort(rows.begin(), rows.end());
    out << "\nfrontier " << rows.size() << "\n";
    for (auto& r : rows) out.write((const char*)r.data(), (std::streamsize)r.size());
}

inline std::vector<u64> structure_universe(const Group& G, i64 max_states) {
    if ((i128)G.order() * G.order() * G.order() * G.order() > ((i128)1 << 62))
        throw std::overflow_error("structure_universe: state key exceeds 62 bits");
    std::vector<u64> keys;
    keys.reserve((size_t)std::min<i64>(max_states, (i64)1 << 24));
    for_each_structure(G, [&](const Structure& s) { keys.push_back(detail::pack_state(G, s)); },
                       max_states);
    std::sort(keys.begin(), keys.end());
    return keys;
}

// Breadth-first orbit partition of the universe under the action generators.
// `threads` shards the neighbor expansion of each frontier; the resulting
// partition is independent of the thread count.
inline OrbitStats orbit_partition(const Group& G, i64 max_states = 20000000, int threads = 1,
                                  const std::string& checkpoint_path = "",
                                  const std::vector<ActionGen>* generator_override = nullptr) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<u64> universe = structure_universe(G, max_states);
    const i64 n = (i64)universe.size();
    std::vector<ActionGen> gens = generator_override ? *generator_override : au_generators(G);

    std::vector<char> visited((size_t)n, 0);
    auto index_of = [&](u64 key) -> i64 {
        auto it = std::lower_bound(universe.begin(), universe.end(), key);
        if (it == universe.end() || *it != key)
            throw std::logic_error("orbit_partition: generator left the structure set");
        return it - universe.begin();
    };

    auto expand = [&](const std::vector<i64>& frontier, std::vector<i64>& out, size_t begin, size_t end) {
        for (size_t q = begin; q < end; ++q) {
            Structure s = detail::unpack_state(G, universe[(size_t)frontier[q]]);
            for (const ActionGen& g : gens) out.push_back(index_of(detail::pack_state(G, apply_gen(G, g, s))));
        }
    };

    OrbitStats stats;
    i64 total_visited = 0;
    i64 last_checkpoint = 0;
    for (i64 seed = 0; seed < n; ++seed) {
        if (visited[(size_t)seed]) continue;
        i64 orbit_size = 0;
        std::vector<i64> frontier{seed};
        visited[(size_t)seed] = 1;
        while (!frontier.empty()) {
            orbit_size += (i64)frontier.size();
            total_visited += (i64)frontier.size();
            std::vector<i64> produced;
            if (threads <= 1 || frontier.size() < 1024) {
                expand(frontier, produced, 0, frontier.size());
            } else {
                std::vector<std::vector<i64>> parts((size_t)threads);
                std::vector<std::thread> pool;
                size_t chunk = (frontier.size() + threads - 1) / threads;
                for (int t = 0; t < threads; ++t) {
                    size_t b = std::min(frontier.size(), (size_t)t * chunk);
                    size_t e2 = std::min(frontier.size(), b + chunk);
                    pool.emplace_back([&, b, e2, t] { expand(frontier, parts[(size_t)t], b, e2); });
                }
                for (auto& th : pool) th.join();
                for (auto& part : parts) produced.insert(produced.end(), part.begin(), part.end());
            }
            std::vector<i64> next;
            for (i64 idx : produced) {
                if (!visited[(size_t)idx]) {
                    visited[(size_t)idx] = 1;
                    next.push_back(idx);
                }
            }
            frontier.swap(next);
            if (!checkpoint_path.empty() && total_visited - last_checkpoint >= 1000000) {
                last_checkpoint = total_visited;
                write_checkpoint(G, checkpoint_path, universe, visited, frontier, gens);
            }
        }
        ++stats.orbit_count;
        ++stats.orbit_sizes[orbit_size];
    }
    stats.states = n;
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return stats;
}

// Flat open-addressing set of nonzero u64 keys (state packs are never zero:
// a generating first entry has a nonzero code).
class PackedStateSet {
public:
    explicit PackedStateSet(i64 expected) {
        size_t cap = 64;
        while (cap < (size_t)expected * 2) cap <<= 1;
        slots_.assign(cap, 0);
    }
    bool insert(u64 key) {
        if ((size_ + 1) * 3 > slots_.size() * 2) grow();
        size_t mask = slots_.size() - 1;
        size_t idx = hash(key) & mask;
        while (slots_[idx] != 0) {
            if (slots_[idx] == key) return false;
            idx = (idx + 1) & mask;
        }
        slots_[idx] = key;
        ++size_;
        return true;
    }
    i64 size() const { return (i64)size_; }

private:
    static size_t hash(u64 x) {
        x ^= x >> 33; x *= 0xff51afd7ed558ccdull;
        x ^= x >> 33; x *= 0xc4ceb9fe1a85ec53ull;
        return (size_t)(x ^ (x >> 33));
    }
    void grow() {
        std::vector<u64> old;
        old.swap(slots_);
        slots_.assign(old.size() * 2, 0);
        size_ = 0;
        for (u64 k : old)
            if (k) insert(k);
    }
    std::vector<u64> slots_;
    size_t size_ = 0;
};

// Orbit of a single structure with a state budget: exact size when the
// frontier exhausts, otherwise a certified lower bound.
struct OrbitOfResult {
    i64 size = 0;
    bool exact = true;
};

inline OrbitOfResult orbit_of(const Group& G, const Structure& start, i64 budget = 20000000) {
    if ((i128)G.order() * G.order() * G.order() * G.order() > ((i128)1 << 62))
        throw std::overflow_error("orbit_of: state key exceeds 62 bits");
    std::vector<ActionGen> gens = au_generators(G);
    PackedStateSet seen(std::min<i64>(budget, 1 << 16));
    std::vector<u64> frontier{detail::pack_state(G, start)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<u64> next;
        for (u64 key : frontier) {
            Structure s = detail::unpack_state(G, key);
            for (const ActionGen& g : gens) {
                u64 nk = detail::pack_state(G, apply_gen(G, g, s));
                if (seen.insert(nk)) next.push_back(nk);
            }
            if (seen.size() > budget) return {seen.size(), false};
        }
        frontier.swap(next);
    }
    return {seen.size(), true};
}

} // namespace beauville

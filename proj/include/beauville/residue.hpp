#pragma once

// Exact arithmetic modulo odd prime powers.
//
// Residues are canonical in [0, p^e) everywhere.  All intermediate products
// go through 128-bit arithmetic; Modulus construction rejects p^e > 2^62 so
// that no canonical residue product can overflow.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace beauville {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline i64 mod_reduce(i128 v, i64 m) {
    i64 r = static_cast<i64>(v % m);
    return r < 0 ? r + m : r;
}

inline i64 add_mod(i64 a, i64 b, i64 m) { return mod_reduce((i128)a + b, m); }
inline i64 sub_mod(i64 a, i64 b, i64 m) { return mod_reduce((i128)a - b, m); }
inline i64 mul_mod(i64 a, i64 b, i64 m) { return mod_reduce((i128)a * b, m); }

inline i64 pow_mod(i64 base, u64 exp, i64 m) {
    i64 r = 1 % m;
    i64 b = mod_reduce(base, m);
    while (exp) {
        if (exp & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return r;
}

// gcd(a,m) must be 1; extended Euclid.
inline i64 inv_mod(i64 a, i64 m) {
    i64 t = 0, new_t = 1;
    i64 r = m, new_r = mod_reduce(a, m);
    while (new_r != 0) {
        i64 q = r / new_r;
        i64 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: argument is not a unit");
    return mod_reduce(t, m);
}

// Trial division; intended for the small primes this library works with.
inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (i64 d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// p^e with overflow check against `limit`.
inline i64 checked_pow(i64 p, i64 e, i64 limit) {
    i64 v = 1;
    for (i64 t = 0; t < e; ++t) {
        if (v > limit / p) throw std::overflow_error("checked_pow: power exceeds word limit");
        v *= p;
    }
    return v;
}

// Generator of the (cyclic) unit group mod p^e, p an odd prime.
inline i64 primitive_root(i64 p, i64 e) {
    std::vector<i64> qs;
    i64 n = p - 1;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            qs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) qs.push_back(n);
    i64 g = 0;
    for (i64 cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (i64 q : qs) {
            if (pow_mod(cand, (u64)((p - 1) / q), p) == 1) { ok = false; break; }
        }
        if (ok) { g = cand; break; }
    }
    if (g == 0) throw std::logic_error("primitive_root: none found");
    if (e == 1) return g;
    i64 pe = checked_pow(p, e, (i64)1 << 62);
    // g lifts to a generator mod p^e unless g^(p-1) = 1 mod p^2, in which case g+p does.
    if (pow_mod(g, (u64)(p - 1), p * p) == 1) g += p;
    return mod_reduce(g, pe);
}

struct Modulus {
    i64 p = 0;
    i64 e = 0;
    i64 pe = 0;

    Modulus() = default;
    Modulus(i64 p_, i64 e_) : p(p_), e(e_) {
        if (e <= 0) throw std::invalid_argument("Modulus: exponent must be positive");
        if (p < 5 || !is_prime(p)) throw std::invalid_argument("Modulus: p must be a prime >= 5");
        pe = checked_pow(p, e, (i64)1 << 62);
    }
};

inline bool is_unit(i64 n, const Modulus& m) {
    return mod_reduce(n, m.p) != 0;
}

namespace detail {

inline i64 eval_quadratic(i64 a, i64 b, i64 c, i64 x, i64 m) {
    return mod_reduce(((i128)a * x % m * x + (i128)b * x + c), m);
}

} // namespace detail

// Complete solution set of A X^2 + B X + C = 0 (mod p^e), returned sorted in
// [0, p^e).  Roots are found mod p by scan and lifted level by level: a simple
// root (p does not divide 2AX+B) lifts uniquely by a Newton step, a multiple
// root fans out over all p candidates at the next level.
inline std::vector<i64> solve_quadratic(i64 A, i64 B, i64 C, const Modulus& m) {
    const i64 p = m.p;
    i64 a = mod_reduce(A, m.pe), b = mod_reduce(B, m.pe), c = mod_reduce(C, m.pe);
    if (a % p == 0 && b % p == 0 && c % p == 0)
        throw std::invalid_argument("solve_quadratic: congruence is identically zero mod p");

    std::vector<i64> roots;
    for (i64 x = 0; x < p; ++x) {
        if (detail::eval_quadratic(a % p, b % p, c % p, x, p) == 0) roots.push_back(x);
    }

    i64 mod = p;
    for (i64 level = 1; level < m.e; ++level) {
        i64 next = mod * p;
        std::vector<i64> lifted;
        for (i64 r : roots) {
            i64 deriv = mod_reduce((i128)2 * a * r + b, p);
            if (deriv != 0) {
                i64 f = detail::eval_quadratic(a, b, c, r, next);
                i64 step = mul_mod(f, inv_mod(mod_reduce((i128)2 * a * r + b, next), next), next);
                lifted.push_back(sub_mod(r, step, next));
            } else {
                for (i64 s = 0; s < p; ++s) {
                    i64 cand = r + s * mod;
                    if (detail::eval_quadratic(a, b, c, cand, next) == 0) lifted.push_back(cand);
                }
            }
            if (lifted.size() > (1u << 22))
                throw std::overflow_error("solve_quadratic: solution set too large");
        }
        roots.swap(lifted);
        mod = next;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (i64 r : roots) {
        if (detail::eval_quadratic(a, b, c, r, m.pe) != 0)
            throw std::logic_error("solve_quadratic: lifted root fails substitution");
    }
    return roots;
}

// Number of pairs (k,l) mod p^e with k^2 + l^2 - k*l = 1, counted by a
// per-k quadratic solve in l.
inline i64 count_norm_one_pairs(const Modulus& m) {
    if (m.pe > 1000000) throw std::invalid_argument("count_norm_one_pairs: p^e exceeds enumeration guard");
    i64 total = 0;
    for (i64 k = 0; k < m.pe; ++k) {
        // l^2 - k*l + (k^2 - 1) = 0 (mod p^e); leading coefficient 1 is a unit.
        total += (i64)solve_quadratic(1, sub_mod(0, k, m.pe), sub_mod(mul_mod(k, k, m.pe), 1, m.pe), m).size();
    }
    return total;
}

} // namespace beauville

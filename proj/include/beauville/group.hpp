#pragma once

// Four families of 2-generator p-groups (p >= 5) given by power-commutator
// normal forms with closed-form collection:
//
//   Abelian        C_{p^e} x C_{p^e}                 element a^x b^y
//   Metacyclic     a^{p^e} = b^{p^e} = 1,            element b^y a^x
//                  [a,b] = a^{p^i},  1 <= i <= e-1
//   ClassTwoSplit  a^{p^e} = b^{p^e} = c^{p^j} = 1,  element a^x b^y c^z
//                  c = [b,a] central,  0 < j <= e
//   ClassTwoFused  a^{p^e} = c^{p^j} = 1,            element a^x b^y c^z
//                  b^{p^i} = c^{p^k}, c = [b,a] central,
//                  0 < k < j <= i <= e and e = i+j-k
//
// Commutator convention: [g,h] = g^-1 h^-1 g h, so that ba = ab.[b,a] in the
// class-2 families and b^-1 a b = a^{1+p^i} in the metacyclic one.  The
// metacyclic normal form keeps b on the left so the derived subgroup
// <a^{p^i}> lives entirely in the a-exponent and conjugation by b^y is a
// single multiplication by (1+p^i)^y mod p^e.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "residue.hpp"

namespace beauville {

enum class Family { Abelian, Metacyclic, ClassTwoSplit, ClassTwoFused };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Abelian: return "abelian";
        case Family::Metacyclic: return "metacyclic";
        case Family::ClassTwoSplit: return "split";
        case Family::ClassTwoFused: return "fused";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
    if (s == "abelian") return Family::Abelian;
    if (s == "metacyclic") return Family::Metacyclic;
    if (s == "split") return Family::ClassTwoSplit;
    if (s == "fused") return Family::ClassTwoFused;
    return std::nullopt;
}

struct Element {
    i64 x = 0; // exponent of a
    i64 y = 0; // exponent of b
    i64 z = 0; // exponent of c = [b,a]; always 0 outside the class-2 families

    bool operator==(const Element&) const = default;
};

class Group {
public:
    Family family;
    i64 p, e, i, j, k;

    i64 pe;   // p^e, the a-exponent window (and b-window except Fused)
    i64 ywin; // b-exponent window: p^e, or p^i for Fused
    i64 zwin; // c-exponent window: p^j for class 2, else 1

    Group(Family f, i64 p_, i64 e_, i64 i_ = 0, i64 j_ = 0, i64 k_ = 0)
        : family(f), p(p_), e(e_), i(i_), j(j_), k(k_) {
        if (e < 1) throw std::invalid_argument("group: e must be >= 1");
        if (p < 5 || !is_prime(p)) throw std::invalid_argument("group: p must be a prime >= 5");
        pe = checked_pow(p, e, (i64)1 << 62);
        switch (family) {
            case Family::Abelian:
                require(i == 0 && j == 0 && k == 0, "abelian family takes no i, j, k");
                ywin = pe; zwin = 1;
                break;
            case Family::Metacyclic:
                require(1 <= i && i <= e - 1, "metacyclic family needs 1 <= i <= e-1");
                require(j == 0 && k == 0, "metacyclic family takes no j, k");
                ywin = pe; zwin = 1;
                pi_pow_ = checked_pow(p, i, pe);
                twist_ = 1 + pi_pow_;
                twist_order_ = checked_pow(p, e - i, pe);
                build_twist_table();
                break;
            case Family::ClassTwoSplit:
                require(0 < j && j <= e, "split family needs 0 < j <= e");
                require(i == 0 && k == 0, "split family takes no i, k");
                ywin = pe; zwin = checked_pow(p, j, pe);
                break;
            case Family::ClassTwoFused:
                require(0 < k && k < j && j <= i && i <= e, "fused family needs 0 < k < j <= i <= e");
                require(e == i + j - k, "fused family needs e = i+j-k");
                ywin = checked_pow(p, i, pe);
                zwin = checked_pow(p, j, pe);
                pk_pow_ = checked_pow(p, k, pe);
                break;
        }
    }

    static Group abelian(i64 p, i64 e) { return Group(Family::Abelian, p, e); }
    static Group metacyclic(i64 p, i64 e, i64 i) { return Group(Family::Metacyclic, p, e, i); }
    static Group split(i64 p, i64 e, i64 j) { return Group(Family::ClassTwoSplit, p, e, 0, j); }
    static Group fused(i64 p, i64 e, i64 i, i64 j, i64 k) { return Group(Family::ClassTwoFused, p, e, i, j, k); }

    bool class_two() const {
        return family == Family::ClassTwoSplit || family == Family::ClassTwoFused;
    }

    // |G| = pe * ywin * zwin; may exceed the 62-bit code range for large
    // parameters, so callers that index elements must check order_fits_word().
    i128 order128() const { return (i128)pe * ywin * zwin; }
    bool order_fits_word() const { return order128() <= ((i128)1 << 62); }
    i64 order() const {
        if (!order_fits_word()) throw std::overflow_error("group order exceeds machine word");
        return (i64)order128();
    }
    i64 exponent() const { return pe; }

    i64 nilpotency_class() const {
        switch (family) {
            case Family::Abelian: return 1;
            case Family::Metacyclic: return (e + i - 1) / i; // least n with n*i >= e
            default: return 2;
        }
    }

    Element id() const { return {0, 0, 0}; }
    Element gen_a() const { return {1, 0, 0}; }
    Element gen_b() const { return {0, 1, 0}; }
    Element gen_c() const {
        if (!class_two()) throw std::domain_error("gen_c: family has no c generator");
        return {0, 0, 1};
    }

    // Normalizes raw integer exponents into the family's canonical window.
    // For Fused, every wrap of the b-exponent past p^i deposits c^{p^k}.
    Element make(i128 x, i128 y, i128 z = 0) const {
        Element g;
        g.x = mod_reduce(x, pe);
        if (family == Family::ClassTwoFused) {
            i128 q = y >= 0 ? y / ywin : -((-y + ywin - 1) / ywin);
            g.y = (i64)(y - q * ywin);
            z += q * pk_pow_;
        } else {
            g.y = mod_reduce(y, ywin);
        }
        g.z = zwin == 1 ? 0 : mod_reduce(z, zwin);
        return g;
    }

    Element mul(const Element& g, const Element& h) const {
        switch (family) {
            case Family::Abelian:
                return {add_mod(g.x, h.x, pe), add_mod(g.y, h.y, pe), 0};
            case Family::Metacyclic:
                // (b^y1 a^x1)(b^y2 a^x2) = b^{y1+y2} a^{x1 (1+p^i)^{y2} + x2}
                return {mod_reduce((i128)g.x * twist_pow(h.y) + h.x, pe), add_mod(g.y, h.y, pe), 0};
            default:
                // (a^x1 b^y1 c^z1)(a^x2 b^y2 c^z2) = a^{x1+x2} b^{y1+y2} c^{z1+z2+y1 x2}
                return make((i128)g.x + h.x, (i128)g.y + h.y, (i128)g.z + h.z + (i128)g.y * h.x);
        }
    }

    Element pow(const Element& g, i64 n) const {
        if (n < 0) return pow(inv(g), -n);
        switch (family) {
            case Family::Abelian:
                return {mul_mod(g.x, mod_reduce(n, pe), pe), mul_mod(g.y, mod_reduce(n, pe), pe), 0};
            case Family::Metacyclic: {
                Element r = id(), base = g;
                u64 m = (u64)n;
                while (m) {
                    if (m & 1) r = mul(r, base);
                    base = mul(base, base);
                    m >>= 1;
                }
                return r;
            }
            default: {
                // (a^x b^y c^z)^n = a^{nx} b^{ny} c^{nz + xy n(n-1)/2}
                i64 half = half_binomial(n);
                i128 zz = (i128)mod_reduce(n, zwin) * g.z + (i128)mul_mod(mul_mod(g.x, g.y, zwin), half, zwin);
                return make((i128)mod_reduce(n, pe) * g.x, (i128)n * g.y, zz);
            }
        }
    }

    Element inv(const Element& g) const {
        switch (family) {
            case Family::Abelian:
                return {sub_mod(0, g.x, pe), sub_mod(0, g.y, pe), 0};
            case Family::Metacyclic:
                // (b^y a^x)^-1 = b^{-y} a^{-x (1+p^i)^{-y}}
                return {mod_reduce(-(i128)g.x * twist_pow(mod_reduce(-g.y, twist_order_)), pe),
                        sub_mod(0, g.y, pe), 0};
            default:
                // (a^x b^y c^z)^-1 = a^{-x} b^{-y} c^{-z+xy}
                return make(-(i128)g.x, -(i128)g.y, -(i128)g.z + (i128)g.x * g.y);
        }
    }

    Element conj(const Element& g, const Element& h) const { return mul(inv(h), mul(g, h)); }
    Element comm(const Element& g, const Element& h) const {
        return mul(inv(mul(h, g)), mul(g, h));
    }

    // Least n >= 1 with g^n = 1; always a power of p.
    i64 order_of(const Element& g) const {
        Element h = g;
        i64 ord = 1;
        while (!(h == id())) {
            h = pow(h, p);
            ord *= p;
            if (ord > pe) throw std::logic_error("order_of: exceeded group exponent");
        }
        return ord;
    }

    bool in_frattini(const Element& g) const { return g.x % p == 0 && g.y % p == 0; }

    bool in_center(const Element& g) const {
        switch (family) {
            case Family::Abelian: return true;
            case Family::Metacyclic: {
                i64 w = checked_pow(p, e - i, pe);
                return g.x % w == 0 && g.y % w == 0;
            }
            default: {
                i64 pj = checked_pow(p, j == 0 ? 0 : j, pe);
                return g.x % pj == 0 && g.y % pj == 0;
            }
        }
    }

    bool in_derived(const Element& g) const {
        switch (family) {
            case Family::Abelian: return g == id();
            case Family::Metacyclic: return g.y == 0 && g.x % pi_pow_ == 0;
            default: return g.x == 0 && g.y == 0;
        }
    }

    i64 center_order() const {
        switch (family) {
            case Family::Abelian: return order();
            case Family::Metacyclic: return checked_pow(p, 2 * i, (i64)1 << 62);
            case Family::ClassTwoSplit: return checked_pow(p, 2 * e - j, (i64)1 << 62);
            default: return checked_pow(p, e + i - j, (i64)1 << 62);
        }
    }

    i64 derived_order() const {
        switch (family) {
            case Family::Abelian: return 1;
            case Family::Metacyclic: return checked_pow(p, e - i, pe);
            default: return zwin;
        }
    }

    i64 frattini_order() const { return order() / (p * p); }

    // Exponent of the derived subgroup (p^m with G/Z = C_{p^m} x C_{p^m});
    // defined for the class-2 presentations and abelian groups.
    i64 derived_exponent_log() const {
        switch (family) {
            case Family::Abelian: return 0;
            case Family::Metacyclic:
                if (nilpotency_class() > 2)
                    throw std::domain_error("derived_exponent_log: metacyclic family of class > 2");
                return e - i;
            default: return j;
        }
    }

    // Image of g in G/Phi(G) = C_p x C_p.
    std::array<i64, 2> frattini_coords(const Element& g) const {
        return {g.x % p, g.y % p};
    }

    // Maximal subgroups correspond to points of P^1(F_p); ids 0..p-1 are the
    // lines (1:s), id p is (0:1).
    i64 line_of(const Element& g) const {
        auto [cx, cy] = frattini_coords(g);
        if (cx == 0 && cy == 0) throw std::domain_error("line_of: element lies in the Frattini subgroup");
        if (cx != 0) return mul_mod(cy, inv_mod(cx, p), p);
        return p;
    }

    bool is_generating_pair(const Element& g, const Element& h) const {
        auto [gx, gy] = frattini_coords(g);
        auto [hx, hy] = frattini_coords(h);
        return mod_reduce((i128)gx * hy - (i128)gy * hx, p) != 0;
    }

    // Abelianization G/G' as C_{wa} x C_{wb} in the images of a and b.
    i64 ab_window_a() const { return family == Family::Metacyclic ? pi_pow_ : pe; }
    i64 ab_window_b() const { return ywin; }
    std::array<i64, 2> ab_coords(const Element& g) const {
        return {g.x % ab_window_a(), g.y % ab_window_b()};
    }

    // Dense element index in [0, |G|); requires order_fits_word().
    i64 code(const Element& g) const { return g.x + pe * (g.y + ywin * g.z); }
    Element decode(i64 c) const {
        Element g;
        g.x = c % pe; c /= pe;
        g.y = c % ywin; c /= ywin;
        g.z = c;
        return g;
    }

    // Normal-form word, e.g. "a^3 b^1 c^2" (class 2), "b^2 a^13" (metacyclic).
    std::string format(const Element& g) const {
        std::ostringstream os;
        if (family == Family::Metacyclic) {
            os << "b^" << g.y << " a^" << g.x;
        } else {
            os << "a^" << g.x << " b^" << g.y;
            if (class_two()) os << " c^" << g.z;
        }
        return os.str();
    }

    Element parse(const std::string& s) const {
        i64 vals[3] = {0, 0, 0};
        bool seen[3] = {false, false, false};
        std::istringstream is(s);
        std::string tok;
        while (is >> tok) {
            auto caret = tok.find('^');
            if (caret == std::string::npos || caret == 0)
                throw std::invalid_argument("element parse: expected gen^exp tokens");
            char gen = tok[0];
            int idx = gen == 'a' ? 0 : gen == 'b' ? 1 : gen == 'c' ? 2 : -1;
            if (idx < 0 || caret != 1 || seen[idx])
                throw std::invalid_argument("element parse: bad generator token");
            vals[idx] = std::stoll(tok.substr(caret + 1));
            seen[idx] = true;
        }
        if (seen[2] && !class_two())
            throw std::invalid_argument("element parse: family has no c generator");
        return make(vals[0], vals[1], vals[2]);
    }

    std::string describe() const {
        std::ostringstream os;
        os << family_name(family) << "(p=" << p << ", e=" << e;
        if (family == Family::Metacyclic) os << ", i=" << i;
        if (family == Family::ClassTwoSplit) os << ", j=" << j;
        if (family == Family::ClassTwoFused) os << ", i=" << i << ", j=" << j << ", k=" << k;
        os << ")";
        return os.str();
    }

    bool same_spec(const Group& o) const {
        return family == o.family && p == o.p && e == o.e && i == o.i && j == o.j && k == o.k;
    }

    i64 twist() const { return twist_; } // 1 + p^i (metacyclic only)
    i64 p_power_i() const { return pi_pow_; }
    i64 p_power_k() const { return pk_pow_; }

private:
    static void require(bool cond, const char* what) {
        if (!cond) throw std::invalid_argument(std::string("group: ") + what);
    }

    // n(n-1)/2 mod zwin; n(n-1)/2 has period 2*zwin in n.
    i64 half_binomial(i64 n) const {
        i64 m2 = 2 * zwin;
        i64 r = mod_reduce(n, m2);
        return (i64)(((i128)r * (r - 1) / 2) % zwin);
    }

    void build_twist_table() {
        if (twist_order_ <= (1 << 20)) {
            twist_table_.resize((size_t)twist_order_);
            i64 v = 1;
            for (i64 t = 0; t < twist_order_; ++t) {
                twist_table_[(size_t)t] = v;
                v = mul_mod(v, twist_, pe);
            }
        }
    }

    i64 twist_pow(i64 y) const {
        i64 r = mod_reduce(y, twist_order_);
        if (!twist_table_.empty()) return twist_table_[(size_t)r];
        return pow_mod(twist_, (u64)r, pe);
    }

    i64 pi_pow_ = 0;     // p^i (metacyclic)
    i64 pk_pow_ = 0;     // p^k (fused)
    i64 twist_ = 0;      // 1 + p^i
    i64 twist_order_ = 1; // multiplicative order of twist_ mod p^e = p^{e-i}
    std::vector<i64> twist_table_;
};

} // namespace beauville

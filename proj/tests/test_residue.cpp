#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "beauville/residue.hpp"

using namespace beauville;

namespace {

std::vector<i64> solve_by_scan(i64 A, i64 B, i64 C, const Modulus& m) {
    std::vector<i64> roots;
    for (i64 x = 0; x < m.pe; ++x) {
        if (mod_reduce(((i128)A * x % m.pe * x + (i128)B * x + C), m.pe) == 0) roots.push_back(x);
    }
    return roots;
}

i64 count_norm_one_by_double_loop(const Modulus& m) {
    i64 total = 0;
    for (i64 k = 0; k < m.pe; ++k)
        for (i64 l = 0; l < m.pe; ++l)
            if (mod_reduce((i128)k * k + (i128)l * l - (i128)k * l - 1, m.pe) == 0) ++total;
    return total;
}

} // namespace

TEST_CASE("modulus validation", "[residue]") {
    CHECK_THROWS_AS(Modulus(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(Modulus(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(Modulus(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(Modulus(5, 40), std::overflow_error); // 5^40 > 2^62
    CHECK(Modulus(5, 2).pe == 25);
}

TEST_CASE("unit test mod p", "[residue]") {
    CHECK(is_unit(3, Modulus(5, 2)));
    CHECK_FALSE(is_unit(10, Modulus(5, 2)));
    CHECK_FALSE(is_unit(0, Modulus(7, 1)));
    CHECK(is_unit(-1, Modulus(7, 1)));
}

TEST_CASE("quadratic congruences, frozen examples", "[residue]") {
    CHECK(solve_quadratic(3, 0, 1, Modulus(7, 1)) == std::vector<i64>{3, 4});
    CHECK(solve_quadratic(3, 0, 1, Modulus(5, 1)).empty());
    CHECK(solve_quadratic(1, 0, -1, Modulus(5, 2)) == std::vector<i64>{1, 24});
}

TEST_CASE("quadratic congruences reject the identically-zero case", "[residue]") {
    CHECK_THROWS_AS(solve_quadratic(5, 10, 15, Modulus(5, 2)), std::invalid_argument);
}

TEST_CASE("quadratic solver matches exhaustive scan", "[residue]") {
    std::mt19937_64 rng(0);
    for (auto [p, e] : {std::pair<i64, i64>{5, 1}, {5, 2}, {5, 4}, {7, 3}, {11, 2}, {13, 2}, {97, 2}}) {
        Modulus m(p, e);
        std::uniform_int_distribution<i64> dist(-2 * m.pe, 2 * m.pe);
        for (int trial = 0; trial < 40; ++trial) {
            i64 A = dist(rng), B = dist(rng), C = dist(rng);
            if (mod_reduce(A, p) == 0 && mod_reduce(B, p) == 0 && mod_reduce(C, p) == 0) continue;
            INFO("p=" << p << " e=" << e << " A=" << A << " B=" << B << " C=" << C);
            CHECK(solve_quadratic(A, B, C, m) == solve_by_scan(A, B, C, m));
        }
    }
}

TEST_CASE("3x^2+1 has two roots precisely for p = 1 mod 3", "[residue]") {
    for (i64 p = 5; p <= 100; ++p) {
        if (!is_prime(p)) continue;
        size_t roots = solve_quadratic(3, 0, 1, Modulus(p, 1)).size();
        INFO("p=" << p);
        CHECK(roots == (p % 3 == 1 ? 2u : 0u));
    }
}

TEST_CASE("substitution property on random instances", "[residue]") {
    std::mt19937_64 rng(1);
    Modulus m(7, 4);
    std::uniform_int_distribution<i64> dist(0, m.pe - 1);
    for (int trial = 0; trial < 200; ++trial) {
        i64 A = dist(rng), B = dist(rng), C = dist(rng);
        if (A % 7 == 0 && B % 7 == 0 && C % 7 == 0) continue;
        for (i64 r : solve_quadratic(A, B, C, m)) {
            CHECK(mod_reduce(((i128)A * r % m.pe * r + (i128)B * r + C), m.pe) == 0);
        }
    }
}

TEST_CASE("norm-one pair counts", "[residue]") {
    CHECK(count_norm_one_pairs(Modulus(5, 1)) == count_norm_one_by_double_loop(Modulus(5, 1)));
    CHECK(count_norm_one_pairs(Modulus(7, 1)) == count_norm_one_by_double_loop(Modulus(7, 1)));
    CHECK(count_norm_one_pairs(Modulus(5, 2)) == count_norm_one_by_double_loop(Modulus(5, 2)));
    CHECK(count_norm_one_pairs(Modulus(11, 1)) == count_norm_one_by_double_loop(Modulus(11, 1)));
    // A nondegenerate conic over F_p has p - chi(-3) points.
    CHECK(count_norm_one_pairs(Modulus(5, 1)) == 6);
    CHECK(count_norm_one_pairs(Modulus(7, 1)) == 6);
}

TEST_CASE("primitive roots generate the unit group", "[residue]") {
    for (auto [p, e] : {std::pair<i64, i64>{5, 1}, {5, 3}, {7, 2}, {11, 1}}) {
        i64 pe = checked_pow(p, e, (i64)1 << 62);
        i64 g = primitive_root(p, e);
        i64 units = pe / p * (p - 1);
        i64 v = g;
        i64 order = 1;
        while (v != 1) {
            v = mul_mod(v, g, pe);
            ++order;
        }
        CHECK(order == units);
    }
}

#pragma once

// The verify command's check battery for one group, tiered fast/full/heavy.
// Fast stays under a minute, full under half an hour, heavy is the large
// orbit enumeration.  Checks that cannot run inside the given budgets are
// reported as skipped.

#include <random>

#include "oracles.hpp"
#include "report.hpp"
#include "stabilizer.hpp"

namespace beauville {

struct SuiteConfig {
    std::string tier = "fast";
    i64 max_states = 20000000;
    i64 memory_mb = 8192;
    int threads = 1;
    u64 seed = 0;
};

namespace suite_detail {

inline CheckOutcome relation_conformance(const Group& G) {
    bool ok = G.pow(G.gen_a(), G.pe) == G.id();
    switch (G.family) {
        case Family::Abelian:
            ok = ok && G.pow(G.gen_b(), G.pe) == G.id() && G.comm(G.gen_a(), G.gen_b()) == G.id();
            break;
        case Family::Metacyclic:
            ok = ok && G.pow(G.gen_b(), G.pe) == G.id();
            ok = ok && G.comm(G.gen_a(), G.gen_b()) == G.pow(G.gen_a(), G.p_power_i());
            break;
        case Family::ClassTwoSplit:
        case Family::ClassTwoFused: {
            Element c = G.comm(G.gen_b(), G.gen_a());
            ok = ok && c == G.gen_c();
            ok = ok && G.pow(c, G.zwin) == G.id();
            ok = ok && G.comm(c, G.gen_a()) == G.id() && G.comm(c, G.gen_b()) == G.id();
            if (G.family == Family::ClassTwoFused)
                ok = ok && G.pow(G.gen_b(), G.ywin) == G.pow(c, G.p_power_k());
            else
                ok = ok && G.pow(G.gen_b(), G.pe) == G.id();
            break;
        }
    }
    return {"true", show(ok)};
}

inline CheckOutcome subgroup_orders(const Group& G) {
    check_oracle_scale(G, 200000);
    i64 z = member_count(center_scan(G));
    i64 d = member_count(derived_scan(G));
    i64 f = member_count(frattini_scan(G));
    std::ostringstream want, got;
    want << G.center_order() << "/" << G.derived_order() << "/" << G.frattini_order();
    got << z << "/" << d << "/" << f;
    return {want.str(), got.str()};
}

inline CheckOutcome aut_count(const Group& G, i64 bound) {
    i64 expected = aut_order(G);
    i64 count = 0;
    bool all_valid = true;
    enumerate_aut(G, [&](const AutMap& t) {
        ++count;
        all_valid = all_valid && validate(G, t);
    }, bound);
    return {show(expected) + " all-valid", show(count) + (all_valid ? " all-valid" : " invalid-map")};
}

inline CheckOutcome out_involutions(const Group& G, i64 bound) {
    bigint expected = out_involution_count_formula(G);
    i64 actual = count_out_involutions(G, bound);
    return {show(expected), show(actual)};
}

inline CheckOutcome structure_count(const Group& G, i64 bound) {
    bigint expected = count_structures_big(G);
    if (expected > bound)
        throw std::invalid_argument("structure count " + show(expected) + " exceeds enumeration budget");
    i64 seen = 0;
    for_each_structure(G, [&](const Structure&) { ++seen; }, bound);
    return {show(expected), show(seen)};
}

inline CheckOutcome oracle_equivalence(const Group& G, i64 samples, u64 seed) {
    std::mt19937_64 rng(seed);
    i64 disagreements = 0;
    for (i64 t = 0; t < samples; ++t) {
        Structure s = random_candidate(G, rng);
        if (is_beauville_fast(G, s) != is_beauville_direct(G, s)) ++disagreements;
    }
    return {"0", show(disagreements)};
}

inline CheckOutcome composition_table(const Group& G, i64 bound) {
    return {"true", show(verify_composition_table(G, bound))};
}

inline CheckOutcome s3_quotient(const Group& G, i64 bound) {
    return {"true", show(verify_s3_quotient(G, bound))};
}

inline CheckOutcome case_congruence_count(const Group& G, i64 bound) {
    bigint expected = count_case_congruence_structures_big(G);
    if (count_structures_big(G) > bound)
        throw std::invalid_argument("structure set exceeds enumeration budget");
    i64 case1 = 0;
    for_each_structure(G, [&](const Structure& s) {
        if (classify_stabilizer(G, profile_of(G, s)) == StabCase::Case1) ++case1;
    }, bound);
    return {show(expected), show(case1)};
}

inline CheckOutcome orbit_count_vs_formula(const Group& G, const SuiteConfig& cfg) {
    bigint total = count_structures_big(G);
    if (total > cfg.max_states)
        throw std::invalid_argument("state count " + show(total) + " exceeds budget; formula value " +
                                    show(surface_class_count(G)));
    i64 bytes_per_state = 8 + 8 + 2;
    if (total * bytes_per_state > bigint(cfg.memory_mb) * 1024 * 1024)
        throw std::invalid_argument("state set exceeds memory budget; formula value " +
                                    show(surface_class_count(G)));
    OrbitStats stats = orbit_partition(G, cfg.max_states, cfg.threads);
    return {show(surface_class_count(G)), show(stats.orbit_count)};
}

inline CheckOutcome stabilizer_witnesses(const Group& G, i64 samples, u64 seed, i64 enum_bound) {
    // Case witnesses verified on every enumerated Case1/Case2 structure when
    // the set is small, otherwise on `samples` random Beauville structures.
    i64 built = 0, eligible = 0;
    if (count_structures_big(G) <= enum_bound) {
        for_each_structure(G, [&](const Structure& s) {
            if (classify_stabilizer(G, profile_of(G, s)) != StabCase::Generic) {
                ++eligible;
                if (build_case_stabilizer_witness(G, s)) ++built;
            }
        }, enum_bound);
    } else {
        std::mt19937_64 rng(seed);
        while (eligible < samples) {
            Structure s = random_candidate(G, rng);
            if (!is_beauville_fast(G, s)) continue;
            if (classify_stabilizer(G, profile_of(G, s)) == StabCase::Generic) continue;
            ++eligible;
            if (build_case_stabilizer_witness(G, s)) ++built;
        }
    }
    return {show(eligible) + " witnesses", show(built) + " witnesses"};
}

} // namespace suite_detail

inline VerificationReport run_suite(const Group& G, const SuiteConfig& cfg) {
    namespace sd = suite_detail;
    VerificationReport report;
    SuiteRunner run(report, cfg.tier);
    const bool profiled_family = G.family == Family::Abelian || G.family == Family::ClassTwoSplit;

    run.add("formula_exactness_sweep", "fast", "class-count numerators divisible by 72 for p <= 200, e <= 6",
            [&] { return CheckOutcome{"true", show(formula_exactness_sweep())}; });
    run.add("relations", "fast", "defining relators evaluate to the identity",
            [&] { return sd::relation_conformance(G); });
    run.add("subgroup_orders", "fast", "center/derived/Frattini closed forms match brute scans",
            [&] { return sd::subgroup_orders(G); });
    run.add("inheritance", "fast", "power-map biconditional and Omega index bound hold",
            [&] { return CheckOutcome{"true", show(check_inheritance_hypotheses(G))}; });
    run.add("nilpotency_class", "fast", "closed-form class matches lower central series",
            [&] {
                check_oracle_scale(G, 100000);
                return CheckOutcome{show(G.nilpotency_class()), show(nilpotency_class_bruteforce(G))};
            });
    run.add("aut_count_fast", "fast", "enumerated automorphisms match the order formula and validate",
            [&] { return sd::aut_count(G, 100000); });
    run.add("aut_count_full", "full", "enumerated automorphisms match the order formula and validate",
            [&] { return sd::aut_count(G, 10000000); });
    run.add("aut_generators", "full", "declared generating set closes to all of Aut(G)",
            [&] {
                check_oracle_scale(G, 100000);
                if (aut_order_big(G) <= 2000000)
                    return CheckOutcome{show(aut_order(G)),
                                        show(aut_closure_size(G, aut_generators(G)))};
                bigint expected = out_order_big(G);
                if (expected > 2000000) throw std::invalid_argument("|Out| exceeds closure budget");
                return CheckOutcome{show(expected) + " (out image)",
                                    show(out_closure_size(G, aut_generators(G))) + " (out image)"};
            });
    if (G.family == Family::Metacyclic || G.family == Family::ClassTwoFused) {
        run.add("out_involutions_fast", "fast", "involution count in Out(G) matches the closed form",
                [&] { return sd::out_involutions(G, 20000); });
        run.add("out_involutions_full", "full", "involution count in Out(G) matches the closed form",
                [&] { return sd::out_involutions(G, 10000000); });
    }
    run.add("u_count_fast", "fast", "enumerated structure count matches the closed form",
            [&] { return sd::structure_count(G, 200000); });
    run.add("u_count_full", "full", "enumerated structure count matches the closed form",
            [&] { return sd::structure_count(G, 20000000); });
    run.add("oracle_equivalence_fast", "fast", "line criterion agrees with the Sigma-set definition",
            [&] { return sd::oracle_equivalence(G, 2000, cfg.seed); });
    run.add("oracle_equivalence_full", "full", "line criterion agrees with the Sigma-set definition",
            [&] { return sd::oracle_equivalence(G, 100000, cfg.seed); });
    run.add("composition_table_fast", "fast", "all 36 sigma composition identities hold on T(G)",
            [&] { return sd::composition_table(G, 25000); });
    run.add("composition_table_full", "full", "all 36 sigma composition identities hold on T(G)",
            [&] { return sd::composition_table(G, 1000000); });
    run.add("s3_quotient", "full", "the six sigma cosets of J(G) multiply like S3",
            [&] { return sd::s3_quotient(G, 400000); });
    run.add("j_order", "fast", "beta-move group order agrees with the class-2 closed form",
            [&] {
                JOrderResult j = j_group_order(G);
                if (!j.closed_form)
                    return CheckOutcome{"signature closure (no closed form)", "signature closure (no closed form)"};
                i64 m = G.derived_exponent_log();
                return CheckOutcome{show(checked_pow(G.p, 2 * m, (i64)1 << 62)), show(j.order)};
            });
    if (profiled_family) {
        run.add("case_congruence_count", "full", "filtered structure count matches the branch formula",
                [&] { return sd::case_congruence_count(G, 20000000); });
        run.add("stabilizer_witnesses", "full", "every Case1/Case2 structure yields a verified witness",
                [&] { return sd::stabilizer_witnesses(G, 100, cfg.seed, 1000000); });
    }
    run.add("orbit_count_fast", "fast", "orbit count of the structure action equals the class-count formula",
            [&] {
                SuiteConfig tight = cfg;
                tight.max_states = std::min<i64>(cfg.max_states, 50000);
                return sd::orbit_count_vs_formula(G, tight);
            });
    run.add("orbit_count_full", "full", "orbit count of the structure action equals the class-count formula",
            [&] {
                SuiteConfig mid = cfg;
                mid.max_states = std::min<i64>(cfg.max_states, 1000000);
                return sd::orbit_count_vs_formula(G, mid);
            });
    run.add("orbit_count_heavy", "heavy", "orbit count of the structure action equals the class-count formula",
            [&] { return sd::orbit_count_vs_formula(G, cfg); });
    return report;
}

} // namespace beauville

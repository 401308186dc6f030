#pragma once

// Machine-readable check reports shared by the verify command and the
// acceptance runner.  A check row carries the claim being tested and exact
// expected/actual values as decimal strings; pass means string equality.

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "formulas.hpp"

namespace beauville {

struct Check {
    std::string name;
    std::string claim;
    std::string tier; // fast | full | heavy
    std::string expected;
    std::string actual;
    bool pass = false;
    bool skipped = false;
    std::string skip_reason;
    double elapsed_ms = 0;
};

struct VerificationReport {
    std::vector<Check> checks;

    i64 passed() const {
        i64 n = 0;
        for (const auto& c : checks) n += !c.skipped && c.pass;
        return n;
    }
    i64 failed() const {
        i64 n = 0;
        for (const auto& c : checks) n += !c.skipped && !c.pass;
        return n;
    }
    i64 skipped() const {
        i64 n = 0;
        for (const auto& c : checks) n += c.skipped;
        return n;
    }

    // 0 all pass, 1 any fail, 3 skips without failures.
    int exit_code() const {
        if (failed() > 0) return 1;
        if (skipped() > 0) return 3;
        return 0;
    }
};

struct CheckOutcome {
    std::string expected;
    std::string actual;
};

template <class T>
std::string show(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

inline std::string show(bool v) { return v ? "true" : "false"; }

class SuiteRunner {
public:
    SuiteRunner(VerificationReport& report, const std::string& max_tier) : report_(report) {
        tier_rank_ = rank(max_tier);
    }

    static int rank(const std::string& tier) {
        if (tier == "fast") return 0;
        if (tier == "full") return 1;
        if (tier == "heavy") return 2;
        throw std::invalid_argument("unknown suite tier '" + tier + "'");
    }

    void add(const std::string& name, const std::string& tier, const std::string& claim,
             const std::function<CheckOutcome()>& fn) {
        Check c;
        c.name = name;
        c.tier = tier;
        c.claim = claim;
        if (rank(tier) > tier_rank_) {
            c.skipped = true;
            c.skip_reason = "tier '" + tier + "' above requested suite";
            report_.checks.push_back(c);
            return;
        }
        auto t0 = std::chrono::steady_clock::now();
        try {
            CheckOutcome out = fn();
            c.expected = out.expected;
            c.actual = out.actual;
            c.pass = out.expected == out.actual;
        } catch (const std::invalid_argument& err) {
            // Budget / applicability refusals mark the check skipped, never failed.
            c.skipped = true;
            c.skip_reason = err.what();
        } catch (const std::overflow_error& err) {
            c.skipped = true;
            c.skip_reason = err.what();
        } catch (const std::exception& err) {
            c.pass = false;
            c.actual = std::string("error: ") + err.what();
            c.expected = c.expected.empty() ? "no error" : c.expected;
        }
        c.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report_.checks.push_back(c);
    }

private:
    VerificationReport& report_;
    int tier_rank_;
};

inline nlohmann::json group_json(const Group& G) {
    return {{"family", family_name(G.family)}, {"p", G.p}, {"e", G.e},
            {"i", G.i},                        {"j", G.j}, {"k", G.k}};
}

inline nlohmann::json report_json(const VerificationReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : r.checks) {
        rows.push_back({{"name", c.name},
                        {"claim", c.claim},
                        {"tier", c.tier},
                        {"expected", c.expected},
                        {"actual", c.actual},
                        {"pass", c.pass},
                        {"skipped", c.skipped},
                        {"skip_reason", c.skip_reason},
                        {"elapsed_ms", c.elapsed_ms}});
    }
    return {{"schema", 1},
            {"checks", rows},
            {"summary",
             {{"passed", r.passed()}, {"failed", r.failed()}, {"skipped", r.skipped()}}}};
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string report_csv(const VerificationReport& r) {
    std::ostringstream os;
    os << "name,tier,claim,expected,actual,pass,skipped,skip_reason,elapsed_ms\n";
    for (const auto& c : r.checks) {
        os << csv_escape(c.name) << ',' << c.tier << ',' << csv_escape(c.claim) << ','
           << csv_escape(c.expected) << ',' << csv_escape(c.actual) << ',' << (c.pass ? 1 : 0) << ','
           << (c.skipped ? 1 : 0) << ',' << csv_escape(c.skip_reason) << ',' << c.elapsed_ms << "\n";
    }
    return os.str();
}

inline std::string report_text(const VerificationReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        const char* mark = c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL";
        os << "[" << mark << "] " << c.name;
        if (c.skipped) {
            os << "  (" << c.skip_reason << ")";
        } else {
            os << "  expected=" << c.expected << " actual=" << c.actual;
        }
        os << "  [" << c.tier << ", " << (i64)c.elapsed_ms << " ms]\n";
    }
    os << "passed " << r.passed() << ", failed " << r.failed() << ", skipped " << r.skipped() << "\n";
    return os.str();
}

} // namespace beauville

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellbeta/congruence.hpp"
#include "ellbeta/genus.hpp"
#include "ellbeta/jsonio.hpp"

namespace ellbeta {

enum class BetaKind { simple, higher };

// Index of a 2-primary beta element: beta_{s*2^n/j, order} with odd s.
// "simple" has order i+1 and modulus (2^(i+1), v1^j); "higher" has order i+2
// and modulus (2^(i+2), z_{i,m}) with m = j/2^i.
struct BetaIndex {
    long s = 1;
    long n = 0;
    long j = 1;
    long i = 0;
    BetaKind kind = BetaKind::simple;

    long weight() const { return 3 * s * (1L << n); }
    long order() const { return kind == BetaKind::simple ? i + 1 : i + 2; }
    std::string name() const;
};

struct Admissibility {
    bool ok = false;
    std::string reason;
};
Admissibility admissible(const BetaIndex& b);

// All admissible indices with weight <= max_weight, sorted by (weight, kind,
// order, j, s); includes beta_1.
std::vector<BetaIndex> beta_catalog(long max_weight);

// The theorem representative of f(beta): a 2-power fraction times
// ((E1^2-1)/4)^(s 2^n), plus the second half-term in the two-term branches.
// Throws CheckError for indices no theorem clause covers (e.g. beta_1).
FInvariantClass expected_finv(const BetaIndex& b);

// End-to-end computation through the congruence solver; guard adds precision
// on top of the policy for the verification expansions.
FInvariantClass compute_finv(const BetaIndex& b, long guard = 0);

struct ReportRow {
    std::string suite;
    std::string name;
    std::optional<BetaIndex> instance;
    bool pass = false;
    std::string detail;
    double millis = 0;
    json certificate;  // deterministic: never contains timings
};

struct SuiteOptions {
    long max_weight = 48;
    int jobs = 1;
    long guard = 0;
};

// name: lemmas | theorem1 | theorem2 | relations | identities
std::vector<ReportRow> verify_suite(const std::string& name, const SuiteOptions& opt = {});

json report_json(const std::vector<ReportRow>& rows);
std::string report_csv(const std::vector<ReportRow>& rows);
bool report_all_pass(const std::vector<ReportRow>& rows);

json to_json(const BetaIndex& b);

}  // namespace ellbeta

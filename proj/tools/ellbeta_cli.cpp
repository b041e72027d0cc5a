#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ellbeta/beta.hpp"
#include "ellbeta/error.hpp"
#include "ellbeta/genus.hpp"
#include "ellbeta/jsonio.hpp"

using namespace ellbeta;

namespace {

int cmd_eisenstein(long weight, long prec) {
    json out;
    out["weight"] = weight;
    out["series"] = to_json(eisenstein_odd(weight, prec));
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_genus(long xmax, long prec) {
    if (prec < 0) prec = precision_policy(3 * xmax);
    XSeries g = genus_series(xmax, prec);
    json terms = json::array();
    for (long n = 0; n <= xmax; ++n) {
        ModForm m = recognize(g.term[static_cast<size_t>(n)], n);
        json t;
        t["x_power"] = n;
        t["weight"] = m.weight;
        t["monomials"] = monomials_json(m.poly);
        terms.push_back(t);
    }
    json out;
    out["xmax"] = xmax;
    out["prec"] = prec;
    out["terms"] = terms;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_finv(long s, long n, long j, long i, const std::string& kind, long guard) {
    BetaIndex b{s, n, j, i, kind == "higher" ? BetaKind::higher : BetaKind::simple};
    auto adm = admissible(b);
    json out;
    out["instance"] = to_json(b);
    if (!adm.ok) {
        out["admissible"] = false;
        out["reason"] = adm.reason;
        std::cout << out.dump(2) << "\n";
        return 1;
    }
    out["admissible"] = true;
    FInvariantClass f = compute_finv(b, guard);
    out["class"] = to_json(f);
    bool ok = true;
    try {
        FInvariantClass e = expected_finv(b);
        out["expected"] = to_json(e);
        ok = finv_equal(f, e);
        out["match"] = ok;
    } catch (const CheckError&) {
        out["expected"] = nullptr;
        out["zero_class"] = finv_equal(f, FInvariantClass{f.index_weight, EPoly{}});
    }
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, long max_weight, int jobs, long guard,
               const std::string& format) {
    auto rows = verify_suite(suite, SuiteOptions{max_weight, jobs, guard});
    if (format == "csv") {
        std::cout << report_csv(rows);
    } else {
        std::cout << report_json(rows).dump(2) << "\n";
    }
    return report_all_pass(rows) ? 0 : 1;
}

int cmd_lattice(long weight, bool dump) {
    auto L = d_lattice(weight);
    json out;
    out["top_weight"] = L->top_weight;
    out["prec"] = L->prec;
    out["dim"] = L->dim;
    out["den"] = L->den.get_str();
    json ms = json::array();
    for (const auto& m : L->monoms) ms.push_back(json::array({m.a, m.b}));
    out["monomials"] = ms;
    if (dump) {
        json basis = json::array();
        for (const auto& col : L->basis) {
            json c = json::array();
            for (const auto& e : col) c.push_back(e.get_str());
            basis.push_back(c);
        }
        out["basis"] = basis;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification engine for the level-3 elliptic genus beta families"};
    app.require_subcommand(1);

    auto* eis = app.add_subcommand("eisenstein", "q-expansion of an odd-weight Eisenstein series");
    long e_weight = 1, e_prec = 20;
    eis->add_option("--weight", e_weight, "odd weight (1 or 3)")->required();
    eis->add_option("--prec", e_prec, "number of q-coefficients")->required();

    auto* gen = app.add_subcommand("genus", "recognized x-coefficients of the genus expansion");
    long g_xmax = 4, g_prec = -1;
    gen->add_option("--xmax", g_xmax, "highest x power")->required();
    gen->add_option("--prec", g_prec, "q-precision (default: policy for the top weight)");

    auto* fin = app.add_subcommand("finv", "f-invariant class of one beta index");
    long f_s = 1, f_n = 0, f_j = 1, f_i = 0, f_guard = 0;
    std::string f_kind = "simple";
    fin->add_option("--s", f_s, "odd multiplier")->required();
    fin->add_option("--n", f_n, "power-of-two exponent")->required();
    fin->add_option("--j", f_j, "v1 divisor exponent")->required();
    fin->add_option("--i", f_i, "order offset")->required();
    fin->add_option("--kind", f_kind, "simple|higher")
        ->check(CLI::IsMember({"simple", "higher"}));
    fin->add_option("--prec-guard", f_guard, "extra expansion precision");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite, v_format = "json";
    long v_weight = 48, v_guard = 0;
    int v_jobs = 1;
    ver->add_option("--suite", v_suite, "lemmas|theorem1|theorem2|relations|identities")
        ->required()
        ->check(CLI::IsMember({"lemmas", "theorem1", "theorem2", "relations", "identities"}));
    ver->add_option("--max-weight", v_weight, "weight ceiling for the sweep");
    ver->add_option("--jobs", v_jobs, "parallel instances");
    ver->add_option("--prec-guard", v_guard, "extra expansion precision");
    ver->add_option("--format", v_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* lat = app.add_subcommand("lattice", "divided-congruence lattice at one top weight");
    long l_weight = 0;
    bool l_dump = false;
    lat->add_option("--weight", l_weight, "top weight")->required();
    lat->add_flag("--dump", l_dump, "include the Hermite basis columns");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eis) return cmd_eisenstein(e_weight, e_prec);
        if (*gen) return cmd_genus(g_xmax, g_prec);
        if (*fin) return cmd_finv(f_s, f_n, f_j, f_i, f_kind, f_guard);
        if (*ver) return cmd_verify(v_suite, v_weight, v_jobs, v_guard, v_format);
        if (*lat) return cmd_lattice(l_weight, l_dump);
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 1;
}

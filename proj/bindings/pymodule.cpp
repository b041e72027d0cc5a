#include <pybind11/pybind11.h>

#include <string>

#include "ellbeta/beta.hpp"
#include "ellbeta/genus.hpp"
#include "ellbeta/jsonio.hpp"

namespace py = pybind11;
using namespace ellbeta;

namespace {

BetaKind parse_kind(const std::string& kind) {
    if (kind == "simple") return BetaKind::simple;
    if (kind == "higher") return BetaKind::higher;
    throw py::value_error("kind must be 'simple' or 'higher'");
}

std::string eisenstein_json(long weight, long prec) {
    return to_json(eisenstein_odd(weight, prec)).dump();
}

std::string genus_json(long xmax, long prec) {
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
    return terms.dump();
}

py::tuple admissible_py(long s, long n, long j, long i, const std::string& kind) {
    auto a = admissible(BetaIndex{s, n, j, i, parse_kind(kind)});
    return py::make_tuple(a.ok, a.reason);
}

std::string catalog_json(long max_weight) {
    json arr = json::array();
    for (const auto& b : beta_catalog(max_weight)) arr.push_back(to_json(b));
    return arr.dump();
}

std::string finv_json(long s, long n, long j, long i, const std::string& kind, long guard) {
    BetaIndex b{s, n, j, i, parse_kind(kind)};
    FInvariantClass f = compute_finv(b, guard);
    json out;
    out["instance"] = to_json(b);
    out["class"] = to_json(f);
    try {
        FInvariantClass e = expected_finv(b);
        out["expected"] = to_json(e);
        out["match"] = finv_equal(f, e);
    } catch (const CheckError&) {
        out["expected"] = nullptr;
        out["zero_class"] = finv_equal(f, FInvariantClass{f.index_weight, EPoly{}});
    }
    return out.dump();
}

std::string verify_json(const std::string& suite, long max_weight, int jobs, long guard) {
    return report_json(verify_suite(suite, SuiteOptions{max_weight, jobs, guard})).dump();
}

}  // namespace

PYBIND11_MODULE(pyellbeta, m) {
    m.doc() = "exact beta-family f-invariant engine over the level-3 modular ring";
    m.def("precision_policy", &precision_policy, py::arg("top_weight"));
    m.def("eisenstein_json", &eisenstein_json, py::arg("weight"), py::arg("prec"));
    m.def("genus_json", &genus_json, py::arg("xmax"), py::arg("prec") = -1);
    m.def("admissible", &admissible_py, py::arg("s"), py::arg("n"), py::arg("j"),
          py::arg("i"), py::arg("kind"));
    m.def("catalog_json", &catalog_json, py::arg("max_weight"));
    m.def("finv_json", &finv_json, py::arg("s"), py::arg("n"), py::arg("j"), py::arg("i"),
          py::arg("kind"), py::arg("guard") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("verify_json", &verify_json, py::arg("suite"), py::arg("max_weight") = 48,
          py::arg("jobs") = 1, py::arg("guard") = 0,
          py::call_guard<py::gil_scoped_release>());
}

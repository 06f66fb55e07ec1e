#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zetakit/errors.hpp"
#include "zetakit/euler_kronecker.hpp"
#include "zetakit/gbs.hpp"
#include "zetakit/zeros.hpp"

namespace py = pybind11;
using namespace zetakit;

namespace {

EvalParams eval_params(int bits) {
    EvalParams p;
    p.precision_bits = bits;
    return p;
}

ZeroParams zero_params(const std::string& cache_dir) {
    ZeroParams p;
    p.cache_dir = cache_dir;
    return p;
}

}  // namespace

PYBIND11_MODULE(_zetakit, m) {
    m.doc() = "Euler-Kronecker constants, zeros and Brauer-Siegel statistics of abelian number fields";

    auto base = py::register_exception<Error>(m, "ZetakitError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PoleError>(m, "PoleError", base.ptr());
    py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
    py::register_exception<NearZeroError>(m, "NearZeroError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<IncompleteZerosError>(m, "IncompleteZerosError", base.ptr());
    py::register_exception<UnresolvedError>(m, "UnresolvedError", base.ptr());

    py::class_<AbelianField>(m, "Field")
        .def(py::init(&parse_field), py::arg("descriptor"))
        .def_property_readonly("descriptor", &AbelianField::descriptor)
        .def_property_readonly("degree", &AbelianField::degree)
        .def_property_readonly("conductor", &AbelianField::conductor)
        .def_property_readonly("signature",
                               [](const AbelianField& k) { return py::make_tuple(k.signature().r1, k.signature().r2); })
        .def_property_readonly("abs_discriminant",
                               [](const AbelianField& k) { return py::int_(py::str(k.abs_discriminant_string())); })
        .def_property_readonly("genus", &AbelianField::genus)
        .def_property_readonly("roots_of_unity", &AbelianField::roots_of_unity)
        .def_property_readonly("characters",
                               [](const AbelianField& k) {
                                   std::vector<std::string> out;
                                   for (const auto& c : k.characters()) out.push_back(c.descriptor());
                                   return out;
                               })
        .def("contains", &AbelianField::contains)
        .def("place_counts", [](const AbelianField& k, u64 bound) { return place_counts(k, bound).counts; })
        .def("__repr__", [](const AbelianField& k) { return "Field('" + k.descriptor() + "')"; });

    py::class_<LaurentData>(m, "LaurentData")
        .def_readonly("residue", &LaurentData::residue)
        .def_readonly("gamma", &LaurentData::ek_constant)
        .def_readonly("error_estimate", &LaurentData::error_estimate)
        .def_readonly("digits", &LaurentData::ek_constant_digits)
        .def_property_readonly("method", [](const LaurentData& d) { return to_string(d.method); });

    m.def("gamma", [](const AbelianField& k, int bits) { return gamma_field(k, eval_params(bits)); }, py::arg("field"),
          py::arg("precision_bits") = 64, "Euler-Kronecker constant gamma_K and the residue rho_K");
    m.def("gamma_z_limit", [](const AbelianField& k) { return gamma_z_limit(k); }, py::arg("field"));
    m.def(
        "gamma_p",
        [](u64 p, int bits) {
            const auto g = gamma_p(p, kDefaultMaxCyclotomicPrime, eval_params(bits));
            return py::dict(py::arg("p") = g.p, py::arg("gamma") = g.data.ek_constant, py::arg("ratio") = g.ratio,
                            py::arg("positive") = g.positive, py::arg("in_window") = g.in_window);
        },
        py::arg("p"), py::arg("precision_bits") = 64);
    m.def("Z", [](const AbelianField& k, real_t s) { return Z(k, s).value; }, py::arg("field"), py::arg("s"),
          "Z_K(s) = -1/(s - 1) - zeta_K'/zeta_K(s) for real s > 1");
    m.def("residue", [](const AbelianField& k) { return residue(k).value; }, py::arg("field"));
    m.def("class_number", [](const AbelianField& k) { return class_number(k); }, py::arg("field"));
    m.def("class_number_by_forms", &class_number_by_forms, py::arg("d"));

    m.def(
        "check_bounds",
        [](const AbelianField& k) {
            const auto b = check_bounds(k);
            auto entry = [](const BoundEntry& e) {
                return py::dict(py::arg("value") = e.value, py::arg("conditional") = e.conditional,
                                py::arg("asserted") = e.asserted, py::arg("note") = e.note);
            };
            return py::dict(py::arg("gamma") = b.gamma, py::arg("ihara_lower_margin") = entry(b.ihara_lower_margin),
                            py::arg("ihara_upper_margin") = entry(b.ihara_upper_margin));
        },
        py::arg("field"));
    m.def(
        "mellin_check",
        [](const AbelianField& k, real_t s, real_t X) {
            const auto r = mellin_check(k, s, X);
            return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("residual") = r.residual,
                            py::arg("variant_residual") = r.variant_residual);
        },
        py::arg("field"), py::arg("s") = 2.0, py::arg("X") = 1e6);

    m.def(
        "zeros",
        [](const AbelianField& k, real_t T, const std::string& cache_dir) {
            return locate_zeros(k, T, zero_params(cache_dir)).ordinates;
        },
        py::arg("field"), py::arg("T"), py::arg("cache_dir") = "", "Positive ordinates of zeros of zeta_K below T");
    m.def(
        "count_zeros",
        [](const AbelianField& k, real_t T, const std::string& cache_dir) {
            return count_zeros(k, T, zero_params(cache_dir));
        },
        py::arg("field"), py::arg("T"), py::arg("cache_dir") = "", "N_K(T), both signs");
    m.def(
        "rvm_report",
        [](const AbelianField& k, real_t T) {
            const auto r = rvm_report(k, T);
            return py::dict(py::arg("count") = r.count, py::arg("main_term") = r.main_term,
                            py::arg("error_actual") = r.error_actual, py::arg("trudgian_budget") = r.trudgian_budget,
                            py::arg("ok") = r.ok);
        },
        py::arg("field"), py::arg("T"));
    m.def(
        "reciprocal_zero_sum",
        [](const AbelianField& k, real_t T) {
            const auto r = reciprocal_zero_sum(k, T);
            return py::dict(py::arg("partial") = r.partial, py::arg("tail_estimate") = r.tail_estimate,
                            py::arg("tail_bound") = r.tail_bound, py::arg("rhs") = r.rhs,
                            py::arg("residual") = r.residual);
        },
        py::arg("field"), py::arg("T"));
    m.def("count_window_integrals", [] {
        std::vector<std::pair<real_t, real_t>> out;
        for (const auto& q : count_window_integrals()) out.emplace_back(q.quadrature, q.closed_form);
        return out;
    });

    m.def(
        "family_csv",
        [](const std::string& spec, u64 q_max) { return to_csv(family_stats(parse_family(spec), q_max)); },
        py::arg("spec"), py::arg("q_max") = 100);
    m.def(
        "monotone_check",
        [](int p_tower, int depth, u64 p, int n) {
            const auto r = monotone_check(build_cyclotomic_tower(p_tower, depth), p, n);
            return py::make_tuple(r.values, r.nonincreasing);
        },
        py::arg("tower_prime"), py::arg("depth"), py::arg("p"), py::arg("n"),
        "Weighted place counts along the cyclotomic tower of tower_prime");
}

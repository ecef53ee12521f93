#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpdense/coprime_search.hpp"
#include "fpdense/density_lab.hpp"
#include "fpdense/poly.hpp"

namespace py = pybind11;
using namespace fpdense;

// Integer <-> int and Rational <-> fractions.Fraction. Conversion goes through
// base-16 text, which both sides handle for arbitrary sizes.
namespace pybind11::detail {

template <>
struct type_caster<Integer> {
  PYBIND11_TYPE_CASTER(Integer, const_name("int"));

  bool load(handle src, bool) {
    if (!src || PyBool_Check(src.ptr()) || !PyLong_Check(src.ptr())) return false;
    const std::string hex = py::str(py::module_::import("builtins").attr("format")(src, "x"));
    return value.set_str(hex, 16) == 0;
  }

  static handle cast(const Integer& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str(16).c_str(), nullptr, 16);
  }
};

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool convert) {
    if (!src) return false;
    if (PyLong_Check(src.ptr()) && !PyBool_Check(src.ptr())) {
      make_caster<Integer> n;
      if (!n.load(src, convert)) return false;
      value = Rational(cast_op<Integer>(n));
      return true;
    }
    if (convert && PyUnicode_Check(src.ptr())) {
      value = parse_rational(src.cast<std::string>());
      return true;
    }
    const py::object fraction = py::module_::import("fractions").attr("Fraction");
    if (!py::isinstance(src, fraction)) return false;
    make_caster<Integer> num, den;
    if (!num.load(src.attr("numerator"), convert) || !den.load(src.attr("denominator"), convert)) return false;
    value = make_rational(cast_op<Integer>(num), cast_op<Integer>(den));
    return true;
  }

  static handle cast(const Rational& v, return_value_policy policy, handle parent) {
    const py::object fraction = py::module_::import("fractions").attr("Fraction");
    const py::object num = py::reinterpret_steal<py::object>(make_caster<Integer>::cast(v.get_num(), policy, parent));
    const py::object den = py::reinterpret_steal<py::object>(make_caster<Integer>::cast(v.get_den(), policy, parent));
    return fraction(num, den).release();
  }
};

}  // namespace pybind11::detail

namespace {

BuilderConfig builder_config(const std::string& mode, const Integer& start_prime_floor) {
  BuilderConfig config;
  config.mode = parse_build_mode(mode);
  config.start_prime_floor = start_prime_floor;
  return config;
}

py::tuple class_tuple(const CongruenceClass& c) { return py::make_tuple(c.residue, c.modulus); }

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["target"] = c.target.coords;
  d["eps"] = c.eps;
  d["chain"] = c.chain.terms();
  d["congruence"] = class_tuple(c.congruence);
  d["prime_floor"] = c.prime_floor;
  d["p"] = c.witness.p;
  d["x"] = c.witness.x;
  d["errors"] = c.errors;
  d["max_error"] = c.max_error;
  d["primality_method"] = std::string(primality_method_name(c.primality_method));
  d["mode"] = std::string(build_mode_name(c.mode));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact approximation by normalized points on x1*...*xn = 1 (mod p)";

  // Deliberately leaked: the translator may run during interpreter shutdown.
  static const py::handle error_type = py::exception<Error>(m, "FpdenseError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  // Arithmetic
  m.def("gcd", [](const Integer& a, const Integer& b) { return gcd(a, b); });
  m.def("mod_inverse", [](const Integer& a, const Integer& mod) { return mod_inverse(a, mod); });
  m.def(
      "crt",
      [](const std::vector<std::pair<Integer, Integer>>& classes) {
        std::vector<CongruenceClass> cs;
        for (const auto& [r, mod] : classes) cs.emplace_back(r, mod);
        return class_tuple(crt(cs));
      },
      "Combine (residue, modulus) pairs with pairwise coprime moduli.");
  m.def("is_prime", [](const Integer& n) { return is_prime(n); });
  m.def(
      "next_prime_in_ap",
      [](const Integer& residue, const Integer& modulus, const Integer& lower) {
        return next_prime_in_ap(CongruenceClass(residue, modulus), lower);
      },
      py::arg("residue"), py::arg("modulus"), py::arg("lower"));
  m.def("jacobsthal", &jacobsthal, py::arg("b"));

  // Coprime search
  py::class_<FractionCandidate>(m, "FractionCandidate")
      .def_readonly("numerator", &FractionCandidate::numerator)
      .def_readonly("denominator", &FractionCandidate::denominator)
      .def_readonly("value", &FractionCandidate::value)
      .def_readonly("error", &FractionCandidate::error)
      .def("__repr__", [](const FractionCandidate& c) {
        return "FractionCandidate(" + c.numerator.get_str() + "/" + c.denominator.get_str() +
               ", error=" + to_string(c.error) + ")";
      });
  m.def("find_coprime_numerator", &find_coprime_numerator, py::arg("x"), py::arg("b"), py::arg("coprime_to"),
        py::arg("eps"), py::arg("min_ratio") = Rational(0));
  m.def("find_denominator_for_prime", &find_denominator_for_prime, py::arg("prime"), py::arg("x"), py::arg("eps"),
        py::arg("min_ratio") = Rational(0));

  // Chains and lifts
  m.def("chain_is_valid", [](const std::vector<Integer>& terms) { return chain_is_valid(terms); });
  m.def(
      "build_chain",
      [](const std::vector<Rational>& target, const Rational& eps, const std::string& mode,
         const Integer& start_prime_floor) {
        return build_chain(TargetPoint(target), eps, builder_config(mode, start_prime_floor)).terms();
      },
      py::arg("target"), py::arg("eps"), py::arg("mode") = "search", py::arg("start_prime_floor") = Integer(2));
  m.def("dirichlet_residue",
        [](const std::vector<Integer>& chain) { return class_tuple(dirichlet_residue(Chain(chain))); });
  m.def("lift_chain", [](const std::vector<Integer>& chain, const Integer& p) { return lift_chain(Chain(chain), p).x; });

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("p", [](const Certificate& c) { return c.witness.p; })
      .def_property_readonly("x", [](const Certificate& c) { return c.witness.x; })
      .def_property_readonly("chain", [](const Certificate& c) { return c.chain.terms(); })
      .def_readonly("errors", &Certificate::errors)
      .def_readonly("max_error", &Certificate::max_error)
      .def_readonly("eps", &Certificate::eps)
      .def("to_dict", &certificate_dict)
      .def("to_json", &serialize_certificate)
      .def_static("from_json", &parse_certificate)
      .def("__eq__", [](const Certificate& a, const Certificate& b) { return a == b; });
  m.def(
      "approximate",
      [](const std::vector<Rational>& target, const Rational& eps, const std::string& mode,
         const Integer& start_prime_floor, const Integer& min_prime) {
        ApproximateOptions options;
        options.min_prime = min_prime;
        return approximate(TargetPoint(target), eps, builder_config(mode, start_prime_floor), options);
      },
      py::arg("target"), py::arg("eps"), py::arg("mode") = "search", py::arg("start_prime_floor") = Integer(2),
      py::arg("min_prime") = Integer(0));
  m.def(
      "verify_certificate",
      [](const Certificate& c) {
        const auto r = verify_certificate(c);
        return py::make_tuple(r.valid, r.reason);
      },
      "Returns (valid, reason).");

  // Polynomial values
  py::class_<PolyCertificate>(m, "PolyCertificate")
      .def_property_readonly("p", [](const PolyCertificate& c) { return c.inner.witness.p; })
      .def_property_readonly("x", [](const PolyCertificate& c) { return c.inner.witness.x; })
      .def_readonly("values", &PolyCertificate::values)
      .def_readonly("errors", &PolyCertificate::errors)
      .def_readonly("inner", &PolyCertificate::inner)
      .def("to_json", &serialize_poly_certificate)
      .def_static("from_json", &parse_poly_certificate)
      .def("__eq__", [](const PolyCertificate& a, const PolyCertificate& b) { return a == b; });
  m.def(
      "approximate_polynomial",
      [](const std::vector<Integer>& lower_coefficients, const std::vector<Rational>& alphas, const Rational& eps) {
        return approximate_polynomial(MonicPolynomial(lower_coefficients), TargetPoint(alphas), eps);
      },
      py::arg("lower_coefficients"), py::arg("alphas"), py::arg("eps"),
      "f = x^d + c_{d-1} x^{d-1} + ... + c_0 given as [c_0, ..., c_{d-1}].");
  m.def("verify_poly_certificate", [](const PolyCertificate& c) {
    const auto r = verify_poly_certificate(c);
    return py::make_tuple(r.valid, r.reason);
  });

  // Density lab
  m.def("enumerate_points", [](std::uint64_t p, std::size_t n) { return collect_points(p, n); }, py::arg("p"),
        py::arg("n"));
  m.def(
      "box_discrepancy",
      [](std::uint64_t p, std::size_t n, std::uint64_t k) {
        const auto r = box_discrepancy(p, n, k);
        py::dict d;
        d["p"] = r.p;
        d["n"] = r.n;
        d["k"] = r.k;
        d["total"] = r.total;
        d["counts"] = r.counts;
        d["sup_deviation"] = r.sup_deviation;
        d["mean_abs_deviation"] = r.mean_abs_deviation;
        return d;
      },
      py::arg("p"), py::arg("n"), py::arg("k"));
  m.def(
      "nearest_point_distance",
      [](std::uint64_t p, const std::vector<Rational>& target) { return nearest_point_distance(p, TargetPoint(target)); },
      py::arg("p"), py::arg("target"));
}

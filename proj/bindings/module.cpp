#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "certquad/composite.hpp"
#include "certquad/expr.hpp"
#include "certquad/kernel.hpp"
#include "certquad/probability.hpp"
#include "certquad/records.hpp"
#include "certquad/reference.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const certquad::Record& v) {
  using certquad::Record;
  switch (v.type()) {
    case Record::value_t::null: return py::none();
    case Record::value_t::boolean: return py::bool_(v.get<bool>());
    case Record::value_t::number_integer: return py::int_(v.get<long long>());
    case Record::value_t::number_unsigned: return py::int_(v.get<unsigned long long>());
    case Record::value_t::number_float: return py::float_(v.get<double>());
    case Record::value_t::string: return py::str(v.get<std::string>());
    case Record::value_t::array: {
      py::list list;
      for (const auto& item : v) list.append(json_to_py(item));
      return list;
    }
    case Record::value_t::object: {
      py::dict dict;
      for (const auto& [key, value] : v.items()) dict[py::str(key)] = json_to_py(value);
      return dict;
    }
    default: return py::none();
  }
}

certquad::Theorem parse_tag(const std::string& tag) {
  const auto t = certquad::theorem_from_string(tag);
  if (!t) throw std::invalid_argument("unknown theorem tag '" + tag + "'");
  return *t;
}

}  // namespace

PYBIND11_MODULE(_certquad, m) {
  m.doc() = "certified quadrature: integral approximations with closed-form error bounds";

  m.def(
      "integrate",
      [](const std::string& f, double a, double b, py::object n, py::object tol,
         const std::string& rule, py::object gamma, py::object Gamma) {
        certquad::IntegrateArgs args;
        args.function = f;
        args.a = a;
        args.b = b;
        if (!n.is_none()) args.n = n.cast<int>();
        if (!tol.is_none()) args.tol = tol.cast<double>();
        args.rule = rule;
        if (!gamma.is_none()) args.gamma = gamma.cast<double>();
        if (!Gamma.is_none()) args.Gamma = Gamma.cast<double>();
        return json_to_py(certquad::run_integrate(args));
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("n") = py::none(),
      py::arg("tol") = py::none(), py::arg("rule") = "q1", py::arg("gamma") = py::none(),
      py::arg("Gamma") = py::none(),
      "Composite rule over [a, b] with every applicable remainder bound.");

  m.def(
      "point",
      [](const std::string& f, double a, double b, py::object x, py::object gamma,
         py::object Gamma) {
        certquad::PointArgs args;
        args.function = f;
        args.a = a;
        args.b = b;
        if (!x.is_none()) args.x = x.cast<double>();
        if (!gamma.is_none()) args.gamma = gamma.cast<double>();
        if (!Gamma.is_none()) args.Gamma = Gamma.cast<double>();
        return json_to_py(certquad::run_point(args));
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("x") = py::none(),
      py::arg("gamma") = py::none(), py::arg("Gamma") = py::none(),
      "Single-interval estimates of the mean of f with bounds; marks the best.");

  m.def("table1", [] { return json_to_py(certquad::run_table1()); },
        "Recompute the reference numerical table with pass/fail cells.");

  m.def(
      "verify",
      [](std::uint64_t seed, int count) { return json_to_py(certquad::run_verify(seed, count)); },
      py::arg("seed") = 42, py::arg("count") = 200,
      "Bound-validity sweep over a seeded corpus; expects zero violations.");

  m.def(
      "expect",
      [](const std::string& pdf, double a, double b, py::object x, const std::string& theorem) {
        certquad::ExpectArgs args;
        args.pdf = pdf;
        args.a = a;
        args.b = b;
        if (!x.is_none()) args.x = x.cast<double>();
        args.theorem = parse_tag(theorem);
        return json_to_py(certquad::run_expect(args));
      },
      py::arg("pdf"), py::arg("a"), py::arg("b"), py::arg("x") = py::none(),
      py::arg("theorem") = "gruss_21",
      "Certified bracket for the expectation of a density on [a, b].");

  m.def(
      "reference_integral",
      [](const std::string& f, double a, double b, double tol) {
        const certquad::FunctionBundle bundle = certquad::resolve_bundle(f);
        const certquad::ReferenceIntegral r =
            certquad::reference_integral(bundle.f, certquad::Interval(a, b), tol);
        py::dict out;
        out["value"] = r.value;
        out["error_estimate"] = r.error_estimate;
        out["evaluations"] = r.evaluations;
        return out;
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-12,
      "Oracle adaptive integration, independent of the certified rules.");

  m.def(
      "eval_jet",
      [](const std::string& f, double x) {
        const certquad::Jet3 jet = certquad::parse(f).eval_jet(x);
        return py::make_tuple(jet.v0, jet.v1, jet.v2, jet.v3);
      },
      py::arg("f"), py::arg("x"), "Value and first three derivatives of an expression at x.");

  m.def(
      "kernel_value",
      [](double a, double b, double x, double t) {
        return certquad::kernel_value(certquad::Interval(a, b), x, t);
      },
      py::arg("a"), py::arg("b"), py::arg("x"), py::arg("t"));

  m.attr("__version__") = "0.1.0";
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lochmf/core.hpp"
#include "lochmf/error.hpp"
#include "lochmf/hecke.hpp"
#include "lochmf/modeval.hpp"
#include "lochmf/periods.hpp"
#include "lochmf/qforms.hpp"
#include "lochmf/special.hpp"
#include "lochmf/verify.hpp"
#include "lochmf/walls.hpp"

namespace py = pybind11;
using namespace lochmf;

namespace {

EvalParams make_params(i64 a_max, i64 n_max, double tol, int quad_points, double y_cut, int threads) {
  EvalParams p;
  p.a_max = a_max;
  p.n_max = n_max;
  p.tol = tol;
  p.quad_points = quad_points;
  p.y_cut = y_cut;
  p.threads = threads;
  p.validate();
  return p;
}

py::dict evaluation_dict(const Evaluation& e) {
  py::dict d;
  d["value"] = e.value;
  d["tail"] = e.tail;
  d["rounding"] = e.rounding;
  d["error"] = e.error();
  d["a_used"] = e.a_used;
  d["n_used"] = e.n_used;
  return d;
}

py::dict record_dict(const CheckRecord& r) {
  py::dict d;
  d["criterion"] = r.criterion;
  d["name"] = r.name;
  d["residual"] = r.residual;
  d["budget"] = r.budget;
  d["metric"] = r.metric;
  d["tolerance"] = r.tolerance;
  d["passed"] = r.pass;
  d["runtime"] = r.runtime;
  d["json"] = to_json(r).dump();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wall-crossing forms F_{1-k,D} for positive discriminants";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetInfeasible>(m, "BudgetInfeasible", PyExc_RuntimeError);
  py::register_exception<WallCollision>(m, "WallCollision", PyExc_RuntimeError);

  py::class_<EvalParams>(m, "EvalParams")
      .def(py::init(&make_params), py::arg("a_max") = 2000, py::arg("n_max") = 64, py::arg("tol") = 1e-10,
           py::arg("quad_points") = 64, py::arg("y_cut") = 8.0, py::arg("threads") = 0)
      .def_readwrite("a_max", &EvalParams::a_max)
      .def_readwrite("n_max", &EvalParams::n_max)
      .def_readwrite("tol", &EvalParams::tol)
      .def_readwrite("quad_points", &EvalParams::quad_points)
      .def_readwrite("y_cut", &EvalParams::y_cut)
      .def_readwrite("threads", &EvalParams::threads);

  py::class_<QForm>(m, "QForm")
      .def(py::init([](i64 a, i64 b, i64 c) { return QForm{a, b, c}; }))
      .def_readonly("a", &QForm::a)
      .def_readonly("b", &QForm::b)
      .def_readonly("c", &QForm::c)
      .def("__repr__", &QForm::str)
      .def("__eq__", [](const QForm& x, const QForm& y) { return x == y; })
      .def("__hash__", [](const QForm& q) { return py::hash(py::make_tuple(q.a, q.b, q.c)); });

  m.def("kronecker", &kronecker);
  m.def("fundamental_factor", [](i64 D) {
    const auto d = fundamental_factor(D);
    return py::make_tuple(d.delta, d.f);
  });
  m.def("pell_fundamental", [](i64 D) {
    const auto s = pell_fundamental(fundamental_factor(D));
    return py::make_tuple(s.t, s.u);
  });
  m.def("disc", &disc);
  m.def("narrow_classes", [](i64 D) {
    std::vector<std::vector<QForm>> out;
    for (const auto& c : narrow_class_reps(fundamental_factor(D))) out.push_back(c.cycle);
    return out;
  });
  m.def("forms_a_neg_c_pos", [](i64 D) { return forms_a_neg_c_pos(fundamental_factor(D)); });
  m.def("interior_forms", [](i64 D, double x, double y) {
    return interior_forms(fundamental_factor(D), Point(x, y)).interior_forms;
  });

  m.def("phi", &phi, py::arg("v"), py::arg("k"));
  m.def("psi", &psi, py::arg("t"), py::arg("k"));
  m.def("beta_complete", &beta_complete);

  const auto P = py::arg("params") = EvalParams{};
  m.def(
      "eval_F", [](int k, i64 D, double x, double y, const EvalParams& p) {
        return evaluation_dict(eval_F(k, fundamental_factor(D), Point(x, y), p));
      },
      py::arg("k"), py::arg("D"), py::arg("x"), py::arg("y"), P);
  m.def(
      "eval_f", [](int k, i64 D, double x, double y, const EvalParams& p) {
        return evaluation_dict(eval_fkD(k, fundamental_factor(D), Point(x, y), p));
      },
      py::arg("k"), py::arg("D"), py::arg("x"), py::arg("y"), P);
  m.def(
      "c_inf", [](i64 D, int k, const EvalParams& p) {
        const auto c = c_inf(fundamental_factor(D), k, p);
        return py::make_tuple(c.value, c.error);
      },
      py::arg("D"), py::arg("k"), P);
  m.def(
      "local_poly", [](int k, i64 D, double x, double y, const EvalParams& p) {
        return local_poly(k, fundamental_factor(D), Point(x, y), p).coeffs();
      },
      py::arg("k"), py::arg("D"), py::arg("x"), py::arg("y"), P);
  m.def("wall_jump", [](int k, i64 D, const QForm& Q, double x, double y) {
    return wall_jump(k, fundamental_factor(D), Q, Point(x, y));
  });
  m.def(
      "fourier_coeffs", [](int k, i64 D, int m_max, double y, const EvalParams& p) {
        const auto s = fourier_coeffs(k, fundamental_factor(D), m_max, y, p);
        return py::make_tuple(s.coeffs, s.coeff_error);
      },
      py::arg("k"), py::arg("D"), py::arg("m_max") = 6, py::arg("y") = 0.0, P);
  m.def(
      "periods", [](int k, i64 D, const EvalParams& p) {
        const auto s = periods(k, fundamental_factor(D), p);
        return py::make_tuple(s.r, s.err);
      },
      py::arg("k"), py::arg("D"), P);
  m.def("rational_rhs", [](int k, i64 D) { return rational_rhs_exact(k, fundamental_factor(D)); });
  m.def(
      "check_rationality", [](int k, i64 D, const EvalParams& p) {
        const auto r = check_rationality(k, fundamental_factor(D), p);
        py::dict d;
        d["residual"] = r.residual;
        d["fitted_constant"] = r.fitted_constant;
        d["budget"] = r.budget;
        d["residual_opposite_sign"] = r.residual_opposite;
        return d;
      },
      py::arg("k"), py::arg("D"), P);
  m.def(
      "verify_hecke", [](int k, i64 D, i64 p, double x, double y, const EvalParams& prm) {
        const auto h = verify_hecke(k, fundamental_factor(D), p, Point(x, y), prm);
        py::dict d;
        d["lhs"] = h.lhs;
        d["rhs"] = h.rhs;
        d["budget"] = h.budget;
        d["residual"] = h.residual();
        d["passed"] = h.pass();
        d["nudged"] = h.nudged;
        return d;
      },
      py::arg("k"), py::arg("D"), py::arg("p"), py::arg("x"), py::arg("y"), P);
  m.def(
      "run_criteria", [](const std::vector<int>& criteria, const EvalParams& p) {
        VerifyConfig c;
        c.criteria = criteria;
        c.params = p;
        std::vector<py::dict> out;
        for (const auto& r : run_all(c)) out.push_back(record_dict(r));
        return out;
      },
      py::arg("criteria"), P);
}

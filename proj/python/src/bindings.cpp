#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdist/char_sums.hpp"
#include "qdist/distance.hpp"
#include "qdist/errors.hpp"
#include "qdist/spectral.hpp"
#include "qdist/suites.hpp"

namespace py = pybind11;
using namespace qdist;

namespace {

Felt felt(const FieldCtx& f, std::uint32_t a) {
  if (!f.contains(Felt{a})) throw InvalidArgument("element index outside the field");
  return Felt{a};
}

std::vector<std::vector<std::uint32_t>> points_of(const PointSet& s) {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<std::uint32_t> p;
    for (Felt c : s[i]) p.push_back(c.idx);
    out.push_back(std::move(p));
  }
  return out;
}

PointSet from_lists(const FieldCtx& f, int dim, const std::vector<std::vector<std::uint32_t>>& pts) {
  std::vector<Point> points;
  for (const auto& p : pts) {
    Point x;
    for (auto c : p) x.push_back(Felt{c});
    points.push_back(std::move(x));
  }
  return PointSet::from_points(f, dim, std::move(points));
}

std::vector<std::uint32_t> indices(const std::vector<Felt>& v) {
  std::vector<std::uint32_t> out;
  for (Felt x : v) out.push_back(x.idx);
  return out;
}

py::array_t<std::complex<double>> as_array(const std::vector<Cx>& v) {
  py::array_t<std::complex<double>> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

}  // namespace

PYBIND11_MODULE(_qdist, m) {
  m.doc() = "Finite-field distance-set verification core";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_MemoryError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<FieldCtx>(m, "Field")
      .def(py::init(&make_field), py::arg("p"), py::arg("ell") = 1)
      .def_property_readonly("p", &FieldCtx::p)
      .def_property_readonly("ell", &FieldCtx::ell)
      .def_property_readonly("q", &FieldCtx::q)
      .def_property_readonly("modulus", [](const FieldCtx& f) {
        auto m = f.modulus();
        return std::vector<std::uint32_t>(m.begin(), m.end());
      })
      .def("add", [](const FieldCtx& f, std::uint32_t a, std::uint32_t b) { return f.add(felt(f, a), felt(f, b)).idx; })
      .def("sub", [](const FieldCtx& f, std::uint32_t a, std::uint32_t b) { return f.sub(felt(f, a), felt(f, b)).idx; })
      .def("mul", [](const FieldCtx& f, std::uint32_t a, std::uint32_t b) { return f.mul(felt(f, a), felt(f, b)).idx; })
      .def("neg", [](const FieldCtx& f, std::uint32_t a) { return f.neg(felt(f, a)).idx; })
      .def("inv", [](const FieldCtx& f, std::uint32_t a) { return f.inv(felt(f, a)).idx; })
      .def("pow", [](const FieldCtx& f, std::uint32_t a, std::int64_t e) { return f.pow(felt(f, a), e).idx; })
      .def("trace", [](const FieldCtx& f, std::uint32_t a) { return f.trace(felt(f, a)); })
      .def("chi", [](const FieldCtx& f, std::uint32_t a) { return f.chi(felt(f, a)); })
      .def("eta", [](const FieldCtx& f, std::uint32_t a) { return f.eta(felt(f, a)); })
      .def("decode", [](const FieldCtx& f, std::uint32_t a) { return f.decode(felt(f, a)); })
      .def("__repr__", &FieldCtx::name)
      .def("__eq__", [](const FieldCtx& a, const FieldCtx& b) { return a == b; });

  py::class_<PointSet>(m, "PointSet")
      .def(py::init(&from_lists), py::arg("field"), py::arg("dim"), py::arg("points"))
      .def_static("from_indices", &PointSet::from_indices, py::arg("field"), py::arg("dim"), py::arg("indices"))
      .def_static("random", &random_point_set, py::arg("field"), py::arg("dim"), py::arg("size"), py::arg("seed"))
      .def_property_readonly("field", &PointSet::ctx)
      .def_property_readonly("dim", &PointSet::dim)
      .def_property_readonly("indices", [](const PointSet& s) {
        return std::vector<std::uint64_t>(s.indices().begin(), s.indices().end());
      })
      .def_property_readonly("points", &points_of)
      .def("__len__", &PointSet::size)
      .def("__eq__", [](const PointSet& a, const PointSet& b) { return a == b; })
      .def("to_text", &point_set_text);

  m.def("gauss_sum", [](const FieldCtx& f, std::uint32_t a) { return gauss_sum(f, felt(f, a)); });
  m.def("gauss_explicit", &gauss_explicit);
  m.def("kloosterman", [](const FieldCtx& f, std::uint32_t a, std::uint32_t b) { return kloosterman(f, felt(f, a), felt(f, b)); });
  m.def("twisted_kloosterman",
        [](const FieldCtx& f, std::uint32_t a, std::uint32_t b) { return twisted_kloosterman(f, felt(f, a), felt(f, b)); });

  m.def("sphere", [](const FieldCtx& f, int dim, std::uint32_t r) { return sphere(f, dim, felt(f, r)); });
  m.def("sphere_sizes", &sphere_sizes);
  m.def("variety_v0", &variety_v0, py::arg("field"), py::arg("half_dim"));
  m.def("isotropic_subspace", &isotropic_subspace);
  m.def("product_set", &product_set);

  m.def("dft", [](const PointSet& s) { return as_array(dft(s).values); }, "Normalized transform, indexed like points.");
  m.def("restriction_masses", &restriction_masses);
  m.def("restriction_masses_autocorrelation", &restriction_masses_autocorrelation);

  m.def("pair_counts", [](const PointSet& s) { return pair_count_table(s).counts; });
  m.def("energy", [](const PointSet& s) { return py::int_(py::str(energy(pair_count_table(s)).str())); });
  m.def("distance_set", [](const PointSet& s) { return indices(distance_set(s)); });
  m.def("distance_sumset", [](const PointSet& e, const PointSet& f, bool via_product) {
        return indices(distance_sumset(e, f, via_product ? SumsetMethod::Product : SumsetMethod::Sumset));
      }, py::arg("e"), py::arg("f"), py::arg("via_product") = false);
  m.def("triple_count", &triple_count);
  m.def("iosevich_rudnev_threshold", &iosevich_rudnev_threshold);

  // Reports cross the boundary as their JSON line; the Python package parses them.
  m.def("_pair_report", [](const PointSet& e, const PointSet& f, const std::string& check) {
    return to_jsonl(pair_reports(e, f, {check}).front());
  });
  m.def("_gauss_report", [](const FieldCtx& f) { return to_jsonl(gauss_closed_form_report(f)); });
  m.def("_sphere_ft_report", [](const FieldCtx& f, int d) { return to_jsonl(sphere_ft_report(f, d)); });
  m.def("_v0_report", [](const FieldCtx& f, int d) { return to_jsonl(v0_ft_report(f, d)); });
  m.def("_isotropic_report", [](const FieldCtx& f, int d) { return to_jsonl(isotropic_report(f, d)); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the qdist command line in-process; returns (status, stdout, stderr).");
}

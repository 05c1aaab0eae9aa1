// Python bindings: frames and vectors are lists of lists of int, Fraction,
// float or str; exact results come back as fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "phaseret/error.hpp"
#include "phaseret/report.hpp"

namespace py = pybind11;
using namespace phaseret;

namespace {

Scalar to_scalar(const py::handle& h) {
  if (py::isinstance<py::bool_>(h)) throw ParseError("booleans are not scalars");
  if (py::isinstance<py::int_>(h)) return parse_scalar(py::str(h).cast<std::string>());
  if (py::isinstance<py::float_>(h)) return Scalar(h.cast<double>());
  if (py::isinstance<py::str>(h)) return parse_scalar(h.cast<std::string>());
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator"))
    return parse_scalar(py::str(h.attr("numerator")).cast<std::string>() + "/" +
                        py::str(h.attr("denominator")).cast<std::string>());
  throw ParseError("unsupported scalar type: " + py::str(py::type::of(h)).cast<std::string>());
}

Vector to_vector(const py::sequence& s) {
  std::vector<Scalar> xs;
  for (const auto& item : s) xs.push_back(to_scalar(item));
  return Vector(std::move(xs));
}

Frame to_frame(const py::sequence& rows) {
  std::vector<Vector> vs;
  for (const auto& r : rows) vs.push_back(to_vector(r.cast<py::sequence>()));
  if (vs.empty()) throw PreconditionError("a frame needs at least one vector");
  const std::size_t n = vs.front().dim();
  return Frame(n, std::move(vs));
}

py::object from_scalar(const Scalar& s) {
  if (!s.is_exact()) return py::float_(s.to_double());
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(s.str());
}

py::list from_vector(const Vector& v) {
  py::list out;
  for (const Scalar& s : v) out.append(from_scalar(s));
  return out;
}

py::object from_json(const json& j) {
  const py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

json to_json_doc(const py::object& doc) {
  const py::object dumps = py::module_::import("json").attr("dumps");
  return json::parse(dumps(doc).cast<std::string>());
}

py::dict weak_witness(const WeakWitness& w) {
  py::dict d;
  d["x"] = from_vector(w.x);
  d["y"] = from_vector(w.y);
  d["construction"] = w.construction;
  d["verified"] = w.verified;
  return d;
}

py::object maybe(const std::optional<WeakWitness>& w) {
  return w ? py::object(weak_witness(*w)) : py::object(py::none());
}

NumericConfig config(double tolerance, std::size_t cap) { return NumericConfig{tolerance, cap}; }

}  // namespace

PYBIND11_MODULE(_phaseret, m) {
  m.doc() = "Phase, weak phase and norm retrieval for finite frames";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def("inner", [](const py::sequence& x, const py::sequence& y) {
    return from_scalar(inner(to_vector(x), to_vector(y)));
  });

  m.def("spark", [](const py::sequence& f, double tol, std::size_t cap) {
    return spark(to_frame(f), config(tol, cap));
  }, py::arg("frame"), py::arg("tolerance") = 1e-9, py::arg("max_enumeration") = 22);

  m.def("is_full_spark", [](const py::sequence& f, double tol, std::size_t cap) {
    return is_full_spark(to_frame(f), config(tol, cap));
  }, py::arg("frame"), py::arg("tolerance") = 1e-9, py::arg("max_enumeration") = 22);

  m.def("does_phase_retrieval", [](const py::sequence& f, double tol, std::size_t cap) {
    const PhaseRetrievalCertificate c = does_phase_retrieval(to_frame(f), config(tol, cap));
    py::dict d;
    d["holds"] = c.holds;
    d["reason"] = c.reason;
    d["failing"] = c.failing ? from_json(to_json(*c.failing)) : py::object(py::none());
    return d;
  }, py::arg("frame"), py::arg("tolerance") = 1e-9, py::arg("max_enumeration") = 22);

  m.def("does_norm_retrieval", [](const py::sequence& f, double tol, std::size_t cap) {
    const NormRetrievalResult r = does_norm_retrieval(to_frame(f), config(tol, cap));
    py::dict d;
    d["holds"] = r.holds;
    d["witness"] = r.witness ? from_json(partition_witness_json(*r.witness)) : py::object(py::none());
    return d;
  }, py::arg("frame"), py::arg("tolerance") = 1e-9, py::arg("max_enumeration") = 22);

  m.def("phase_relation", [](const py::sequence& x, const py::sequence& y, double tol) {
    return std::string(to_string(phase_relation(to_vector(x), to_vector(y), tol)));
  }, py::arg("x"), py::arg("y"), py::arg("tolerance") = 0.0);

  m.def("measurements_equal", [](const py::sequence& f, const py::sequence& x, const py::sequence& y,
                                 double tol) {
    return measurements_equal(to_frame(f), to_vector(x), to_vector(y), tol);
  }, py::arg("frame"), py::arg("x"), py::arg("y"), py::arg("tolerance") = 0.0);

  m.def("classify_wpr_r2", [](const py::sequence& a, const py::sequence& b) {
    const R2Classification k = classify_wpr_r2(to_vector(a), to_vector(b));
    py::dict d;
    d["does_wpr"] = k.does_wpr;
    d["route"] = k.route;
    d["witness"] = maybe(k.witness);
    return d;
  });

  m.def("wpr_falsify", [](const py::sequence& f, std::uint64_t trials, std::uint64_t seed,
                          std::uint64_t samples, double tol, std::size_t cap) {
    const SearchBudget b{trials, seed, samples};
    b.validate();
    const WprSearchResult r = wpr_falsify(to_frame(f), b, config(tol, cap));
    py::dict d;
    d["witness"] = maybe(r.witness);
    d["complete"] = r.complete();
    d["partitions"] = r.stats.partitions;
    d["trials_used"] = r.stats.trials_used;
    return d;
  }, py::arg("frame"), py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("samples") = 64,
     py::arg("tolerance") = 1e-9, py::arg("max_enumeration") = 22);

  m.def("nonspanning_counterexample", [](const py::sequence& f) {
    return weak_witness(nonspanning_counterexample(to_frame(f)));
  });

  m.def("analyze", [](const py::object& doc, std::uint64_t trials, std::uint64_t seed,
                      std::uint64_t samples, double tol) {
    AnalysisOptions o;
    o.cfg.tolerance = tol;
    o.budget = SearchBudget{trials, seed, samples};
    o.budget.validate();
    return from_json(analyze(parse_input(to_json_doc(doc), ArithmeticMode::Auto, tol), o));
  }, py::arg("doc"), py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("samples") = 64,
     py::arg("tolerance") = 1e-9);

  m.def("run_examples", [](const std::string& id) { return from_json(run_examples(id, {})); },
        py::arg("id") = "");
}

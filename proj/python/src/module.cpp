#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "skein/bimodeng.hpp"
#include "skein/chainlab.hpp"
#include "skein/gradearith.hpp"
#include "skein/heckecore.hpp"
#include "skein/skeincli.hpp"
#include "skein/symalg.hpp"
#include "skein/weblang.hpp"

namespace py = pybind11;
using namespace skein;

namespace {

// Rationals cross the boundary as fractions.Fraction, through decimal
// strings so that no precision is lost.
py::object toFraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

Rational fromPython(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return Rational(Integer(py::str(h).cast<std::string>()));
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator") && !py::isinstance<py::float_>(h)) {
    Rational r(Integer(py::str(h.attr("numerator")).cast<std::string>()),
               Integer(py::str(h.attr("denominator")).cast<std::string>()));
    r.canonicalize();
    return r;
  }
  throw py::type_error("expected an int or a fractions.Fraction");
}

std::optional<int> truncationOr(std::optional<int> d, int a, int b) { return d ? d : defaultTruncation(a, b); }

// A complex plus the colors it was built for, so that checks can pick the
// default truncation.
struct PyComplex {
  ChainComplex complex;
  int a = 0, b = 0;
};

py::list objectsOf(const PyComplex& c) {
  py::list out;
  for (const auto& o : c.complex.objects) {
    py::dict d;
    d["label"] = o.label;
    d["web"] = render(o.bimodule->web());
    d["q"] = o.shift.q;
    d["t"] = o.shift.t;
    out.append(d);
  }
  return out;
}

py::dict reportToDict(const CheckReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["params"] = r.params;
  d["status"] = statusName(r.status);
  d["witness"] = r.witness.empty() ? py::object(py::none()) : py::object(py::str(r.witness));
  d["truncation"] = r.truncation;
  d["elapsed_ms"] = r.elapsedMs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations with colored webs, Hecke algebroids and chain complexes of bimodules.";

  static py::exception<NotStabilizedError> notStabilized(m, "NotStabilizedError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotStabilizedError& e) {
      py::set_error(notStabilized, e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  // -- graded arithmetic ----------------------------------------------------
  py::class_<Laurent>(m, "Laurent", "Exact Laurent polynomial in q and t with rational coefficients.")
      .def(py::init<>())
      .def(py::init([](const py::object& c) { return Laurent(fromPython(c)); }), py::arg("constant"))
      .def_static(
          "monomial", [](int q, int t, const py::object& c) { return Laurent::monomial(q, t, fromPython(c)); },
          py::arg("q"), py::arg("t") = 0, py::arg("coefficient") = 1)
      .def("coefficient", [](const Laurent& l, int q, int t) { return toFraction(l.coefficient(q, t)); }, py::arg("q"),
           py::arg("t") = 0)
      .def("terms",
           [](const Laurent& l) {
             py::dict d;
             for (const auto& [k, c] : l.terms()) d[py::make_tuple(k.first, k.second)] = toFraction(c);
             return d;
           })
      .def("is_zero", &Laurent::isZero)
      .def("bar", &Laurent::bar)
      .def("at_q_equals_one", &Laurent::atQEqualsOne)
      .def("shifted", py::overload_cast<int, int>(&Laurent::shifted, py::const_), py::arg("dq"), py::arg("dt") = 0)
      .def("__pow__", [](const Laurent& l, unsigned n) { return l.pow(n); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__str__", &Laurent::str)
      .def("__repr__", [](const Laurent& l) { return "Laurent(" + l.str() + ")"; });

  m.def("qint", &qint, py::arg("n"), "Balanced quantum integer [n].");
  m.def("qfactorial", &qfactorial, py::arg("n"));
  m.def("qbinom", &qbinom, py::arg("n"), py::arg("k"));
  m.def("skein_scalar", &skeinScalar, py::arg("a"), py::arg("b"));

  // -- symmetric functions ------------------------------------------------
  auto tuples = [](const std::vector<Partition>& ps) {
    std::vector<std::vector<int>> out;
    for (const auto& p : ps) out.push_back(p.parts);
    return out;
  };
  m.def("partitions_in_box", [tuples](int rows, int cols) { return tuples(partitionsInBox(rows, cols)); },
        py::arg("rows"), py::arg("cols"));
  m.def("zeta_partition", [](const std::vector<int>& eps) { return zetaPartition(eps).parts; }, py::arg("epsilon"));
  m.def("is_horizontal_strip",
        [](const std::vector<int>& outer, const std::vector<int>& inner) {
          return isHorizontalStrip(Partition(outer), Partition(inner));
        },
        py::arg("outer"), py::arg("inner"));
  m.def(
      "check_identity",
      [](const std::string& name, int degree, int sizeX, int sizeXPrime) {
        static const std::map<std::string, Identity> ids{{"he", Identity::HE},
                                                         {"newton", Identity::Newton},
                                                         {"he2", Identity::HE2},
                                                         {"some-relations-a", Identity::SomeRel1a},
                                                         {"some-relations-b", Identity::SomeRel1b}};
        auto it = ids.find(name);
        if (it == ids.end()) throw py::value_error("unknown identity " + name);
        return checkIdentity(it->second, {degree, sizeX, sizeXPrime});
      },
      py::arg("name"), py::arg("degree"), py::arg("size_x") = 2, py::arg("size_x_prime") = 2);

  // -- webs -----------------------------------------------------------------
  py::class_<Web>(m, "Web")
      .def_static("parse", &parseWeb, py::arg("text"))
      .def_static("identity", &Web::identity, py::arg("colors"))
      .def_static("merge", &Web::merge, py::arg("position"), py::arg("source"))
      .def_static("split", &Web::split, py::arg("position"), py::arg("source"), py::arg("first"), py::arg("second"))
      .def_static("crossing", &Web::crossing, py::arg("position"), py::arg("source"), py::arg("positive") = true)
      .def_static("ladder", [](int a, int b, int f, int e) { return Ladder{a, b, f, e}.web(); }, py::arg("a"),
                  py::arg("b"), py::arg("f"), py::arg("e"), "F^(f) E^(e) on (a, b).")
      .def_property_readonly("source", &Web::source)
      .def_property_readonly("target", &Web::target)
      .def_property_readonly("layer_count", [](const Web& w) { return w.layers().size(); })
      .def("then", &Web::then, py::arg("next"))
      .def("tensor", [](const Web& f, const Web& g) { return tensor(f, g); })
      .def(py::self == py::self)
      .def("__str__", &render)
      .def("__repr__", [](const Web& w) { return "Web(" + render(w) + ")"; });
  py::register_exception<WebError>(m, "WebError", PyExc_ValueError);

  // -- Hecke algebroid -----------------------------------------------------
  py::class_<AlgebroidMorphism>(m, "HeckeClass", "A morphism of the Hecke algebroid.")
      .def_readonly("source", &AlgebroidMorphism::source)
      .def_readonly("target", &AlgebroidMorphism::target)
      .def(py::self == py::self)
      .def("__add__", [](const AlgebroidMorphism& f, const AlgebroidMorphism& g) { return f + g; })
      .def("__matmul__", [](const AlgebroidMorphism& f, const AlgebroidMorphism& g) { return f * g; },
           "Composition: f @ g applies g first.")
      .def("__rmul__", [](const AlgebroidMorphism& f, const Laurent& c) { return c * f; })
      .def("__str__", [](const AlgebroidMorphism& f) { return f.value.str(); });
  m.def("web_class", &webClass, py::arg("web"));
  m.def("cable", [](const std::string& braid) { return cable(parseBraid(braid)); }, py::arg("braid"));
  m.def("euler_crossing", &eulerCrossing, py::arg("a"), py::arg("b"), py::arg("positive") = true);
  m.def(
      "verify_skein",
      [](int a, int b) {
        const SkeinReport r = verifySkein(a, b);
        py::dict d;
        d["digon"] = r.digonIdentity;
        d["crossing"] = r.crossingIdentity;
        d["witness"] = r.digonWitness + r.crossingWitness;
        return d;
      },
      py::arg("a"), py::arg("b"));

  // -- bimodules -------------------------------------------------------------
  m.def("default_truncation", &defaultTruncation, py::arg("a"), py::arg("b"));
  m.def(
      "generator_series", [](const Web& w) { return GradedBimodule::of(w)->generatorSeries(); }, py::arg("web"),
      "Graded rank of the bimodule of a web over its incoming ring.");
  m.def(
      "hom_dimension",
      [](const Web& source, const Web& target, int degree, int truncation) {
        const HomSpace h = homSolve(GradedBimodule::of(source), GradedBimodule::of(target), degree, truncation);
        return py::make_tuple(h.dimension, h.dimensionNext);
      },
      py::arg("source"), py::arg("target"), py::arg("degree"), py::arg("truncation"),
      "Dimension of the degree-`degree` bimodule maps at D and at D+2.");

  // -- complexes -------------------------------------------------------------
  py::class_<PyComplex>(m, "Complex")
      .def_property_readonly("objects", &objectsOf)
      .def("__len__", [](const PyComplex& c) { return c.complex.size(); })
      .def("d_squared_witness", [](const PyComplex& c) { return dSquaredWitness(c.complex); },
           "None if d^2 = 0, otherwise a nonzero component.")
      .def("euler_characteristic", [](const PyComplex& c) { return eulerCharacteristic(c.complex); })
      .def(
          "equivalent_to",
          [](const PyComplex& c, const PyComplex& other, std::optional<int> truncation) {
            const EquivalenceResult r =
                equivalenceCertificate(c.complex, other.complex, *truncationOr(truncation, c.a, c.b));
            return py::make_tuple(r.certificate.has_value(), r.stabilized);
          },
          py::arg("other"), py::arg("truncation") = py::none(),
          "(certificate found, stabilized). A missing certificate is not a disproof.");

  m.def(
      "rickard",
      [](int a, int b, bool positive, std::optional<int> d) {
        return PyComplex{rickard(a, b, positive, *truncationOr(d, a, b)), a, b};
      },
      py::arg("a"), py::arg("b"), py::arg("positive") = true, py::arg("truncation") = py::none());
  m.def(
      "shifted_rickard",
      [](int c, int d, int a, int b, std::optional<int> D) {
        return PyComplex{shiftedRickard(c, d, a, b, *truncationOr(D, a, b)), a, b};
      },
      py::arg("c"), py::arg("d"), py::arg("a"), py::arg("b"), py::arg("truncation") = py::none());
  m.def(
      "kmcs",
      [](int a, int b, std::optional<int> d) { return PyComplex{kmcs(a, b, *truncationOr(d, a, b)), a, b}; },
      py::arg("a"), py::arg("b"), py::arg("truncation") = py::none());
  m.def(
      "mccs",
      [](int a, int b, int s, std::optional<int> d) {
        const FilteredComplex f = zetaTransform(kmcs(a, b, *truncationOr(d, a, b)), a, b);
        return PyComplex{mccs(f, s), a, b};
      },
      py::arg("a"), py::arg("b"), py::arg("s"), py::arg("truncation") = py::none());
  m.def(
      "full_twist_model", [](int d) { return PyComplex{fullTwistModel(d), 1, 1}; }, py::arg("truncation") = 12);

  // -- verification suites -------------------------------------------------
  m.def("suite_names", &suiteNames);
  m.def(
      "run_suite",
      [](const std::string& suite, std::optional<int> a, std::optional<int> b, std::optional<int> truncation,
         int jobs) {
        if (!isSuite(suite)) throw py::value_error("unknown suite " + suite);
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = runSuite(suite, RunOptions{a, b, truncation, jobs});
        }
        py::list out;
        for (const auto& r : reports) out.append(reportToDict(r));
        return out;
      },
      py::arg("suite"), py::arg("a") = py::none(), py::arg("b") = py::none(), py::arg("truncation") = py::none(),
      py::arg("jobs") = 1);
}

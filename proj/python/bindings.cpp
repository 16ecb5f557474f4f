#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tameforge/composer.hpp"
#include "tameforge/error.hpp"
#include "tameforge/products.hpp"
#include "tameforge/runner.hpp"
#include "tameforge/serialize.hpp"
#include "tameforge/sl2.hpp"
#include "tameforge/symplectic.hpp"
#include "tameforge/verify.hpp"

namespace py = pybind11;
using namespace tameforge;
using nlohmann::json;

namespace {

Generator generator(const std::string& name) {
  const auto g = generator_from_string(name);
  if (!g) throw Error(ErrorKind::InvalidArgument, "unknown generator " + name);
  return *g;
}

py::dict construction(const AutoChain& chain, const std::vector<CxVector>& points,
                      const std::vector<CxVector>& images) {
  py::dict d;
  d["chain"] = chain;
  d["points"] = points;
  d["images"] = images;
  return d;
}

py::dict construction(const Construction& c) { return construction(c.chain, c.points, c.images); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tame-set automorphism constructions and their verifiers";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "TameforgeError");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<AutoChain>(m, "Chain")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &AutoChain::dim)
      .def("__len__", &AutoChain::size)
      .def("apply", [](const AutoChain& c, const CxVector& z) { return c.apply(z); }, py::arg("z"))
      .def("inverse", &AutoChain::inverse)
      .def("then", [](AutoChain c, const AutoChain& next) { return c.then(next); }, py::arg("next"),
           "Chain applying self first, then next.")
      .def("to_json", [](const AutoChain& c) { return to_json(c).dump(); })
      .def_static("from_json", [](const std::string& s) { return chain_from_json(parse(s)); });

  m.def("random_injection", &random_injection, py::arg("k"), py::arg("range"), py::arg("seed"));

  m.def("seq1_chain", [](const std::vector<int>& ell) {
    const auto c = seq1_chain(ell);
    return construction(c.chain, c.points, c.images);
  }, py::arg("ell"));
  m.def("seq2_chain", [](const std::vector<int>& ell) {
    const auto c = seq2_chain(ell);
    return construction(c.chain, c.points, c.images);
  }, py::arg("ell"));
  m.def("haar_residual", [](const AutoChain& c, int count, double radius, std::uint64_t seed) {
    return haar_residual(c, ToleranceConfig{}, SampleSpec{count, radius, seed});
  }, py::arg("chain"), py::arg("count") = 50, py::arg("radius") = 2.0, py::arg("seed") = 20240611);
  m.def("bracket", [](const std::string& x, const std::string& y, const CxVector& p) {
    return bracket(generator(x), generator(y), SL2Elem::from_vector(p));
  }, py::arg("x"), py::arg("y"), py::arg("point"));
  m.def("oka_rank", [](const CxVector& p, int cutoff) {
    return oka_rank(SL2Elem::from_vector(p), PrimeMask::up_to(cutoff));
  }, py::arg("point"), py::arg("cutoff") = 30);

  m.def("axis_relabel", [](const std::vector<Complex>& a, const std::vector<Complex>& b, int n) {
    return construction(axis_relabel(a, b, n));
  }, py::arg("alpha"), py::arg("beta"), py::arg("n"));
  m.def("fiber_lift_chain", [](const std::vector<Complex>& b, const std::vector<CxVector>& t, int n) {
    return construction(fiber_lift_chain(b, t, n));
  }, py::arg("b"), py::arg("targets"), py::arg("n"));
  m.def("flatten_pairs_c4", [](int K, const std::string& mode, double alpha) {
    if (mode != "corrected" && mode != "paper") throw ConfigError("mode must be corrected or paper");
    return construction(flatten_pairs_c4(PairLattice::cantor(K, alpha),
                                         mode == "paper" ? FlattenMode::Paper : FlattenMode::Corrected));
  }, py::arg("K"), py::arg("mode") = "corrected", py::arg("alpha") = std::sqrt(2.0));
  m.def("tame_c4_projection", [](const std::vector<CxVector>& A, std::uint64_t seed) {
    return construction(tame_c4_projection(A, seed));
  }, py::arg("points"), py::arg("seed") = 1);

  m.def("product_chain", [](const std::vector<int>& ell) { return construction(product_chain(ell)); },
        py::arg("ell"));
  m.def("gizatullin_chain", [](int mm, const std::vector<int>& ell) {
    return construction(gizatullin_chain(mm, ell));
  }, py::arg("m"), py::arg("ell"));
  m.def("kr_flow", [](const std::string& field, Complex t, const CxVector& p) {
    return kr_flow(generator(field), t, p, KRVariety::kr_cubic());
  }, py::arg("field"), py::arg("t"), py::arg("point"), "Flow of KR_V or KR_W on the kr-cubic preset.");
  m.def("kr_residual", [](const CxVector& p) { return kr_residual(p, KRVariety::kr_cubic()); },
        py::arg("point"));

  m.def("move_point_fixing", [](const CxVector& a, const CxVector& b, const std::vector<CxVector>& fixed,
                                double radius, double eps, std::uint64_t seed) {
    return move_point_fixing(a, b, fixed, CompactBox{radius}, eps, ToleranceConfig{}, seed);
  }, py::arg("a"), py::arg("b"), py::arg("fixed"), py::arg("radius"), py::arg("eps"), py::arg("seed") = 1);
  m.def("shell_instance", [](int count, std::uint64_t seed) {
    std::vector<CxVector> A, B;
    shell_instance(count, seed, A, B);
    return py::make_tuple(A, B);
  }, py::arg("count"), py::arg("seed"));
  m.def("equivalence_chain", [](const std::vector<CxVector>& A, const std::vector<CxVector>& B, double eps0,
                                double growth, double initial_radius, std::uint64_t seed) {
    const EquivalenceResult r = equivalence_chain(A, B, eps0, growth, initial_radius, ToleranceConfig{}, seed);
    py::list stages;
    for (const StageLog& s : r.stages) {
      py::dict d;
      d["k"] = s.k;
      d["epsilon_target"] = s.epsilon_target;
      d["measured_deviation"] = s.measured_deviation;
      d["matched_pairs"] = s.matched_pairs;
      d["damping_nodes_used"] = s.damping_nodes_used;
      d["box_radius"] = s.box_radius;
      stages.append(d);
    }
    return py::make_tuple(r.chain, stages, r.order);
  }, py::arg("A"), py::arg("B"), py::arg("eps0") = 0.5, py::arg("growth") = 2.0,
     py::arg("initial_radius") = 1.0, py::arg("seed") = 1);

  m.def("mapping_residual", [](const AutoChain& c, const std::vector<CxVector>& p, const std::vector<CxVector>& q) {
    return verify_tame_action(c, p, q, ToleranceConfig{}).checks[0].residual;
  }, py::arg("chain"), py::arg("points"), py::arg("images"));
  m.def("symplectic_residual", [](const AutoChain& c, int n, int count, double radius, std::uint64_t seed) {
    return check_symplectic(c, n, ToleranceConfig{}, SampleSpec{count, radius, seed}).checks[0].residual;
  }, py::arg("chain"), py::arg("n"), py::arg("count") = 50, py::arg("radius") = 2.0, py::arg("seed") = 20240611);
  m.def("volume_residual", [](const AutoChain& c, int count, double radius, std::uint64_t seed) {
    return check_volume(c, ToleranceConfig{}, SampleSpec{count, radius, seed}).checks[0].residual;
  }, py::arg("chain"), py::arg("count") = 50, py::arg("radius") = 2.0, py::arg("seed") = 20240611);
  m.def("round_trip_residual", &round_trip_residual, py::arg("chain"), py::arg("points"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("command", &RunConfig::command)
      .def_readwrite("k", &RunConfig::k)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("injection", &RunConfig::injection)
      .def_readwrite("range", &RunConfig::range)
      .def_readwrite("tol", &RunConfig::tol)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("m", &RunConfig::m)
      .def_readwrite("n", &RunConfig::n)
      .def_readwrite("points", &RunConfig::points)
      .def_readwrite("eps", &RunConfig::eps)
      .def_readwrite("growth", &RunConfig::growth)
      .def_readwrite("preset", &RunConfig::preset)
      .def_property(
          "variety",
          [](const RunConfig& c) { return c.variety ? py::object(py::str(c.variety->dump())) : py::none(); },
          [](RunConfig& c, const std::optional<std::string>& s) {
            c.variety = s ? std::optional<json>(parse(*s)) : std::nullopt;
          });
  m.def("run_json", [](const RunConfig& c) {
    const RunResult r = run(c, tolerance_from_env());
    return py::make_tuple(r.report.dump(), r.exit_code);
  }, py::arg("config"), "Report as a JSON string and the CLI exit code.");
  m.attr("commands") = run_commands();
}

#include "tameforge/serialize.hpp"

#include <cmath>

#include "tameforge/error.hpp"

namespace tameforge {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

// JSON has no infinities or NaN; they are written as null and rejected on load.
json real_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json fn_to_json(const ScalarFn& f) {
  if (const auto* a = f.affine()) {
    return {{"type", "affine"}, {"slope", complex_to_json(a->slope)}, {"offset", complex_to_json(a->offset)}};
  }
  const Interpolant& p = *f.interpolant();
  json nodes = json::array(), values = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    nodes.push_back(complex_to_json(p.nodes()[i]));
    values.push_back(complex_to_json(p.values()[i]));
  }
  return {{"type", "interpolant"}, {"nodes", nodes}, {"values", values}};
}

ScalarFn fn_from_json(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "affine") {
    return AffineFn{complex_from_json(field(j, "slope")), complex_from_json(field(j, "offset"))};
  }
  if (type == "interpolant") {
    std::vector<Complex> nodes, values;
    for (const auto& x : field(j, "nodes")) nodes.push_back(complex_from_json(x));
    for (const auto& x : field(j, "values")) values.push_back(complex_from_json(x));
    return Interpolant::fit(nodes, values);
  }
  bad("unknown function type \"" + type + "\"");
}

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"exponents", t.exponents}});
  return {{"vars", p.num_vars()}, {"terms", terms}};
}

MultiPoly poly_from_json(const json& j) {
  std::vector<Monomial> terms;
  for (const auto& t : field(j, "terms")) {
    terms.push_back({complex_from_json(field(t, "coeff")), field(t, "exponents").get<std::vector<int>>()});
  }
  return MultiPoly(field(j, "vars").get<int>(), std::move(terms));
}

json primitive_to_json(const Primitive& prim) {
  json j;
  j["dim"] = primitive_dim(prim);
  if (const auto* s = std::get_if<ShearPrimitive>(&prim)) {
    j["kind"] = "shear";
    j["v"] = vector_to_json(s->direction());
    j["lambda"] = vector_to_json(s->functional());
    j["fn"] = fn_to_json(s->fn());
  } else if (const auto* f = std::get_if<FlowPrimitive>(&prim)) {
    j["kind"] = "flow";
    j["generator"] = std::string(to_string(f->generator()));
    if (f->constant_time()) {
      j["time"] = complex_to_json(f->time_at(CxVector::Zero(f->dim())));
    } else {
      j["time"] = fn_to_json(f->time());
      j["lambda"] = vector_to_json(f->functional());
    }
    j["m"] = f->params().m;
    if (f->params().variety) {
      const auto& var = *f->params().variety;
      j["variety"] = to_json(var);
    }
  } else {
    const auto& l = std::get<LiftPrimitive>(prim);
    j["kind"] = "lift";
    j["indices"] = l.indices();
    j["chain"] = to_json(l.inner());
  }
  return j;
}

Primitive primitive_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "shear") {
    return ShearPrimitive(vector_from_json(field(j, "v")), vector_from_json(field(j, "lambda")),
                          fn_from_json(field(j, "fn")));
  }
  if (kind == "flow") {
    const std::string name = field(j, "generator").get<std::string>();
    const auto gen = generator_from_string(name);
    if (!gen) bad("unknown generator \"" + name + "\"");
    FlowParams params;
    params.m = j.value("m", 0);
    if (j.contains("variety")) {
      const json& v = j.at("variety");
      params.variety = std::make_shared<const KRVariety>(variety_from_json(v));
    }
    const json& t = field(j, "time");
    if (t.is_array()) return FlowPrimitive(*gen, complex_from_json(t), params);
    return FlowPrimitive(*gen, fn_from_json(t), vector_from_json(field(j, "lambda")), params);
  }
  if (kind == "lift") {
    return LiftPrimitive(field(j, "dim").get<int>(), field(j, "indices").get<std::vector<int>>(),
                         chain_from_json(field(j, "chain")));
  }
  bad("unknown primitive kind \"" + kind + "\"");
}

}  // namespace

json to_json(const KRVariety& var) {
  return {{"n", var.n}, {"a", poly_to_json(var.a)}, {"b", poly_to_json(var.b)}};
}

KRVariety variety_from_json(const json& j) {
  try {
    KRVariety var{field(j, "n").get<int>(), poly_from_json(field(j, "a")), poly_from_json(field(j, "b"))};
    if (var.n < 1 || var.a.num_vars() != var.n + 1 || var.b.num_vars() != var.n + 1) {
      bad("variety polynomials must have n + 1 variables, n >= 1");
    }
    return var;
  } catch (const json::exception& e) {
    bad(e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    bad(e.what());
  }
}

json complex_to_json(Complex z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const CxVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

CxVector vector_from_json(const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  CxVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

json to_json(const AutoChain& chain) {
  json prims = json::array();
  for (const auto& p : chain.primitives()) prims.push_back(primitive_to_json(p));
  return {{"dim", chain.dim()}, {"primitives", prims}};
}

AutoChain chain_from_json(const json& j) {
  try {
    AutoChain chain(field(j, "dim").get<int>());
    for (const auto& p : field(j, "primitives")) chain.push(primitive_from_json(p));
    return chain;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json to_json(const ToleranceConfig& cfg) {
  return {{"diff_step", cfg.diff_step},
          {"residual_tol", cfg.residual_tol},
          {"jac_tol", cfg.jac_tol},
          {"grid_n", cfg.grid_n}};
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", real_to_json(c.residual)},
                      {"tol", c.tol},
                      {"pass", c.pass},
                      {"expected_fail", c.expected_fail}});
  }
  return {{"construction", report.construction_name},
          {"checks", checks},
          {"seed", report.sample_seed},
          {"config", to_json(report.config)}};
}

}  // namespace tameforge

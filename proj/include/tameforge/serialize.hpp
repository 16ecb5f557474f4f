#pragma once

#include <nlohmann/json.hpp>

#include "tameforge/autochain.hpp"
#include "tameforge/verify.hpp"

namespace tameforge {

/// Flat description of a chain. Complex numbers are [re, im]; each primitive
/// carries "kind" (shear | flow | lift) and "dim". Shears add "v", "lambda"
/// and a function ({"type": "interpolant", "nodes", "values"} or
/// {"type": "affine", "slope", "offset"}); flows add "generator" and "time"
/// (a complex constant, or a function plus "lambda"); lifts add "indices"
/// and the inner "chain".
nlohmann::json to_json(const AutoChain& chain);
/// Throws ParseError on malformed input; interpolants are refitted from their
/// nodes and values, which reproduces the stored coefficients exactly.
AutoChain chain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const ToleranceConfig& cfg);

/// {"n", "a", "b"} with polynomials as {"vars", "terms": [{"coeff", "exponents"}]}.
nlohmann::json to_json(const KRVariety& var);
/// Throws ParseError.
KRVariety variety_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const CxVector& v);
CxVector vector_from_json(const nlohmann::json& j);

}  // namespace tameforge

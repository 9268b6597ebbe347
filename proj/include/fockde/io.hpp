#pragma once

// JSON schemas for weights, entire functions, problems and quadrature
// configs, and the serializers used for reports. Non-finite doubles are
// written as the strings "inf", "-inf" and "nan" so that every report is
// valid JSON.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fockde/conditions.hpp"
#include "fockde/entire.hpp"
#include "fockde/kernel.hpp"
#include "fockde/ode.hpp"
#include "fockde/quadrature.hpp"
#include "fockde/weights.hpp"

namespace fockde {

using json = nlohmann::ordered_json;

/// Input that does not match a schema. `path` is the JSON path of the
/// offending field, e.g. "$.coefficients[1].coeffs".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, std::string message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)), message_(std::move(message)) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// Throws SchemaError("$", ...) when the text is not JSON.
json parse_json_text(const std::string& text);
/// Throws std::runtime_error when the file cannot be read.
std::string read_text_file(const std::string& path);

json number(double x);
json to_json(cplx z);

/// A number or [re, im].
cplx complex_from_json(const json& j, const std::string& path = "$");

/// {"kind":"power","alpha":3}, {"kind":"exponential","beta":1},
/// {"kind":"double_exponential"}, {"kind":"classical_gaussian"},
/// {"kind":"scaled_exponential","c":0.5}.
WeightProfile weight_from_json(const json& j, const std::string& path = "$");
json to_json(const WeightProfile& w);

/// {"type":"poly","coeffs":[...]}, {"type":"series","coeffs":[...],"tail_tol":1e-12},
/// {"type":"named","name":"cos"|"sin"|"exp_scaled"|"monomial"|"constant", "c":..., "m":...},
/// {"type":"sum","terms":[...]}, {"type":"product","factors":[...]},
/// {"type":"scaled","factor":c,"inner":{...}}, {"type":"zero"}.
EntireFunction function_from_json(const json& j, const std::string& path = "$");
json to_json(const EntireFunction& f);

/// {"order":k, "initial":[...], "coefficients":[A_0..A_{k-1}], "forcing":{...}}.
/// "coefficients" and "forcing" are optional (zero by default). An optional
/// "candidate" function is left for the caller (see candidate_from_json).
LDEProblem problem_from_json(const json& j, const std::string& path = "$");
json to_json(const LDEProblem& problem);
/// The "candidate" field of a problem file, when present.
std::optional<EntireFunction> candidate_from_json(const json& j, const std::string& path = "$");

/// Quadrature overrides; absent fields keep their defaults.
QuadratureConfig quadrature_from_json(const json& j, const std::string& path = "$");
json to_json(const QuadratureConfig& cfg);

/// {"C":1, "D":[...], "Ci":[...], "E":[...], "F":[...], "G":1}; absent fields keep 1.
ConstantsConfig constants_from_json(const json& j, const std::string& path = "$");
json to_json(const ConstantsConfig& c);

json to_json(const NormResult& r);
json to_json(const WeightDiagnostics& d);
json to_json(const DerivativeNormFlags& f);
json to_json(const ProbeResult& p);
json to_json(const ConditionReport& r);
json to_json(const KernelFunctional& k);
json to_json(const ProbeGrid& g);

/// Stable hash of a quadrature configuration.
std::string config_hash(const QuadratureConfig& cfg);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

/// %.17g for finite values, "inf"/"-inf"/"nan" otherwise.
std::string format_double(double x);

}  // namespace fockde

#pragma once

// Curve sources accepted on the command line and in JSON files.
//
//   {"components": [...], "form": ..., "range": [lo, hi]}
//   {"catalog": "helix:a=1.6,b=0.8", "range": [lo, hi]}
//   {"synthesize": {"kappa": "<u-expr>", "tau": "<u-expr>", "step": h}, "range": [lo, hi]}
//   {"partner": {"kind": "bertrand" | "mannheim", "lambda": "e^0.5", "base": <source>}, "range": [lo, hi]}

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mulgeo/curve.hpp"
#include "mulgeo/synth.hpp"

namespace mulgeo::cli {

/// Bad invocation or unreadable input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Source {
  CurveJet curve;
  /// JSON that resolves back to the same curve.
  nlohmann::json description;
};

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "s0:s1" with MNum literals on both sides.
ParamRange parse_range_arg(const std::string& text);
nlohmann::json range_json(const ParamRange& r);

CurvatureProfile profile_from_text(const std::string& u_expr);

Source source_from_catalog(const std::string& id);
Source source_from_json(const nlohmann::json& doc);
Source source_from_file(const std::string& path);

/// The same source restricted to another parameter range.
Source with_range(const Source& source, const ParamRange& range);

/// Exactly one of catalog id and file path must be given.
Source resolve(const std::optional<std::string>& catalog, const std::optional<std::string>& file,
               const std::string& what);

}  // namespace mulgeo::cli

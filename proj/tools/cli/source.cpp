#include "cli/source.hpp"

#include <fstream>
#include <sstream>

#include "mulgeo/mexpr.hpp"
#include "mulgeo/partner.hpp"

namespace mulgeo::cli {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what(), e.byte);
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("write to '" + path + "' failed");
}

ParamRange parse_range_arg(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("range must look like s0:s1", text.size(), {":"});
  MNum lo;
  try {
    lo = parse_mnum(text.substr(0, colon));
  } catch (const ParseError& e) {
    throw ParseError(std::string("range start: ") + e.what(), e.offset(), e.expected());
  }
  MNum hi;
  try {
    hi = parse_mnum(text.substr(colon + 1));
  } catch (const ParseError& e) {
    throw ParseError(std::string("range end: ") + e.what(), colon + 1 + e.offset(), e.expected());
  }
  if (!(lo < hi)) throw UsageError("range '" + text + "' is empty");
  return make_range(lo, hi);
}

nlohmann::json range_json(const ParamRange& r) {
  return nlohmann::json::array({render(r.lo, Style::Log), render(r.hi, Style::Log)});
}

CurvatureProfile profile_from_text(const std::string& u_expr) {
  BExpr b = parse_classical(u_expr);
  return [b](double u, int order) { return evaluate(b, Series::variable(u, order)); };
}

Source source_from_catalog(const std::string& id) {
  return {catalog_curve(id), nlohmann::json{{"catalog", id}}};
}

namespace {

std::string string_field(const nlohmann::json& obj, const char* key, const char* where) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw ParseError(std::string(where) + ": '" + key + "' must be a string", 0, {key});
  }
  return obj.at(key).get<std::string>();
}

MNum mnum_field(const nlohmann::json& j) {
  if (j.is_string()) return parse_mnum(j.get<std::string>());
  if (j.is_number()) return MNum::from_value(j.get<double>());
  throw ParseError("expected an MNum literal", 0, {"e^<real>"});
}

CurveJet partner_curve(const nlohmann::json& p, const CurveJet& base) {
  const std::string kind = string_field(p, "kind", "partner");
  const bool has_lambda = p.contains("lambda") && !p.at("lambda").is_null();
  if (kind == "bertrand") {
    const MNum lambda = has_lambda ? mnum_field(p.at("lambda")) : bertrand_natural_lambda(base);
    return bertrand_partner(base, lambda);
  }
  if (kind == "mannheim") {
    if (!has_lambda) return mannheim_partner(base);
    const MNum lambda = mnum_field(p.at("lambda"));
    return bertrand_partner(base, lambda)
        .with_label("mannheim(" + base.label() + ", " + render(lambda, Style::Log) + ")");
  }
  throw ParseError("partner: unknown kind '" + kind + "'", 0, {"bertrand", "mannheim"});
}

}  // namespace

Source source_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("curve source must be a JSON object", 0, {"{"});
  std::optional<ParamRange> range;
  if (doc.contains("range")) range = parse_range(doc.at("range"));

  if (doc.contains("catalog")) {
    CurveJet c = catalog_curve(string_field(doc, "catalog", "catalog source"));
    if (range) c = c.with_domain(*range);
    return {c, doc};
  }
  if (doc.contains("synthesize")) {
    const auto& s = doc.at("synthesize");
    if (!s.is_object()) throw ParseError("synthesize: expected an object", 0, {"{"});
    SynthOptions opts;
    if (s.contains("step")) opts.step = s.at("step").get<double>();
    CurveJet c = curve_from_curvatures(profile_from_text(string_field(s, "kappa", "synthesize")),
                                       profile_from_text(string_field(s, "tau", "synthesize")),
                                       range ? *range : default_range(), opts);
    return {c, doc};
  }
  if (doc.contains("partner")) {
    const auto& p = doc.at("partner");
    if (!p.is_object() || !p.contains("base")) throw ParseError("partner: missing 'base'", 0, {"base"});
    Source base = source_from_json(p.at("base"));
    if (range) base = with_range(base, *range);
    return {partner_curve(p, base.curve), doc};
  }
  return {curve_from_spec(parse_curve_spec(doc)), doc};
}

Source source_from_file(const std::string& path) { return source_from_json(read_json_file(path)); }

Source with_range(const Source& source, const ParamRange& range) {
  nlohmann::json doc = source.description;
  doc["range"] = range_json(range);
  return source_from_json(doc);
}

Source resolve(const std::optional<std::string>& catalog, const std::optional<std::string>& file,
               const std::string& what) {
  if (catalog && file) throw UsageError(what + ": give either a catalog id or a spec file, not both");
  if (catalog) return source_from_catalog(*catalog);
  if (file) return source_from_file(*file);
  throw UsageError(what + ": a curve is required");
}

}  // namespace mulgeo::cli

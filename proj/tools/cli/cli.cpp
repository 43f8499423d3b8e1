#include "cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "CLI11.hpp"
#include "cli/source.hpp"
#include "cli/svg.hpp"
#include "mulgeo/classify.hpp"
#include "mulgeo/mexpr.hpp"
#include "mulgeo/partner.hpp"

namespace mulgeo::cli {

namespace {

struct CurveArgs {
  std::string curve;
  std::string spec;
  std::string range;
};

struct Args {
  std::string expr;
  std::string at;
  bool log_form = false;

  CurveArgs x;
  std::string with;
  std::string with_spec;
  std::string kind;
  std::string lambda;
  /// -1 until given; each command has its own default.
  int samples = -1;
  double tol = 1e-6;
  std::string out;
  std::string report;
  std::string source;
  std::string sphere_center;
  std::string sphere_radius;

  std::string kappa;
  std::string tau;
  double step = 1e-3;

  std::vector<std::string> curves;
  std::vector<std::string> specs;
  std::vector<std::string> vectors;
  std::vector<std::string> planes;
  std::string projection = "iso";
  bool raw_axes = false;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

void check_samples(Args& a, int fallback) {
  if (a.samples < 0) a.samples = fallback;
  if (a.samples < 2) throw UsageError("sample count must be at least 2");
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
}

Source load(const CurveArgs& a, const std::string& what) {
  Source s = resolve(opt(a.curve), opt(a.spec), what);
  if (!a.range.empty()) s = with_range(s, parse_range_arg(a.range));
  return s;
}

// Machine output goes to the file when one is named, else to stdout; the
// human summary then goes to the other stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::ostream& summary_stream(const std::string& path, std::ostream& out, std::ostream& err) {
  return path.empty() ? err : out;
}

void report_parse_error(std::ostream& err, const std::string& text, const ParseError& e) {
  err << "mulgeo: parse error: " << e.what() << '\n';
  err << "  " << text << '\n';
  err << "  " << std::string(std::min(e.offset(), text.size()), ' ') << "^\n";
}

std::string describe(MNum v, bool log_form) {
  if (log_form) return render(v, Style::Log);
  if (v.log() == 0.0) return "1 (= 0*)";
  if (v.log() == 1.0) return "e (= 1*)";
  const double value = v.value();
  if (!std::isfinite(value) || value == 0.0) return render(v, Style::Log) + " (value outside double range)";
  return render(v, Style::Log) + " = " + format_real(value);
}

int cmd_eval(const Args& a, std::ostream& out, std::ostream& err) {
  MExpr e;
  try {
    e = parse_mexpr(a.expr);
  } catch (const ParseError& pe) {
    report_parse_error(err, a.expr, pe);
    return 2;
  }
  MNum s;
  try {
    s = parse_mnum(a.at);
  } catch (const ParseError& pe) {
    report_parse_error(err, a.at, pe);
    return 2;
  }
  out << describe(eval(e, s), a.log_form) << '\n';
  return 0;
}

int cmd_frame(Args a, std::ostream& out, std::ostream& err) {
  check_samples(a, 16);
  const Source src = load(a.x, "frame");
  const Style style = a.log_form ? Style::Log : Style::Auto;
  std::ostringstream csv;
  csv << "s,x1,x2,x3,t1,t2,t3,n1,n2,n3,b1,b2,b3,kappa,tau\n";
  const auto samples = log_uniform_samples(src.curve.domain(), a.samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    FrenetLocal f;
    try {
      f = frenet_local(src.curve, samples[i]);
    } catch (const Error& e) {
      err << "mulgeo: frame: row " << i << " (s = " << render(samples[i], Style::Log) << "): " << e.what() << '\n';
      return 1;
    }
    csv << render(samples[i], style);
    for (const Vec3* v : {&f.x, &f.t, &f.n, &f.b}) {
      for (double c : *v) csv << ',' << render(MNum::from_log(c), style);
    }
    csv << ',' << render(MNum::from_log(f.kappa), style) << ',' << render(MNum::from_log(f.tau), style) << '\n';
  }
  emit(a.out, csv.str(), out);
  if (!a.out.empty()) out << samples.size() << " rows of " << src.curve.label() << " written to " << a.out << '\n';
  return 0;
}

int cmd_classify(Args a, std::ostream& out, std::ostream& err) {
  check_samples(a, 64);
  check_tol(a.tol);
  const Source src = load(a.x, "classify");
  ClassifyOptions opts;
  opts.samples = a.samples;
  opts.tol = a.tol;

  std::optional<SphereCandidate> sphere;
  if (!a.sphere_center.empty() || !a.sphere_radius.empty()) {
    if (a.sphere_center.empty() || a.sphere_radius.empty()) {
      throw UsageError("classify: --sphere-center and --sphere-radius go together");
    }
    sphere = SphereCandidate{parse_mvec<3>(a.sphere_center), parse_mnum(a.sphere_radius)};
  }
  const std::vector<ClassificationReport> reports{classify_helix(src.curve, opts),
                                                  classify_slant_helix(src.curve, opts),
                                                  spherical_check(src.curve, sphere, opts),
                                                  rectifying_fit(src.curve, opts)};

  nlohmann::json doc;
  doc["curve"] = src.curve.label();
  doc["source"] = src.description;
  doc["samples"] = a.samples;
  doc["tol"] = a.tol;
  doc["reports"] = nlohmann::json::array();
  doc["kinds"] = nlohmann::json::array();
  for (const auto& r : reports) {
    doc["reports"].push_back(to_json(r));
    if (r.kind != CurveKind::None) {
      const std::string k(to_string(r.kind));
      if (std::find(doc["kinds"].begin(), doc["kinds"].end(), k) == doc["kinds"].end()) doc["kinds"].push_back(k);
    }
  }
  emit(a.out, doc.dump(2) + "\n", out);

  std::ostream& sum = summary_stream(a.out, out, err);
  sum << src.curve.label() << '\n';
  for (const auto& r : reports) {
    sum << "  " << r.test << ": " << to_string(r.kind);
    for (const auto& [name, value] : r.constants) sum << ", " << name << " = " << render(value, Style::Log);
    sum << " (residual " << sci(r.residual) << ", " << r.samples << " samples)\n";
    for (const auto& n : r.notices) sum << "    note: " << n << '\n';
  }
  return 0;
}

void print_partner_summary(std::ostream& sum, const PartnerReport& r) {
  sum << "  lambda = " << render(r.lambda.value, Style::Log) << " (constancy " << sci(r.lambda.constancy) << ")\n";
  sum << "  mu = " << render(r.mu.value, Style::Log) << " (constancy " << sci(r.mu.constancy) << ")\n";
  sum << "  theta = " << render(r.theta.value, Style::Log) << " (constancy " << sci(r.theta.constancy) << ")\n";
  for (const auto& id : r.identities) {
    sum << "  " << id.name << ": " << to_string(id.verdict) << " (max " << sci(id.max_residual) << ", "
        << id.samples_used << " samples";
    if (id.skipped_samples) sum << ", " << id.skipped_samples << " skipped";
    sum << ")\n";
    if (!id.notice.empty()) sum << "    note: " << id.notice << '\n';
  }
  sum << "  verdict: " << (r.passed() ? "pass" : "fail") << '\n';
}

PartnerReport verify_pair(const std::string& kind, const CurveJet& x, const CurveJet& y, const Args& a) {
  PartnerOptions opts;
  opts.samples = a.samples;
  opts.tol = a.tol;
  return kind == "bertrand" ? bertrand_verify(x, y, opts) : mannheim_verify(x, y, opts);
}

int cmd_partner(Args a, std::ostream& out, std::ostream& err) {
  check_samples(a, 64);
  check_tol(a.tol);
  const Source x = load(a.x, "partner");
  PartnerOptions opts;
  opts.samples = a.samples;
  opts.tol = a.tol;

  MNum lambda;
  if (!a.lambda.empty()) {
    lambda = parse_mnum(a.lambda);
  } else if (a.kind == "bertrand") {
    lambda = bertrand_natural_lambda(x.curve, opts);
  } else {
    const MannheimLambda m = mannheim_lambda(x.curve, opts);
    if (!m.admissible) {
      throw InadmissibleError("mannheim: lambda is not constant along the curve (deviation " + sci(m.deviation) + ")",
                              m.deviation);
    }
    lambda = m.lambda;
  }
  nlohmann::json desc{{"partner", {{"kind", a.kind}, {"lambda", render(lambda, Style::Log)}, {"base", x.description}}}};
  const Source y = source_from_json(desc);

  std::ostringstream csv;
  csv << "s,y1,y2,y3\n";
  const Style style = a.log_form ? Style::Log : Style::Auto;
  for (MNum s : log_uniform_samples(y.curve.domain(), a.samples)) {
    const MVec3 p = y.curve.at(s);
    csv << render(s, style) << ',' << render(p[0], style) << ',' << render(p[1], style) << ',' << render(p[2], style)
        << '\n';
  }
  emit(a.out, csv.str(), out);

  const PartnerReport report = verify_pair(a.kind, x.curve, y.curve, a);
  nlohmann::json doc = to_json(report);
  doc["x"] = x.curve.label();
  doc["y"] = y.curve.label();
  doc["passed"] = report.passed();
  if (!a.report.empty()) write_text_file(a.report, doc.dump(2) + "\n");
  if (!a.source.empty()) write_text_file(a.source, desc.dump(2) + "\n");

  std::ostream& sum = summary_stream(a.out, out, err);
  sum << a.kind << " partner " << y.curve.label() << '\n';
  print_partner_summary(sum, report);
  return report.passed() ? 0 : 1;
}

int cmd_verify(Args a, std::ostream& out, std::ostream& err) {
  check_samples(a, 64);
  check_tol(a.tol);
  const Source x = load(a.x, "verify");
  Source y = resolve(opt(a.with), opt(a.with_spec), "verify --with");
  if (!a.x.range.empty()) y = with_range(y, parse_range_arg(a.x.range));

  const PartnerReport report = verify_pair(a.kind, x.curve, y.curve, a);
  nlohmann::json doc = to_json(report);
  doc["x"] = x.curve.label();
  doc["y"] = y.curve.label();
  doc["passed"] = report.passed();
  emit(a.out, doc.dump(2) + "\n", out);

  std::ostream& sum = summary_stream(a.out, out, err);
  sum << a.kind << " check of " << x.curve.label() << " against " << y.curve.label() << '\n';
  print_partner_summary(sum, report);
  return report.passed() ? 0 : 1;
}

int cmd_synthesize(const Args& a, std::ostream& out, std::ostream& err) {
  if (!(a.step > 0.0)) throw UsageError("step must be positive");
  const ParamRange range = a.x.range.empty() ? default_range() : parse_range_arg(a.x.range);
  nlohmann::json desc{{"synthesize", {{"kappa", a.kappa}, {"tau", a.tau}}}, {"range", range_json(range)}};
  if (a.step != SynthOptions{}.step) desc["synthesize"]["step"] = a.step;
  const Source src = source_from_json(desc);
  emit(a.out, desc.dump(2) + "\n", out);

  const NaturalReport nat = is_natural(src.curve, 16);
  summary_stream(a.out, out, err) << "synthesized curve with log kappa = " << a.kappa << ", log tau = " << a.tau
                                  << " on [" << render(range.lo, Style::Log) << ", " << render(range.hi, Style::Log)
                                  << "], speed deviation " << sci(nat.deviation) << '\n';
  return 0;
}

MPlane parse_plane_arg(const std::string& text) {
  const auto close = text.rfind(')');
  const auto colon = close == std::string::npos ? std::string::npos : text.find(':', close);
  if (colon == std::string::npos) throw ParseError("plane must look like (n1, n2, n3):offset", text.size(), {":"});
  return make_plane(parse_mvec<3>(text.substr(0, colon)), parse_mnum(text.substr(colon + 1)));
}

int cmd_plot(Args a, std::ostream& out, std::ostream& err) {
  check_samples(a, 200);
  PlotOptions popts;
  popts.projection = parse_projection(a.projection);
  popts.raw_axes = a.raw_axes;

  std::vector<Source> sources;
  for (const auto& id : a.curves) sources.push_back(source_from_catalog(id));
  for (const auto& path : a.specs) sources.push_back(source_from_file(path));
  if (!a.x.range.empty()) {
    const ParamRange r = parse_range_arg(a.x.range);
    for (auto& s : sources) s = with_range(s, r);
  }

  std::vector<PlotObject> objects;
  for (const auto& s : sources) {
    std::vector<Point3> pts;
    for (MNum t : log_uniform_samples(s.curve.domain(), a.samples)) pts.push_back(s.curve.at(t).logs());
    objects.push_back(curve_object(s.curve.label(), pts));
  }
  for (const auto& v : a.vectors) {
    const MVec3 vec = parse_mvec<3>(v);
    objects.push_back(vector_object("vector " + render(vec, Style::Log), vec));
  }
  for (const auto& p : a.planes) {
    const MPlane plane = parse_plane_arg(p);
    objects.push_back(plane_object(
        "plane " + render(plane.normal, Style::Log) + " .* x = " + render(plane.offset, Style::Log), plane));
  }
  if (objects.empty()) throw UsageError("plot: nothing to plot (use --curve, --spec, --vector or --plane)");

  emit(a.out, render_svg(objects, popts), out);
  if (!a.out.empty()) out << objects.size() << " objects plotted to " << a.out << '\n';
  (void)err;
  return 0;
}

void add_curve_options(CLI::App* sub, CurveArgs& c) {
  auto* curve = sub->add_option("--curve", c.curve, "catalog curve, e.g. helix:a=1.6,b=0.8");
  auto* spec = sub->add_option("--spec", c.spec, "curve source JSON file");
  curve->excludes(spec);
  sub->add_option("--range", c.range, "parameter range s0:s1, e.g. e^-2:e^2");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Multiplicative differential geometry of space curves", "mulgeo"};
  app.require_subcommand(1);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a multiplicative expression in s");
  eval_cmd->add_option("expr", a.expr, "expression, e.g. \"e^2 .* s\"")->required();
  eval_cmd->add_option("--at", a.at, "value of s")->required();
  eval_cmd->add_flag("--log-form", a.log_form, "print only the e^<u> form");

  auto* frame_cmd = app.add_subcommand("frame", "sample the Frenet apparatus as CSV");
  add_curve_options(frame_cmd, a.x);
  frame_cmd->add_option("-n,--samples", a.samples, "number of rows");
  frame_cmd->add_option("--out", a.out, "CSV output file");
  frame_cmd->add_flag("--log-form", a.log_form, "write every value as e^<u>");

  auto* classify_cmd = app.add_subcommand("classify", "helix, slant helix, spherical and rectifying tests");
  add_curve_options(classify_cmd, a.x);
  classify_cmd->add_option("-n,--samples", a.samples, "sample count");
  classify_cmd->add_option("--tol", a.tol, "tolerance in log space");
  classify_cmd->add_option("--out", a.out, "JSON output file");
  classify_cmd->add_option("--sphere-center", a.sphere_center, "candidate sphere center, e.g. (1, 1, 1)");
  classify_cmd->add_option("--sphere-radius", a.sphere_radius, "candidate sphere radius");

  const std::vector<std::string> kinds{"bertrand", "mannheim"};
  auto* partner_cmd = app.add_subcommand("partner", "construct and verify a partner curve");
  partner_cmd->add_option("kind", a.kind, "bertrand or mannheim")->required()->check(CLI::IsMember(kinds));
  add_curve_options(partner_cmd, a.x);
  partner_cmd->add_option("--lambda", a.lambda, "offset along the principal normal");
  partner_cmd->add_option("-n,--samples", a.samples, "sample count");
  partner_cmd->add_option("--tol", a.tol, "tolerance in log space");
  partner_cmd->add_option("--out", a.out, "CSV of partner points");
  partner_cmd->add_option("--report", a.report, "JSON verification report");
  partner_cmd->add_option("--source", a.source, "curve source JSON describing the partner");
  partner_cmd->add_flag("--log-form", a.log_form, "write every value as e^<u>");

  auto* verify_cmd = app.add_subcommand("verify", "check two curves against the partner identities");
  verify_cmd->add_option("kind", a.kind, "bertrand or mannheim")->required()->check(CLI::IsMember(kinds));
  add_curve_options(verify_cmd, a.x);
  auto* with = verify_cmd->add_option("--with", a.with, "partner candidate from the catalog");
  auto* with_spec = verify_cmd->add_option("--with-spec", a.with_spec, "partner candidate source JSON file");
  with->excludes(with_spec);
  verify_cmd->add_option("-n,--samples", a.samples, "sample count");
  verify_cmd->add_option("--tol", a.tol, "tolerance in log space");
  verify_cmd->add_option("--out", a.out, "JSON output file");

  auto* synth_cmd = app.add_subcommand("synthesize", "curve with prescribed curvature and torsion");
  synth_cmd->add_option("--kappa", a.kappa, "log kappa as an expression in u")->required();
  synth_cmd->add_option("--tau", a.tau, "log tau as an expression in u")->required();
  synth_cmd->add_option("--range", a.x.range, "parameter range s0:s1");
  synth_cmd->add_option("--step", a.step, "integration step in u")->default_val(1e-3);
  synth_cmd->add_option("--out", a.out, "curve source JSON output file");

  auto* plot_cmd = app.add_subcommand("plot", "planar projection as SVG");
  plot_cmd->add_option("--curve", a.curves, "catalog curve (repeatable)");
  plot_cmd->add_option("--spec", a.specs, "curve source JSON file (repeatable)");
  plot_cmd->add_option("--vector", a.vectors, "vector from 0*, e.g. (e^5, e^3, e^-2) (repeatable)");
  plot_cmd->add_option("--plane", a.planes, "plane (n1, n2, n3):offset (repeatable)");
  plot_cmd->add_option("--range", a.x.range, "parameter range s0:s1 for every curve");
  plot_cmd->add_option("--projection", a.projection, "xy, xz, yz or iso")->default_val("iso");
  plot_cmd->add_flag("--raw-axes", a.raw_axes, "plot values in the positive orthant instead of logs");
  plot_cmd->add_option("-n,--samples", a.samples, "points per curve");
  plot_cmd->add_option("--out", a.out, "SVG output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*eval_cmd) return cmd_eval(a, out, err);
    if (*frame_cmd) return cmd_frame(a, out, err);
    if (*classify_cmd) return cmd_classify(a, out, err);
    if (*partner_cmd) return cmd_partner(a, out, err);
    if (*verify_cmd) return cmd_verify(a, out, err);
    if (*synth_cmd) return cmd_synthesize(a, out, err);
    if (*plot_cmd) return cmd_plot(a, out, err);
  } catch (const UsageError& e) {
    err << "mulgeo: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "mulgeo: parse error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "mulgeo: bad JSON input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "mulgeo: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace mulgeo::cli

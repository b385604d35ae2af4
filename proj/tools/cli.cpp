#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "unimap/codes.hpp"
#include "unimap/errors.hpp"
#include "unimap/map_spec.hpp"
#include "unimap/maps.hpp"
#include "unimap/rational.hpp"
#include "unimap/report.hpp"
#include "unimap/synthesis.hpp"
#include "unimap/universality.hpp"

namespace unimap::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw CLI::ValidationError("cannot write " + path);
  o << text;
}

// Inline specs start with their family keyword; anything else is a path.
IntervalMap load_map(const std::string& arg) {
  std::string text = trim(arg);
  if (text.rfind("builtin ", 0) != 0 && text.rfind("pwl ", 0) != 0) text = trim(read_file(arg));
  return parse_map_spec(text);
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string labels_string(const std::vector<Label>& labels) {
  std::string s;
  for (Label l : labels) s += to_char(l);
  return s;
}

std::string with_extension(const std::string& path, const std::string& ext) {
  auto slash = path.find_last_of('/');
  auto dot = path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return path.substr(0, dot) + ext;
  return path + ext;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

// ---- encode ----

struct EncodeArgs {
  std::string values;
  std::string file;
  double tol = 1e-12;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  if (a.values.empty() == a.file.empty()) throw CLI::ValidationError("give exactly one of --values or a file");
  std::vector<double> terms;
  for (const auto& tok : split_values(a.values.empty() ? read_file(a.file) : a.values))
    terms.push_back(to_double(parse_rational(tok)));
  OrbitSample sample{std::move(terms), std::nullopt, a.tol};
  EncodeResult r = encode_orbit(sample);
  out << r.code.to_string() << "\n" << "terminated=" << (r.terminated ? "true" : "false") << "\n";
  return kOk;
}

// ---- synthesize ----

struct SynthArgs {
  std::string code;
  std::size_t truncation = 40;
  std::string out;
  bool verify = false;
};

int cmd_synthesize(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  LRCode code = parse_code(a.code);
  SynthesisResult s = synthesize_map(code, a.truncation);
  emit(a.out, format_map_spec(s.map) + "\n", out);
  out << "start=" << to_string(s.start) << "\n";
  if (!a.verify) return kOk;

  F1Check f1 = verify_f1_pwl(s.map);
  if (!f1.ok) {
    err << "F1 check failed at x=" << to_string(*f1.witness) << "\n";
    out << "verified=false\n";
    return kFailed;
  }
  std::size_t steps = s.orbit.size();
  std::vector<Rational> orbit = iterate(s.map, s.start, steps);
  EncodeResult enc = encode_orbit(std::span<const Rational>(orbit));
  bool ok;
  if (auto len = code.length())
    ok = enc.terminated && enc.code.take(*len + 1) == code.take(*len);
  else
    ok = enc.code.take(steps - 1) == code.take(steps - 1);
  out << "verified=" << (ok ? "true" : "false") << "\n";
  if (!ok) err << "round trip produced " << enc.code.to_string() << "\n";
  return ok ? kOk : kFailed;
}

// ---- certify ----

struct CertifyArgs {
  std::string map;
  double p = 0.0;
  double eps0 = 0.1;
  std::size_t scales = 14;
  double tol = 1e-10;
  std::string out;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
  IntervalMap map = load_map(a.map);
  CertificationResult r = certify_universal(map, a.p, a.eps0, a.scales, a.tol);
  if (r.ok()) {
    emit(a.out, to_json(*r.certificate) + "\n", out);
    return kOk;
  }
  emit(a.out, to_json(*r.failure) + "\n", out);
  err << "certification failed at scale " << format_real(r.failure->scale) << " on the "
      << to_string(r.failure->side) << ": no value " << to_string(r.failure->missing) << " p\n";
  return kFailed;
}

// ---- find-point ----

struct FindArgs {
  std::string map;
  std::string code;
  double p = 0.0;
  std::size_t depth = 12;
  bool no_certify = false;
  bool double_precision = false;
  long max_precision = 8192;
  std::string out;
};

int cmd_find_point(const FindArgs& a, std::ostream& out, std::ostream& err) {
  IntervalMap map = load_map(a.map);
  LRCode code = parse_code(a.code);
  if (!a.no_certify) {
    CertificationResult r = certify_universal(map, a.p);
    if (!r.ok()) {
      err << "certification failed at scale " << format_real(r.failure->scale) << " on the "
          << to_string(r.failure->side) << ": no value " << to_string(r.failure->missing) << " p\n";
      return kFailed;
    }
  }
  FindPointOptions opts;
  opts.max_precision = a.max_precision;
  opts.double_precision = a.double_precision;
  try {
    PatternPoint pt = find_point_with_pattern(map, a.p, code, a.depth, 1e-13, opts);
    bool verified = verify_pattern_point(map, pt.x_hp, code, a.depth);
    std::size_t shown = std::min(a.depth, code.length().value_or(a.depth));
    out << "x=" << format_real(pt.x) << "\n";
    out << "prefix=" << labels_string(code.take(shown)) << "\n";
    out << "precision=" << pt.trace.precision << "\n";
    out << "verified=" << (verified ? "true" : "false") << "\n";
    if (!a.out.empty()) write_file(a.out, to_json(pt.trace, pt.x_hp.to_string(40)) + "\n");
    return verified ? kOk : kFailed;
  } catch (const ConstructionError& e) {
    if (!a.out.empty()) write_file(a.out, to_json(e.trace()) + "\n");
    err << "construction failed at step " << e.step() << ": " << e.what() << "\n";
  } catch (const PrecisionError& e) {
    if (!a.out.empty()) write_file(a.out, to_json(e.trace()) + "\n");
    err << e.what() << "\n";
  }
  out << "verified=false\n";
  return kFailed;
}

// ---- plot-data ----

struct PlotArgs {
  std::string map;
  std::string mode;
  std::size_t grid = 2000;
  std::string start;
  std::size_t steps = 0;
  std::string out;
  std::string svg;
};

std::vector<double> graph_samples(const IntervalMap& map, std::size_t grid) {
  Interval dom = map.domain();
  std::vector<double> xs;
  xs.reserve(grid + 64);
  for (std::size_t i = 0; i < grid; ++i)
    xs.push_back(grid == 1 ? dom.lo : dom.lo + dom.width() * static_cast<double>(i) / static_cast<double>(grid - 1));
  // Turning points, so every extremum shows up in the polyline.
  PieceDecomposition pieces = monotone_pieces(map, dom, dom.width() / static_cast<double>(grid));
  for (const auto& piece : pieces.pieces) {
    xs.push_back(piece.interval.lo);
    xs.push_back(piece.interval.hi);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::string svg_document(const IntervalMap& map, const std::vector<std::pair<double, double>>& cobweb) {
  Interval dom = map.domain();
  const double size = 600.0;
  auto sx = [&](double x) { return (x - dom.lo) / dom.width() * size; };
  auto sy = [&](double y) { return size - (y - dom.lo) / dom.width() * size; };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  s << "<rect width=\"600\" height=\"600\" fill=\"white\" stroke=\"black\"/>\n";
  s << "<line x1=\"0\" y1=\"600\" x2=\"600\" y2=\"0\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  s << "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (double x : graph_samples(map, 2000)) s << fmt(sx(x)) << ',' << fmt(sy(map(x))) << ' ';
  s << "\"/>\n<polyline fill=\"none\" stroke=\"red\" points=\"";
  for (const auto& [x, y] : cobweb) s << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
  s << "\"/>\n</svg>\n";
  return s.str();
}

int cmd_plot_data(const PlotArgs& a, std::ostream& out) {
  IntervalMap map = load_map(a.map);
  std::ostringstream csv;
  if (a.mode == "graph") {
    if (a.grid < 2) throw CLI::ValidationError("--grid must be at least 2");
    csv << "x,f(x)\n";
    for (double x : graph_samples(map, a.grid)) csv << format_real(x) << ',' << format_real(map(x)) << '\n';
    emit(a.out, csv.str(), out);
    return kOk;
  }
  if (a.start.empty()) throw CLI::ValidationError("--start is required for mode " + a.mode);
  Rational start_q = parse_rational(a.start);

  // Orbit terms x_0 .. x_{steps+1}; exact for piecewise-linear maps.
  std::vector<double> xs;
  std::vector<std::optional<char>> labels;
  if (map.is_piecewise_linear() || map.family() == Family::linear) {
    std::vector<Rational> orbit = iterate(map, start_q, a.steps + 1);
    for (const auto& q : orbit) xs.push_back(to_double(q));
    for (std::size_t n = 0; n + 1 < orbit.size(); ++n)
      labels.push_back(orbit[n + 1] > orbit[n] ? std::optional<char>('R')
                       : orbit[n + 1] < orbit[n] ? std::optional<char>('L')
                                                 : std::nullopt);
  } else {
    xs = iterate(map, to_double(start_q), a.steps + 1).terms;
    for (std::size_t n = 0; n + 1 < xs.size(); ++n) {
      double d = xs[n + 1] - xs[n];
      double tol = 1e-12 * std::max(1.0, std::abs(xs[n]));
      labels.push_back(d > tol ? std::optional<char>('R') : d < -tol ? std::optional<char>('L') : std::nullopt);
    }
  }

  if (a.mode == "orbit") {
    csv << "n,x_n,label\n";
    for (std::size_t n = 0; n <= a.steps; ++n)
      csv << n << ',' << format_real(xs[n]) << ',' << (labels[n] ? *labels[n] : '-') << '\n';
    emit(a.out, csv.str(), out);
    return kOk;
  }
  if (a.mode == "cobweb") {
    std::vector<std::pair<double, double>> pts{{xs[0], xs[0]}};
    for (std::size_t n = 0; n < a.steps; ++n) {
      pts.emplace_back(xs[n], xs[n + 1]);
      pts.emplace_back(xs[n + 1], xs[n + 1]);
    }
    csv << "x,y\n";
    for (const auto& [x, y] : pts) csv << format_real(x) << ',' << format_real(y) << '\n';
    emit(a.out, csv.str(), out);
    std::string svg_path = !a.svg.empty() ? a.svg : (a.out.empty() || a.out == "-") ? "" : with_extension(a.out, ".svg");
    if (!svg_path.empty()) write_file(svg_path, svg_document(map, pts));
    return kOk;
  }
  throw CLI::ValidationError("unknown mode " + a.mode);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unimap: L/R codes, map synthesis, universality certificates and pattern points"};
  app.name("unimap");
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Encode an orbit as an L/R code");
  c_enc->add_option("file", enc.file, "File of comma- or whitespace-separated values");
  c_enc->add_option("--values", enc.values, "Inline comma-separated values");
  c_enc->add_option("--tol", enc.tol, "Termination tolerance");

  SynthArgs syn;
  auto* c_syn = app.add_subcommand("synthesize", "Build a piecewise-linear map realizing a code");
  c_syn->add_option("code", syn.code, "L/R code")->required();
  c_syn->add_option("--truncation", syn.truncation, "Orbit length for infinite codes");
  c_syn->add_option("-o,--out", syn.out, "Map spec output file (default stdout)");
  c_syn->add_flag("--verify", syn.verify, "Check the F1 property and the round trip");

  CertifyArgs cer;
  auto* c_cer = app.add_subcommand("certify", "Certify universality around a fixed point");
  c_cer->add_option("map", cer.map, "Map spec or path to a spec file")->required();
  c_cer->add_option("--p", cer.p, "Fixed point");
  c_cer->add_option("--eps0", cer.eps0, "Largest scale");
  c_cer->add_option("--scales", cer.scales, "Number of halvings");
  c_cer->add_option("--tol", cer.tol, "Strictness margin");
  c_cer->add_option("-o,--out", cer.out, "JSON output file (default stdout)");

  FindArgs fnd;
  auto* c_fnd = app.add_subcommand("find-point", "Locate a point whose orbit has a given code");
  c_fnd->add_option("map", fnd.map, "Map spec or path to a spec file")->required();
  c_fnd->add_option("code", fnd.code, "L/R code")->required();
  c_fnd->add_option("--p", fnd.p, "Fixed point");
  c_fnd->add_option("--depth", fnd.depth, "Labels to match for infinite codes");
  c_fnd->add_flag("--no-certify", fnd.no_certify, "Skip the universality check");
  c_fnd->add_flag("--double", fnd.double_precision, "Use the double-precision construction");
  c_fnd->add_option("--max-precision", fnd.max_precision, "Precision cap in bits");
  c_fnd->add_option("-o,--out", fnd.out, "Trace JSON output file");

  PlotArgs plt;
  auto* c_plt = app.add_subcommand("plot-data", "Emit graph, cobweb or orbit data");
  c_plt->add_option("map", plt.map, "Map spec or path to a spec file")->required();
  c_plt->add_option("--mode", plt.mode, "graph, cobweb or orbit")
      ->required()
      ->check(CLI::IsMember({"graph", "cobweb", "orbit"}));
  c_plt->add_option("--grid", plt.grid, "Grid points for graph mode");
  c_plt->add_option("--start", plt.start, "Starting point");
  c_plt->add_option("--steps", plt.steps, "Iterations");
  c_plt->add_option("-o,--out", plt.out, "CSV output file (default stdout)");
  c_plt->add_option("--svg", plt.svg, "SVG output file for cobweb mode");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (c_enc->parsed()) return cmd_encode(enc, out);
    if (c_syn->parsed()) return cmd_synthesize(syn, out, err);
    if (c_cer->parsed()) return cmd_certify(cer, out, err);
    if (c_fnd->parsed()) return cmd_find_point(fnd, out, err);
    if (c_plt->parsed()) return cmd_plot_data(plt, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace unimap::cli

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "projkit/coords.hpp"
#include "projkit/error.hpp"
#include "projkit/hilbert.hpp"
#include "projkit/invariants.hpp"
#include "projkit/isometry.hpp"

namespace projkit::cli {
namespace {

using nlohmann::json;

// Malformed or schema-violating input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string format;  // empty: per-subcommand default
  std::optional<double> tol;
  double cellsize = 0.005;
  double truncation = 5.0;
  int steps = 10;
  double start = 0.0;
  double end = 1.0;
  bool parallel = false;
  std::vector<double> alphas{0.5, 0.25, 0.1, 0.05, 0.01};
  int boundary = 1;
  std::optional<double> v;
};

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string comment;  // CSV only
};

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string json_cell(const Cell& c) {
  if (const double* x = std::get_if<double>(&c)) {
    return std::isfinite(*x) ? format_number(*x) : "null";
  }
  return json_string(std::get<std::string>(c));
}

std::string text_cell(const Cell& c) {
  if (const double* x = std::get_if<double>(&c)) return format_number(*x);
  return std::get<std::string>(c);
}

void write_json_object(std::ostream& out, const Table& t, const std::vector<Cell>& row,
                       const std::string& indent) {
  out << "{\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << indent << "  " << json_string(t.columns[i]) << ": " << json_cell(row[i]);
    out << (i + 1 < t.columns.size() ? ",\n" : "\n");
  }
  out << indent << "}";
}

void write_table(std::ostream& out, const Table& t, const std::string& format) {
  if (format == "json") {
    if (t.rows.size() == 1) {
      write_json_object(out, t, t.rows.front(), "");
      out << "\n";
      return;
    }
    out << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out << "  ";
      write_json_object(out, t, t.rows[r], "  ");
      out << (r + 1 < t.rows.size() ? ",\n" : "\n");
    }
    out << "]\n";
    return;
  }
  if (format == "csv") {
    if (!t.comment.empty()) out << "# " << t.comment << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? "," : "") << t.columns[i];
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << text_cell(row[i]);
      out << "\n";
    }
    return;
  }
  // table: one "key  value" line per field for single records, aligned
  // columns otherwise.
  if (t.rows.size() == 1) {
    std::size_t width = 0;
    for (const auto& c : t.columns) width = std::max(width, c.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << t.columns[i] << std::string(width - t.columns[i].size() + 2, ' ')
          << text_cell(t.rows.front()[i]) << "\n";
    }
    return;
  }
  std::vector<std::size_t> widths(t.columns.size());
  std::vector<std::vector<std::string>> text;
  for (std::size_t i = 0; i < t.columns.size(); ++i) widths[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(text_cell(row[i]));
      widths[i] = std::max(widths[i], line.back().size());
    }
  }
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(widths[i] - cells[i].size() + 2, ' ');
    }
    out << "\n";
  };
  emit(t.columns);
  for (const auto& line : text) emit(line);
}

Table single(std::vector<std::pair<std::string, Cell>> fields) {
  Table t;
  std::vector<Cell> row;
  for (auto& [k, v] : fields) {
    t.columns.push_back(std::move(k));
    row.push_back(std::move(v));
  }
  t.rows.push_back(std::move(row));
  return t;
}

// ---------------------------------------------------------------------------
// Input
// ---------------------------------------------------------------------------

json load_input(const std::string& input) {
  if (input.empty()) throw InputError("--input is required");
  std::string text;
  const auto first = input.find_first_not_of(" \t\r\n");
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else if (first != std::string::npos && (input[first] == '{' || input[first] == '[')) {
    text = input;
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + input + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

template <std::size_t N>
std::array<double, N> numbers(const json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw InputError(std::string(what) + " must be an array of " + std::to_string(N) +
                     " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], what);
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

Vec3 vec3(const json& j, const char* what) {
  const auto a = numbers<3>(j, what);
  return Vec3(a[0], a[1], a[2]);
}

Vec2 vec2(const json& j, const char* what) {
  const auto a = numbers<2>(j, what);
  return Vec2(a[0], a[1]);
}

Flag parse_flag(const json& j, double tol) {
  const json& line = field(j, "line");
  if (!line.is_array() || line.size() != 2) {
    throw InputError("flag line must be a pair of spanning vectors");
  }
  return Flag(ProjPoint(vec3(field(j, "point"), "point")),
              ProjLine(vec3(line[0], "line vector"), vec3(line[1], "line vector")),
              std::max(tol, kIncidenceTol));
}

std::vector<Flag> parse_flags(const json& j, double tol) {
  const json& list = j.is_object() ? field(j, "flags") : j;
  if (!list.is_array()) throw InputError("expected an array of flags");
  std::vector<Flag> flags;
  for (const auto& f : list) flags.push_back(parse_flag(f, tol));
  return flags;
}

ConvexDomain parse_domain(const json& j) {
  if (j.is_object() && j.contains("polygon")) {
    const json& pts = j.at("polygon");
    if (!pts.is_array()) throw InputError("polygon must be an array of [x,y] pairs");
    std::vector<Vec2> v;
    for (const auto& p : pts) v.push_back(vec2(p, "polygon vertex"));
    return ConvexDomain::polygon(std::move(v));
  }
  if (j.is_object() && j.contains("conic")) {
    return ConvexDomain::conic(numbers<6>(j.at("conic"), "conic"));
  }
  throw InputError("domain must have a \"polygon\" or \"conic\" field");
}

BoundaryKind parse_kind(const std::string& s) {
  if (s == "hyperbolic") return BoundaryKind::hyperbolic;
  if (s == "quasi-hyperbolic") return BoundaryKind::quasi_hyperbolic;
  if (s == "parabolic") return BoundaryKind::parabolic;
  throw InputError("unknown boundary kind '" + s + "'");
}

const char* kind_text(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::hyperbolic: return "hyperbolic";
    case BoundaryKind::quasi_hyperbolic: return "quasi-hyperbolic";
    case BoundaryKind::parabolic: return "parabolic";
  }
  return "?";
}

BoundaryData parse_boundary(const json& j) {
  if (!j.is_object()) throw InputError("boundary must be an object");
  BoundaryKind kind = BoundaryKind::hyperbolic;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw InputError("boundary kind must be a string");
    kind = parse_kind(j.at("kind").get<std::string>());
  }
  if (kind == BoundaryKind::parabolic && !j.contains("lambda") && !j.contains("tau")) {
    return BoundaryData::parabolic();
  }
  return BoundaryData{number(field(j, "lambda"), "lambda"), number(field(j, "tau"), "tau"),
                      kind};
}

struct GoldmanInput {
  bool torus = false;
  PantsGoldman pants;
  TorusGoldman torus_record;
};

GoldmanInput parse_goldman(const json& j) {
  GoldmanInput g;
  const json& surface = field(j, "surface");
  if (!surface.is_string()) throw InputError("surface must be a string");
  const std::string name = surface.get<std::string>();
  if (name != "pants" && name != "torus") throw InputError("surface must be pants or torus");
  g.torus = name == "torus";
  const json& bs = field(j, "boundaries");
  const std::size_t expected = g.torus ? 2 : 3;
  if (!bs.is_array() || bs.size() != expected) {
    throw InputError(g.torus ? "torus needs 2 boundaries (B, C)"
                             : "pants needs 3 boundaries");
  }
  const double s = number(field(j, "s"), "s"), t = number(field(j, "t"), "t");
  if (g.torus) {
    g.torus_record = TorusGoldman{parse_boundary(bs[0]), parse_boundary(bs[1]), s, t,
                                  j.contains("u") ? number(j.at("u"), "u") : 0.0,
                                  j.contains("v") ? number(j.at("v"), "v") : 0.0};
  } else {
    g.pants = PantsGoldman{{parse_boundary(bs[0]), parse_boundary(bs[1]), parse_boundary(bs[2])},
                           s, t};
  }
  return g;
}

std::vector<std::pair<std::string, Cell>> bd_fields(const PantsBD& bd) {
  return {{"sigma1_b1", bd.sigma1[0]}, {"sigma1_b2", bd.sigma1[1]}, {"sigma1_b3", bd.sigma1[2]},
          {"sigma2_b1", bd.sigma2[0]}, {"sigma2_b2", bd.sigma2[1]}, {"sigma2_b3", bd.sigma2[2]},
          {"tplus", bd.tplus},         {"tminus", bd.tminus}};
}

std::vector<std::pair<std::string, Cell>> bd_fields(const GoldmanInput& g) {
  if (!g.torus) return bd_fields(pants_goldman_to_bd(g.pants));
  const TorusBD bd = torus_goldman_to_bd(g.torus_record);
  auto fields = bd_fields(bd.pants);
  fields.emplace_back("sigma_c1", bd.sigma_c1);
  fields.emplace_back("sigma_c2", bd.sigma_c2);
  return fields;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

Table cmd_invariants(const RunConfig& cfg) {
  const double tol = cfg.tol.value_or(kGenericTol);
  const std::vector<Flag> flags = parse_flags(load_input(cfg.input), tol);
  if (flags.size() == 3) {
    const double t = triple_ratio(flags[0], flags[1], flags[2], tol).value;
    return single({{"T", t}, {"log_T", checked_log(t)}});
  }
  if (flags.size() == 4) {
    const DoubleRatios d = double_ratios(flags[0], flags[1], flags[2], flags[3], tol);
    return single({{"D1", d.d1},
                   {"D2", d.d2},
                   {"sigma1", checked_log(d.d1)},
                   {"sigma2", checked_log(d.d2)}});
  }
  throw InputError("invariants needs 3 or 4 flags");
}

Table cmd_classify(const RunConfig& cfg) {
  const auto a = numbers<9>(load_input(cfg.input), "matrix");
  Mat3 m;
  m << a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8];
  const IsometryClass c = classify(SL3Matrix(m), cfg.tol.value_or(kClassifyTol));
  std::vector<std::pair<std::string, Cell>> fields{{"kind", std::string(kind_name(c))}};
  if (const auto* h = std::get_if<Hyperbolic>(&c)) {
    const GoldmanLengths g = goldman_lengths(c);
    fields.insert(fields.end(), {{"lambda1", h->l1()},
                                 {"lambda2", h->l2()},
                                 {"lambda3", h->l3()},
                                 {"l1", g.l1},
                                 {"l2", g.l2},
                                 {"hilbert_length", g.hilbert_length}});
  } else if (const auto* q = std::get_if<QuasiHyperbolic>(&c)) {
    fields.insert(fields.end(),
                  {{"mu", q->mu()},
                   {"nu", q->nu()},
                   {"jordan_block", std::string(q->placement() == JordanPlacement::at_larger
                                                    ? "larger"
                                                    : "smaller")}});
  } else if (const auto* o = std::get_if<OtherIsometry>(&c)) {
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string k = std::to_string(i + 1);
      fields.emplace_back("eigenvalue" + k + "_re", o->eigenvalues[i].real());
      fields.emplace_back("eigenvalue" + k + "_im", o->eigenvalues[i].imag());
    }
  }
  return single(std::move(fields));
}

Table cmd_distance(const RunConfig& cfg) {
  const json j = load_input(cfg.input);
  const ConvexDomain dom = parse_domain(field(j, "domain"));
  const Vec2 x = vec2(field(j, "x"), "x"), y = vec2(field(j, "y"), "y");
  const double d = hilbert_distance(dom, x, y);
  if (d == 0.0) return single({{"distance", d}});
  const Chord c = chord(dom, x, y);
  return single({{"distance", d},
                 {"p_x", c.p.x()},
                 {"p_y", c.p.y()},
                 {"q_x", c.q.x()},
                 {"q_y", c.q.y()}});
}

std::string config_line(const RunConfig& cfg, const std::string& extra) {
  std::ostringstream os;
  os << "config: subcommand=" << cfg.subcommand;
  os << extra;
  return os.str();
}

Table cmd_area(const RunConfig& cfg) {
  Table t;
  t.columns = {"alpha", "truncation", "cellsize", "area"};
  std::string alphas;
  for (double a : cfg.alphas) {
    t.rows.push_back({a, cfg.truncation, cfg.cellsize,
                      triangle_area_experiment(a, cfg.truncation, cfg.cellsize, cfg.parallel)});
    alphas += (alphas.empty() ? "" : ";") + format_number(a);
  }
  t.comment = config_line(cfg, " alpha=" + alphas + " truncation=" +
                                   format_number(cfg.truncation) +
                                   " cellsize=" + format_number(cfg.cellsize) +
                                   " parallel=" + (cfg.parallel ? "1" : "0"));
  return t;
}

Table cmd_convert(const RunConfig& cfg) { return single(bd_fields(parse_goldman(load_input(cfg.input)))); }

Table cmd_sweep(const RunConfig& cfg) {
  const json j = load_input(cfg.input);
  GoldmanInput g = parse_goldman(j);
  const std::size_t count = g.torus ? 1 : 3;
  if (cfg.boundary < 1 || static_cast<std::size_t>(cfg.boundary) > count) {
    throw InputError(g.torus ? "a torus sweep pinches boundary 1 (B)"
                             : "--boundary must be 1, 2 or 3");
  }
  if (!(cfg.start >= 0.0 && cfg.end <= 1.0 && cfg.start <= cfg.end)) {
    throw InputError("sweep range must satisfy 0 <= start <= end <= 1");
  }
  const std::size_t index = static_cast<std::size_t>(cfg.boundary - 1);
  const BoundaryData base = g.torus ? g.torus_record.b : g.pants.boundaries[index];

  Table t;
  for (int k = 0; k <= cfg.steps; ++k) {
    const double s = cfg.start + (cfg.end - cfg.start) * k / cfg.steps;
    const BoundaryData b = pinch(base, s);
    if (g.torus) {
      g.torus_record.b = b;
    } else {
      g.pants.boundaries[index] = b;
    }
    std::vector<std::pair<std::string, Cell>> fields{{"step", static_cast<double>(k)},
                                                     {"fraction", s},
                                                     {"lambda", b.lambda},
                                                     {"tau", b.tau},
                                                     {"kind", std::string(kind_text(b.kind))}};
    for (auto& f : bd_fields(g)) fields.push_back(std::move(f));
    Table row = single(std::move(fields));
    if (t.columns.empty()) t.columns = row.columns;
    t.rows.push_back(std::move(row.rows.front()));
  }
  t.comment = config_line(cfg, " boundary=" + std::to_string(cfg.boundary) +
                                   " start=" + format_number(cfg.start) +
                                   " end=" + format_number(cfg.end) +
                                   " steps=" + std::to_string(cfg.steps) + " input=" + j.dump());
  return t;
}

Table cmd_bulge(const RunConfig& cfg) {
  const json j = load_input(cfg.input);
  std::optional<double> v = cfg.v;
  if (!v && j.is_object() && j.contains("v")) v = number(j.at("v"), "v");
  if (!v) throw InputError("bulge needs v (in the input or via --v)");
  if (j.is_object() && j.contains("flags")) {
    const double tol = cfg.tol.value_or(kGenericTol);
    const std::vector<Flag> f = parse_flags(j, tol);
    if (f.size() != 4) throw InputError("bulge needs exactly 4 flags (E, F, G, L)");
    const double s1 = shear(f[0], f[1], f[2], f[3], ShearIndex::first, tol);
    const double s2 = shear(f[0], f[1], f[2], f[3], ShearIndex::second, tol);
    const Flag moved = bulge_flag(f[3], *v);
    const double n1 = shear(f[0], f[1], f[2], moved, ShearIndex::first, tol);
    const double n2 = shear(f[0], f[1], f[2], moved, ShearIndex::second, tol);
    return single({{"v", *v},
                   {"sigma1", s1},
                   {"sigma2", s2},
                   {"sigma1_bulged", n1},
                   {"sigma2_bulged", n2},
                   {"difference_change", (n2 - n1) - (s2 - s1)}});
  }
  const double s1 = number(field(j, "sigma1"), "sigma1");
  const double s2 = number(field(j, "sigma2"), "sigma2");
  const auto [n1, n2] = shear_shift(s1, s2, *v);
  return single({{"v", *v},
                 {"sigma1", s1},
                 {"sigma2", s2},
                 {"sigma1_bulged", n1},
                 {"sigma2_bulged", n2},
                 {"difference_change", (n2 - n1) - (s2 - s1)}});
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("PROJKIT_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InputError("PROJKIT_TOL is not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Flag invariants, Hilbert geometry and coordinate conversions on RP2"};
  app.name("projkit");
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "JSON file, inline JSON, or - for stdin");
    sub->add_option("--format,-f", cfg.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--tol", cfg.tol, "Tolerance (default from PROJKIT_TOL)");
  };

  auto* inv = app.add_subcommand("invariants", "Triple ratio of 3 flags or double ratios of 4");
  auto* cls = app.add_subcommand("classify", "Classify a row-major 3x3 SL(3,R) matrix");
  auto* dist = app.add_subcommand("distance", "Hilbert distance between two points");
  auto* area = app.add_subcommand("area", "Truncated triangle area experiment (CSV)");
  auto* conv = app.add_subcommand("convert", "Goldman parameters to Bonahon-Dreyer coordinates");
  auto* sweep = app.add_subcommand("sweep", "Pinch one boundary to parabolic and convert");
  auto* bulge = app.add_subcommand("bulge", "Bulging shift of shear coordinates");
  for (auto* sub : {inv, cls, dist, conv, sweep, bulge}) common(sub);

  area->add_option("--format,-f", cfg.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  area->add_option("--alpha", cfg.alphas, "Vertex parameters in (0, 1/2]");
  area->add_option("--truncation", cfg.truncation, "Hilbert radius about the barycenter");
  area->add_option("--cellsize", cfg.cellsize, "Grid cell size");
  area->add_flag("--parallel", cfg.parallel, "Integrate rows on several threads");
  sweep->add_option("--steps", cfg.steps, "Number of steps");
  sweep->add_option("--start", cfg.start, "Starting pinch fraction");
  sweep->add_option("--end", cfg.end, "Final pinch fraction");
  sweep->add_option("--boundary", cfg.boundary, "Boundary to pinch (1-based)");
  bulge->add_option("--v", cfg.v, "Bulging parameter");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "UsageError: " << e.what() << "\n";
    return kExitBadInput;
  }

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

  try {
    if (!cfg.tol) cfg.tol = env_tolerance();
    if (cfg.tol && !(*cfg.tol > 0.0)) throw InputError("tolerance must be positive");
    if (cfg.steps < 1) throw InputError("--steps must be at least 1");
    if (!(cfg.cellsize > 0.0)) throw InputError("--cellsize must be positive");

    Table table;
    if (cfg.subcommand == "invariants") table = cmd_invariants(cfg);
    else if (cfg.subcommand == "classify") table = cmd_classify(cfg);
    else if (cfg.subcommand == "distance") table = cmd_distance(cfg);
    else if (cfg.subcommand == "area") table = cmd_area(cfg);
    else if (cfg.subcommand == "convert") table = cmd_convert(cfg);
    else if (cfg.subcommand == "sweep") table = cmd_sweep(cfg);
    else table = cmd_bulge(cfg);

    std::string format = cfg.format;
    if (format.empty()) {
      format = cfg.subcommand == "area" || cfg.subcommand == "sweep" ? "csv"
               : cfg.subcommand == "convert"                         ? "json"
                                                                     : "table";
    }
    std::ostringstream buffer;
    write_table(buffer, table, format);
    out << buffer.str();
    return kExitOk;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return kExitDomainError;
  } catch (const InputError& e) {
    err << "InvalidInput: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const json::exception& e) {
    err << "InvalidInput: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace projkit::cli

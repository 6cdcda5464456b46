#pragma once

// Command-line driver: model/file input, the six subcommands and their
// output files. Kept in a header so tests can call execute() in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tropep/tropep.hpp"

namespace tropep::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

inline const std::vector<std::string> commands = {"analyze", "newton", "amoeba", "spine", "verify", "holonomy"};
inline const std::vector<std::string> model_names = {"two_site", "trimer", "ssh", "hatano_nelson", "companion"};

struct ModelSpec {
  std::string name;
  json params = json::object();
};

struct RunConfig {
  std::optional<ModelSpec> model;
  std::optional<fs::path> poly_file;
  std::optional<fs::path> matrix_file;
  fs::path out = "out";
  AmoebaGrid grid;
  Decades decades;
  LoopSpec loop;
  double zero_tol = 1e-12;
  bool svg = false;
};

enum ExitStatus { ok = 0, input_failure = 2, numeric_failure = 3 };

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(std::string(tropep::detail::trim(item)));
  return out;
}

inline double to_double(const std::string& s, const char* what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [end, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || end != e) throw input_error(std::string("malformed number in ") + what + ": '" + s + "'");
  return v;
}

inline std::size_t to_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw input_error(std::string("malformed count in ") + what + ": '" + s + "'");
  return v;
}

inline LoopSpec::Mode parse_mode(const std::string& s) {
  if (s == "enclosing") return LoopSpec::Mode::enclosing;
  if (s == "touching") return LoopSpec::Mode::touching;
  throw input_error("loop mode must be 'enclosing' or 'touching', got '" + s + "'");
}

inline void apply_grid(const std::string& s, AmoebaGrid& g) {
  const auto f = split(s, ',');
  if (f.size() != 4) throw input_error("--grid expects r_min,r_max,n_r,n_theta");
  g.r_min = to_double(f[0], "--grid");
  g.r_max = to_double(f[1], "--grid");
  g.radial = to_count(f[2], "--grid");
  g.angular = to_count(f[3], "--grid");
}

inline void apply_decades(const std::string& s, Decades& d) {
  const auto f = split(s, ',');
  if (f.size() != 2) throw input_error("--decades expects k_min,k_max");
  d.k_min = to_double(f[0], "--decades");
  d.k_max = to_double(f[1], "--decades");
}

inline void apply_loop(const std::string& s, LoopSpec& l) {
  const auto f = split(s, ',');
  if (f.size() != 3) throw input_error("--loop expects c,K,mode");
  l.c = to_double(f[0], "--loop");
  l.K = to_count(f[1], "--loop");
  l.mode = parse_mode(f[2]);
}

/// Integers and rational strings are exact; a JSON float is read as the
/// shortest decimal that round-trips to it.
inline Rational json_rational(const json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_number_float()) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    if (ec != std::errc{} || !std::isfinite(v.get<double>())) throw input_error("non-finite value for '" + key + "'");
    return parse_rational(std::string(buf, end));
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw input_error("parameter '" + key + "' must be a number or a rational string");
}

inline double json_double(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return json_rational(v, key).get_d();
  throw input_error("'" + key + "' must be a number");
}

inline std::size_t json_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw input_error("'" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

/// Reads model parameters, rejecting keys the model does not know.
class Params {
 public:
  Params(const json& j, std::string model) : j_(j), model_(std::move(model)) {
    if (!j_.is_object()) throw input_error("parameters of model '" + model_ + "' must be a JSON object");
  }
  bool has(const std::string& k) {
    known_.push_back(k);
    return j_.contains(k);
  }
  Rational rational(const std::string& k, const Rational& fallback) {
    return has(k) ? json_rational(j_.at(k), k) : fallback;
  }
  std::size_t count(const std::string& k, std::size_t fallback) { return has(k) ? json_count(j_.at(k), k) : fallback; }
  std::vector<Rational> rationals(const std::string& k) {
    std::vector<Rational> out;
    if (!has(k)) return out;
    if (!j_.at(k).is_array()) throw input_error("'" + k + "' must be an array");
    for (const auto& v : j_.at(k)) out.push_back(json_rational(v, k));
    return out;
  }
  const json& raw(const std::string& k) {
    known_.push_back(k);
    return j_.at(k);
  }
  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (std::find(known_.begin(), known_.end(), k) == known_.end())
        throw input_error("unknown parameter '" + k + "' for model '" + model_ + "'");
  }

 private:
  const json& j_;
  std::string model_;
  std::vector<std::string> known_;
};

inline ParametricMatrix build_model(const ModelSpec& spec) {
  Params p(spec.params, spec.name);
  if (spec.name == "two_site") {
    TwoSiteParams t;
    t.kappa = p.rational("kappa", t.kappa);
    t.gamma = p.rational("gamma", t.gamma);
    p.finish();
    return two_site(t);
  }
  if (spec.name == "trimer") {
    TrimerParams t;
    t.kappa = p.rational("kappa", t.kappa);
    t.gamma = p.rational("gamma", t.gamma);
    if (p.has("kappa_sq")) t.kappa_sq = p.rational("kappa_sq", 1);
    const bool tan_given = p.has("tan_phi"), angle_given = p.has("phi_over_pi");
    if (tan_given && angle_given) throw input_error("give either 'tan_phi' or 'phi_over_pi', not both");
    if (tan_given) t.tan_phi = p.rational("tan_phi", 0);
    if (angle_given) t.tan_phi = tan_of_pi_fraction(p.rational("phi_over_pi", 0));
    p.finish();
    return three_site(t);
  }
  if (spec.name == "ssh") {
    SSHParams s;
    s.N = p.count("N", s.N);
    s.t1 = p.rational("t1", s.t1);
    s.t2 = p.rational("t2", s.t2);
    s.gamma = p.rational("gamma", s.gamma);
    s.corner = p.rational("corner", s.corner);
    p.finish();
    return ssh_chain(s);
  }
  if (spec.name == "hatano_nelson") {
    HNParams h;
    h.N = p.count("N", h.N);
    if (p.has("theta_over_pi")) std::tie(h.cos_theta, h.sin_theta) = trig_of_pi_fraction(p.rational("theta_over_pi", 0));
    if (p.has("phi_over_pi")) std::tie(h.cos_phi, h.sin_phi) = trig_of_pi_fraction(p.rational("phi_over_pi", 0));
    h.cos_theta = p.rational("cos_theta", h.cos_theta);
    h.sin_theta = p.rational("sin_theta", h.sin_theta);
    h.cos_phi = p.rational("cos_phi", h.cos_phi);
    h.sin_phi = p.rational("sin_phi", h.sin_phi);
    h.upper = p.rationals("upper");
    h.lower = p.rationals("lower");
    if (p.has("disorder")) {
      if (h.N != 4) throw input_error("'disorder' {a,b,c,d,m,n} applies to N = 4; use 'upper'/'lower' otherwise");
      if (!h.upper.empty() || !h.lower.empty()) throw input_error("give either 'disorder' or 'upper'/'lower'");
      Params d(p.raw("disorder"), "hatano_nelson.disorder");
      h.upper = {d.rational("a", 1), d.rational("b", 1), d.rational("m", 1)};
      h.lower = {d.rational("c", 1), d.rational("d", 1), d.rational("n", 1)};
      d.finish();
    }
    p.finish();
    return hatano_nelson(h);
  }
  if (spec.name == "companion") {
    if (!p.has("coeffs") || !p.raw("coeffs").is_array())
      throw input_error("companion needs 'coeffs': [c_0, ..., c_{d-1}] as polynomial strings");
    std::vector<UniPoly> c;
    for (const auto& v : p.raw("coeffs")) {
      if (v.is_string()) c.push_back(parse_unipoly(v.get<std::string>()));
      else c.push_back(UniPoly(GaussianRational(json_rational(v, "coeffs"))));
    }
    p.finish();
    return companion(c);
  }
  std::string names;
  for (const auto& n : model_names) names += (names.empty() ? "" : ", ") + n;
  throw input_error("unknown model '" + spec.name + "' (valid models: " + names + ")");
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw input_error("malformed JSON in " + what + ": " + e.what());
  }
}

/// {"n": 2, "entries": [["nu + i", "1"], ["1", "-nu - i"]]}
inline ParametricMatrix read_matrix_file(const fs::path& path) {
  const json j = parse_json(read_file(path), path.string());
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw input_error("matrix file needs fields 'n' and 'entries'");
  const std::size_t n = json_count(j.at("n"), "n");
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != n) throw input_error("matrix file: 'entries' must have n rows");
  ParametricMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) throw input_error("matrix file: every row must have n entries");
    for (std::size_t c = 0; c < n; ++c) {
      const json& e = rows[r][c];
      m(r, c) = e.is_string() ? parse_unipoly(e.get<std::string>())
                              : UniPoly(GaussianRational(json_rational(e, "entries")));
    }
  }
  return m;
}

struct Input {
  std::string label;
  std::optional<ParametricMatrix> matrix;
  BiPoly poly;
};

inline Input load_input(const RunConfig& cfg) {
  const int sources = cfg.model.has_value() + cfg.poly_file.has_value() + cfg.matrix_file.has_value();
  if (sources != 1)
    throw input_error("exactly one input is required: a model (--config), --poly-file or --matrix-file");
  Input in;
  if (cfg.model) {
    in.label = "model " + cfg.model->name;
    in.matrix = build_model(*cfg.model);
  } else if (cfg.matrix_file) {
    in.label = "matrix file " + cfg.matrix_file->string();
    in.matrix = read_matrix_file(*cfg.matrix_file);
  } else {
    in.label = "polynomial file " + cfg.poly_file->string();
    in.poly = parse_poly_text(read_file(*cfg.poly_file));
    return in;
  }
  in.poly = char_poly(*in.matrix);
  return in;
}

inline void load_config(const fs::path& path, RunConfig& cfg) {
  const json j = parse_json(read_file(path), path.string());
  if (!j.is_object()) throw input_error("config must be a JSON object");
  if (!j.contains("schema") || j.at("schema") != 1) throw input_error("config must declare \"schema\": 1");
  const fs::path base = path.parent_path();
  for (const auto& [key, v] : j.items()) {
    if (key == "schema") continue;
    if (key == "model") {
      if (!v.is_object() || !v.contains("name") || !v.at("name").is_string())
        throw input_error("'model' needs a string 'name'");
      ModelSpec m{v.at("name").get<std::string>(), v.value("params", json::object())};
      for (const auto& [mk, mv] : v.items())
        if (mk != "name" && mk != "params") throw input_error("unknown key 'model." + mk + "'");
      cfg.model = std::move(m);
    } else if (key == "poly_file") {
      cfg.poly_file = base / v.get<std::string>();
    } else if (key == "matrix_file") {
      cfg.matrix_file = base / v.get<std::string>();
    } else if (key == "out") {
      cfg.out = v.get<std::string>();
    } else if (key == "zero_tol") {
      cfg.zero_tol = json_double(v, key);
    } else if (key == "grid") {
      if (v.contains("r_min")) cfg.grid.r_min = json_double(v.at("r_min"), "grid.r_min");
      if (v.contains("r_max")) cfg.grid.r_max = json_double(v.at("r_max"), "grid.r_max");
      if (v.contains("n_r")) cfg.grid.radial = json_count(v.at("n_r"), "grid.n_r");
      if (v.contains("n_theta")) cfg.grid.angular = json_count(v.at("n_theta"), "grid.n_theta");
    } else if (key == "decades") {
      if (v.contains("k_min")) cfg.decades.k_min = json_double(v.at("k_min"), "decades.k_min");
      if (v.contains("k_max")) cfg.decades.k_max = json_double(v.at("k_max"), "decades.k_max");
    } else if (key == "loop") {
      if (v.contains("c")) cfg.loop.c = json_double(v.at("c"), "loop.c");
      if (v.contains("K")) cfg.loop.K = json_count(v.at("K"), "loop.K");
      if (v.contains("mode")) cfg.loop.mode = parse_mode(v.at("mode").get<std::string>());
      if (v.contains("touch_gap")) cfg.loop.touch_gap = json_double(v.at("touch_gap"), "loop.touch_gap");
    } else {
      throw input_error("unknown config key '" + key + "'");
    }
  }
}

inline std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw input_error("cannot write '" + path.string() + "'");
  return f;
}

inline std::string show(double x, double zero_tol) { return format_double(std::abs(x) < zero_tol ? 0.0 : x); }

inline std::string show(cdouble z, double zero_tol) {
  return show(z.real(), zero_tol) + (z.imag() < 0 && std::abs(z.imag()) >= zero_tol ? "" : "+") +
         show(z.imag(), zero_tol) + "i";
}

inline json roots_json(const EPClassification& c) {
  json a = json::array();
  for (const auto& r : c.roots) a.push_back({{"value", to_string(r.value)}, {"multiplicity", r.multiplicity}});
  return a;
}

inline json classification_json(const EPClassification& c) {
  json j{{"kind", c.is_degenerate() ? "degenerate" : "order"}, {"description", describe(c)}};
  if (!c.is_degenerate()) j["order"] = c.order;
  return j;
}

inline json point_json(const LatticePoint& p) { return json::array({p.i, p.k}); }

}  // namespace detail

/// Runs one subcommand; returns the process exit status.
inline int execute(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace detail;
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    err << "error: unknown command '" << command << "'; valid commands:";
    for (const auto& c : commands) err << ' ' << c;
    err << '\n';
    return input_failure;
  }
  try {
    const Input in = load_input(cfg);
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw input_error("cannot create output directory '" + cfg.out.string() + "': " + ec.message());

    json report{{"schema", 1}, {"command", command}, {"input", in.label}, {"polynomial", to_string(in.poly)}};
    out << "input: " << in.label << "\n";
    out << "p(nu, lambda) = " << to_string(in.poly) << "\n";

    if (command == "analyze" || command == "verify") {
      const auto trop = tropicalize(in.poly);
      const auto cls = ep_order(trop);
      report["tropicalization"] = to_string(trop);
      report["roots"] = roots_json(cls);
      report["classification"] = classification_json(cls);
      if (command == "analyze") {
        out << "tropicalization: " << to_string(trop) << "\n";
        for (const auto& r : cls.roots)
          out << "root " << to_string(r.value) << " (multiplicity " << r.multiplicity << ")\n";
        if (const unsigned z = lowest_lambda_exponent(trop); z > 0)
          out << "lambda = 0 is a root of multiplicity " << z << " for all nu\n";
        out << describe(cls) << "\n";
        const auto np = newton_polygon(in.poly);
        report["newton_segment"] = np.is_segment();
        if (np.is_segment()) out << "warning: Newton polygon is a segment (skin-effect signature)\n";
        if (in.matrix) {
          json ev = json::array();
          out << "eigenvalues at nu = 0:";
          for (const auto& z : eigenvalues(eval_matrix(*in.matrix, 0.0))) {
            out << ' ' << show(z, cfg.zero_tol);
            ev.push_back({z.real(), z.imag()});
          }
          out << "\n";
          report["eigenvalues_at_zero"] = ev;
        }
      } else {
        if (!in.matrix) throw input_error("verify needs a matrix (model or --matrix-file), not a bare polynomial");
        const auto fit = splitting_exponent(*in.matrix, cfg.decades);
        std::ofstream f = open_out(cfg.out / "fit.csv");
        write_fit_csv(f, fit);
        json fj{{"exponent", fit.exponent}, {"std_error", fit.std_error}, {"k_min", cfg.decades.k_min},
                {"k_max", cfg.decades.k_max}};
        out << "numeric splitting exponent: " << format_double(fit.exponent) << " +/- " << format_double(fit.std_error)
            << "\n";
        if (cls.is_degenerate()) {
          out << "tropical prediction: none (" << describe(cls) << ")\n";
        } else {
          const double predicted = 1.0 / static_cast<double>(cls.order);
          fj["predicted"] = predicted;
          fj["deviation"] = fit.exponent - predicted;
          out << "tropical prediction 1/" << cls.order << " = " << format_double(predicted)
              << "; deviation " << show(fit.exponent - predicted, cfg.zero_tol) << "\n";
        }
        report["fit"] = fj;
      }
    } else if (command == "newton") {
      const auto np = newton_polygon(in.poly);
      std::ofstream f = open_out(cfg.out / "newton.csv");
      f << "from_i,from_k,to_i,to_k,normal_lambda,normal_nu\n";
      json hull = json::array(), edges = json::array();
      for (const auto& v : np.hull) hull.push_back(point_json(v));
      out << "hull:";
      for (const auto& v : np.hull) out << ' ' << to_string(v);
      out << "\n";
      for (const auto& e : np.edges) {
        f << e.from.i << ',' << e.from.k << ',' << e.to.i << ',' << e.to.k << ',' << e.normal.i << ',' << e.normal.k
          << '\n';
        edges.push_back({{"from", point_json(e.from)}, {"to", point_json(e.to)}, {"normal", point_json(e.normal)}});
        out << "edge " << to_string(e.from) << " -> " << to_string(e.to) << " normal " << to_string(e.normal) << "\n";
      }
      if (np.is_point()) out << "Newton polygon is a single point (empty amoeba)\n";
      if (np.is_segment()) out << "warning: Newton polygon is a segment (skin-effect signature)\n";
      out << "interior lattice points: " << interior_lattice_points(np) << "\n";
      report["newton"] = {{"hull", hull},
                          {"edges", edges},
                          {"segment", np.is_segment()},
                          {"interior_lattice_points", interior_lattice_points(np)}};
    } else if (command == "amoeba") {
      const auto cloud = amoeba_sample(in.poly, cfg.grid);
      std::ofstream f = open_out(cfg.out / "amoeba.csv");
      write_amoeba_csv(f, cloud);
      const auto np = newton_polygon(in.poly);
      const bool hole = has_vacuole(cloud);
      out << "points: " << cloud.points.size() << " (rejected " << cloud.rejected << ")\n";
      out << "vacuole flag: " << (hole ? "yes" : "no") << "; interior lattice points: " << interior_lattice_points(np)
          << "\n";
      if (cfg.svg) {
        std::ofstream s = open_out(cfg.out / "amoeba.svg");
        write_svg(s, cloud, spine_approx(in.poly), np);
      }
      report["amoeba"] = {{"points", cloud.points.size()},
                          {"rejected", cloud.rejected},
                          {"grid",
                           {{"r_min", cfg.grid.r_min},
                            {"r_max", cfg.grid.r_max},
                            {"n_r", cfg.grid.radial},
                            {"n_theta", cfg.grid.angular}}},
                          {"vacuole_flag", hole},
                          {"interior_lattice_points", interior_lattice_points(np)}};
    } else if (command == "spine") {
      const auto curve = spine_approx(in.poly);
      std::ofstream f = open_out(cfg.out / "spine.csv");
      write_spine_csv(f, curve);
      out << "spine: " << curve.vertices.size() << " vertices, " << curve.segments.size() << " segments, "
          << curve.rays.size() << " rays\n";
      out << "note: " << spine_note << "\n";
      report["spine"] = {{"vertices", curve.vertices.size()},
                         {"segments", curve.segments.size()},
                         {"rays", curve.rays.size()},
                         {"note", spine_note}};
    } else {  // holonomy
      if (!in.matrix) throw input_error("holonomy needs a matrix (model or --matrix-file), not a bare polynomial");
      const auto res = holonomy_trace(*in.matrix, cfg.loop);
      std::ofstream f = open_out(cfg.out / "trajectories.csv");
      write_trajectories_csv(f, res);
      json type = json::array();
      for (auto len : cycle_type(res.permutation)) type.push_back(len);
      out << "loop: " << to_string(cfg.loop.mode) << ", c = " << format_double(cfg.loop.c) << ", K = " << res.K << "\n";
      out << "permutation: " << cycle_notation(res.permutation) << "\n";
      json h{{"mode", to_string(cfg.loop.mode)}, {"c", cfg.loop.c},     {"K", res.K},
             {"permutation", res.permutation},  {"cycles", cycle_notation(res.permutation)}, {"cycle_type", type}};
      if (res.petal_count) {
        out << "petal count: " << *res.petal_count << "\n";
        h["petal_count"] = *res.petal_count;
      }
      report["holonomy"] = h;
    }

    std::ofstream r = open_out(cfg.out / "report.json");
    r << report.dump(2) << '\n';
    return ok;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << '\n';
    return input_failure;
  } catch (const numeric_error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  }
}

/// Parses argv-style arguments (without the program name) and runs.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tropep: tropical classification of exceptional points"};
  std::string command, config, out_dir, grid, decades, loop, poly_file, matrix_file;
  std::optional<double> zero_tol;
  bool svg = false;
  app.add_option("command", command, "analyze | newton | amoeba | spine | verify | holonomy")->required();
  app.add_option("--config", config, "JSON run config (\"schema\": 1)");
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--grid", grid, "amoeba grid r_min,r_max,n_r,n_theta");
  app.add_option("--decades", decades, "splitting fit decades k_min,k_max (nu = 10^-k)");
  app.add_option("--loop", loop, "holonomy loop c,K,mode (mode: enclosing | touching)");
  app.add_option("--zero-tol", zero_tol, "display threshold for numeric zeros");
  app.add_option("--poly-file", poly_file, "polynomial text file (one 'i k re im' term per line)");
  app.add_option("--matrix-file", matrix_file, "matrix JSON file {\"n\", \"entries\"}");
  app.add_flag("--svg", svg, "also write amoeba.svg");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return input_failure;
  }

  RunConfig cfg;
  try {
    if (!config.empty()) detail::load_config(config, cfg);
    if (!poly_file.empty()) cfg.poly_file = poly_file;
    if (!matrix_file.empty()) cfg.matrix_file = matrix_file;
    if (!out_dir.empty()) cfg.out = out_dir;
    if (!grid.empty()) detail::apply_grid(grid, cfg.grid);
    if (!decades.empty()) detail::apply_decades(decades, cfg.decades);
    if (!loop.empty()) detail::apply_loop(loop, cfg.loop);
    if (zero_tol) cfg.zero_tol = *zero_tol;
    cfg.svg = svg;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << '\n';
    return input_failure;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << '\n';
    return input_failure;
  }
  return execute(command, cfg, out, err);
}

}  // namespace tropep::cli

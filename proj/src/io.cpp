#include "stringy/io.hpp"

#include "stringy/ehrhart.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace stringy {

namespace {

using nlohmann::json;

std::vector<std::string> tokenize_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) return toks;
  }
  return {};
}

Integer parse_int(const std::string& s) {
  try {
    return Integer(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("expected an integer, got \"" + s + "\"");
  }
}

long parse_count(const std::string& s, const char* what) {
  Integer v = parse_int(s);
  if (v < 0 || v > 100000) throw std::invalid_argument(std::string("bad ") + what);
  return v.get_si();
}

IMat read_matrix(std::istream& in, long rows, long cols) {
  IMat m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    auto toks = tokenize_line(in);
    if (static_cast<long>(toks.size()) != cols) throw std::invalid_argument("ragged matrix row");
    for (long c = 0; c < cols; ++c) m(r, c) = parse_int(toks[static_cast<size_t>(c)]);
  }
  return m;
}

}  // namespace

Polytope parse_polytope(const std::string& text, PolytopeFormat format, std::ostream* warnings) {
  std::istringstream in(text);
  auto header = tokenize_line(in);
  if (header.size() < 2) throw std::invalid_argument("malformed header");

  if (format == PolytopeFormat::matrix) {
    long d = parse_count(header[0], "dimension");
    long n = parse_count(header[1], "vertex count");
    if (d < 1 || d > 8) throw std::invalid_argument("dimension out of range (1..8)");
    if (n < 1) throw std::invalid_argument("empty vertex list");
    IMat rows = read_matrix(in, n, d);
    return Polytope::from_vertices(IMat(rows.transpose()));
  }

  long r = parse_count(header[0], "row count");
  long c = parse_count(header[1], "column count");
  IMat m = read_matrix(in, r, c);
  bool vertices_are_columns = r < c;
  if (r == c && warnings) *warnings << "square PALP matrix: reading vertices as rows\n";
  long d = vertices_are_columns ? r : c;
  if (d < 1 || d > 8) throw std::invalid_argument("dimension out of range (1..8)");
  return vertices_are_columns ? Polytope::from_vertices(m) : Polytope::from_vertices(IMat(m.transpose()));
}

std::string emit_polytope(const Polytope& p, PolytopeFormat format) {
  IMat v = p.lattice_vertices();
  std::ostringstream out;
  if (format == PolytopeFormat::matrix) {
    out << p.ambient_dim() << " " << p.vertex_count() << "\n";
    for (int j = 0; j < p.vertex_count(); ++j) {
      for (Eigen::Index i = 0; i < v.rows(); ++i) out << (i ? " " : "") << v(i, j).get_str();
      out << "\n";
    }
    return out.str();
  }
  // PALP: coordinates as rows when that keeps the header unambiguous,
  // vertices as rows otherwise.
  if (p.ambient_dim() < p.vertex_count()) {
    out << p.ambient_dim() << " " << p.vertex_count() << "\n";
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      for (int j = 0; j < p.vertex_count(); ++j) out << (j ? " " : "") << v(i, j).get_str();
      out << "\n";
    }
  } else {
    out << p.vertex_count() << " " << p.ambient_dim() << "\n";
    for (int j = 0; j < p.vertex_count(); ++j) {
      for (Eigen::Index i = 0; i < v.rows(); ++i) out << (i ? " " : "") << v(i, j).get_str();
      out << "\n";
    }
  }
  return out.str();
}

bool looks_like_fan_file(const std::string& text) {
  std::istringstream in(text);
  auto toks = tokenize_line(in);
  return !toks.empty() && toks[0] == "rays";
}

ParsedFan parse_fan(const std::string& text, std::ostream* warnings) {
  std::istringstream in(text);
  auto header = tokenize_line(in);
  if (header.size() != 3 || header[0] != "rays")
    throw std::invalid_argument("fan file must start with 'rays <n> <d>'");
  long n = parse_count(header[1], "ray count");
  long d = parse_count(header[2], "dimension");
  if (d < 1 || d > 8) throw std::invalid_argument("dimension out of range (1..8)");
  IMat rays_rows = read_matrix(in, n, d);
  IMat rays = rays_rows.transpose();
  for (Eigen::Index j = 0; j < rays.cols(); ++j) {
    IVec r = rays.col(j);
    if (content(r) == 0) throw std::invalid_argument("zero ray");
    if (content(r) != 1) {
      if (warnings) *warnings << "normalizing non-primitive ray " << j << "\n";
      rays.col(j) = primitive(r);
    }
  }

  auto cones_header = tokenize_line(in);
  if (cones_header.size() != 2 || cones_header[0] != "cones")
    throw std::invalid_argument("expected 'cones <k>'");
  long k = parse_count(cones_header[1], "cone count");
  std::vector<std::vector<int>> cones;
  for (long i = 0; i < k; ++i) {
    auto toks = tokenize_line(in);
    if (toks.empty()) throw std::invalid_argument("missing cone line");
    std::vector<int> c;
    for (const auto& t : toks) {
      long idx = parse_count(t, "ray index");
      if (idx >= n) throw std::invalid_argument("cone ray index out of range");
      c.push_back(static_cast<int>(idx));
    }
    cones.push_back(std::move(c));
  }

  ParsedFan out{Fan::from_cones(rays, cones), {}};
  for (auto toks = tokenize_line(in); !toks.empty(); toks = tokenize_line(in)) {
    if (toks[0] != "divisor") throw std::invalid_argument("unexpected line in fan file: " + toks[0]);
    if (toks.size() != static_cast<size_t>(n) + 2)
      throw std::invalid_argument("divisor needs one coefficient per ray");
    const std::string& name = toks[1];
    if (name == "K") throw std::invalid_argument("divisor name K is reserved for the anticanonical divisor");
    TorusDivisor div;
    div.a = RVec(n);
    for (long i = 0; i < n; ++i) div.a(i) = parse_rational(toks[static_cast<size_t>(i) + 2]);
    out.divisors[name] = std::move(div);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports and the CLI
// ---------------------------------------------------------------------------

namespace {

json rational_json(const Rational& q) {
  if (is_integral(q)) {
    const Integer& z = q.get_num();
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
  }
  return json(q.get_str());
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

std::string rational_text(const Rational& q) { return q.get_str(); }

json report_json(const IdentityReport& r) {
  json j;
  j["identity"] = r.name;
  j["lhs"] = rational_json(r.lhs);
  j["rhs"] = rational_json(r.rhs);
  j["pass"] = r.pass;
  if (r.name == "ldp12") j["reflexive"] = r.reflexive;
  json w = json::array();
  for (const auto& [label, value] : r.witnesses) w.push_back({label, rational_json(value)});
  j["witnesses"] = w;
  return j;
}

void print_report_table(const IdentityReport& r, std::ostream& out) {
  out << "identity " << r.name << "\n";
  out << "  lhs  = " << rational_text(r.lhs) << "\n";
  out << "  rhs  = " << rational_text(r.rhs) << "\n";
  out << "  pass = " << (r.pass ? "yes" : "no") << "\n";
  for (const auto& [label, value] : r.witnesses)
    out << "  " << label << " : " << rational_text(value) << "\n";
}

struct Options {
  PolytopeFormat format = PolytopeFormat::matrix;
  int jobs = 1;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct Input {
  bool is_fan = false;
  Polytope polytope;  // when !is_fan
  Fan fan;            // face fan of the polytope, or the parsed fan
  std::map<std::string, TorusDivisor> divisors;
};

Input load_input(const std::string& path, const Options& opt, std::ostream& err, bool need_fan) {
  std::string text = read_input(path);
  Input in;
  if (looks_like_fan_file(text)) {
    ParsedFan pf = parse_fan(text, &err);
    in.is_fan = true;
    in.fan = std::move(pf.fan);
    in.divisors = std::move(pf.divisors);
  } else {
    in.polytope = parse_polytope(text, opt.format, &err);
    if (need_fan) in.fan = face_fan(in.polytope);
  }
  return in;
}

TorusDivisor named_divisor(const Input& in, const std::string& name) {
  if (name == "K") return anticanonical(in.fan);
  auto it = in.divisors.find(name);
  if (it == in.divisors.end()) throw std::invalid_argument("unknown divisor " + name);
  return it->second;
}

IdentityReport run_identity(const std::string& which, const Polytope& p) {
  if (which == "ldp12") return verify_ldp12(p);
  if (which == "refl2") return verify_refl2(p);
  if (which == "refl3") return verify_refl3(p);
  if (which == "refl4") return verify_refl4(p);
  if (which == "refl4sym") return verify_refl4_sym(p);
  if (which == "gor24") return verify_gor24(p);
  if (which == "gor12") return verify_gor12(p);
  if (which == "hodgepsi") return verify_hodgepsi(p);
  if (which == "lw") return verify_lw_reflexive(p);
  throw std::invalid_argument("unknown identity " + which);
}

// lwfan runs on the fan instead of the polytope.
IdentityReport run_lwfan(const Fan& fan) {
  LWReport lw = lw_verify(fan);
  IdentityReport r;
  r.name = "lwfan";
  r.lhs = lw.lhs_second_derivative;
  r.rhs = lw.rhs_second_derivative;
  r.pass = lw.pass;
  r.witnesses.emplace_back("lhs centered", lw.lhs_centered);
  r.witnesses.emplace_back("rhs centered", lw.rhs_centered);
  r.witnesses.emplace_back("lhs boxform", lw.lhs_boxform);
  r.witnesses.emplace_back("v(fan)", Rational(lw.fan_volume));
  r.witnesses.emplace_back("c1.c_{d-1}", lw.c1_cd1);
  return r;
}

// Splits a batch stream into one polytope block per header.
std::vector<std::string> split_batch(const std::string& text, PolytopeFormat format) {
  std::istringstream in(text);
  std::vector<std::string> blocks;
  while (true) {
    auto header = tokenize_line(in);
    if (header.empty()) break;
    if (header.size() < 2) throw std::invalid_argument("malformed batch header");
    long rows;
    if (format == PolytopeFormat::matrix) {
      rows = parse_count(header[1], "vertex count");
    } else {
      rows = parse_count(header[0], "row count");
    }
    std::ostringstream block;
    for (const auto& t : header) block << t << " ";
    block << "\n";
    for (long i = 0; i < rows; ++i) {
      auto toks = tokenize_line(in);
      if (toks.empty()) throw std::invalid_argument("truncated batch block");
      for (const auto& t : toks) block << t << " ";
      block << "\n";
    }
    blocks.push_back(block.str());
  }
  return blocks;
}

int env_jobs() {
  const char* env = std::getenv("STRINGY_JOBS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact stringy invariants of toric varieties from lattice polytopes"};
  app.require_subcommand(1);

  Options opt;
  opt.jobs = env_jobs();
  std::map<std::string, PolytopeFormat> format_names{{"matrix", PolytopeFormat::matrix},
                                                     {"palp", PolytopeFormat::palp}};
  app.add_option("--format", opt.format, "input format")
      ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  std::string report = "json";
  app.add_option("--report", report, "output style")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--jobs", opt.jobs, "parallel batch workers")->check(CLI::PositiveNumber);

  std::string path = "-";
  std::string divisor_name = "K";
  std::vector<std::string> divisor_names;
  std::string identity;
  std::string batch_file;
  int chern_k = 0;
  int ci_r = 1;

  CLI::App* info = app.add_subcommand("info", "dimensions, f-vector, reflexivity, volume");
  info->add_option("file", path);
  CLI::App* dual = app.add_subcommand("dual", "polar dual vertices");
  dual->add_option("file", path);
  CLI::App* hstar_cmd = app.add_subcommand("hstar", "Ehrhart h* coefficients");
  hstar_cmd->add_option("file", path);
  CLI::App* estr = app.add_subcommand("estr", "stringy E-function coefficients");
  estr->add_option("file", path);
  CLI::App* chern = app.add_subcommand("chern", "stringy Chern cycle in degree k");
  chern->add_option("file", path);
  chern->add_option("--k", chern_k, "degree")->required();
  CLI::App* inter =
      app.add_subcommand("inter", "intersection number of divisors with the stringy Chern class");
  inter->add_option("file", path);
  inter->add_option("--divisors", divisor_names, "divisor names")->required()->delimiter(',');
  CLI::App* ehyp = app.add_subcommand("euler-hyp", "stringy Euler number of a generic hypersurface");
  ehyp->add_option("file", path);
  ehyp->add_option("--divisor", divisor_name, "divisor name");
  CLI::App* eci = app.add_subcommand("euler-ci", "stringy Euler number of a complete intersection");
  eci->add_option("file", path);
  eci->add_option("--divisor", divisor_name, "divisor name");
  eci->add_option("--r", ci_r, "codimension")->required();
  CLI::App* egor =
      app.add_subcommand("euler-gorenstein", "Calabi-Yau Euler number from a Gorenstein polytope");
  egor->add_option("file", path);
  egor->add_option("--r", ci_r, "Gorenstein index")->required();
  CLI::App* verify = app.add_subcommand("verify", "check one combinatorial identity");
  verify->add_option("file", path);
  verify->add_option("--identity", identity, "identity name")->required();
  CLI::App* batch = app.add_subcommand("batch", "verify an identity over a stream of polytopes");
  batch->add_option("--file", batch_file, "input stream")->required();
  batch->add_option("--identity", identity, "identity name")->required();

  // Allow the global --format/--report/--jobs after a subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    err << e.get_name() << ": " << e.what() << "\n" << app.help();
    return 2;
  }

  bool as_json = report == "json";
  auto emit = [&](const json& j, const std::string& table_text) {
    if (as_json)
      out << j.dump(2) << "\n";
    else
      out << table_text;
  };

  try {
    if (*info) {
      Input in = load_input(path, opt, err, false);
      if (in.is_fan) throw std::invalid_argument("info expects a polytope input");
      const Polytope& p = in.polytope;
      json j;
      j["ambient_dim"] = p.ambient_dim();
      j["dim"] = p.dim();
      j["vertices"] = p.vertex_count();
      std::vector<long> fv;
      for (const auto& bucket : p.face_lattice()) fv.push_back(static_cast<long>(bucket.size()));
      j["f_vector"] = fv;
      j["volume"] = rational_json(normalized_volume(p));
      j["lattice_points"] = integer_json(p.lattice_point_count());
      bool reflexive = p.dim() == p.ambient_dim() && p.is_reflexive();
      j["reflexive"] = reflexive;
      auto gd = p.dim() == p.ambient_dim() && p.is_lattice() ? p.gorenstein_data() : std::nullopt;
      if (gd) j["gorenstein_index"] = gd->index;
      if (p.has_interior_origin() && p.is_lattice())
        j["fan_gorenstein_index"] = integer_json(gorenstein_index(face_fan(p)));
      std::ostringstream t;
      t << "dim " << p.dim() << " in ambient " << p.ambient_dim() << ", " << p.vertex_count()
        << " vertices\n";
      t << "f-vector:";
      for (long c : fv) t << " " << c;
      t << "\nvolume " << rational_text(normalized_volume(p)) << ", lattice points "
        << p.lattice_point_count().get_str() << "\n";
      t << "reflexive: " << (reflexive ? "yes" : "no") << "\n";
      if (gd) t << "gorenstein index " << gd->index << "\n";
      emit(j, t.str());
      return 0;
    }

    if (*dual) {
      Input in = load_input(path, opt, err, false);
      if (in.is_fan) throw std::invalid_argument("dual expects a polytope input");
      Polytope d = in.polytope.polar_dual();
      json vs = json::array();
      std::ostringstream t;
      for (int j = 0; j < d.vertex_count(); ++j) {
        json row = json::array();
        for (Eigen::Index i = 0; i < d.ambient_dim(); ++i) {
          row.push_back(rational_json(d.vertex(j)(i)));
          t << (i ? " " : "") << rational_text(d.vertex(j)(i));
        }
        vs.push_back(row);
        t << "\n";
      }
      emit(json{{"vertices", vs}}, t.str());
      return 0;
    }

    if (*hstar_cmd) {
      Input in = load_input(path, opt, err, false);
      if (in.is_fan) throw std::invalid_argument("hstar expects a polytope input");
      HStarVector h = hstar(in.polytope);
      json psi = json::array();
      std::ostringstream t;
      for (const Integer& c : h.psi) {
        psi.push_back(integer_json(c));
        t << c.get_str() << " ";
      }
      t << "\n";
      emit(json{{"psi", psi}, {"degree", h.degree}}, t.str());
      return 0;
    }

    if (*estr) {
      Input in = load_input(path, opt, err, true);
      StringyE e = stringy_e(in.fan);
      json terms = json::array();
      std::ostringstream t;
      for (const auto& [alpha, c] : e.terms) {
        terms.push_back({rational_text(alpha), integer_json(c)});
        t << "t^" << rational_text(alpha) << " : " << c.get_str() << "\n";
      }
      Integer q = gorenstein_index(in.fan);
      emit(json{{"terms", terms}, {"q", integer_json(q)}}, t.str());
      return 0;
    }

    if (*chern) {
      Input in = load_input(path, opt, err, true);
      ChernCycle c = stringy_chern(in.fan, chern_k);
      json terms = json::array();
      std::ostringstream t;
      for (const auto& [cone, v] : c.terms) {
        json rays = json::array();
        t << "cone {";
        for (size_t i = 0; i < cone.rays.size(); ++i) {
          rays.push_back(cone.rays[i]);
          t << (i ? " " : "") << cone.rays[i];
        }
        terms.push_back({{"rays", rays}, {"v", integer_json(v)}});
        t << "} : " << v.get_str() << "\n";
      }
      emit(json{{"k", chern_k}, {"terms", terms}}, t.str());
      return 0;
    }

    if (*inter) {
      Input in = load_input(path, opt, err, true);
      std::vector<TorusDivisor> ds;
      for (const auto& name : divisor_names) ds.push_back(named_divisor(in, name));
      Rational v = inter_mixed(in.fan, ds);
      emit(json{{"value", rational_json(v)}}, rational_text(v) + "\n");
      return 0;
    }

    if (*ehyp) {
      Input in = load_input(path, opt, err, true);
      Rational v = euler_hypersurface(in.fan, named_divisor(in, divisor_name));
      emit(json{{"value", rational_json(v)}}, rational_text(v) + "\n");
      return 0;
    }

    if (*eci) {
      Input in = load_input(path, opt, err, true);
      Rational v = euler_ci(in.fan, named_divisor(in, divisor_name), ci_r);
      emit(json{{"value", rational_json(v)}}, rational_text(v) + "\n");
      return 0;
    }

    if (*egor) {
      Input in = load_input(path, opt, err, false);
      if (in.is_fan) throw std::invalid_argument("euler-gorenstein expects a polytope input");
      Rational v = euler_cy_ci(in.polytope, ci_r);
      emit(json{{"value", rational_json(v)}}, rational_text(v) + "\n");
      return 0;
    }

    if (*verify) {
      Input in = load_input(path, opt, err, identity == "lwfan");
      IdentityReport r;
      if (identity == "lwfan") {
        r = run_lwfan(in.fan);
      } else {
        if (in.is_fan) throw std::invalid_argument("identity " + identity + " expects a polytope input");
        r = run_identity(identity, in.polytope);
      }
      std::ostringstream t;
      print_report_table(r, t);
      emit(report_json(r), t.str());
      return r.pass ? 0 : 1;
    }

    if (*batch) {
      std::string text = read_input(batch_file);
      std::vector<std::string> blocks = split_batch(text, opt.format);
      std::vector<json> results(blocks.size());
      std::vector<int> codes(blocks.size(), 0);

      auto work = [&](size_t i) {
        try {
          Polytope p = parse_polytope(blocks[i], opt.format, nullptr);
          IdentityReport r = run_identity(identity, p);
          results[i] = report_json(r);
          codes[i] = r.pass ? 0 : 1;
        } catch (const std::exception& e) {
          results[i] = json{{"error", e.what()}};
          codes[i] = 2;
        }
      };

      int jobs = std::max(1, opt.jobs);
      if (jobs == 1) {
        for (size_t i = 0; i < blocks.size(); ++i) work(i);
      } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
          pool.emplace_back([&] {
            for (size_t i = next++; i < blocks.size(); i = next++) work(i);
          });
        for (auto& th : pool) th.join();
      }

      long passed = 0, failed = 0, errors = 0;
      json items = json::array();
      std::ostringstream t;
      for (size_t i = 0; i < blocks.size(); ++i) {
        items.push_back(results[i]);
        if (codes[i] == 0) ++passed;
        if (codes[i] == 1) ++failed;
        if (codes[i] == 2) ++errors;
        t << "#" << i << " " << (codes[i] == 0 ? "pass" : codes[i] == 1 ? "FAIL" : "error") << "\n";
      }
      json summary{{"total", blocks.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}};
      t << "total " << blocks.size() << ", passed " << passed << ", failed " << failed << ", errors "
        << errors << "\n";
      emit(json{{"results", items}, {"summary", summary}}, t.str());
      if (errors > 0) return 2;
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    if (as_json)
      err << json{{"error", e.what()}}.dump(2) << "\n";
    else
      err << "error: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace stringy

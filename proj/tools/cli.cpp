#include "cli.hpp"

#include "ktoric/gkm.hpp"
#include "ktoric/io.hpp"
#include "ktoric/kirwan.hpp"
#include "ktoric/polytope.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ktoric::cli {

namespace {

using io::Json;

struct RunConfig {
  std::string input;
  std::string second_input;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string xi;
  std::size_t samples = 50;
  double t_max = 50.0;
  double tol = 1e-9;
};

enum class LogLevel { kQuiet, kInfo, kDebug };

LogLevel log_level() {
  const char* env = std::getenv("KTORIC_LOG");
  if (env == nullptr) return LogLevel::kQuiet;
  std::string v(env);
  if (v == "debug" || v == "2") return LogLevel::kDebug;
  if (v == "info" || v == "1") return LogLevel::kInfo;
  return LogLevel::kQuiet;
}

class Logger {
public:
  explicit Logger(std::ostream& err) : err_(err), level_(log_level()) {}
  void info(const std::string& msg) const {
    if (level_ != LogLevel::kQuiet) err_ << "[ktoric] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ == LogLevel::kDebug) err_ << "[ktoric:debug] " << msg << '\n';
  }

private:
  std::ostream& err_;
  LogLevel level_;
};

std::string set_text(FacetSet s) {
  std::string out = "{";
  bool first = true;
  for (auto i : facet_indices(s)) {
    out += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

template <typename T>
std::string vec_text(const std::vector<T>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

std::string factored_nonface(FacetSet s) {
  std::string out;
  for (auto i : facet_indices(s)) out += (out.empty() ? "" : "*") + ("(1 - x" + std::to_string(i + 1) + "^-1)");
  return out;
}

RatVector parse_xi(const std::string& text) {
  RatVector out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
  if (out.empty()) throw Error("ParseError", "--xi needs at least one component");
  return out;
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  auto report = validate_delzant(p);
  if (cfg.format == "text") {
    out << (report.valid() ? "Delzant polytope: valid" : "Delzant polytope: INVALID") << '\n';
    for (const auto& c : report.checks) {
      out << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name;
      if (!c.message.empty()) out << "  (" << c.message << ")";
      if (!c.facets.empty()) {
        out << "  facets:";
        for (auto f : c.facets) out << " F_" << f + 1;
      }
      if (!c.vertices.empty()) {
        out << "  vertices:";
        for (auto v : c.vertices) out << " v" << v + 1;
      }
      out << '\n';
    }
  } else {
    emit(out, io::to_json(report));
  }
  return report.valid() ? kSuccess : kInvalidPolytope;
}

int cmd_vertices(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  require_delzant(p);
  auto vertices = enumerate_vertices(p);
  if (cfg.format == "text") {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      out << "v" << i + 1 << " = " << vec_text(vertices[i].point) << "  on";
      for (auto f : facet_indices(vertices[i].incident)) out << " F_" << f + 1;
      out << '\n';
    }
  } else {
    emit(out, io::vertices_json(vertices));
  }
  return kSuccess;
}

int cmd_nonfaces(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  auto nonfaces = minimal_nonfaces(p);
  if (cfg.format == "text") {
    for (auto s : nonfaces) {
      out << "S = " << set_text(s) << "  :";
      bool first = true;
      for (auto i : facet_indices(s)) {
        out << (first ? " " : " ∩ ") << "F_" << i + 1;
        first = false;
      }
      out << " = ∅\n";
    }
  } else {
    emit(out, {{"nonfaces", io::nonfaces_json(nonfaces)}});
  }
  return kSuccess;
}

int cmd_presentation(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  auto pres = presentation(p);
  auto data = build_delzant_data(p);
  auto reduced = eliminate_J(pres, data);
  if (cfg.format == "text") {
    out << "K*(X) = Z[x1^±, ..., x" << pres.generators << "^±] / (I + J)\n";
    out << "I = {";
    for (std::size_t g = 0; g < pres.nonfaces.size(); ++g)
      out << (g ? ", " : "") << factored_nonface(pres.nonfaces[g]);
    out << "}\n";
    for (std::size_t g = 0; g < pres.nonfaces.size(); ++g)
      out << "  S = " << set_text(pres.nonfaces[g]) << ": " << pres.i_generators[g].render() << '\n';
    out << "J = {";
    for (std::size_t g = 0; g < pres.j_generators.size(); ++g) out << (g ? ", " : "") << pres.j_generators[g].render();
    out << "}\n";
    out << "after solving J (x_i = y^alpha_i): Z[y^±] of rank " << reduced.rank << " modulo {";
    for (std::size_t g = 0; g < reduced.relations.size(); ++g)
      out << (g ? ", " : "") << reduced.relations[g].render("y");
    out << "}\n";
  } else {
    Json doc = io::to_json(pres);
    doc["reduced"] = io::to_json(reduced);
    emit(out, doc);
  }
  return kSuccess;
}

int cmd_gkm(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  auto graph = build_gkm_graph(p);
  if (cfg.format == "text") {
    for (const auto& v : graph.vertices()) out << v.id << " = " << vec_text(*v.point) << '\n';
    for (const auto& e : graph.edges())
      out << graph.vertices()[e.from].id << " -- " << graph.vertices()[e.to].id << "  alpha = " << vec_text(e.weight)
          << '\n';
  } else {
    emit(out, io::to_json(graph));
  }
  return kSuccess;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  auto data = build_delzant_data(p);
  auto z = critical_values_Z(data);
  auto nonfaces = minimal_nonfaces(p);
  if (cfg.format == "text") {
    for (std::size_t i = 0; i < data.N; ++i) out << "α_" << i + 1 << " = " << vec_text(data.alphas[i]) << '\n';
    out << "ι*η = " << vec_text(data.iota_star_eta) << '\n';
    out << "Z (" << z.size() << " values):\n";
    for (const auto& c : z)
      out << "  ξ_A = " << vec_text(c.xi) << "  A = " << set_text(c.subset) << "  S = " << set_text(c.negative_set)
          << '\n';
    out << "I generators:\n";
    for (auto s : nonfaces) {
      auto dual = check_nonface_duality(data, s);
      out << "  " << factored_nonface(s) << "  ξ_A = " << vec_text(dual.xi) << " for A = complement of "
          << set_text(s) << '\n';
    }
  } else {
    Json zs = Json::array();
    for (const auto& c : z) zs.push_back(io::to_json(c));
    Json gens = Json::array();
    for (auto s : nonfaces) {
      auto dual = check_nonface_duality(data, s);
      gens.push_back({{"element", nonface_product(data.N, s).render()},
                      {"S", io::facet_set_json(s)},
                      {"xi_A", io::vector_json(dual.xi)},
                      {"negative_on_S", dual.negative_on_nonface},
                      {"zero_on_A", dual.zero_on_complement}});
    }
    emit(out, {{"data", io::to_json(data)}, {"Z", zs}, {"I", gens}});
  }
  return kSuccess;
}

IntVector direction_from(const RunConfig& cfg, const DelzantPolytope& p) {
  if (cfg.xi.empty()) return generic_direction(p);
  auto xi = parse_xi(cfg.xi);
  IntVector out;
  for (const auto& x : xi) {
    if (x.get_den() != 1) throw Error("ParseError", "--xi for rank must be an integer vector");
    out.push_back(x.get_num());
  }
  return out;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  ToricModel model(p);
  auto xi = direction_from(cfg, p);
  auto cert = equivariant_rank_certificate(model, xi);
  const std::size_t ordinary = ordinary_k_rank(p);
  if (cfg.format == "text") {
    out << "rank K^0(X) = " << ordinary << ", K^1(X) = 0\n";
    out << "Morse basis along ξ = " << vec_text(cert.xi) << ": rank " << cert.rank << ", triangular "
        << (cert.triangular ? "yes" : "no") << ", Euler diagonal " << (cert.diagonal_is_euler ? "yes" : "no") << '\n';
    for (std::size_t r = 0; r < cert.matrix.size(); ++r) {
      out << "  τ_" << model.graph().vertices()[cert.order[r]].id << ":";
      for (const auto& x : cert.matrix[r]) out << "  [" << x.render("t") << "]";
      out << '\n';
    }
  } else {
    emit(out, {{"ordinary_rank", ordinary},
               {"K1_rank", 0},
               {"K1_note", "odd K-theory vanishes for toric manifolds"},
               {"equivariant", io::to_json(cert, model.graph())}});
  }
  return cert.certified() ? kSuccess : kCheckFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  auto p = io::load_polytope(cfg.input);
  auto data = build_delzant_data(p);
  auto report = verify_presentation(p, cfg.seed);
  log.info("presentation checks done");
  ToricModel model(p);
  auto cert = equivariant_rank_certificate(model, generic_direction(p));
  auto pres = presentation(p);
  auto reduced = eliminate_J(pres, data);
  auto z = critical_values_Z(data);
  log.info("critical set has " + std::to_string(z.size()) + " values");

  Json duality = Json::array();
  bool duality_ok = true;
  for (auto s : pres.nonfaces) {
    auto dual = check_nonface_duality(data, s);
    const bool ok = dual.negative_on_nonface && dual.nonnegative_on_complement && !is_zero(dual.xi);
    duality_ok = duality_ok && ok;
    duality.push_back({{"S", io::facet_set_json(s)},
                       {"xi_A", io::vector_json(dual.xi)},
                       {"negative_on_S", dual.negative_on_nonface},
                       {"nonnegative_on_A", dual.nonnegative_on_complement},
                       {"zero_on_A", dual.zero_on_complement}});
  }

  bool capf_ok = true;
  std::size_t capf_checked = 0;
  if (data.N <= 10) {
    auto vertices = enumerate_vertices(p);
    const FacetSet all = (FacetSet{1} << data.N) - 1;
    std::vector<RatVector> alphas;
    for (const auto& a : data.alphas) alphas.emplace_back(a.begin(), a.end());
    for (FacetSet a = 0; a <= all; ++a) {
      std::vector<RatVector> gens;
      for (auto i : facet_indices(a)) gens.push_back(alphas[i]);
      const bool empty_intersection = !facets_intersect(vertices, all & ~a);
      const bool misses_level = !cone_contains(gens, data.iota_star_eta);
      capf_ok = capf_ok && (empty_intersection == misses_level);
      ++capf_checked;
    }
  }

  const bool z_ok = z.size() <= (std::size_t{1} << data.N) &&
                    std::any_of(z.begin(), z.end(), [](const CriticalDatum& c) { return is_zero(c.xi); });
  const bool passed = report.passed() && cert.certified() && reduced.j_vanishes && duality_ok && capf_ok && z_ok;

  if (cfg.format == "text") {
    auto line = [&](bool ok, const std::string& what) { out << (ok ? "pass" : "FAIL") << "  " << what << '\n'; };
    line(report.failures.empty(), "I vanishes at fixed points, J restricts to constants, " +
                                      std::to_string(report.monomials_checked) + " monomials satisfy GKM congruences");
    line(cert.certified(), "Morse basis certificate, rank " + std::to_string(cert.rank));
    line(reduced.j_vanishes, "J vanishes under x_i -> y^alpha_i");
    line(duality_ok, "ξ_A < 0 on S and ≥ 0 on A for every minimal non-face");
    line(capf_ok, "facet intersections match coordinate subspaces meeting the zero level (" +
                      std::to_string(capf_checked) + " subsets)");
    line(z_ok, "|Z| = " + std::to_string(z.size()) + " ≤ 2^N and 0 ∈ Z");
    for (const auto& f : report.failures) out << "  failure: " << f.check << " generator " << f.generator + 1 << '\n';
  } else {
    emit(out, {{"passed", passed},
               {"presentation", io::to_json(report)},
               {"rank_certified", cert.certified()},
               {"rank", cert.rank},
               {"J_vanishes_after_elimination", reduced.j_vanishes},
               {"nonface_duality", duality},
               {"capF_equivalence", {{"passed", capf_ok}, {"subsets", capf_checked}}},
               {"Z", {{"size", z.size()}, {"bounded_and_contains_zero", z_ok}}}});
  }
  return passed ? kSuccess : kCheckFailed;
}

int cmd_flow(const RunConfig& cfg, std::ostream& out) {
  auto p = io::load_polytope(cfg.input);
  auto data = build_delzant_data(p);
  std::vector<RatVector> targets;
  if (!cfg.xi.empty()) {
    targets.push_back(parse_xi(cfg.xi));
  } else {
    for (const auto& c : critical_values_Z(data)) targets.push_back(c.xi);
  }
  FlowOptions options{cfg.t_max, cfg.tol, 100};
  Json results = Json::array();
  bool passed = true;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& xi = targets[i];
    auto samples = is_zero(xi) ? std::vector<std::vector<std::complex<double>>>{}
                               : draw_flow_samples(data, xi, cfg.samples, cfg.seed + i);
    auto report = flow_retraction_check(data, xi, samples, options);
    passed = passed && report.passed();
    if (cfg.format == "text") {
      out << "ξ_A = " << vec_text(xi);
      if (report.degenerate) {
        out << "  constant Morse function, nothing to retract\n";
        continue;
      }
      double worst = 0.0;
      for (const auto& s : report.samples)
        if (s.hit_time) worst = std::max(worst, *s.hit_time);
      out << "  c = " << report.critical_value << "  ε = " << report.epsilon << "  S = " << set_text(report.descending)
          << "  " << (report.passed() ? "pass" : "FAIL") << "  max hit time " << worst << '\n';
    } else {
      results.push_back(io::to_json(report));
    }
  }
  if (cfg.format != "text") emit(out, {{"passed", passed}, {"t_max", cfg.t_max}, {"tol", cfg.tol}, {"results", results}});
  return passed ? kSuccess : kCheckFailed;
}

int cmd_gkm_check(const RunConfig& cfg, std::ostream& out) {
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open " + path);
    try {
      return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error("ParseError", path + ": " + e.what());
    }
  };
  auto graph = io::parse_gkm_graph(read(cfg.input));
  auto h = io::parse_fixed_point_class(read(cfg.second_input), graph);
  auto failures = congruence_failures(graph, h);
  if (cfg.format == "text") {
    out << (failures.empty() ? "class lies in the GKM ring" : "class violates congruences") << '\n';
    for (auto e : failures)
      out << "  edge " << graph.vertices()[graph.edges()[e].from].id << " -- "
          << graph.vertices()[graph.edges()[e].to].id << '\n';
  } else {
    Json bad = Json::array();
    for (auto e : failures)
      bad.push_back({graph.vertices()[graph.edges()[e].from].id, graph.vertices()[graph.edges()[e].to].id});
    emit(out, {{"contains", failures.empty()}, {"failing_edges", bad}});
  }
  return failures.empty() ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ktoric: K-theory of symplectic toric manifolds from Delzant polytopes", "ktoric"};
  app.require_subcommand(1);
  RunConfig cfg;
  Logger log(err);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "polytope JSON file")->required();
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    return sub;
  };
  auto* validate = add_common(app.add_subcommand("validate", "check the Delzant conditions"));
  auto* vertices = add_common(app.add_subcommand("vertices", "list vertices with incident facets"));
  auto* nonfaces = add_common(app.add_subcommand("nonfaces", "minimal non-faces of the facet complex"));
  auto* pres = add_common(app.add_subcommand("presentation", "K-theory presentation Z[x^±]/(I + J)"));
  auto* gkm = add_common(app.add_subcommand("gkm", "GKM graph of the toric manifold"));
  auto* kernel = add_common(app.add_subcommand("kernel", "critical values Z, xi_A, S and I generators"));
  auto* rank = add_common(app.add_subcommand("rank", "ordinary rank and equivariant Morse-basis certificate"));
  rank->add_option("--xi", cfg.xi, "integer direction, comma separated");
  auto* verify = add_common(app.add_subcommand("verify", "cross-check the presentation against fixed points"));
  auto* flow = add_common(app.add_subcommand("flow", "gradient-flow retraction check for each xi_A"));
  flow->add_option("--xi", cfg.xi, "rational critical value, comma separated");
  flow->add_option("--samples", cfg.samples, "samples per critical value");
  flow->add_option("--tmax", cfg.t_max, "time horizon");
  flow->add_option("--tol", cfg.tol, "numerical tolerance");
  auto* gkm_check = app.add_subcommand("gkm-check", "test a fixed-point class against an abstract GKM graph");
  gkm_check->add_option("graph", cfg.input, "GKM graph JSON")->required();
  gkm_check->add_option("class", cfg.second_input, "fixed-point class JSON keyed by vertex id")->required();
  gkm_check->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParseError;
  }

  try {
    log.debug("input " + cfg.input);
    if (validate->parsed()) return cmd_validate(cfg, out);
    if (vertices->parsed()) return cmd_vertices(cfg, out);
    if (nonfaces->parsed()) return cmd_nonfaces(cfg, out);
    if (pres->parsed()) return cmd_presentation(cfg, out);
    if (gkm->parsed()) return cmd_gkm(cfg, out);
    if (kernel->parsed()) return cmd_kernel(cfg, out);
    if (rank->parsed()) return cmd_rank(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, log);
    if (flow->parsed()) return cmd_flow(cfg, out);
    if (gkm_check->parsed()) return cmd_gkm_check(cfg, out);
  } catch (const Error& e) {
    err << "error (" << e.kind() << "): " << e.what() << '\n';
    if (e.kind() == "ParseError" || e.kind() == "MalformedPolytope" || e.kind() == "NonGenericDirection" ||
        e.kind() == "DimensionMismatch")
      return kParseError;
    if (e.kind() == "InvalidPolytope" || e.kind() == "UnboundedPolytope" || e.kind() == "EmptyPolytope") {
      try {
        err << io::to_json(validate_delzant(io::load_polytope(cfg.input))).dump(2) << '\n';
      } catch (const Error&) {
      }
      return kInvalidPolytope;
    }
    return kCheckFailed;
  }
  return kParseError;
}

}  // namespace ktoric::cli

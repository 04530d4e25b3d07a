#include "ktoric/io.hpp"

#include <cctype>
#include <fstream>

namespace ktoric::io {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error("ParseError", msg); }

Integer integer_from(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    Rational r = parse_rational(v.get<std::string>());
    if (r.get_den() != 1) parse_error(what + " must be an integer");
    return r.get_num();
  }
  parse_error(what + " must be an integer");
}

Rational rational_from(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  parse_error(what + " must be an integer or a \"p/q\" string");
}

IntVector int_vector_from(const Json& v, const std::string& what) {
  if (!v.is_array()) parse_error(what + " must be an array");
  IntVector out;
  for (const auto& x : v) out.push_back(integer_from(x, what));
  return out;
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return obj.at(key);
}

}  // namespace

DelzantPolytope parse_polytope(const Json& doc) {
  const Json& dim = field(doc, "dim");
  if (!dim.is_number_integer() || dim.get<long>() <= 0) parse_error("'dim' must be a positive integer");
  const Json& facets = field(doc, "facets");
  if (!facets.is_array()) parse_error("'facets' must be an array");
  std::vector<Facet> out;
  for (const auto& f : facets) {
    Facet facet{int_vector_from(field(f, "normal"), "normal"), rational_from(field(f, "offset"), "offset")};
    if (facet.normal.size() != dim.get<std::size_t>()) parse_error("facet normal length differs from 'dim'");
    out.push_back(std::move(facet));
  }
  try {
    return DelzantPolytope(dim.get<std::size_t>(), std::move(out));
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

DelzantPolytope load_polytope(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
  return parse_polytope(doc);
}

Json rational_json(const Rational& r) { return to_string(r); }

Json vector_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json vector_json(std::span<const Integer> v) {
  Json out = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) out.push_back(x.get_si());
    else out.push_back(x.get_str());
  }
  return out;
}

Json facet_set_json(FacetSet s) {
  Json out = Json::array();
  for (auto i : facet_indices(s)) out.push_back(i + 1);
  return out;
}

Json to_json(const DelzantPolytope& p) {
  Json facets = Json::array();
  for (const auto& f : p.facets()) {
    Json offset = f.offset.get_den() == 1 && f.offset.get_num().fits_slong_p() ? Json(f.offset.get_num().get_si())
                                                                                 : Json(to_string(f.offset));
    facets.push_back({{"normal", vector_json(f.normal)}, {"offset", offset}});
  }
  return {{"dim", p.dim()}, {"facets", facets}};
}

Json to_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item = {{"name", c.name}, {"passed", c.passed}};
    if (!c.message.empty()) item["message"] = c.message;
    if (!c.facets.empty()) {
      Json f = Json::array();
      for (auto i : c.facets) f.push_back(i + 1);
      item["facets"] = f;
    }
    if (!c.vertices.empty()) {
      Json v = Json::array();
      for (auto i : c.vertices) v.push_back(i + 1);
      item["vertices"] = v;
    }
    checks.push_back(item);
  }
  return {{"valid", report.valid()}, {"checks", checks}};
}

Json vertices_json(const std::vector<Vertex>& vertices) {
  Json out = Json::array();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out.push_back({{"id", "v" + std::to_string(i + 1)},
                   {"point", vector_json(vertices[i].point)},
                   {"facets", facet_set_json(vertices[i].incident)}});
  return {{"vertices", out}};
}

Json nonfaces_json(const std::vector<FacetSet>& nonfaces) {
  Json out = Json::array();
  for (auto s : nonfaces) out.push_back(facet_set_json(s));
  return out;
}

Json to_json(const Presentation& pres) {
  Json i_list = Json::array();
  for (std::size_t g = 0; g < pres.i_generators.size(); ++g)
    i_list.push_back({{"element", pres.i_generators[g].render()}, {"S", facet_set_json(pres.nonfaces[g])}});
  Json j_list = Json::array();
  for (std::size_t g = 0; g < pres.j_generators.size(); ++g) {
    IntVector m(pres.j_exponents.size());
    m[g] = 1;
    j_list.push_back({{"element", pres.j_generators[g].render()},
                      {"m", vector_json(m)},
                      {"exponent", vector_json(pres.j_exponents[g])}});
  }
  return {{"generators", pres.generators}, {"I", i_list}, {"J", j_list}, {"nonfaces", nonfaces_json(pres.nonfaces)}};
}

Json to_json(const ReducedPresentation& reduced) {
  Json rel = Json::array();
  for (const auto& r : reduced.relations) rel.push_back(r.render("y"));
  return {{"rank", reduced.rank}, {"relations", rel}, {"J_vanishes", reduced.j_vanishes}};
}

Json to_json(const GKMGraph& graph) {
  Json vertices = Json::array();
  for (const auto& v : graph.vertices()) {
    Json item = {{"id", v.id}};
    if (v.point) item["point"] = vector_json(*v.point);
    vertices.push_back(item);
  }
  Json edges = Json::array();
  for (const auto& e : graph.edges())
    edges.push_back({{"from", graph.vertices()[e.from].id},
                     {"to", graph.vertices()[e.to].id},
                     {"weight", vector_json(e.weight)}});
  return {{"vertices", vertices}, {"edges", edges}};
}

GKMGraph parse_gkm_graph(const Json& doc) {
  std::vector<GKMVertex> vertices;
  const Json& vs = field(doc, "vertices");
  if (!vs.is_array()) parse_error("'vertices' must be an array");
  for (const auto& v : vs) {
    const Json& id = field(v, "id");
    GKMVertex vertex{id.is_string() ? id.get<std::string>() : id.dump(), std::nullopt};
    if (v.contains("point")) {
      RatVector point;
      for (const auto& x : v.at("point")) point.push_back(rational_from(x, "point"));
      vertex.point = std::move(point);
    }
    vertices.push_back(std::move(vertex));
  }
  auto index_of = [&](const Json& id) {
    std::string key = id.is_string() ? id.get<std::string>() : id.dump();
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].id == key) return i;
    parse_error("edge refers to unknown vertex '" + key + "'");
  };
  std::vector<GKMEdge> edges;
  std::optional<std::size_t> rank;
  const Json& es = field(doc, "edges");
  if (!es.is_array()) parse_error("'edges' must be an array");
  for (const auto& e : es) {
    GKMEdge edge{index_of(field(e, "from")), index_of(field(e, "to")), int_vector_from(field(e, "weight"), "weight")};
    if (rank && *rank != edge.weight.size()) parse_error("edge weights have inconsistent ranks");
    rank = edge.weight.size();
    edges.push_back(std::move(edge));
  }
  std::size_t r = rank.value_or(doc.contains("rank") ? doc.at("rank").get<std::size_t>() : 0);
  return GKMGraph(r, std::move(vertices), std::move(edges));
}

Json to_json(const FixedPointClass& h, const GKMGraph& graph, const std::string& prefix) {
  Json out = Json::object();
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) out[graph.vertices()[v].id] = h.values.at(v).render(prefix);
  return out;
}

FixedPointClass parse_fixed_point_class(const Json& doc, const GKMGraph& graph, const std::string& prefix) {
  if (!doc.is_object()) parse_error("fixed-point class must be an object keyed by vertex id");
  FixedPointClass out;
  for (const auto& v : graph.vertices()) {
    if (!doc.contains(v.id)) parse_error("class has no value at vertex '" + v.id + "'");
    const Json& value = doc.at(v.id);
    if (!value.is_string()) parse_error("class values must be rendered ring elements");
    out.values.push_back(parse_element(value.get<std::string>(), graph.rank(), prefix));
  }
  return out;
}

namespace {

class ElementParser {
public:
  ElementParser(const std::string& text, std::size_t rank, const std::string& prefix)
      : text_(text), rank_(rank), prefix_(prefix) {}

  GroupRingElem parse() {
    Carrier carrier(rank_);
    GroupRingElem out(carrier);
    skip_space();
    if (text_.compare(pos_, std::string::npos, "0") == 0) return out;
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out += term(carrier) * Integer(sign);
      first = false;
      skip_space();
    }
    if (first) fail("empty expression");
    return out;
  }

private:
  GroupRingElem term(const Carrier& carrier) {
    Integer coeff = 1;
    IntVector exponent(rank_);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      skip_space();
      if (peek() != '*') return GroupRingElem::constant(carrier, coeff);
      ++pos_;
      skip_space();
    }
    for (;;) {
      if (text_.compare(pos_, prefix_.size(), prefix_) != 0) fail("expected variable");
      pos_ += prefix_.size();
      Integer index = number();
      if (index < 1 || index > static_cast<long>(rank_)) fail("variable index out of range");
      Integer power = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        bool negative = false;
        if (peek() == '-') {
          negative = true;
          ++pos_;
        }
        power = number();
        if (negative) power = -power;
      }
      exponent[index.get_ui() - 1] += power;
      skip_space();
      if (peek() != '*') break;
      ++pos_;
      skip_space();
    }
    return GroupRingElem::monomial(carrier, std::move(exponent), coeff);
  }

  Integer number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return Integer(text_.substr(start, pos_ - start));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    parse_error("cannot parse '" + text_ + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  const std::string& text_;
  std::size_t rank_;
  const std::string& prefix_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElem parse_element(const std::string& text, std::size_t rank, const std::string& prefix) {
  return ElementParser(text, rank, prefix).parse();
}

Json to_json(const DelzantData& d) {
  Json beta = Json::array(), iota = Json::array(), alphas = Json::array();
  for (std::size_t r = 0; r < d.beta.rows(); ++r) beta.push_back(vector_json(d.beta.row(r)));
  for (std::size_t r = 0; r < d.iota.rows(); ++r) iota.push_back(vector_json(d.iota.row(r)));
  for (const auto& a : d.alphas) alphas.push_back(vector_json(a));
  return {{"N", d.N},
          {"n", d.n},
          {"k", d.k},
          {"beta", beta},
          {"iota", iota},
          {"alphas", alphas},
          {"eta", vector_json(d.eta)},
          {"iota_star_eta", vector_json(d.iota_star_eta)}};
}

Json to_json(const CriticalDatum& c) {
  return {{"xi", vector_json(c.xi)}, {"A", facet_set_json(c.subset)}, {"S", facet_set_json(c.negative_set)}};
}

Json to_json(const RankCertificate& cert, const GKMGraph& graph) {
  Json order = Json::array();
  for (auto v : cert.order) order.push_back(graph.vertices()[v].id);
  Json matrix = Json::array();
  for (const auto& row : cert.matrix) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.render("t"));
    matrix.push_back(r);
  }
  return {{"rank", cert.rank},
          {"xi", vector_json(cert.xi)},
          {"order", order},
          {"triangular", cert.triangular},
          {"diagonal_nonzero", cert.diagonal_nonzero},
          {"diagonal_is_euler", cert.diagonal_is_euler},
          {"certified", cert.certified()},
          {"matrix", matrix}};
}

Json to_json(const PresentationReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    Json item = {{"check", f.check}, {"generator", f.generator + 1}, {"detail", f.detail}};
    if (f.vertex) item["vertex"] = "v" + std::to_string(*f.vertex + 1);
    failures.push_back(item);
  }
  Json j_values = Json::array();
  for (const auto& v : report.j_restrictions) j_values.push_back(v.render("t"));
  return {{"passed", report.passed()},
          {"I_checked", report.i_checked},
          {"J_checked", report.j_checked},
          {"J_restrictions", j_values},
          {"monomials_checked", report.monomials_checked},
          {"failures", failures}};
}

Json to_json(const FlowReport& report) {
  Json out = {{"xi", vector_json(report.xi)}, {"degenerate", report.degenerate}};
  if (report.degenerate) {
    out["passed"] = true;
    return out;
  }
  Json hits = Json::array();
  bool monotone = true;
  for (const auto& s : report.samples) {
    hits.push_back(s.hit_time ? Json(*s.hit_time) : Json(nullptr));
    monotone = monotone && s.monotone;
  }
  out["critical_value"] = report.critical_value;
  out["epsilon"] = report.epsilon;
  out["S"] = facet_set_json(report.descending);
  out["samples"] = report.samples.size();
  out["monotone"] = monotone;
  out["hit_times"] = hits;
  out["passed"] = report.passed();
  return out;
}

}  // namespace ktoric::io

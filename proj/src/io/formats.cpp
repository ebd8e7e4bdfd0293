#include "critspec/io/formats.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace critspec {

using nlohmann::json;

namespace {

constexpr const char* kInstanceFormat = "critspec-instance";
constexpr const char* kE1Format = "critspec-e1";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(InputError::Kind::Parse, where + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail("line " + std::to_string(line) + ", column " + std::to_string(column), "malformed JSON");
  }
}

const json& field(const json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

void check_header(const json& doc, const char* format) {
  if (!doc.is_object()) fail("document", "expected an object");
  const auto& f = field(doc, "document", "format");
  if (!f.is_string() || f.get<std::string>() != format) fail("format", std::string("expected \"") + format + "\"");
  const auto& v = field(doc, "document", "version");
  if (!v.is_number_integer() || v.get<long long>() != 1) fail("version", "unsupported version (expected 1)");
}

long long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

std::size_t count(const json& j, const std::string& where) {
  const long long v = integer(j, where);
  if (v < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

Integer big_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      const Rational r = parse_rational(j.get<std::string>());
      if (r.get_den() == 1) return r.get_num();
    } catch (const std::invalid_argument&) {
    }
  }
  fail(where, "expected an integer");
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

Rational rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) fail(where, "expected a rational string such as \"3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    fail(where, "malformed rational '" + j.get<std::string>() + "'");
  }
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputError::Kind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  check_header(doc, kInstanceFormat);

  const auto& vertices = array(field(doc, "document", "vertices"), "vertices");
  std::map<long long, Rational> by_id;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = at("vertices", i);
    const long long id = integer(field(vertices[i], where, "id"), where + ".id");
    Rational value = rational(field(vertices[i], where, "value"), where + ".value");
    if (!by_id.emplace(id, std::move(value)).second) fail(where + ".id", "duplicate vertex id " + std::to_string(id));
  }

  Instance out;
  std::map<long long, Vertex> internal;
  VertexFunction values;
  for (const auto& [id, value] : by_id) {
    internal.emplace(id, static_cast<Vertex>(out.ids.size()));
    out.ids.push_back(id);
    values.push_back(value);
  }

  std::vector<Simplex> simplices;
  const auto& list = array(field(doc, "document", "simplices"), "simplices");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = at("simplices", i);
    Simplex s;
    for (std::size_t k = 0; k < array(list[i], where).size(); ++k) {
      const long long id = integer(list[i][k], at(where, k));
      auto it = internal.find(id);
      if (it == internal.end()) fail(at(where, k), "unknown vertex id " + std::to_string(id));
      s.push_back(it->second);
    }
    if (s.empty()) fail(where, "empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail(where, "repeated vertex");
    simplices.push_back(std::move(s));
  }

  bool close = false;
  if (auto it = doc.find("close_faces"); it != doc.end()) {
    if (!it->is_boolean()) fail("close_faces", "expected a boolean");
    close = it->get<bool>();
  }

  auto external = [&](const Simplex& s) {
    std::string text = "[";
    for (std::size_t k = 0; k < s.size(); ++k) text += (k ? "," : "") + std::to_string(out.ids[s[k]]);
    return text + "]";
  };
  SimplicialComplex complex;
  if (close) {
    complex = SimplicialComplex::closure_of(values.size(), simplices);
  } else {
    auto bad = validate_complex(values.size(), simplices);
    if (bad) {
      std::string message = bad->kind == ComplexViolation::Kind::Duplicate
                                ? "simplex " + external(bad->simplex) + " is listed twice"
                                : "face " + external(bad->face) + " of simplex " + external(bad->simplex) +
                                      " is missing";
      throw InputError(InputError::Kind::Validation, "invalid complex: " + message);
    }
    complex = SimplicialComplex(values.size(), simplices);
  }
  out.lc = LeveledComplex::from(std::move(complex), std::move(values));
  return out;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

json instance_to_json(const Instance& instance) {
  json doc{{"format", kInstanceFormat}, {"version", 1}};
  json vertices = json::array();
  for (Vertex v = 0; v < instance.lc.vertex_count(); ++v) {
    vertices.push_back({{"id", instance.ids[v]}, {"value", to_string(instance.lc.values[v])}});
  }
  json simplices = json::array();
  const auto& c = instance.lc.complex;
  for (int q = 1; q <= c.dimension(); ++q) {
    for (const auto& s : c.simplices(q)) {
      json ids = json::array();
      for (Vertex v : s) ids.push_back(instance.ids[v]);
      simplices.push_back(std::move(ids));
    }
  }
  doc["vertices"] = std::move(vertices);
  doc["simplices"] = std::move(simplices);
  return doc;
}

json group_to_json(const AbelianGroup& g, const Coefficients& ring) {
  json torsion = json::array();
  for (const auto& t : g.torsion) torsion.push_back(integer_json(t));
  return {{"rank", g.free_rank}, {"torsion", std::move(torsion)}, {"text", g.to_string(ring)}};
}

namespace {

AbelianGroup group_at(const json& j, const std::string& where) {
  AbelianGroup g;
  g.free_rank = count(field(j, where, "rank"), where + ".rank");
  if (auto it = j.find("torsion"); it != j.end()) {
    const auto& list = array(*it, where + ".torsion");
    for (std::size_t k = 0; k < list.size(); ++k) {
      Integer t = big_integer(list[k], at(where + ".torsion", k));
      if (t < 2) fail(at(where + ".torsion", k), "torsion coefficients must exceed 1");
      g.torsion.push_back(std::move(t));
    }
  }
  // Re-normalize to invariant factors.
  return AbelianGroup::direct_sum(AbelianGroup::free(g.free_rank), AbelianGroup{0, g.torsion});
}

Coefficients ring_at(const json& doc) {
  std::string tag = "z";
  if (auto it = doc.find("ring"); it != doc.end()) {
    if (!it->is_string()) fail("ring", "expected a coefficient tag");
    tag = it->get<std::string>();
  }
  try {
    return Coefficients::parse(tag);
  } catch (const std::invalid_argument& e) {
    fail("ring", e.what());
  }
}

}  // namespace

AbelianGroup group_from_json(const json& j) { return group_at(j, "group"); }

E1Page parse_e1(const std::string& text) {
  const json doc = parse_json(text);
  check_header(doc, kE1Format);
  E1Page page;
  page.ring = ring_at(doc);
  const auto& degrees = array(field(doc, "document", "degrees"), "degrees");
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const std::string where = at("degrees", k);
    E1Degree d;
    d.q = static_cast<int>(count(field(degrees[k], where, "q"), where + ".q"));
    if (d.q != static_cast<int>(k)) fail(where + ".q", "degrees must be listed as q = 0, 1, ...");
    for (const char* column : {"levels", "gaps"}) {
      const std::string w = where + "." + column;
      const auto& list = array(field(degrees[k], where, column), w);
      auto& target = std::string(column) == "levels" ? d.levels : d.gaps;
      for (std::size_t i = 0; i < list.size(); ++i) target.push_back(group_at(list[i], at(w, i)));
    }
    d.differential = IntegerMatrix(d.rows(), d.cols());
    const std::string w = where + ".differential";
    const auto& entries = array(field(degrees[k], where, "differential"), w);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const std::string we = at(w, e);
      if (!entries[e].is_array() || entries[e].size() != 3) fail(we, "expected [row, col, value]");
      const std::size_t r = count(entries[e][0], we + "[0]");
      const std::size_t c = count(entries[e][1], we + "[1]");
      if (r >= d.rows() || c >= d.cols()) {
        fail(we, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") outside the " +
                     std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + " matrix");
      }
      if (!seen.insert({r, c}).second) fail(we, "duplicate entry");
      d.differential.set(r, c, big_integer(entries[e][2], we + "[2]"));
    }
    page.degrees.push_back(std::move(d));
  }
  try {
    page.validate();
  } catch (const std::invalid_argument& e) {
    fail("degrees", e.what());
  }
  return page;
}

E1Page load_e1(const std::string& path) { return parse_e1(read_file(path)); }

json e1_to_json(const E1Page& page) {
  json doc{{"format", kE1Format}, {"version", 1}, {"ring", page.ring.tag()}};
  json degrees = json::array();
  for (const auto& d : page.degrees) {
    json levels = json::array();
    json gaps = json::array();
    for (const auto& g : d.levels) levels.push_back(group_to_json(g, page.ring));
    for (const auto& g : d.gaps) gaps.push_back(group_to_json(g, page.ring));
    json entries = json::array();
    // row-major for readability
    std::vector<std::tuple<std::size_t, std::size_t, Integer>> sorted;
    d.differential.for_each([&](std::size_t r, std::size_t c, const Integer& v) { sorted.emplace_back(r, c, v); });
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::pair{std::get<0>(a), std::get<1>(a)} < std::pair{std::get<0>(b), std::get<1>(b)};
    });
    for (const auto& [r, c, v] : sorted) entries.push_back(json::array({r, c, integer_json(v)}));
    degrees.push_back({{"q", d.q}, {"levels", levels}, {"gaps", gaps}, {"differential", entries}});
  }
  doc["degrees"] = std::move(degrees);
  return doc;
}

json e2_to_json(const E2Page& page) {
  json degrees = json::array();
  for (const auto& d : page.degrees) {
    degrees.push_back({{"q", d.q}, {"e0", group_to_json(d.e0, page.ring)}, {"e1", group_to_json(d.e1, page.ring)}});
  }
  return {{"ring", page.ring.tag()}, {"degrees", degrees}};
}

E2Page e2_from_json(const json& j) {
  E2Page page;
  page.ring = ring_at(j);
  const auto& degrees = array(field(j, "e2", "degrees"), "degrees");
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const std::string where = at("degrees", k);
    page.degrees.push_back({static_cast<int>(count(field(degrees[k], where, "q"), where + ".q")),
                            group_at(field(degrees[k], where, "e0"), where + ".e0"),
                            group_at(field(degrees[k], where, "e1"), where + ".e1")});
  }
  return page;
}

json homology_to_json(const AssembledHomology& h) {
  json degrees = json::array();
  for (const auto& d : h.degrees) {
    json entry = group_to_json(d.group, h.ring);
    entry["n"] = d.n;
    entry["text"] = d.to_string(h.ring);
    entry["certificate"] = d.certificate == Extension::Split ? "split" : "undetermined";
    entry["sub"] = group_to_json(d.sub, h.ring);
    entry["quotient"] = group_to_json(d.quotient, h.ring);
    degrees.push_back(std::move(entry));
  }
  return {{"ring", h.ring.tag()}, {"degrees", degrees}, {"text", h.to_string()}};
}

AssembledHomology homology_from_json(const json& j) {
  AssembledHomology h;
  h.ring = ring_at(j);
  const auto& degrees = array(field(j, "homology", "degrees"), "degrees");
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const std::string where = at("degrees", k);
    const auto& e = degrees[k];
    AssembledDegree d;
    d.n = static_cast<int>(count(field(e, where, "n"), where + ".n"));
    d.group = group_at(e, where);
    d.sub = group_at(field(e, where, "sub"), where + ".sub");
    d.quotient = group_at(field(e, where, "quotient"), where + ".quotient");
    const auto& cert = field(e, where, "certificate");
    if (cert == "split") {
      d.certificate = Extension::Split;
    } else if (cert == "undetermined") {
      d.certificate = Extension::Undetermined;
    } else {
      fail(where + ".certificate", "expected split or undetermined");
    }
    h.degrees.push_back(std::move(d));
  }
  return h;
}

json reeb_to_json(const ReebGraph& g) {
  json vertices = json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    vertices.push_back({{"id", v}, {"label", x.label()}, {"level", x.level}, {"component", x.component},
                        {"value", to_string(x.value)}});
  }
  json edges = json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& x = g.edges[e];
    edges.push_back({{"id", e}, {"label", x.label()}, {"gap", x.gap}, {"component", x.component},
                     {"source", x.source}, {"target", x.target}});
  }
  const auto b = reeb_betti(g);
  return {{"vertices", vertices}, {"edges", edges}, {"betti", {{"b0", b.b0}, {"b1", b.b1}}}};
}

ReebGraph reeb_from_json(const json& j) {
  ReebGraph g;
  const auto& vertices = array(field(j, "graph", "vertices"), "vertices");
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const std::string where = at("vertices", k);
    g.vertices.push_back({count(field(vertices[k], where, "level"), where + ".level"),
                          count(field(vertices[k], where, "component"), where + ".component"),
                          rational(field(vertices[k], where, "value"), where + ".value")});
  }
  const auto& edges = array(field(j, "graph", "edges"), "edges");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = at("edges", k);
    ReebEdge e{count(field(edges[k], where, "gap"), where + ".gap"),
               count(field(edges[k], where, "component"), where + ".component"),
               count(field(edges[k], where, "source"), where + ".source"),
               count(field(edges[k], where, "target"), where + ".target")};
    if (e.source >= g.vertices.size() || e.target >= g.vertices.size()) fail(where, "endpoint out of range");
    g.edges.push_back(e);
  }
  return g;
}

json word_to_json(const ReebGraph& g, const SignedWord& w) {
  json letters = json::array();
  for (const auto& l : w.letters) {
    letters.push_back({{"edge", l.edge}, {"label", g.edges.at(l.edge).label()}, {"sign", l.sign}});
  }
  return {{"basepoint", g.vertices.at(w.basepoint).label()},
          {"word", to_string(g, w)},
          {"letters", letters},
          {"run_length", run_length(w)}};
}

json two_columns_to_json(const TwoColumnReport& report, const Coefficients& ring) {
  json degrees = json::array();
  for (const auto& d : report.degrees) {
    degrees.push_back({{"q", d.q},
                       {"match", d.match()},
                       {"boundary_squared_zero", d.complex_ok},
                       {"successive_kernel", group_to_json(d.successive_kernel, ring)},
                       {"full_e2_1", group_to_json(d.full_e2_1, ring)},
                       {"successive_cokernel", group_to_json(d.successive_cokernel, ring)},
                       {"full_e2_0", group_to_json(d.full_e2_0, ring)},
                       {"full_e2_2", group_to_json(d.full_e2_2, ring)}});
  }
  json out{{"supported", report.supported}, {"ok", report.ok()},      {"pairs", report.pairs},
           {"triples", report.triples},     {"quadruples", report.quadruples}, {"degrees", degrees}};
  if (!report.supported) out["reason"] = report.reason;
  return out;
}

}  // namespace critspec

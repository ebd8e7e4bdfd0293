// Command-line front end. Exit codes: 0 success, 1 NotReeb or a failed
// verification, 2 bad input.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "critspec/io/formats.hpp"

using namespace critspec;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Options {
  bool json = false;
  std::string instance;
  std::string coeff = "z";
  std::string at;
  bool homology = false;
  std::string dot;
  bool generators = false;
  std::string base;
  std::string out;
  std::string from_e1;
  std::string method = "ss";
  bool two_columns = false;
  std::string word;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json) {
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << text;
  }
}

std::string join(const std::vector<Rational>& values) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : " ") + to_string(v);
  return out;
}

json rationals(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Rational level_option(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--at: malformed rational '" + text + "'");
  }
}

Coefficients coefficients(const std::string& tag) {
  try {
    return Coefficients::parse(tag);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--coeff: ") + e.what());
  }
}

std::string describe(const SimplicialComplex& c) {
  static const char* names[] = {"vertices", "edges", "triangles", "tetrahedra"};
  std::string out;
  for (int q = 0; q <= c.dimension(); ++q) {
    out += (q ? ", " : "") + std::to_string(c.size(q)) + " " +
           (q < 4 ? names[q] : std::to_string(q) + "-simplices");
  }
  return out.empty() ? "empty" : out;
}

int cmd_validate(const Options& o) {
  const auto inst = load_instance(o.instance);
  const auto& c = inst.lc.complex;
  json j{{"valid", true}, {"dimension", c.dimension()}, {"counts", json::array()}};
  for (int q = 0; q <= c.dimension(); ++q) j["counts"].push_back(c.size(q));
  emit(o, j, "ok: " + describe(c) + " (dimension " + std::to_string(c.dimension()) + ")\n");
  return kOk;
}

int cmd_critical_values(const Options& o) {
  const auto inst = load_instance(o.instance);
  const auto seq = critical_values(inst.lc);
  emit(o, {{"values", rationals(seq.values())}, {"midpoints", rationals(seq.midpoints())}},
       "critical values: " + join(seq.values()) + "\nmidpoints: " + join(seq.midpoints()) + "\n");
  return kOk;
}

int cmd_levelset(const Options& o) {
  const auto inst = load_instance(o.instance);
  const Rational a = level_option(o.at);
  const auto ls = level_set(inst.lc, a);
  const auto& fiber = ls.fiber.complex;
  const auto comps = fiber_components(fiber, a);
  json vertices = json::array();
  for (Vertex v = 0; v < fiber.vertex_count(); ++v) {
    const auto& p = fiber.provenance[v];
    json entry{{"component", comps.label[v]}};
    if (p.kind == Provenance::Kind::Original) {
      entry["original"] = inst.ids[p.a];
    } else {
      // endpoints of the cut edge; originals keep their ids
      entry["crossing"] = {inst.ids[p.a], inst.ids[p.b]};
    }
    vertices.push_back(std::move(entry));
  }
  json simplices = json::array();
  for (int q = 1; q <= fiber.complex.dimension(); ++q) {
    for (const auto& s : fiber.complex.simplices(q)) simplices.push_back(s);
  }
  json j{{"level", to_string(a)}, {"vertices", vertices}, {"simplices", simplices}, {"components", comps.count()}};
  std::string text = "level " + to_string(a) + ": " + describe(fiber.complex) + "; " +
                     std::to_string(comps.count()) + " component" + (comps.count() == 1 ? "" : "s") + "\n";
  if (o.homology) {
    const auto ring = coefficients(o.coeff);
    std::vector<AbelianGroup> groups;
    for (int q = 0; q <= std::max(fiber.complex.dimension(), 0); ++q) {
      groups.push_back(homology(fiber.complex, q, ring).group());
    }
    json h = json::array();
    for (const auto& g : groups) h.push_back(group_to_json(g, ring));
    j["homology"] = h;
    text += homology_string(groups, ring) + "\n";
  }
  emit(o, j, text);
  return kOk;
}

int cmd_reeb_graph(const Options& o) {
  const auto inst = load_instance(o.instance);
  const SectionModel model(inst.lc, critical_values(inst.lc), Coefficients::integers());
  model.check_reeb();
  const auto g = build_reeb_graph(model);
  const auto b = reeb_betti(g);
  if (!o.dot.empty()) {
    if (o.dot == "-") {
      std::cout << to_dot(g);
    } else {
      std::ofstream out(o.dot);
      if (!out) throw InputError(InputError::Kind::Io, "cannot write '" + o.dot + "'");
      out << to_dot(g);
    }
  }
  json j = reeb_to_json(g);
  std::string text = std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) +
                     " edges, b0=" + std::to_string(b.b0) + " b1=" + std::to_string(b.b1) + "\n";
  for (const auto& e : g.edges) {
    text += "  " + e.label() + ": " + g.vertices[e.source].label() + " -> " + g.vertices[e.target].label() + "\n";
  }
  if (o.generators) {
    const std::size_t base = o.base.empty() ? 0 : g.vertex(o.base);
    const auto gens = pi1_generators(g, base);
    j["basepoint"] = g.vertices.at(base).label();
    j["generators"] = json::array();
    text += "pi1 generators at " + g.vertices.at(base).label() + ":\n";
    for (const auto& w : gens) {
      j["generators"].push_back(word_to_json(g, w));
      text += "  " + to_string(g, w) + "\n";
    }
  }
  if (o.dot != "-") emit(o, j, text);
  return kOk;
}

std::string page_text(const E1Page& page) {
  std::string text;
  for (const auto& d : page.degrees) {
    auto sum = [&](const std::vector<AbelianGroup>& list) {
      std::string s;
      for (const auto& g : list) s += (s.empty() ? "" : " + ") + g.to_string(page.ring);
      return s.empty() ? std::string("0") : s;
    };
    text += "q=" + std::to_string(d.q) + ": levels " + sum(d.levels) + " | gaps " + sum(d.gaps) + "\n";
    text += d.differential.to_string() + "\n";
  }
  return text;
}

int cmd_e1(const Options& o) {
  const auto inst = load_instance(o.instance);
  const auto ring = coefficients(o.coeff);
  const SectionModel model(inst.lc, critical_values(inst.lc), ring);
  model.check_reeb();
  const auto page = build_e1(model);
  const json j = e1_to_json(page);
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw InputError(InputError::Kind::Io, "cannot write '" + o.out + "'");
    out << j.dump(1) << "\n";
  }
  emit(o, j, page_text(page));
  return kOk;
}

std::string e2_text(const E2Page& e2, const AssembledHomology& h) {
  std::string text;
  for (const auto& d : e2.degrees) {
    text += "E2[0," + std::to_string(d.q) + "]=" + d.e0.to_string(e2.ring) + " E2[1," + std::to_string(d.q) +
            "]=" + d.e1.to_string(e2.ring) + "\n";
  }
  return text + h.to_string() + "\n";
}

int cmd_e2(const Options& o) {
  E1Page page;
  if (!o.from_e1.empty()) {
    page = load_e1(o.from_e1);
  } else {
    if (o.instance.empty()) throw UsageError("e2 needs an instance or --from-e1");
    const auto inst = load_instance(o.instance);
    const SectionModel model(inst.lc, critical_values(inst.lc), coefficients(o.coeff));
    model.check_reeb();
    page = build_e1(model);
  }
  const auto e2 = compute_e2(page);
  auto h = assemble_homology(e2);
  if (o.from_e1.empty()) trim_to_dimension(h, static_cast<int>(e2.degrees.size()) - 1);
  emit(o, {{"e2", e2_to_json(e2)}, {"homology", homology_to_json(h)}}, e2_text(e2, h));
  return kOk;
}

int cmd_homology(const Options& o) {
  const auto inst = load_instance(o.instance);
  const auto ring = coefficients(o.coeff);
  AssembledHomology h;
  if (o.method == "ss") {
    h = spectral_homology(inst.lc, ring).homology;
  } else if (o.method == "direct") {
    h = direct_homology(inst.lc, ring);
  } else {
    throw UsageError("--method must be ss or direct");
  }
  json j = homology_to_json(h);
  j["method"] = o.method;
  emit(o, j, h.to_string() + "\n");
  return h.determined() ? kOk : kFailed;
}

int cmd_verify(const Options& o) {
  if (!o.two_columns) throw UsageError("verify: nothing to do (use --two-columns)");
  const auto inst = load_instance(o.instance);
  const auto ring = coefficients(o.coeff);
  const SectionModel model(inst.lc, critical_values(inst.lc), ring);
  model.check_reeb();
  const auto report = verify_two_columns(model);
  std::string text;
  if (!report.supported) {
    text = "two-column check unsupported: " + report.reason + "\n";
  } else {
    text = std::string("two-column check: ") + (report.ok() ? "ok" : "MISMATCH") + " (" +
           std::to_string(report.pairs) + " pairs, " + std::to_string(report.triples) + " triples, " +
           std::to_string(report.quadruples) + " quadruples)\n";
    for (const auto& d : report.degrees) {
      text += "  q=" + std::to_string(d.q) + ": ker d1/im d2 = " + d.full_e2_1.to_string(ring) +
              ", successive kernel = " + d.successive_kernel.to_string(ring) + "; coker d1 = " +
              d.full_e2_0.to_string(ring) + ", successive cokernel = " + d.successive_cokernel.to_string(ring) +
              "; E2[2] = " + d.full_e2_2.to_string(ring) + (d.match() ? "" : "  <-- mismatch") + "\n";
    }
  }
  emit(o, two_columns_to_json(report, ring), text);
  return report.ok() ? kOk : kFailed;
}

int cmd_words_reduce(const Options& o) {
  const auto inst = load_instance(o.instance);
  const SectionModel model(inst.lc, critical_values(inst.lc), Coefficients::integers());
  const auto g = build_reeb_graph(model);
  std::size_t base = 0;
  if (!o.base.empty()) {
    base = g.vertex(o.base);
  } else {
    // default: where the first letter starts
    std::istringstream in(o.word);
    std::string first;
    in >> first;
    if (first.size() >= 2 && first != "1") {
      const auto& e = g.edges.at(g.edge(first.substr(0, first.size() - 1)));
      base = first.back() == '-' ? e.target : e.source;
    }
  }
  const auto w = parse_word(g, o.word, base);
  const auto r = reduce_word(g, w);
  json j{{"input", word_to_json(g, w)}, {"reduced", word_to_json(g, r)}};
  emit(o, j, to_string(g, r) + "\nrun length: " + std::to_string(run_length(r)) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology and Reeb graphs of PL functions on simplicial complexes"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Structured output");

  auto instance_arg = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("instance", o.instance, "Instance file (JSON)");
    if (required) opt->required();
  };

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  instance_arg(validate);
  auto* crit = app.add_subcommand("critical-values", "List labels and midpoints");
  instance_arg(crit);
  auto* levelset = app.add_subcommand("levelset", "Extract a level set");
  instance_arg(levelset);
  levelset->add_option("--at", o.at, "Level (rational)")->required();
  levelset->add_flag("--homology", o.homology, "Also report its homology");
  levelset->add_option("--coeff", o.coeff, "z, q or zp:<p>");
  auto* reeb = app.add_subcommand("reeb-graph", "Combinatorial Reeb graph");
  instance_arg(reeb);
  reeb->add_option("--dot", o.dot, "Write DOT to a file ('-' for stdout)");
  reeb->add_flag("--generators", o.generators, "Free generators of pi1");
  reeb->add_option("--base", o.base, "Basepoint vertex (id or label, default 0)");
  auto* e1 = app.add_subcommand("e1", "First page of the critical spectral sequence");
  instance_arg(e1);
  e1->add_option("--out", o.out, "Write the page in the abstract E1 format");
  e1->add_option("--coeff", o.coeff, "z, q or zp:<p>");
  auto* e2 = app.add_subcommand("e2", "Second page and assembled homology");
  instance_arg(e2, false);
  e2->add_option("--from-e1", o.from_e1, "Read an abstract E1 page instead of an instance");
  e2->add_option("--coeff", o.coeff, "z, q or zp:<p>");
  auto* hom = app.add_subcommand("homology", "Homology by spectral sequence or directly");
  instance_arg(hom);
  hom->add_option("--method", o.method, "ss or direct")->check(CLI::IsMember({"ss", "direct"}));
  hom->add_option("--coeff", o.coeff, "z, q or zp:<p>");
  auto* verify = app.add_subcommand("verify", "Brute-force checks");
  instance_arg(verify);
  verify->add_flag("--two-columns", o.two_columns, "All labelled pairs and triples against successive pairs");
  verify->add_option("--coeff", o.coeff, "z, q or zp:<p>");
  auto* words = app.add_subcommand("words", "Words in the Reeb graph");
  words->require_subcommand(1);
  auto* reduce = words->add_subcommand("reduce", "Irreducible normal form");
  instance_arg(reduce);
  reduce->add_option("--word", o.word, "Letters such as \"g0#0+ g1#1-\" (edge label or id)")->required();
  reduce->add_option("--base", o.base, "Basepoint (default: start of the first letter)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*crit) return cmd_critical_values(o);
    if (*levelset) return cmd_levelset(o);
    if (*reeb) return cmd_reeb_graph(o);
    if (*e1) return cmd_e1(o);
    if (*e2) return cmd_e2(o);
    if (*hom) return cmd_homology(o);
    if (*verify) return cmd_verify(o);
    if (*reduce) return cmd_words_reduce(o);
  } catch (const InputError& e) {
    static const char* kinds[] = {"io error", "parse error", "validation error"};
    std::cerr << kinds[static_cast<int>(e.kind())] << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kBadInput;
  } catch (const NotReeb& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  } catch (const SolveFailure& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}

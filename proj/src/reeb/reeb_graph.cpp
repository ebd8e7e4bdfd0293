#include "critspec/reeb/reeb_graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "critspec/complex/union_find.hpp"

namespace critspec {

std::string ReebVertex::label() const { return "c" + std::to_string(level) + "#" + std::to_string(component); }
std::string ReebEdge::label() const { return "g" + std::to_string(gap) + "#" + std::to_string(component); }

namespace {

std::optional<std::size_t> parse_index(const std::string& token) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) return std::nullopt;
  return value;
}

template <class Items>
std::size_t lookup(const Items& items, const std::string& token, const char* what) {
  if (auto id = parse_index(token)) {
    if (*id < items.size()) return *id;
  } else {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].label() == token) return i;
    }
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + token + "'");
}

std::size_t start_of(const ReebEdge& e, int sign) { return sign > 0 ? e.source : e.target; }
std::size_t end_of(const ReebEdge& e, int sign) { return sign > 0 ? e.target : e.source; }

}  // namespace

std::size_t ReebGraph::vertex(const std::string& token) const { return lookup(vertices, token, "vertex"); }
std::size_t ReebGraph::edge(const std::string& token) const { return lookup(edges, token, "edge"); }

ReebGraph build_reeb_graph(const SectionModel& model) {
  ReebGraph g;
  std::vector<std::size_t> first_vertex;
  for (std::size_t i = 0; i < model.labels().size(); ++i) {
    first_vertex.push_back(g.vertices.size());
    const auto& f = model.critical_fiber(i);
    for (std::size_t k = 0; k < f.components.count(); ++k) g.vertices.push_back({i, k, f.level});
  }
  for (std::size_t i = 0; i < model.gap_count(); ++i) {
    const auto down = model.component_endpoints(i, Endpoint::Lower);
    const auto up = model.component_endpoints(i, Endpoint::Upper);
    for (std::size_t k = 0; k < down.size(); ++k) {
      g.edges.push_back({i, k, first_vertex[i] + down[k], first_vertex[i + 1] + up[k]});
    }
  }
  return g;
}

ReebBetti reeb_betti(const ReebGraph& g) {
  UnionFind uf(g.vertices.size());
  for (const auto& e : g.edges) uf.unite(e.source, e.target);
  std::size_t b0 = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) b0 += uf.find(v) == v ? 1 : 0;
  return {b0, g.edges.size() + b0 - g.vertices.size()};
}

std::size_t word_end(const ReebGraph& g, const SignedWord& w) {
  if (w.basepoint >= g.vertices.size()) throw std::invalid_argument("basepoint is not a vertex");
  std::size_t at = w.basepoint;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const auto& l = w.letters[k];
    if (l.edge >= g.edges.size()) throw std::invalid_argument("letter " + std::to_string(k) + ": no such edge");
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter " + std::to_string(k) + ": bad sign");
    const auto& e = g.edges[l.edge];
    if (start_of(e, l.sign) != at) {
      throw std::invalid_argument("letter " + std::to_string(k) + " (" + e.label() + ") does not start at " +
                                  g.vertices[at].label());
    }
    at = end_of(e, l.sign);
  }
  return at;
}

SignedWord reduce_word(const ReebGraph& g, const SignedWord& w) {
  word_end(g, w);
  SignedWord out{w.basepoint, {}};
  for (const auto& l : w.letters) {
    if (!out.letters.empty() && out.letters.back().edge == l.edge && out.letters.back().sign == -l.sign) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

SignedWord inverse(const ReebGraph& g, const SignedWord& w) {
  SignedWord out{word_end(g, w), {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back({it->edge, -it->sign});
  return out;
}

SignedWord concatenate(const ReebGraph& g, const SignedWord& a, const SignedWord& b) {
  if (word_end(g, a) != b.basepoint) throw std::invalid_argument("words are not composable");
  SignedWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

bool is_reduced(const SignedWord& w) {
  for (std::size_t k = 1; k < w.letters.size(); ++k) {
    if (w.letters[k].edge == w.letters[k - 1].edge && w.letters[k].sign == -w.letters[k - 1].sign) return false;
  }
  return true;
}

std::size_t run_length(const SignedWord& w) {
  std::size_t runs = 0;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k == 0 || w.letters[k].sign != w.letters[k - 1].sign) ++runs;
  }
  return runs;
}

std::vector<SignedWord> pi1_generators(const ReebGraph& g, std::size_t basepoint) {
  if (basepoint >= g.vertices.size()) throw std::invalid_argument("basepoint is not a vertex");
  std::vector<std::vector<std::size_t>> incident(g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    incident[g.edges[e].source].push_back(e);
    incident[g.edges[e].target].push_back(e);
  }
  auto other = [&](std::size_t e, std::size_t v) { return g.edges[e].source == v ? g.edges[e].target : g.edges[e].source; };

  // parent_edge[v]: tree edge used to reach v
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_edge(g.vertices.size(), kNone);
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<bool> tree(g.edges.size(), false);
  std::deque<std::size_t> queue{basepoint};
  seen[basepoint] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    auto around = incident[v];
    std::sort(around.begin(), around.end(), [&](std::size_t a, std::size_t b) {
      return std::pair{other(a, v), a} < std::pair{other(b, v), b};
    });
    for (std::size_t e : around) {
      const std::size_t u = other(e, v);
      if (seen[u]) continue;
      seen[u] = true;
      tree[e] = true;
      parent_edge[u] = e;
      queue.push_back(u);
    }
  }

  // Tree path from the basepoint to v.
  auto path_to = [&](std::size_t v) {
    std::vector<Letter> rev;
    while (v != basepoint) {
      const std::size_t e = parent_edge[v];
      rev.push_back({e, g.edges[e].target == v ? +1 : -1});
      v = other(e, v);
    }
    return SignedWord{basepoint, {rev.rbegin(), rev.rend()}};
  };

  std::vector<SignedWord> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (tree[e] || !seen[g.edges[e].source]) continue;
    auto loop = path_to(g.edges[e].source);
    loop.letters.push_back({e, +1});
    loop = concatenate(g, loop, inverse(g, path_to(g.edges[e].target)));
    out.push_back(reduce_word(g, loop));
  }
  return out;
}

std::string to_string(const ReebGraph& g, const SignedWord& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters) {
    out += (out.empty() ? "" : " ") + g.edges.at(l.edge).label() + (l.sign > 0 ? "+" : "-");
  }
  return out;
}

SignedWord parse_word(const ReebGraph& g, const std::string& text, std::size_t basepoint) {
  SignedWord w{basepoint, {}};
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    const char last = token.back();
    if (token.size() < 2 || (last != '+' && last != '-')) {
      throw std::invalid_argument("letter '" + token + "' must end in + or -");
    }
    w.letters.push_back({g.edge(token.substr(0, token.size() - 1)), last == '+' ? +1 : -1});
  }
  word_end(g, w);
  return w;
}

std::string to_dot(const ReebGraph& g) {
  std::ostringstream out;
  out << "graph reeb {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    out << "  v" << v << " [label=\"" << g.vertices[v].label() << "\" value=\"" << to_string(g.vertices[v].value)
        << "\"];\n";
  }
  for (const auto& e : g.edges) out << "  v" << e.source << " -- v" << e.target << " [label=\"" << e.label() << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace critspec

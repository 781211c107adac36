#include "uag/unfolding.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uag {

int FiniteGraph::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  return -1;
}

bool FiniteGraph::has_edge(int u, int v) const {
  if (u == v) return false;
  std::pair<int, int> e{std::min(u, v), std::max(u, v)};
  return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<std::vector<int>> FiniteGraph::adjacency() const {
  std::vector<std::vector<int>> adj(size());
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::vector<int> FiniteGraph::component_ids() const {
  auto adj = adjacency();
  std::vector<int> comp(size(), -1);
  int next_id = 0;
  for (int s = 0; s < size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next_id;
    std::deque<int> work{s};
    while (!work.empty()) {
      int u = work.front();
      work.pop_front();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = next_id;
          work.push_back(v);
        }
    }
    ++next_id;
  }
  return comp;
}

int UnfoldingSpec::loop_constant() const {
  return std::max({prefix.size(), block.size(), 1});
}

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

void check_graph(const FiniteGraph& g, const char* which) {
  for (const auto& name : g.names)
    if (!valid_name(name))
      throw std::invalid_argument(std::string(which) + " vertex name '" +
                                  name + "' is not an identifier");
  for (size_t i = 1; i < g.edges.size(); ++i)
    if (!(g.edges[i - 1] < g.edges[i]))
      throw std::invalid_argument(std::string(which) +
                                  " edges must be sorted and distinct");
  for (auto [u, v] : g.edges)
    if (u < 0 || v <= u || v >= g.size())
      throw std::invalid_argument(std::string(which) + " edge out of range");
}

void check_rows(const std::vector<std::vector<int>>& rows, size_t sources,
                int target_range, const char* which) {
  if (rows.size() != sources)
    throw std::invalid_argument(std::string(which) +
                                " must have one row per source vertex");
  for (const auto& row : rows) {
    for (size_t i = 1; i < row.size(); ++i)
      if (!(row[i - 1] < row[i]))
        throw std::invalid_argument(std::string(which) +
                                    " rows must be sorted and distinct");
    for (int x : row)
      if (x < 0 || x >= target_range)
        throw std::invalid_argument(std::string(which) +
                                    " target out of range");
  }
}

}  // namespace

void UnfoldingSpec::check_valid() const {
  if (block.size() < 1)
    throw std::invalid_argument("block graph needs at least one vertex");
  check_graph(prefix, "prefix");
  check_graph(block, "block");
  std::set<std::string> seen;
  for (const auto& name : prefix.names)
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate vertex name '" + name + "'");
  for (const auto& name : block.names)
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate vertex name '" + name + "'");
  check_rows(eta, prefix.names.size(), block.size(), "eta");
  check_rows(sigma, block.names.size(), block.size(), "sigma");
}

Vertex prefix_vertex(int index) { return {VertexKind::Prefix, index, 0}; }
Vertex block_vertex(int index, int level) {
  return {VertexKind::Block, index, level};
}

std::string format_vertex(const UnfoldingSpec& spec, const Vertex& v) {
  if (v.kind == VertexKind::Prefix) return spec.prefix.names.at(v.index);
  return spec.block.names.at(v.index) + "@" + std::to_string(v.level);
}

Vertex parse_vertex(const UnfoldingSpec& spec, std::string_view text) {
  auto at = text.find('@');
  if (at == std::string_view::npos) {
    int d = spec.prefix.find(text);
    if (d >= 0) return prefix_vertex(d);
    if (spec.block.find(text) >= 0)
      throw std::invalid_argument("block vertex '" + std::string(text) +
                                  "' needs a level: use '" + std::string(text) +
                                  "@<level>'");
    throw std::invalid_argument("unknown vertex '" + std::string(text) + "'");
  }
  std::string_view name = text.substr(0, at);
  std::string_view level_text = text.substr(at + 1);
  int x = spec.block.find(name);
  if (x < 0)
    throw std::invalid_argument("unknown block vertex '" + std::string(name) +
                                "'");
  if (level_text.empty() ||
      !std::all_of(level_text.begin(), level_text.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
      }))
    throw std::invalid_argument("bad level '" + std::string(level_text) + "'");
  long long level = 0;
  for (char c : level_text) {
    level = level * 10 + (c - '0');
    if (level > 1000000000) throw std::invalid_argument("level too large");
  }
  return block_vertex(x, static_cast<int>(level));
}

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct SpecLine {
  int line = 0;
  std::string key;
  int key_column = 0;
  std::vector<Token> items;
};

// Splits into "key:" lines with per-token columns; `#` starts a comment.
std::vector<SpecLine> split_lines(std::string_view text) {
  std::vector<SpecLine> out;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[j])))
        ++j;
      tokens.push_back({std::string(line.substr(i, j - i)),
                        static_cast<int>(i) + 1});
      i = j;
    }
    if (!tokens.empty()) {
      SpecLine sl;
      sl.line = line_no;
      if (tokens[0].text.back() != ':')
        throw ParseError("expected a 'name:' section head, got '" +
                             tokens[0].text + "'",
                         line_no, tokens[0].column);
      sl.key = tokens[0].text.substr(0, tokens[0].text.size() - 1);
      sl.key_column = tokens[0].column;
      sl.items.assign(tokens.begin() + 1, tokens.end());
      out.push_back(std::move(sl));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

UnfoldingSpec parse_spec(std::string_view text) {
  auto lines = split_lines(text);

  const SpecLine* dvert = nullptr;
  const SpecLine* fvert = nullptr;
  const SpecLine* dedges = nullptr;
  const SpecLine* fedges = nullptr;
  std::vector<const SpecLine*> eta_lines, sigma_lines;

  auto claim_once = [](const SpecLine*& slot, const SpecLine& l) {
    if (slot)
      throw ParseError("duplicate '" + l.key + ":' section", l.line,
                       l.key_column);
    slot = &l;
  };
  for (const auto& l : lines) {
    if (l.key == "dvertices")
      claim_once(dvert, l);
    else if (l.key == "fvertices")
      claim_once(fvert, l);
    else if (l.key == "dedges")
      claim_once(dedges, l);
    else if (l.key == "fedges")
      claim_once(fedges, l);
    else if (l.key == "eta")
      eta_lines.push_back(&l);
    else if (l.key == "sigma")
      sigma_lines.push_back(&l);
    else
      throw ParseError("unknown section '" + l.key + ":'", l.line,
                       l.key_column);
  }
  if (!fvert) throw ParseError("missing 'fvertices:' section", 1, 1);

  UnfoldingSpec spec;
  std::set<std::string> used;
  auto read_names = [&](const SpecLine* l, FiniteGraph& g) {
    if (!l) return;
    for (const auto& tok : l->items) {
      if (!valid_name(tok.text))
        throw ParseError("bad vertex name '" + tok.text + "'", l->line,
                         tok.column);
      if (!used.insert(tok.text).second)
        throw ParseError("duplicate vertex name '" + tok.text + "'", l->line,
                         tok.column);
      g.names.push_back(tok.text);
    }
  };
  read_names(dvert, spec.prefix);
  read_names(fvert, spec.block);
  if (spec.block.size() < 1)
    throw ParseError("'fvertices:' needs at least one vertex", fvert->line,
                     fvert->key_column);

  auto lookup = [](const FiniteGraph& g, const Token& tok, int line,
                   const char* side) {
    int id = g.find(tok.text);
    if (id < 0)
      throw ParseError("unknown " + std::string(side) + " vertex '" +
                           tok.text + "'",
                       line, tok.column);
    return id;
  };

  auto read_edges = [&](const SpecLine* l, FiniteGraph& g, const char* side) {
    if (!l) return;
    std::set<std::pair<int, int>> seen;
    for (const auto& tok : l->items) {
      auto dash = tok.text.find('-');
      if (dash == std::string::npos || dash == 0 ||
          dash + 1 == tok.text.size())
        throw ParseError("expected 'a-b' edge, got '" + tok.text + "'",
                         l->line, tok.column);
      Token a{tok.text.substr(0, dash), tok.column};
      Token b{tok.text.substr(dash + 1),
              tok.column + static_cast<int>(dash) + 1};
      int u = lookup(g, a, l->line, side);
      int v = lookup(g, b, l->line, side);
      if (u == v)
        throw ParseError("self edge '" + tok.text + "'", l->line, tok.column);
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
        throw ParseError("duplicate edge '" + tok.text + "'", l->line,
                         tok.column);
    }
    g.edges.assign(seen.begin(), seen.end());
  };
  read_edges(dedges, spec.prefix, "prefix");
  read_edges(fedges, spec.block, "block");

  auto read_map = [&](const std::vector<const SpecLine*>& map_lines,
                      const FiniteGraph& sources,
                      std::vector<std::vector<int>>& rows, const char* side) {
    rows.assign(sources.size(), {});
    std::set<int> claimed;
    for (const SpecLine* l : map_lines) {
      if (l->items.size() < 2 || l->items[1].text != "->")
        throw ParseError("expected '" + l->key + ": source -> targets'",
                         l->line, l->key_column);
      int src = lookup(sources, l->items[0], l->line, side);
      if (!claimed.insert(src).second)
        throw ParseError("duplicate '" + l->key + ":' source '" +
                             l->items[0].text + "'",
                         l->line, l->items[0].column);
      std::set<int> targets;
      for (size_t i = 2; i < l->items.size(); ++i) {
        int t = lookup(spec.block, l->items[i], l->line, "block");
        if (!targets.insert(t).second)
          throw ParseError("duplicate target '" + l->items[i].text + "'",
                           l->line, l->items[i].column);
      }
      rows[src].assign(targets.begin(), targets.end());
    }
  };
  read_map(eta_lines, spec.prefix, spec.eta, "prefix");
  read_map(sigma_lines, spec.block, spec.sigma, "block");

  spec.check_valid();
  return spec;
}

std::string serialize_spec(const UnfoldingSpec& spec) {
  spec.check_valid();
  std::ostringstream out;
  auto names_line = [&](const char* key, const FiniteGraph& g) {
    if (g.size() == 0) return;
    out << key << ":";
    for (const auto& name : g.names) out << " " << name;
    out << "\n";
  };
  auto edges_line = [&](const char* key, const FiniteGraph& g) {
    if (g.edges.empty()) return;
    out << key << ":";
    for (auto [u, v] : g.edges) out << " " << g.names[u] << "-" << g.names[v];
    out << "\n";
  };
  auto map_lines = [&](const char* key, const FiniteGraph& sources,
                       const std::vector<std::vector<int>>& rows) {
    for (int s = 0; s < sources.size(); ++s) {
      if (rows[s].empty()) continue;
      out << key << ": " << sources.names[s] << " ->";
      for (int t : rows[s]) out << " " << spec.block.names[t];
      out << "\n";
    }
  };
  names_line("dvertices", spec.prefix);
  names_line("fvertices", spec.block);
  edges_line("dedges", spec.prefix);
  edges_line("fedges", spec.block);
  map_lines("eta", spec.prefix, spec.eta);
  map_lines("sigma", spec.block, spec.sigma);
  return out.str();
}

int Truncation::index_of(const Vertex& v) const {
  if (v.kind == VertexKind::Prefix) {
    if (v.index < 0 || v.index >= prefix_size || v.level != 0) return -1;
    return v.index;
  }
  if (v.index < 0 || v.index >= block_size || v.level < 0 || v.level >= levels)
    return -1;
  return prefix_size + v.level * block_size + v.index;
}

Vertex Truncation::vertex_at(int index) const {
  if (index < prefix_size) return prefix_vertex(index);
  int t = index - prefix_size;
  return block_vertex(t % block_size, t / block_size);
}

Truncation truncate(const UnfoldingSpec& spec, int levels) {
  spec.check_valid();
  if (levels < 0) throw std::invalid_argument("levels must be nonnegative");
  Truncation t;
  t.prefix_size = spec.prefix_size();
  t.block_size = spec.block_size();
  t.levels = levels;
  t.adj.assign(t.size(), {});
  auto link = [&](int a, int b) {
    t.adj[a].push_back(b);
    t.adj[b].push_back(a);
  };
  for (auto [u, v] : spec.prefix.edges) link(u, v);
  if (levels >= 1)
    for (int d = 0; d < t.prefix_size; ++d)
      for (int x : spec.eta[d]) link(d, t.prefix_size + x);
  for (int l = 0; l < levels; ++l) {
    int base = t.prefix_size + l * t.block_size;
    for (auto [u, v] : spec.block.edges) link(base + u, base + v);
    if (l + 1 < levels)
      for (int u = 0; u < t.block_size; ++u)
        for (int v : spec.sigma[u])
          link(base + u, base + t.block_size + v);
  }
  for (auto& row : t.adj) std::sort(row.begin(), row.end());
  return t;
}

long long encode_vertex(const Vertex& v, int modulus, Encoding enc) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  if (v.kind == VertexKind::Prefix) {
    if (enc == Encoding::PureSigma)
      throw std::invalid_argument(
          "PureSigma encoding has no prefix vertices");
    if (v.index < 0 || v.index >= modulus)
      throw std::invalid_argument("prefix index out of range");
    return v.index;
  }
  if (v.index < 0 || v.index >= modulus || v.level < 0)
    throw std::invalid_argument("block vertex out of range");
  long long cell = static_cast<long long>(v.level) * modulus + v.index;
  return enc == Encoding::PureSigma ? cell : modulus + cell;
}

std::optional<Vertex> decode_vertex(long long value, int prefix_size,
                                    int block_size, int modulus, Encoding enc) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  if (value < 0) return std::nullopt;
  if (enc == Encoding::WithPrefix) {
    if (value < prefix_size) return prefix_vertex(static_cast<int>(value));
    if (value < modulus) return std::nullopt;
    value -= modulus;
  }
  int x = static_cast<int>(value % modulus);
  long long level = value / modulus;
  if (x >= block_size) return std::nullopt;
  return block_vertex(x, static_cast<int>(level));
}

UnfoldingSpec extract_spec(const OneLoopStandardAutomaton& a) {
  a.check_valid();
  int p = a.loop_constant;
  UnfoldingSpec spec;
  for (int i = 0; i < p; ++i) {
    spec.prefix.names.push_back("d" + std::to_string(i));
    spec.block.names.push_back("f" + std::to_string(i));
  }
  spec.eta.assign(p, {});
  spec.sigma.assign(p, {});
  std::set<std::pair<int, int>> de, fe;
  for (auto [i, d] : a.tail_finals) {
    if (i + d < p)
      de.insert({i, i + d});
    else
      spec.eta[i].push_back(i + d - p);
  }
  for (auto [v, d] : a.loop_finals) {
    if (v + d < p)
      fe.insert({v, v + d});
    else
      spec.sigma[v].push_back(v + d - p);
  }
  spec.prefix.edges.assign(de.begin(), de.end());
  spec.block.edges.assign(fe.begin(), fe.end());
  for (auto& row : spec.eta) std::sort(row.begin(), row.end());
  for (auto& row : spec.sigma) std::sort(row.begin(), row.end());
  spec.check_valid();
  return spec;
}

OneLoopStandardAutomaton synthesize_automaton(const UnfoldingSpec& spec) {
  spec.check_valid();
  int p = spec.loop_constant();
  OneLoopStandardAutomaton a;
  a.loop_constant = p;
  for (auto [i, j] : spec.prefix.edges) a.tail_finals.insert({i, j - i});
  for (int i = 0; i < spec.prefix_size(); ++i)
    for (int x : spec.eta[i]) a.tail_finals.insert({i, p + x - i});
  for (auto [u, v] : spec.block.edges) a.loop_finals.insert({u, v - u});
  for (int u = 0; u < spec.block_size(); ++u)
    for (int x : spec.sigma[u]) a.loop_finals.insert({u, p - u + x});
  a.check_valid();
  return a;
}

namespace {

void grow(FiniteGraph& g, std::set<std::string>& used, int target,
          const char* stem) {
  int candidate = g.size();
  while (g.size() < target) {
    std::string name = stem + std::to_string(candidate++);
    if (!used.insert(name).second) continue;
    g.names.push_back(std::move(name));
  }
}

}  // namespace

UnfoldingSpec pad_spec(const UnfoldingSpec& spec, int prefix_size,
                       int block_size) {
  spec.check_valid();
  if (prefix_size < spec.prefix_size() || block_size < spec.block_size())
    throw std::invalid_argument("pad_spec cannot shrink");
  UnfoldingSpec out = spec;
  std::set<std::string> used(out.prefix.names.begin(), out.prefix.names.end());
  used.insert(out.block.names.begin(), out.block.names.end());
  grow(out.prefix, used, prefix_size, "d");
  grow(out.block, used, block_size, "f");
  out.eta.resize(prefix_size);
  out.sigma.resize(block_size);
  out.check_valid();
  return out;
}

bool equal_structure(const UnfoldingSpec& a, const UnfoldingSpec& b) {
  return a.prefix.size() == b.prefix.size() &&
         a.block.size() == b.block.size() &&
         a.prefix.edges == b.prefix.edges && a.block.edges == b.block.edges &&
         a.eta == b.eta && a.sigma == b.sigma;
}

}  // namespace uag

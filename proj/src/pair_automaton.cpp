#include "uag/pair_automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace uag {

const char* symbol_token(PairSymbol s) {
  switch (s) {
    case PairSymbol::Pair:
      return "11";
    case PairSymbol::Left:
      return "1_";
    case PairSymbol::Right:
      return "_1";
  }
  return "?";
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(message + " (line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ")"),
      line(line),
      column(column) {}

bool UnaryPairAutomaton::accepts_pair(long long n, long long m) const {
  if (n < 0 || m < 0) return false;
  long long both = std::min(n, m);
  PairSymbol rest = n > m ? PairSymbol::Left : PairSymbol::Right;
  long long tail = n > m ? n - m : m - n;
  int q = initial;
  for (long long i = 0; i < both && q >= 0; ++i) q = next(q, PairSymbol::Pair);
  for (long long i = 0; i < tail && q >= 0; ++i) q = next(q, rest);
  return q >= 0 && accepting[q];
}

void UnaryPairAutomaton::check_valid() const {
  int n = num_states();
  if (n == 0 || initial < 0 || initial >= n)
    throw std::invalid_argument("automaton: bad initial state");
  if (static_cast<int>(delta.size()) != n ||
      static_cast<int>(accepting.size()) != n)
    throw std::invalid_argument("automaton: inconsistent table sizes");
  for (int q = 0; q < n; ++q)
    for (int s = 0; s < kNumSymbols; ++s) {
      int t = delta[q][s];
      if (t < -1 || t >= n)
        throw std::invalid_argument("automaton: dangling transition target");
    }
  // Phase discipline: Left successors may only move on Left, Right
  // successors only on Right.
  for (int q = 0; q < n; ++q) {
    int l = next(q, PairSymbol::Left);
    if (l >= 0 && (next(l, PairSymbol::Pair) >= 0 || next(l, PairSymbol::Right) >= 0))
      throw std::invalid_argument("automaton: phase violation after Left");
    int r = next(q, PairSymbol::Right);
    if (r >= 0 && (next(r, PairSymbol::Pair) >= 0 || next(r, PairSymbol::Left) >= 0))
      throw std::invalid_argument("automaton: phase violation after Right");
  }
  // Reachability.
  std::vector<bool> seen(n, false);
  std::deque<int> work{initial};
  seen[initial] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int s = 0; s < kNumSymbols; ++s) {
      int t = delta[q][s];
      if (t >= 0 && !seen[t]) {
        seen[t] = true;
        work.push_back(t);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("automaton: unreachable state");
}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct SectionLine {
  int line;
  std::string key;
  int key_column;
  std::vector<Token> items;
};

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

std::vector<SectionLine> split_sections(std::string_view text) {
  std::vector<SectionLine> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    // Tokenize.
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[j])))
        ++j;
      toks.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
      i = j;
    }
    if (!toks.empty()) {
      SectionLine sl;
      sl.line = line_no;
      std::string head = toks[0].text;
      if (head.size() < 2 || head.back() != ':')
        throw ParseError("expected a 'name:' section keyword", line_no,
                         toks[0].column);
      sl.key = head.substr(0, head.size() - 1);
      sl.key_column = toks[0].column;
      sl.items.assign(toks.begin() + 1, toks.end());
      out.push_back(std::move(sl));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

}  // namespace

UnaryPairAutomaton parse_automaton(std::string_view text) {
  auto sections = split_sections(text);

  const SectionLine* states_line = nullptr;
  const SectionLine* initial_line = nullptr;
  const SectionLine* final_line = nullptr;
  std::vector<const SectionLine*> trans_lines;
  for (const auto& s : sections) {
    if (s.key == "states") {
      if (states_line)
        throw ParseError("duplicate 'states:' section", s.line, s.key_column);
      states_line = &s;
    } else if (s.key == "initial") {
      if (initial_line)
        throw ParseError("duplicate 'initial:' section", s.line, s.key_column);
      initial_line = &s;
    } else if (s.key == "final") {
      if (final_line)
        throw ParseError("duplicate 'final:' section", s.line, s.key_column);
      final_line = &s;
    } else if (s.key == "trans") {
      trans_lines.push_back(&s);
    } else {
      throw ParseError("unknown section '" + s.key + "'", s.line, s.key_column);
    }
  }
  if (!states_line) throw ParseError("missing 'states:' section", 1, 1);
  if (!initial_line) throw ParseError("missing 'initial:' section", 1, 1);
  if (!final_line) throw ParseError("missing 'final:' section", 1, 1);
  if (states_line->items.empty())
    throw ParseError("'states:' needs at least one state", states_line->line,
                     states_line->key_column);
  if (initial_line->items.size() != 1)
    throw ParseError("'initial:' needs exactly one state", initial_line->line,
                     initial_line->key_column);

  std::map<std::string, int> id_of;
  std::vector<std::string> names;
  for (const auto& tok : states_line->items) {
    if (!valid_identifier(tok.text))
      throw ParseError("invalid state name '" + tok.text + "'",
                       states_line->line, tok.column);
    if (!id_of.emplace(tok.text, static_cast<int>(names.size())).second)
      throw ParseError("duplicate state name '" + tok.text + "'",
                       states_line->line, tok.column);
    names.push_back(tok.text);
  }
  auto lookup = [&](const Token& tok, int line) {
    auto it = id_of.find(tok.text);
    if (it == id_of.end())
      throw ParseError("unknown state name '" + tok.text + "'", line,
                       tok.column);
    return it->second;
  };

  int n = static_cast<int>(names.size());
  UnaryPairAutomaton a;
  a.names = names;
  a.delta.assign(n, {-1, -1, -1});
  a.accepting.assign(n, false);
  a.initial = lookup(initial_line->items[0], initial_line->line);
  for (const auto& tok : final_line->items)
    a.accepting[lookup(tok, final_line->line)] = true;

  // (line, column) of each transition, for error reporting after pruning.
  std::vector<std::array<std::pair<int, int>, kNumSymbols>> where(n);
  for (auto& row : where) row.fill({0, 0});
  for (const SectionLine* t : trans_lines) {
    if (t->items.size() != 3)
      throw ParseError("'trans:' needs 'src symbol dst'", t->line,
                       t->key_column);
    int src = lookup(t->items[0], t->line);
    int sym = -1;
    for (int s = 0; s < kNumSymbols; ++s)
      if (t->items[1].text == symbol_token(static_cast<PairSymbol>(s))) sym = s;
    if (sym < 0)
      throw ParseError("unknown symbol '" + t->items[1].text +
                           "' (expected 11, 1_ or _1)",
                       t->line, t->items[1].column);
    int dst = lookup(t->items[2], t->line);
    if (a.delta[src][sym] != -1)
      throw ParseError("duplicate transition (" + a.names[src] + ", " +
                           t->items[1].text + ")",
                       t->line, t->items[1].column);
    a.delta[src][sym] = dst;
    where[src][sym] = {t->line, t->items[1].column};
  }

  // Prune unreachable states, keeping the original declaration order.
  std::vector<bool> reach(n, false);
  std::deque<int> work{a.initial};
  reach[a.initial] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int s = 0; s < kNumSymbols; ++s) {
      int t = a.delta[q][s];
      if (t >= 0 && !reach[t]) {
        reach[t] = true;
        work.push_back(t);
      }
    }
  }
  std::vector<int> remap(n, -1);
  UnaryPairAutomaton b;
  for (int q = 0; q < n; ++q) {
    if (!reach[q]) continue;
    remap[q] = static_cast<int>(b.names.size());
    b.names.push_back(a.names[q]);
    b.accepting.push_back(a.accepting[q]);
  }
  b.initial = remap[a.initial];
  for (int q = 0; q < n; ++q) {
    if (!reach[q]) continue;
    std::array<int, kNumSymbols> row{-1, -1, -1};
    for (int s = 0; s < kNumSymbols; ++s)
      if (a.delta[q][s] >= 0) row[s] = remap[a.delta[q][s]];
    b.delta.push_back(row);
  }

  // Phase discipline on the pruned automaton.
  for (int q = 0; q < n; ++q) {
    if (!reach[q]) continue;
    for (PairSymbol s : {PairSymbol::Left, PairSymbol::Right}) {
      int dst = a.delta[q][static_cast<int>(s)];
      if (dst < 0) continue;
      bool bad = s == PairSymbol::Left
                     ? (a.delta[dst][0] >= 0 || a.delta[dst][2] >= 0)
                     : (a.delta[dst][0] >= 0 || a.delta[dst][1] >= 0);
      if (bad) {
        auto [ln, col] = where[q][static_cast<int>(s)];
        throw ParseError("phase violation: state '" + a.names[dst] +
                             "' mixes symbols after " +
                             symbol_token(s),
                         ln, col);
      }
    }
  }
  return b;
}

namespace {

std::vector<int> bfs_order(const UnaryPairAutomaton& a) {
  std::vector<int> order;
  std::vector<bool> seen(a.num_states(), false);
  std::deque<int> work{a.initial};
  seen[a.initial] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    order.push_back(q);
    for (int s = 0; s < kNumSymbols; ++s) {
      int t = a.delta[q][s];
      if (t >= 0 && !seen[t]) {
        seen[t] = true;
        work.push_back(t);
      }
    }
  }
  return order;
}

}  // namespace

std::string serialize_automaton(const UnaryPairAutomaton& a) {
  std::vector<int> order = bfs_order(a);
  std::ostringstream out;
  out << "states:";
  for (int q : order) out << ' ' << a.names[q];
  out << "\ninitial: " << a.names[a.initial] << "\nfinal:";
  for (int q : order)
    if (a.accepting[q]) out << ' ' << a.names[q];
  out << '\n';
  for (int q : order)
    for (int s = 0; s < kNumSymbols; ++s) {
      int t = a.delta[q][s];
      if (t >= 0)
        out << "trans: " << a.names[q] << ' '
            << symbol_token(static_cast<PairSymbol>(s)) << ' ' << a.names[t]
            << '\n';
    }
  return out.str();
}

bool dfa_equivalent(const UnaryPairAutomaton& a, const UnaryPairAutomaton& b) {
  // Product walk; -1 encodes the (rejecting) dead state.
  auto acc_a = [&](int q) { return q >= 0 && a.accepting[q]; };
  auto acc_b = [&](int q) { return q >= 0 && b.accepting[q]; };
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> work;
  work.emplace_back(a.initial, b.initial);
  seen.insert({a.initial, b.initial});
  while (!work.empty()) {
    auto [qa, qb] = work.front();
    work.pop_front();
    if (acc_a(qa) != acc_b(qb)) return false;
    for (int s = 0; s < kNumSymbols; ++s) {
      int ta = qa >= 0 ? a.delta[qa][s] : -1;
      int tb = qb >= 0 ? b.delta[qb][s] : -1;
      if (ta < 0 && tb < 0) continue;
      if (seen.insert({ta, tb}).second) work.emplace_back(ta, tb);
    }
  }
  return true;
}

bool is_one_loop(const UnaryPairAutomaton& a) {
  int n = a.num_states();
  int cycles = 0;
  int pair_cycles = 0;
  for (int s = 0; s < kNumSymbols; ++s) {
    // delta restricted to one symbol is a partial functional graph, so each
    // cycle is found exactly once by walking unvisited orbits.
    std::vector<int> visited(n, 0);  // 0 = no, 1 = current walk, 2 = done
    for (int start = 0; start < n; ++start) {
      if (visited[start]) continue;
      std::vector<int> path;
      int cur = start;
      while (cur >= 0 && visited[cur] == 0) {
        visited[cur] = 1;
        path.push_back(cur);
        cur = a.delta[cur][s];
      }
      if (cur >= 0 && visited[cur] == 1) {
        ++cycles;
        if (s == static_cast<int>(PairSymbol::Pair)) ++pair_cycles;
      }
      for (int q : path) visited[q] = 2;
    }
  }
  return cycles == 1 && pair_cycles == 1;
}

}  // namespace uag

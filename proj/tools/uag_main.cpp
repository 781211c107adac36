#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uag/connectivity.hpp"
#include "uag/oracle.hpp"
#include "uag/reachability.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool status = false;
  bool quiet = false;
  bool timing = false;
};

class Stopwatch {
 public:
  double elapsed_ms() const {
    auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::invalid_argument("write to " + path + " failed");
}

// ".upa" files hold pair automata: standardize and read off the unfolding
// (with canonical d0../f0.. names).  Everything else is parsed as an
// unfolding description.
uag::UnfoldingSpec load_spec(const std::string& path) {
  std::string text = read_file(path);
  if (path.ends_with(".upa")) {
    auto automaton = uag::parse_automaton(text);
    return uag::extract_spec(uag::standardize_one_loop(automaton));
  }
  return uag::parse_spec(text);
}

int finish_decision(const Options& opt, ordered_json fields, bool answer,
                    const Stopwatch& clock) {
  double ms = clock.elapsed_ms();
  if (opt.json) {
    fields["answer"] = answer;
    if (opt.timing) fields["elapsed_ms"] = ms;
    if (!opt.quiet) std::cout << fields.dump(2) << '\n';
  } else {
    if (!opt.quiet) std::cout << (answer ? "YES" : "NO") << '\n';
    if (opt.timing) std::cerr << "elapsed_ms=" << ms << '\n';
  }
  if (opt.status) return answer ? 0 : 1;
  return 0;
}

int finish_text(const Options& opt, ordered_json fields,
                const std::string& text, const std::string& out_path,
                const Stopwatch& clock) {
  double ms = clock.elapsed_ms();
  if (!out_path.empty()) write_file(out_path, text);
  if (opt.json) {
    if (out_path.empty())
      fields["output"] = text;
    else
      fields["output_file"] = out_path;
    if (opt.timing) fields["elapsed_ms"] = ms;
    if (!opt.quiet) std::cout << fields.dump(2) << '\n';
  } else {
    if (out_path.empty() && !opt.quiet) std::cout << text;
    if (opt.timing) std::cerr << "elapsed_ms=" << ms << '\n';
  }
  return 0;
}

struct CheckParams {
  int trials = 10;
  std::uint64_t seed = 1;
  int max_f = 4;
  int max_d = 2;
  double density = 0.3;
};

// Cross-checks the decision procedures against the truncation oracle on
// random unfoldings.  Returns 0 when every answer agrees.
int run_check(const Options& opt, const CheckParams& params,
              const Stopwatch& clock) {
  long long infinity_queries = 0;
  long long reach_queries = 0;
  int graphs = 0;
  std::string mismatch;
  for (int t = 0; t < params.trials && mismatch.empty(); ++t) {
    std::uint64_t seed = params.seed + static_cast<std::uint64_t>(t);
    auto spec =
        uag::generate_spec(seed, params.max_f, params.max_d, params.density);
    uag::AnalysisContext ctx(spec);
    int top = 2 * spec.block_size();
    uag::BatchOracle oracle(spec, top);

    if (ctx.has_infinite_component() != oracle.has_infinite()) {
      mismatch = "seed " + std::to_string(seed) + ": infinite-component";
      break;
    }
    std::vector<uag::Vertex> verts;
    for (int d = 0; d < spec.prefix_size(); ++d)
      verts.push_back(uag::prefix_vertex(d));
    for (int lvl = 0; lvl <= top; ++lvl)
      for (int x = 0; x < spec.block_size(); ++x)
        verts.push_back(uag::block_vertex(x, lvl));
    for (const auto& v : verts) {
      ++infinity_queries;
      if (ctx.is_in_infinite_component(v) != oracle.infinite(v)) {
        mismatch = "seed " + std::to_string(seed) + ": infinity of " +
                   uag::format_vertex(spec, v);
        break;
      }
    }
    bool all_pairs = true;
    for (std::size_t i = 0; i < verts.size() && mismatch.empty(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        ++reach_queries;
        bool o = oracle.reachable(verts[i], verts[j]);
        all_pairs = all_pairs && o;
        if (uag::reachable(ctx, verts[i], verts[j]) != o) {
          mismatch = "seed " + std::to_string(seed) + ": reach " +
                     uag::format_vertex(spec, verts[i]) + " -> " +
                     uag::format_vertex(spec, verts[j]);
          break;
        }
      }
    if (mismatch.empty() &&
        uag::is_connected(ctx) != (oracle.has_infinite() && all_pairs))
      mismatch = "seed " + std::to_string(seed) + ": connectivity";
    ++graphs;
  }

  double ms = clock.elapsed_ms();
  if (!mismatch.empty()) std::cerr << "mismatch: " << mismatch << '\n';
  if (opt.json) {
    ordered_json fields;
    fields["command"] = "check";
    fields["graphs"] = graphs;
    fields["infinity_queries"] = infinity_queries;
    fields["reach_queries"] = reach_queries;
    fields["mismatches"] = mismatch.empty() ? 0 : 1;
    if (opt.timing) fields["elapsed_ms"] = ms;
    if (!opt.quiet) std::cout << fields.dump(2) << '\n';
  } else {
    if (!opt.quiet)
      std::cout << "checked " << graphs << " graphs: " << infinity_queries
                << " infinity queries, " << reach_queries
                << " reachability queries"
                << (mismatch.empty() ? " - all agree" : " - MISMATCH") << '\n';
    if (opt.timing) std::cerr << "elapsed_ms=" << ms << '\n';
  }
  return mismatch.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for infinite graphs presented by"
               " two-tape unary automata"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_flag("--status", opt.status,
               "answer via exit code: 0 for YES, 1 for NO");
  app.add_flag("--quiet", opt.quiet, "suppress normal output");
  app.add_flag("--timing", opt.timing, "report elapsed wall time");

  std::string input;
  std::string out_path;
  std::string from_text;
  std::string to_text;
  std::string vertex_text;
  CheckParams check_params;

  auto* extract = app.add_subcommand(
      "extract", "read a pair automaton, emit the unfolding it presents");
  extract->add_option("input", input, "automaton file (.upa)")->required();
  extract->add_option("-o,--output", out_path, "write here instead of stdout");

  auto* synthesize = app.add_subcommand(
      "synthesize", "read an unfolding, emit a pair automaton presenting it");
  synthesize->add_option("input", input, "unfolding file (.ugs)")->required();
  synthesize->add_option("-o,--output", out_path,
                         "write here instead of stdout");

  auto* standardize = app.add_subcommand(
      "standardize", "rewrite a one-loop pair automaton in standard form");
  standardize->add_option("input", input, "automaton file (.upa)")->required();
  standardize->add_option("-o,--output", out_path,
                          "write here instead of stdout");

  auto* infinite = app.add_subcommand(
      "infinite-component", "does the graph have an infinite component?");
  infinite->add_option("input", input, "graph file (.ugs or .upa)")
      ->required();

  auto* infinity = app.add_subcommand(
      "infinity-test", "is the vertex in an infinite component?");
  infinity->add_option("input", input, "graph file (.ugs or .upa)")
      ->required();
  infinity
      ->add_option("--vertex", vertex_text,
                   "vertex: name@level for block copies, bare name for"
                   " prefix vertices")
      ->required();

  auto* reach = app.add_subcommand(
      "reach", "are the two vertices in the same component?");
  reach->add_option("input", input, "graph file (.ugs or .upa)")->required();
  reach->add_option("--from", from_text, "first vertex")->required();
  reach->add_option("--to", to_text, "second vertex")->required();

  auto* connected =
      app.add_subcommand("connected", "is the graph connected?");
  connected->add_option("input", input, "graph file (.ugs or .upa)")
      ->required();

  auto* build_reach = app.add_subcommand(
      "build-reach-automaton",
      "emit an automaton deciding same-component for prefix-free graphs");
  build_reach->add_option("input", input, "graph file (.ugs or .upa)")
      ->required();
  build_reach->add_option("-o,--output", out_path,
                          "write here instead of stdout");

  auto* check = app.add_subcommand(
      "check", "cross-check the procedures against brute force on random"
               " graphs");
  check->add_option("--trials", check_params.trials, "number of graphs")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", check_params.seed, "base seed");
  check->add_option("--max-f", check_params.max_f, "largest block size")
      ->check(CLI::PositiveNumber);
  check->add_option("--max-d", check_params.max_d, "largest prefix size")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--density", check_params.density, "edge probability")
      ->check(CLI::Range(0.0, 1.0));

  auto* oracle = app.add_subcommand(
      "oracle", "answer by brute force on a provably tall truncation");
  oracle->require_subcommand(1);
  auto* oracle_reach = oracle->add_subcommand(
      "reach", "are the two vertices in the same component?");
  oracle_reach->add_option("input", input, "graph file (.ugs or .upa)")
      ->required();
  oracle_reach->add_option("--from", from_text, "first vertex")->required();
  oracle_reach->add_option("--to", to_text, "second vertex")->required();
  auto* oracle_infinite = oracle->add_subcommand(
      "infinite", "is the vertex (or any vertex) in an infinite component?");
  oracle_infinite->add_option("input", input, "graph file (.ugs or .upa)")
      ->required();
  oracle_infinite->add_option("--vertex", vertex_text,
                              "vertex to test; omit to test the whole graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 2;
  }

  try {
    Stopwatch clock;
    if (extract->parsed()) {
      auto spec = load_spec(input);  // accepts .ugs too: identity modulo names
      ordered_json fields{{"command", "extract"}};
      return finish_text(opt, fields, uag::serialize_spec(spec), out_path,
                         clock);
    }
    if (synthesize->parsed()) {
      auto spec = uag::parse_spec(read_file(input));
      auto automaton = uag::to_pair_automaton(uag::synthesize_automaton(spec));
      ordered_json fields{{"command", "synthesize"}};
      return finish_text(opt, fields, uag::serialize_automaton(automaton),
                         out_path, clock);
    }
    if (standardize->parsed()) {
      auto automaton = uag::parse_automaton(read_file(input));
      auto standard = uag::to_pair_automaton(
          uag::standardize_one_loop(automaton));
      ordered_json fields{{"command", "standardize"}};
      return finish_text(opt, fields, uag::serialize_automaton(standard),
                         out_path, clock);
    }
    if (infinite->parsed()) {
      uag::AnalysisContext ctx(load_spec(input));
      ordered_json fields{{"command", "infinite-component"}};
      return finish_decision(opt, fields, ctx.has_infinite_component(), clock);
    }
    if (infinity->parsed()) {
      uag::AnalysisContext ctx(load_spec(input));
      auto v = uag::parse_vertex(ctx.spec(), vertex_text);
      ordered_json fields{{"command", "infinity-test"},
                          {"vertex", vertex_text}};
      return finish_decision(opt, fields, ctx.is_in_infinite_component(v),
                             clock);
    }
    if (reach->parsed()) {
      uag::AnalysisContext ctx(load_spec(input));
      auto u = uag::parse_vertex(ctx.spec(), from_text);
      auto v = uag::parse_vertex(ctx.spec(), to_text);
      ordered_json fields{{"command", "reach"},
                          {"from", from_text},
                          {"to", to_text}};
      return finish_decision(opt, fields, uag::reachable(ctx, u, v), clock);
    }
    if (connected->parsed()) {
      uag::AnalysisContext ctx(load_spec(input));
      ordered_json fields{{"command", "connected"}};
      return finish_decision(opt, fields, uag::is_connected(ctx), clock);
    }
    if (build_reach->parsed()) {
      uag::AnalysisContext ctx(load_spec(input));
      auto automaton = uag::build_reach_automaton(ctx);
      ordered_json fields{{"command", "build-reach-automaton"},
                          {"states", automaton.num_states()}};
      return finish_text(opt, fields, uag::serialize_automaton(automaton),
                         out_path, clock);
    }
    if (check->parsed()) return run_check(opt, check_params, clock);
    if (oracle_reach->parsed()) {
      auto spec = load_spec(input);
      auto u = uag::parse_vertex(spec, from_text);
      auto v = uag::parse_vertex(spec, to_text);
      ordered_json fields{{"command", "oracle reach"},
                          {"from", from_text},
                          {"to", to_text}};
      return finish_decision(opt, fields, uag::oracle_reachable(spec, u, v),
                             clock);
    }
    if (oracle_infinite->parsed()) {
      auto spec = load_spec(input);
      ordered_json fields{{"command", "oracle infinite"}};
      bool answer;
      if (vertex_text.empty()) {
        answer = uag::oracle_has_infinite(spec);
      } else {
        fields["vertex"] = vertex_text;
        answer = uag::oracle_infinite(spec, uag::parse_vertex(spec,
                                                              vertex_text));
      }
      return finish_decision(opt, fields, answer, clock);
    }
  } catch (const uag::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

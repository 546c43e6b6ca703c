// Command-line front end: equivalence, normalization, rendering and
// conversion of string diagrams in the `sd 1` text format.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdnorm/oracle.hpp"
#include "sdnorm/sdnorm.hpp"

namespace {

using namespace sdnorm;

constexpr int kEquivalent = 0;
constexpr int kInequivalent = 1;
constexpr int kInputError = 2;
constexpr int kUndecided = 3;

// Input problems the user can fix; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

Diagram load_diagram(const std::string& path) {
  try {
    return parse_diagram(read_input(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string strip_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

Diagram load_expression(const std::string& text, const Signature& sig) {
  std::string src = text == "-" ? strip_newline(read_input("-")) : text;
  return expression_to_diagram(*parse_expr(src, sig), sig);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SDNORM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SDNORM_SEED must be a non-negative integer");
    }
  }
  return 0;
}

std::vector<Step> reversed(const std::vector<Step>& steps) {
  std::vector<Step> out;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    out.push_back({it->height, opposite(it->dir)});
  return out;
}

// --- equiv -----------------------------------------------------------------

struct EquivOptions {
  std::string a, b;
  std::string sig_path;
  std::string method = "auto";
  bool witness = false;
  bool dump_tree = false;
  bool dump_map = false;
  std::size_t node_cap = kDefaultNodeCap;
};

int run_equiv(const EquivOptions& o) {
  Diagram d1, d2;
  if (!o.sig_path.empty()) {
    Signature sig = parse_signature(read_input(o.sig_path));
    d1 = load_expression(o.a, sig);
    d2 = load_expression(o.b, sig);
  } else {
    d1 = load_diagram(o.a);
    d2 = load_diagram(o.b);
  }

  std::string method = o.method;
  bool maps_ok = closure_is_connected(d1) && closure_is_connected(d2);
  if (method == "auto") method = maps_ok ? "map" : "tree";
  if (method == "map" && !maps_ok)
    throw UsageError("the map method needs diagrams whose closure is connected; use --method tree");
  bool naive_ok = is_boundary_connected(d1) && is_boundary_connected(d2);
  if (method == "naive" && !naive_ok)
    throw UsageError("the naive method needs boundary-connected diagrams; use --method tree");

  if (o.dump_tree) {
    for (const Diagram* d : {&d1, &d2}) {
      FaceNode t = build_structural_tree(*d);
      std::cout << dump_tree(t) << "code " << to_hex(canonical_code(t)) << "\n";
    }
  }
  if (o.dump_map) {
    if (!maps_ok) throw UsageError("--dump-map needs diagrams whose closure is connected");
    for (const Diagram* d : {&d1, &d2}) {
      DirectedMap m = gamma(*d);
      std::cout << dump_map(m) << "code " << to_hex(canonical_map_code(m)) << "\n";
    }
  }

  bool same_boundary = d1.sources == d2.sources && target_count(d1) == target_count(d2);
  std::optional<NormalForm> n1, n2;
  bool equivalent = false;
  if (!same_boundary) {
    equivalent = false;
  } else if (method == "tree") {
    equivalent = decide_equiv(d1, d2);
  } else if (method == "map") {
    equivalent = decide_equiv_connected(d1, d2);
  } else {
    n1 = normalize_naive(d1);
    n2 = normalize_naive(d2);
    equivalent = n1->diagram == n2->diagram;
  }
  // With --witness the output is a trace file, so the verdict becomes a comment.
  std::cout << (o.witness ? "# " : "") << (equivalent ? "equivalent" : "not equivalent") << "\n";

  if (o.witness && equivalent) {
    if (naive_ok) {
      if (!n1) n1 = normalize_naive(d1);
      if (!n2) n2 = normalize_naive(d2);
      std::vector<Step> steps = n1->trace.steps;
      for (const Step& s : reversed(n2->trace.steps)) steps.push_back(s);
      std::cout << "# witness: through the common right normal form\n" << trace_to_text(steps);
    } else {
      OracleResult r = bfs_equiv(d1, d2, o.node_cap);
      if (r.verdict == OracleVerdict::equivalent)
        std::cout << "# witness: breadth-first search\n" << trace_to_text(r.witness);
      else
        std::cout << "# no witness: the exchange class is too large to search\n";
    }
  }
  return equivalent ? kEquivalent : kInequivalent;
}

// --- normalize ---------------------------------------------------------------

struct NormalizeOptions {
  std::string input;
  std::string output;
  std::string side = "right";
  std::string strategy = "topmost";
  std::optional<std::uint64_t> seed;
  bool fast = false;
  bool naive = false;
  bool trace = false;
  std::optional<std::size_t> cap;
};

int run_normalize(const NormalizeOptions& o) {
  Diagram d = load_diagram(o.input);
  if (!is_boundary_connected(d))
    throw UsageError("diagram is not boundary-connected; its normal form is not unique, "
                     "compare diagrams with 'sdnorm equiv' instead");
  if (o.fast && o.trace) throw UsageError("--trace needs the naive strategy");
  Direction side = o.side == "left" ? Direction::left : Direction::right;
  bool use_fast = o.fast || (!o.naive && !o.trace);
  if (use_fast) {
    write_output(o.output, to_text(normalize_fast(d, side)));
    return 0;
  }
  Strategy strategy = Strategy::topmost();
  if (o.strategy == "random") strategy = Strategy::random(o.seed.value_or(default_seed()));
  NormalForm nf = normalize_naive(d, strategy, o.cap, side);
  if (o.trace) {
    std::cout << trace_to_text(nf.trace.steps);
    if (!o.output.empty()) write_output(o.output, to_text(nf.diagram));
  } else {
    write_output(o.output, to_text(nf.diagram));
  }
  return 0;
}

// --- stats -------------------------------------------------------------------

int run_stats(const std::string& path) {
  Diagram d = load_diagram(path);
  ConnectivityReport conn = connectivity(d);
  std::cout << "sources " << d.sources << "\n"
            << "targets " << target_count(d) << "\n"
            << "vertices " << d.height() << "\n"
            << "edges " << edge_count(d) << "\n"
            << "connectivity " << to_string(conn.kind) << "\n"
            << "right_normal " << (is_normal(d) ? "yes" : "no") << "\n";
  if (conn.kind != Connectivity::disconnected)
    std::cout << "reduction_length " << normalize_naive(d).trace.step_count() << "\n";
  Diagram closed = is_closed(d) ? d : boundary_closure(d);
  Topology t = compute_topology(closed);
  std::cout << "faces " << t.face_count << "\n"
            << "components " << t.component_count << "\n";
  if (!is_closed(d)) std::cout << "# faces and components include the boundary closure\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms and equivalence of planar string diagrams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sdnorm 1.0");

  EquivOptions eq;
  auto* equiv = app.add_subcommand("equiv", "Decide whether two diagrams are exchange-equivalent");
  equiv->add_option("a", eq.a, "First diagram file, or expression with --sig ('-' for stdin)")
      ->required();
  equiv->add_option("b", eq.b, "Second diagram file, or expression with --sig")->required();
  equiv->add_option("--sig", eq.sig_path, "Signature file; A and B are then expressions");
  equiv->add_option("--method", eq.method,
                    "auto (map when both closures are connected, else tree), tree, map, or "
                    "naive (right normal forms)")
      ->check(CLI::IsMember({"auto", "tree", "map", "naive"}));
  equiv->add_flag("--witness", eq.witness,
                  "Print an exchange trace from A to B; for diagrams that are not "
                  "boundary-connected this needs a breadth-first search and may be skipped");
  equiv->add_flag("--dump-tree", eq.dump_tree, "Print both structural trees and their codes");
  equiv->add_flag("--dump-map", eq.dump_map, "Print both directed maps and their codes");
  equiv->add_option("--node-cap", eq.node_cap, "State limit for the witness search");
  equiv->footer("Exit status: 0 equivalent, 1 not equivalent, 2 input error.");

  NormalizeOptions no;
  auto* normalize = app.add_subcommand("normalize", "Compute a right or left normal form");
  normalize->add_option("input", no.input, "Diagram file ('-' for stdin)")->required();
  normalize->add_option("-o,--output", no.output, "Write the normal form here");
  normalize->add_option("--side", no.side, "right or left")
      ->check(CLI::IsMember({"right", "left"}));
  auto* fast = normalize->add_flag("--fast", no.fast, "Leaf and edge peeling (default)");
  auto* naive = normalize->add_flag("--naive", no.naive, "Apply exchanges until none is left");
  fast->excludes(naive);
  normalize->add_option("--strategy", no.strategy,
                        "Naive exchange order: topmost, random, or spiral (same as topmost)")
      ->check(CLI::IsMember({"topmost", "random", "spiral"}));
  normalize->add_option("--seed", no.seed, "Seed for --strategy random (default $SDNORM_SEED)");
  normalize->add_option("--cap", no.cap, "Step cap (default 8v^3+64)");
  normalize->add_flag("--trace", no.trace,
                      "Print the exchange trace ('R <h>' lines) instead of the diagram; "
                      "use -o to keep the normal form too");

  std::string render_in, render_out, format = "svg";
  auto* render = app.add_subcommand("render", "Draw a diagram");
  render->add_option("input", render_in, "Diagram file ('-' for stdin)")->required();
  render->add_option("--format", format, "svg, tikz or ascii")
      ->check(CLI::IsMember({"svg", "tikz", "ascii"}));
  render->add_option("-o,--output", render_out, "Output file");

  std::string expr_text, conv_sig, conv_out;
  bool conv_json = false;
  auto* convert = app.add_subcommand("convert", "Turn an expression into a diagram");
  convert->add_option("expr", expr_text, "Expression ('-' for stdin)")->required();
  convert->add_option("--sig", conv_sig, "Signature file")->required();
  convert->add_flag("--json", conv_json, "Write JSON instead of the text format");
  convert->add_option("-o,--output", conv_out, "Output file");

  int spiral_n = 0;
  bool spiral_trace = false;
  auto* spiral_cmd = app.add_subcommand("spiral", "Print the spiral diagram on N vertices");
  spiral_cmd->add_option("n", spiral_n, "Vertex count (at least 2)")->required();
  spiral_cmd->add_flag("--trace", spiral_trace, "Print its topmost reduction instead");

  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "Sizes, connectivity, reduction length, faces");
  stats->add_option("input", stats_in, "Diagram file ('-' for stdin)")->required();

  std::string replay_in, replay_trace;
  auto* replay_cmd = app.add_subcommand("replay", "Apply a trace of exchanges to a diagram");
  replay_cmd->add_option("input", replay_in, "Diagram file")->required();
  replay_cmd->add_option("trace", replay_trace, "Trace file ('R <h>' / 'L <h>' lines)")
      ->required();

  std::string oa, ob;
  std::size_t oracle_cap = kDefaultNodeCap;
  auto* oracle = app.add_subcommand("oracle", "Brute-force tools for testing");
  auto* oracle_equiv = oracle->add_subcommand("equiv", "Search the exchange class of A for B");
  oracle->require_subcommand(1);
  oracle_equiv->add_option("a", oa, "First diagram file")->required();
  oracle_equiv->add_option("b", ob, "Second diagram file")->required();
  oracle_equiv->add_option("--node-cap", oracle_cap, "State limit");
  oracle_equiv->footer("Exit status: 0 equivalent, 1 not equivalent, 2 input error, "
                       "3 state limit reached.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*equiv) return run_equiv(eq);
    if (*normalize) return run_normalize(no);
    if (*render) {
      Diagram d = load_diagram(render_in);
      std::string doc = format == "svg"    ? render_svg(d)
                        : format == "tikz" ? render_tikz(d)
                                           : render_ascii(d);
      write_output(render_out, doc);
      return 0;
    }
    if (*convert) {
      Signature sig = parse_signature(read_input(conv_sig));
      Diagram d = load_expression(expr_text, sig);
      write_output(conv_out, conv_json ? to_json(d).dump(2) + "\n" : to_text(d));
      return 0;
    }
    if (*spiral_cmd) {
      if (spiral_n < 2) throw UsageError("spiral needs n >= 2");
      if (spiral_trace)
        std::cout << trace_to_text(spiral_reduction(spiral_n).steps);
      else
        std::cout << to_text(spiral(spiral_n));
      return 0;
    }
    if (*stats) return run_stats(stats_in);
    if (*replay_cmd) {
      Diagram d = load_diagram(replay_in);
      std::cout << to_text(replay(d, trace_from_text(read_input(replay_trace))));
      return 0;
    }
    if (*oracle_equiv) {
      OracleResult r = bfs_equiv(load_diagram(oa), load_diagram(ob), oracle_cap);
      if (r.verdict == OracleVerdict::cap_exceeded) {
        std::cout << "undecided: state limit reached after " << r.explored << " states\n";
        return kUndecided;
      }
      bool eqv = r.verdict == OracleVerdict::equivalent;
      std::cout << (eqv ? "equivalent" : "not equivalent") << " (" << r.explored
                << " states)\n";
      if (eqv) std::cout << trace_to_text(r.witness);
      return eqv ? kEquivalent : kInequivalent;
    }
  } catch (const UsageError& e) {
    std::cerr << "sdnorm: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    std::cerr << "sdnorm: internal error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "sdnorm: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

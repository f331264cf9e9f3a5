// pp: population protocols from symmetric games.
//
// Command-line front end over the popproto C API. Exit codes: 0 when the
// requested verdict is positive (computes / holds / pavlovian / absorbed),
// 1 when it is negative, 2 on usage or input errors.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "popproto/popproto.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;

struct StringDeleter {
  void operator()(char* s) const { pp_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

[[noreturn]] void die(const std::string& context) {
  std::fprintf(stderr, "pp: %s: %s\n", context.c_str(), pp_last_error());
  std::exit(2);
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using ProtocolHandle = Handle<pp_protocol, pp_protocol_free>;
using MatrixHandle = Handle<pp_matrix, pp_matrix_free>;
using PredicateHandle = Handle<pp_predicate, pp_predicate_free>;
using GraphHandle = Handle<pp_graph, pp_graph_free>;
using VerdictHandle = Handle<pp_verdict, pp_verdict_free>;
using RecognitionHandle = Handle<pp_recognition, pp_recognition_free>;
using SimHandle = Handle<pp_sim_report, pp_sim_report_free>;
using FalsifyHandle = Handle<pp_falsify_report, pp_falsify_report_free>;

void load_protocol(const std::string& path, ProtocolHandle& p) {
  if (pp_protocol_load(path.c_str(), p.out()) != PP_OK)
    die("loading protocol " + path);
}

// "2..8" or "4".
bool parse_range(const std::string& text, int& lo, int& hi) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, dots));
      hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

void flush_output(const std::string& out_path, const std::string& sink) {
  if (out_path.empty()) return;
  FILE* f = std::fopen(out_path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "pp: cannot write %s\n", out_path.c_str());
    std::exit(2);
  }
  std::fwrite(sink.data(), 1, sink.size(), f);
  std::fclose(f);
}

int threads_from_env() {
  const char* env = std::getenv("PP_THREADS");
  if (!env) return 0;
  int value = std::atoi(env);
  return value > 0 ? value : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"population protocols from symmetric games"};
  app.require_subcommand(1);

  std::string protocol_path, matrix_path, predicate_text, range_text = "2..6";
  std::string input_text, graph_text, out_path, name, absorbing, leaders_csv;
  std::string inputs_arg, outputs_arg, matrix_out;
  std::uint64_t budget = 0, steps = 100000, seed = kDefaultSeed;
  int trials = 1;
  int enum_states = 3;
  int n_max = 4;
  bool json = false;

  auto* check = app.add_subcommand("check", "exhaustively check a predicate");
  check->add_option("--protocol", protocol_path)->required();
  check->add_option("--predicate", predicate_text)->required();
  check->add_option("--n", range_text, "population size or range, e.g. 2..8");
  check->add_option("--budget", budget, "exploration node budget");
  check->add_flag("--json", json);

  auto* leader =
      app.add_subcommand("leader-check", "check eventual single-leader");
  leader->add_option("--protocol", protocol_path)->required();
  leader->add_option("--leader-states", leaders_csv)->required();
  leader->add_option("--n", range_text);
  leader->add_option("--budget", budget);
  leader->add_flag("--json", json);

  auto* derive = app.add_subcommand("derive", "protocol of a payoff matrix");
  derive->add_option("--matrix", matrix_path)->required();
  derive->add_option("--inputs", inputs_arg, "e.g. \"sigma->q1 zero->q0\"");
  derive->add_option("--outputs", outputs_arg, "e.g. \"q0=0 q1=1\"");
  derive->add_option("--out", out_path);

  auto* recognize =
      app.add_subcommand("recognize", "find a matrix inducing the protocol");
  recognize->add_option("--protocol", protocol_path)->required();
  recognize->add_flag("--json", json);

  auto* symmetrize =
      app.add_subcommand("symmetrize", "compile into a symmetric protocol");
  symmetrize->add_option("--protocol", protocol_path)->required();
  symmetrize->add_option("--out", out_path);

  auto* simulate = app.add_subcommand("simulate", "random-scheduler runs");
  simulate->add_option("--protocol", protocol_path)->required();
  simulate->add_option("--input", input_text, "e.g. \"sigma:3,zero:2\"")
      ->required();
  simulate->add_option("--steps", steps);
  simulate->add_option("--seed", seed);
  simulate->add_option("--trials", trials);
  simulate->add_option("--graph", graph_text,
                       "ring:N, complete:N, or file:PATH");
  simulate->add_option("--absorbing", absorbing,
                       "stop once every vertex is in this state");
  simulate->add_option("--budget", budget,
                       "exploration budget for bottom-SCC certification");
  simulate->add_flag("--json", json);

  auto* enumerate =
      app.add_subcommand("enumerate", "search game-induced 3-state protocols");
  enumerate->add_option("--states", enum_states);
  enumerate->add_option("--predicate", predicate_text)->required();
  enumerate->add_option("--n-max", n_max);
  enumerate->add_option("--report", out_path);
  enumerate->add_flag("--json", json);

  auto* catalog = app.add_subcommand("catalog", "list built-in protocols");
  catalog->add_flag("--json", json);

  auto* exporter = app.add_subcommand("export", "write a built-in protocol");
  exporter->add_option("--name", name)->required();
  exporter->add_option("--out", out_path)->required();
  exporter->add_option("--matrix-out", matrix_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0, usage errors exit 2
  }

  if (check->parsed() || leader->parsed()) {
    ProtocolHandle proto;
    load_protocol(protocol_path, proto);
    PredicateHandle pred;
    if (check->parsed() &&
        pp_predicate_parse(predicate_text.c_str(), proto.get(), pred.out()) !=
            PP_OK)
      die("parsing predicate");
    int lo, hi;
    if (!parse_range(range_text, lo, hi)) {
      std::fprintf(stderr, "pp: bad --n range '%s'\n", range_text.c_str());
      return 2;
    }
    bool all_hold = true;
    for (int n = lo; n <= hi; ++n) {
      VerdictHandle verdict;
      pp_status st =
          check->parsed()
              ? pp_check_stable(proto.get(), pred.get(), n, budget,
                                verdict.out())
              : pp_check_leader(proto.get(), leaders_csv.c_str(), n, budget,
                                verdict.out());
      if (st != PP_OK) die("checking n=" + std::to_string(n));
      std::string line = take(json ? pp_verdict_json(verdict.get())
                                   : pp_verdict_text(verdict.get()));
      std::printf("%s\n", line.c_str());
      all_hold = all_hold && pp_verdict_holds(verdict.get());
    }
    return all_hold ? 0 : 1;
  }

  if (derive->parsed()) {
    MatrixHandle m;
    if (pp_matrix_load(matrix_path.c_str(), m.out()) != PP_OK)
      die("loading matrix " + matrix_path);
    ProtocolHandle proto;
    if (pp_derive(m.get(), inputs_arg.empty() ? nullptr : inputs_arg.c_str(),
                  outputs_arg.empty() ? nullptr : outputs_arg.c_str(),
                  proto.out()) != PP_OK)
      die("deriving protocol");
    std::string text = take(pp_protocol_format(proto.get()));
    if (out_path.empty())
      std::printf("%s", text.c_str());
    else
      flush_output(out_path, text);
    return 0;
  }

  if (recognize->parsed()) {
    ProtocolHandle proto;
    load_protocol(protocol_path, proto);
    RecognitionHandle rec;
    if (pp_recognize(proto.get(), rec.out()) != PP_OK) die("recognizing");
    std::string text = take(json ? pp_recognition_json(rec.get())
                                 : pp_recognition_text(rec.get()));
    std::printf("%s%s", text.c_str(),
                text.empty() || text.back() == '\n' ? "" : "\n");
    return pp_recognition_kind(rec.get()) == PP_RECOGNITION_PAVLOVIAN ? 0 : 1;
  }

  if (symmetrize->parsed()) {
    ProtocolHandle proto;
    load_protocol(protocol_path, proto);
    ProtocolHandle sym;
    if (pp_symmetrize(proto.get(), sym.out()) != PP_OK) die("symmetrizing");
    std::string text = take(pp_protocol_format(sym.get()));
    if (out_path.empty())
      std::printf("%s", text.c_str());
    else
      flush_output(out_path, text);
    return 0;
  }

  if (simulate->parsed()) {
    ProtocolHandle proto;
    load_protocol(protocol_path, proto);
    GraphHandle graph;
    if (!graph_text.empty()) {
      pp_status st;
      if (graph_text.rfind("ring:", 0) == 0)
        st = pp_graph_ring(std::atoi(graph_text.c_str() + 5), graph.out());
      else if (graph_text.rfind("complete:", 0) == 0)
        st = pp_graph_complete(std::atoi(graph_text.c_str() + 9), graph.out());
      else if (graph_text.rfind("file:", 0) == 0)
        st = pp_graph_load(graph_text.c_str() + 5, graph.out());
      else {
        std::fprintf(stderr, "pp: bad --graph '%s'\n", graph_text.c_str());
        return 2;
      }
      if (st != PP_OK) die("building graph");
    }
    if (trials < 1) trials = 1;
    bool all_good = true;
    for (int t = 0; t < trials; ++t) {
      SimHandle report;
      std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
      pp_status st =
          graph.get()
              ? pp_simulate_graph(proto.get(), graph.get(), input_text.c_str(),
                                  absorbing.empty() ? nullptr
                                                    : absorbing.c_str(),
                                  steps, trial_seed, report.out())
              : pp_simulate(proto.get(), input_text.c_str(), steps, trial_seed,
                            budget ? budget : 100000, report.out());
      if (st != PP_OK) die("simulating");
      std::string line = take(json ? pp_sim_json(report.get())
                                   : pp_sim_text(report.get()));
      std::printf("trial %d%s%s\n", t, json ? " " : ": ", line.c_str());
      all_good = all_good && pp_sim_reached_bottom(report.get()) != 0;
    }
    return all_good ? 0 : 1;
  }

  if (enumerate->parsed()) {
    if (enum_states != 3) {
      std::fprintf(stderr,
                   "pp: only --states 3 is supported (the search space "
                   "explodes beyond that)\n");
      return 2;
    }
    FalsifyHandle report;
    if (pp_falsify(predicate_text.c_str(), n_max, threads_from_env(),
                   report.out()) != PP_OK)
      die("enumerating");
    std::string text = take(json ? pp_falsify_json(report.get())
                                 : pp_falsify_text(report.get()));
    if (!out_path.empty()) {
      flush_output(out_path, text);
    } else {
      std::printf("%s", text.c_str());
      if (!text.empty() && text.back() != '\n') std::printf("\n");
    }
    return 0;
  }

  if (catalog->parsed()) {
    std::string names = take(pp_catalog_names());
    std::size_t pos = 0;
    while (pos < names.size()) {
      std::size_t end = names.find('\n', pos);
      if (end == std::string::npos) end = names.size();
      std::string entry = names.substr(pos, end - pos);
      pos = end + 1;
      if (entry.empty()) continue;
      std::printf("%s\n", take(pp_catalog_describe(entry.c_str())).c_str());
    }
    return 0;
  }

  if (exporter->parsed()) {
    ProtocolHandle proto;
    MatrixHandle matrix;
    if (pp_catalog_get(name.c_str(), proto.out(), matrix.out()) != PP_OK)
      die("looking up " + name);
    flush_output(out_path, take(pp_protocol_format(proto.get())));
    if (!matrix_out.empty()) {
      if (!matrix.get()) {
        std::fprintf(stderr, "pp: %s has no payoff matrix\n", name.c_str());
        return 2;
      }
      flush_output(matrix_out, take(pp_matrix_format(matrix.get())));
    }
    return 0;
  }

  return 2;
}

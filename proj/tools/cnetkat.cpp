#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cnetkat/cases.hpp"
#include "cnetkat/errors.hpp"
#include "cnetkat/json_io.hpp"
#include "cnetkat/parser.hpp"
#include "cnetkat/printer.hpp"
#include "cnetkat/rewrite.hpp"

namespace {

using namespace cnetkat;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  try {
    return std::stoi(v);
  } catch (...) {
    return fallback;
  }
}

struct Options {
  std::string file;
  std::string second_file;
  std::string input_text;
  std::string universe_file;
  std::string format = "text";
  std::string mode = "incl";
  bool closed = false;
  int star = -1;
  int pad = -1;
  int node_budget = -1;
  long closure_budget = -1;

  EvalConfig config() const {
    EvalConfig cfg;
    cfg.star_bound = star >= 0 ? star : env_int("CNETKAT_STAR", 3);
    cfg.pad_bound = pad >= 0 ? pad : env_int("CNETKAT_PAD", 1);
    if (node_budget >= 0) cfg.node_budget = node_budget;
    if (closure_budget >= 0) {
      cfg.closure_population = static_cast<size_t>(closure_budget);
    }
    return cfg;
  }
};

struct LoadedProgram {
  Universe universe;
  ProgPtr program;
};

LoadedProgram load_program(const Options& opt, const std::string& path) {
  std::string text = read_file(path);
  LoadedProgram lp;
  if (!opt.universe_file.empty()) {
    lp.universe = parse_universe(read_file(opt.universe_file));
  } else {
    lp.universe = parse_universe(text);
  }
  if (lp.universe.empty()) {
    throw ContractError("no universe declared (header or --universe)");
  }
  lp.program = parse(text, lp.universe);
  return lp;
}

PacketSet load_input(const Options& opt, const Universe& u) {
  if (opt.input_text.empty()) {
    throw ContractError("--input is required for this command");
  }
  std::string text = opt.input_text;
  if (!text.empty() && text[0] == '@') text = read_file(text.substr(1));
  return parse_packet_set(text, u);
}

void print_trace_set(const Universe& u, const TraceSet& ts,
                     const std::string& format) {
  if (format == "json") {
    std::cout << trace_set_json(u, ts).dump(2) << "\n";
    return;
  }
  if (format == "dot") {
    int i = 0;
    for (const auto& t : ts.traces()) {
      std::cout << pomset_to_dot(t.pom, "trace" + std::to_string(i++));
    }
    return;
  }
  std::cout << ts.traces().size() << " trace(s)\n";
  for (const auto& t : ts.traces()) {
    std::cout << "  " << pomset_to_string(t.pom) << "  ~>  "
              << packet_set_to_string(u, t.out) << "\n";
  }
  if (ts.bounds_hit) std::cout << "note: star bound reached\n";
  if (ts.output_saturated) std::cout << "note: star outputs saturated\n";
}

int cmd_eval(const Options& opt) {
  LoadedProgram lp = load_program(opt, opt.file);
  PacketSet input = load_input(opt, lp.universe);
  EvalConfig cfg = opt.config();
  TraceSet ts = opt.closed ? eval_closed(lp.universe, lp.program, input, cfg)
                           : eval(lp.universe, lp.program, input, cfg);
  print_trace_set(lp.universe, ts, opt.format);
  return 0;
}

int cmd_guarded(const Options& opt) {
  LoadedProgram lp = load_program(opt, opt.file);
  PacketSet input = load_input(opt, lp.universe);
  EvalConfig cfg = opt.config();
  TraceSet closed = eval_closed(lp.universe, lp.program, input, cfg);

  OrderSpec spec;
  const OrderSpec* spec_ptr = nullptr;
  try {
    spec = running_order_spec(lp.universe);
    spec_ptr = &spec;
  } catch (const ContractError&) {
    // universe does not carry the running-example names
  }

  if (opt.format == "json") {
    std::cout << guarded_report_json(lp.universe, closed, spec_ptr).dump(2)
              << "\n";
    return 0;
  }
  size_t guarded_count = 0;
  for (const auto& t : closed.traces()) {
    bool g = is_guarded_trace(lp.universe, t.pom).has_value();
    if (g) {
      ++guarded_count;
      std::cout << "guarded: " << pomset_to_string(t.pom) << "  ~>  "
                << packet_set_to_string(lp.universe, t.out) << "\n";
    }
  }
  std::cout << guarded_count << " of " << closed.traces().size()
            << " closed trace(s) are guarded\n";
  if (closed.bounds_hit) std::cout << "note: star bound reached\n";
  return 0;
}

int cmd_normalize(const Options& opt) {
  LoadedProgram lp = load_program(opt, opt.file);
  PacketSet input = load_input(opt, lp.universe);
  NormalForm nf = merge_summands(normalize(lp.universe, input, lp.program));
  if (opt.format == "json") {
    std::cout << normal_form_json(lp.universe, nf).dump(2) << "\n";
  } else {
    std::cout << nf.pretty(lp.universe) << "\n";
  }
  return 0;
}

int cmd_check(const Options& opt) {
  LoadedProgram lp1 = load_program(opt, opt.file);
  LoadedProgram lp2 = load_program(opt, opt.second_file);
  if (print_universe(lp1.universe) != print_universe(lp2.universe)) {
    throw ContractError("the two programs declare different universes");
  }
  PacketSet input = load_input(opt, lp1.universe);
  EvalConfig cfg = opt.config();
  Verdict v;
  if (opt.mode == "equiv") {
    v = check_equiv(lp1.universe, lp1.program, lp2.program, input, cfg);
    std::cout << (v.holds ? "equivalent" : "NOT equivalent");
  } else {
    v = check_inclusion(lp1.universe, lp1.program, lp2.program, input, cfg);
    std::cout << (v.holds ? "included" : "NOT included");
  }
  std::cout << " (up to K=" << cfg.star_bound << ",P=" << cfg.pad_bound << ")";
  if (!v.detail.empty()) std::cout << ": " << v.detail;
  std::cout << "\n";
  return 0;
}

int cmd_examples(const Options& opt) {
  EvalConfig cfg = opt.config();
  bool ok = true;

  {
    EvalConfig c = cfg;
    if (opt.star < 0) c.star_bound = 3;
    if (opt.pad < 0) c.pad_bound = 1;
    auto r = cases::run_running_example(c);
    std::cout << "[running]  traces=" << r.trace_count
              << " target-output=" << (r.output_found ? "yes" : "no")
              << " specified-pomset=" << (r.pomset_found ? "yes" : "no")
              << "\n";
    ok = ok && r.output_found && r.pomset_found;
  }
  {
    EvalConfig c = cfg;
    if (opt.star < 0) c.star_bound = 3;
    if (opt.pad < 0) c.pad_bound = 1;
    auto r = cases::run_inclusion_claim(c);
    std::cout << "[spec-inclusion]  " << (r.included ? "included" : "FAILED")
              << " (up to K=" << c.star_bound << ",P=" << c.pad_bound << ")\n";
    ok = ok && r.included;
  }
  {
    auto r = cases::run_load_balancer_race(cfg);
    std::cout << "[load-balancer]  raw="
              << (r.raw_trace_found ? "yes" : "no") << " guarded-race="
              << (r.guarded_trace_found ? "yes" : "no") << "\n";
    ok = ok && r.raw_trace_found && r.guarded_trace_found;
  }
  {
    auto r = cases::run_cache_race(cfg);
    std::cout << "[cache]  raw=" << (r.raw_trace_found ? "yes" : "no")
              << " guarded-race=" << (r.guarded_trace_found ? "yes" : "no")
              << "\n";
    ok = ok && r.raw_trace_found && r.guarded_trace_found;
  }
  std::cout << (ok ? "all example analyses reproduced\n"
                   : "example analyses FAILED\n");
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNetKAT: pomset semantics, guarded traces and normal forms"};
  app.require_subcommand(1);

  Options opt;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--star,-K", opt.star, "max star unrollings");
    cmd->add_option("--pad,-P", opt.pad, "max state padding per side");
    cmd->add_option("--node-budget", opt.node_budget, "pomset node budget");
    cmd->add_option("--closure-budget", opt.closure_budget,
                    "closure population budget");
  };

  CLI::App* ev = app.add_subcommand("eval", "evaluate a program on an input");
  ev->add_option("file", opt.file, "program file")->required();
  ev->add_option("--input", opt.input_text, "packet set (or @file)");
  ev->add_option("--universe", opt.universe_file, "sidecar universe file");
  ev->add_flag("--closed", opt.closed, "closed semantics");
  ev->add_option("--format", opt.format, "text | json | dot");
  add_bounds(ev);

  CLI::App* gu = app.add_subcommand("guarded", "filter guarded closed traces");
  gu->add_option("file", opt.file, "program file")->required();
  gu->add_option("--input", opt.input_text, "packet set (or @file)");
  gu->add_option("--universe", opt.universe_file, "sidecar universe file");
  gu->add_option("--format", opt.format, "text | json");
  add_bounds(gu);

  CLI::App* no = app.add_subcommand("normalize", "input-indexed normal form");
  no->add_option("file", opt.file, "program file")->required();
  no->add_option("--input", opt.input_text, "packet set (or @file)");
  no->add_option("--universe", opt.universe_file, "sidecar universe file");
  no->add_option("--format", opt.format, "text | json");

  CLI::App* ch = app.add_subcommand("check", "inclusion or equivalence");
  ch->add_option("first", opt.file, "left program file")->required();
  ch->add_option("second", opt.second_file, "right program file")->required();
  ch->add_option("--input", opt.input_text, "packet set (or @file)");
  ch->add_option("--universe", opt.universe_file, "sidecar universe file");
  ch->add_option("--mode", opt.mode, "incl | equiv");
  add_bounds(ch);

  CLI::App* ex = app.add_subcommand("examples", "run the bundled analyses");
  add_bounds(ex);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ev->parsed()) return cmd_eval(opt);
    if (gu->parsed()) return cmd_guarded(opt);
    if (no->parsed()) return cmd_normalize(opt);
    if (ch->parsed()) return cmd_check(opt);
    if (ex->parsed()) return cmd_examples(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

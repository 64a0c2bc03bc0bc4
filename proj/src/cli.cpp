#include "tactnet/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tactnet/compiler.hpp"
#include "tactnet/json_io.hpp"
#include "tactnet/net_format.hpp"
#include "tactnet/reachability.hpp"
#include "tactnet/register_machine.hpp"
#include "tactnet/samples.hpp"
#include "tactnet/semantics.hpp"

namespace tactnet {

namespace {

// Failures that should exit with status 2 (bad invocation or bad input
// files) instead of 1 (run-time / verification failure).
struct UsageFailure : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

NetDocument load_net(const std::string& path) {
  try {
    return parse_net(read_file(path));
  } catch (const ParseError& e) {
    throw UsageFailure(path + ": " + e.what());
  }
}

RmProgram load_rm(const std::string& path) {
  try {
    return parse_rm(read_file(path));
  } catch (const ParseError& e) {
    throw UsageFailure(path + ": " + e.what());
  }
}

SemanticsMode mode_from_string(const std::string& text) {
  try {
    return parse_mode(text);
  } catch (const ModeError& e) {
    throw UsageFailure(e.what());
  }
}

std::vector<std::pair<int, TokenCount>> parse_register_sets(
    const std::vector<std::string>& sets) {
  std::vector<std::pair<int, TokenCount>> out;
  for (const std::string& item : sets) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || item.size() < 4 || item[0] != 'r')
      throw UsageFailure("expected --set r<i>=<value>, got '" + item + "'");
    try {
      int reg = std::stoi(item.substr(1, eq - 1));
      long long value = std::stoll(item.substr(eq + 1));
      if (reg < 1 || value < 0) throw UsageFailure("bad --set '" + item + "'");
      out.emplace_back(reg, value);
    } catch (const std::logic_error&) {
      throw UsageFailure("expected --set r<i>=<value>, got '" + item + "'");
    }
  }
  return out;
}

void print_registers(std::ostream& out, const std::vector<TokenCount>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i ? " " : "") << "r" << i + 1 << "=" << values[i];
  out << "\n";
}

struct RunOptions {
  std::string net_path;
  std::string mode;
  std::string policy = "random";
  std::uint64_t seed = 0;
  std::size_t max_steps = 100000;
  std::string trace_path;
  std::string manifest_path;
};

int cmd_run(const RunOptions& opt) {
  NetDocument doc = load_net(opt.net_path);
  std::optional<Manifest> manifest;
  if (!opt.manifest_path.empty())
    manifest = manifest_from_json(Json::parse(read_file(opt.manifest_path)));

  SemanticsMode mode;
  if (!opt.mode.empty())
    mode = mode_from_string(opt.mode);
  else if (manifest)
    mode = manifest->mode;
  else
    throw UsageFailure("no --mode given (and no manifest to take it from)");

  StepChoicePolicy policy;
  if (opt.policy == "random")
    policy = StepChoicePolicy::seeded(opt.seed);
  else if (opt.policy == "first")
    policy = StepChoicePolicy::first_lexicographic();
  else
    throw UsageFailure("unknown policy '" + opt.policy + "' (expected random or first)");

  ExecutionTrace trace = run(doc.initial, doc.net, mode, policy, opt.max_steps);
  std::cout << "steps: " << trace.entries.size() << "\n";
  std::cout << "termination: " << (trace.reason == TerminationReason::Dead ? "dead" : "budget")
            << "\n";
  std::cout << "final marking: " << format_marking(doc.net, trace.final_marking()) << "\n";
  if (manifest) {
    std::cout << "registers: ";
    print_registers(std::cout, decode_registers(*manifest, doc.net, trace.final_marking()));
    auto halt = doc.net.find_place(manifest->halt_place);
    if (!halt) throw Error("manifest halt place is not in the net");
    std::cout << "halted: " << (trace.final_marking()[*halt] > 0 ? "yes" : "no") << "\n";
  }
  if (!opt.trace_path.empty())
    write_file(opt.trace_path, trace_to_json(doc.net, mode, policy, trace).dump(2) + "\n");
  return 0;
}

struct RgOptions {
  std::string net_path;
  std::string mode;
  std::size_t budget = 10000;
  std::string dot_path;
  std::string json_path;
};

int cmd_rg(const RgOptions& opt) {
  NetDocument doc = load_net(opt.net_path);
  SemanticsMode mode = mode_from_string(opt.mode);
  if (opt.budget < 1) throw UsageFailure("--budget must be >= 1");
  ReachGraph graph = build_rg(doc.net, doc.initial, mode, opt.budget);
  std::size_t dead = 0;
  for (const auto& node : graph.nodes) dead += node.dead;
  std::cout << "nodes: " << graph.nodes.size() << "\n";
  std::cout << "edges: " << graph.edges.size() << "\n";
  std::cout << "dead: " << dead << "\n";
  std::cout << "truncated: " << (graph.truncated ? "yes" : "no") << "\n";
  if (!opt.dot_path.empty()) write_file(opt.dot_path, export_dot(graph, doc.net));
  if (!opt.json_path.empty())
    write_file(opt.json_path, rg_to_json(doc.net, mode, graph).dump(2) + "\n");
  return 0;
}

struct CompileOptions {
  std::string rm_path;
  std::string backend;
  std::string out_path;
  std::string manifest_path;
  std::vector<std::string> sets;
};

int cmd_compile(const CompileOptions& opt) {
  RmProgram program = load_rm(opt.rm_path);
  for (const auto& [reg, value] : parse_register_sets(opt.sets)) {
    if (reg > program.register_count)
      throw UsageFailure("--set register r" + std::to_string(reg) + " out of range");
    program.initial_registers[reg - 1] = value;
  }
  Backend backend;
  try {
    backend = parse_backend(opt.backend);
  } catch (const Error& e) {
    throw UsageFailure(e.what());
  }
  CompiledNet compiled = compile(program, backend);
  std::string text = print_net(compiled.net, compiled.initial);
  if (opt.out_path.empty())
    std::cout << text;
  else
    write_file(opt.out_path, text);
  if (!opt.manifest_path.empty())
    write_file(opt.manifest_path, manifest_to_json(compiled).dump(2) + "\n");
  if (!opt.out_path.empty())
    std::cout << "compiled " << program.instruction_count() << " instructions to "
              << compiled.net.place_count() << " places / " << compiled.net.transition_count()
              << " transitions (" << format_backend(backend) << "); run with --mode "
              << format_mode(mode_for_backend(backend)) << "\n";
  return 0;
}

struct RmRunOptions {
  std::string rm_path;
  std::vector<std::string> sets;
  std::size_t max_steps = 1000000;
};

int cmd_rm_run(const RmRunOptions& opt) {
  RmProgram program = load_rm(opt.rm_path);
  RmRunResult result = rm_run(program, parse_register_sets(opt.sets), opt.max_steps);
  const RmState& final_state = result.final_state();
  std::cout << "steps: " << result.trace.size() - 1 << "\n";
  std::cout << "termination: " << (result.reason == RmRunReason::Halted ? "halted" : "budget")
            << "\n";
  std::cout << "pc: " << final_state.pc << "\n";
  std::cout << "registers: ";
  print_registers(std::cout, final_state.registers);
  return 0;
}

int cmd_verify_zerocheck(TokenCount x_max) {
  if (x_max < 1) throw UsageFailure("--x-max must be >= 1");
  VerificationReport report = verify_zero_check(x_max);
  for (const ZeroCheckCase& c : report.cases) {
    std::cout << "x=" << c.x << ": nodes=" << c.node_count << " edges=" << c.edge_count
              << " terminals=" << c.terminals.size() << " " << (c.ok ? "ok" : "FAIL " + c.detail)
              << "\n";
  }
  std::cout << (report.ok ? "zero check verified" : "zero check FAILED") << " for x in 0.."
            << x_max << "\n";
  return report.ok ? 0 : 1;
}

NetDocument addition_net() {
  // Two transitions moving tokens from p1 and p2 into p3.
  return parse_net(
      "place p1 init 2\nplace p2 init 3\nplace p3\n"
      "trans t1\ntrans t2\n"
      "arc p1 -> t1\narc t1 -> p3\narc p2 -> t2\narc t2 -> p3\n");
}

int cmd_selftest() {
  int failed = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failed;
  };

  NetDocument add = addition_net();
  auto rg_size = [&](const char* mode, std::size_t nodes, std::size_t edges) {
    ReachGraph g = build_rg(add.net, add.initial, parse_mode(mode), 1000);
    return g.nodes.size() == nodes && g.edges.size() == edges && !g.truncated;
  };
  check("addition net: petri graph 12 nodes / 17 edges", rg_size("petri", 12, 17));
  check("addition net: salwicki path of 4 nodes", rg_size("salwicki", 4, 3));
  check("addition net: sleptsov diamond of 4 nodes", rg_size("sleptsov", 4, 4));
  check("addition net: strong sleptsov path of 3 nodes", rg_size("sleptsov-strong", 3, 2));
  check("addition net: weak sleptsov offers 5 first steps",
        enumerate_steps(add.initial, add.net, parse_mode("sleptsov-weak")).size() == 5);

  RmProgram apsum = samples::apsum_program();
  check("apsum interpreter: n=4 sums to 10",
        rm_run(apsum, {{2, 4}}, 100000).final_state().registers[0] == 10);
  for (Backend backend : {Backend::Inhibitor, Backend::Priority, Backend::StrongSleptsov}) {
    CompiledNet compiled = compile(apsum, backend);
    ExecutionTrace trace = run(compiled.initial, compiled.net, mode_for_backend(backend),
                               StepChoicePolicy::seeded(1), 100000);
    bool ok = trace.reason == TerminationReason::Dead &&
              trace.final_marking()[compiled.halt_place()] == 1 &&
              compiled.decode_registers(trace.final_marking())[0] == 10;
    check("apsum compiled (" + format_backend(backend) + "): halts with r1=10", ok);
  }

  check("zero check net verified for x in 0..10", verify_zero_check(10).ok);

  CompiledNet compiled = compile(apsum, Backend::Inhibitor);
  NetDocument reparsed = parse_net(print_net(compiled.net, compiled.initial));
  check("net format round-trips the compiled net",
        reparsed.net == compiled.net && reparsed.initial == compiled.initial);

  std::cout << (failed == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Place-transition net semantics engine and register machine toolkit"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* c_run = app.add_subcommand("run", "Execute a net tact by tact");
  c_run->add_option("net", run_opt.net_path, "net description file")->required();
  c_run->add_option("--mode", run_opt.mode, "semantics mode, e.g. petri or sleptsov-strong");
  c_run->add_option("--policy", run_opt.policy, "step choice: random or first");
  c_run->add_option("--seed", run_opt.seed, "seed for the random policy");
  c_run->add_option("--max-steps", run_opt.max_steps, "tact budget");
  c_run->add_option("--trace", run_opt.trace_path, "write a replayable JSON trace");
  c_run->add_option("--manifest", run_opt.manifest_path, "compiled-net manifest for decoding");

  RgOptions rg_opt;
  CLI::App* c_rg = app.add_subcommand("rg", "Build the reachability graph");
  c_rg->add_option("net", rg_opt.net_path, "net description file")->required();
  c_rg->add_option("--mode", rg_opt.mode, "semantics mode")->required();
  c_rg->add_option("--budget", rg_opt.budget, "node budget");
  c_rg->add_option("--dot", rg_opt.dot_path, "write DOT");
  c_rg->add_option("--json", rg_opt.json_path, "write JSON");

  CompileOptions compile_opt;
  CLI::App* c_compile = app.add_subcommand("compile", "Compile a register machine program");
  c_compile->add_option("rm", compile_opt.rm_path, "register machine program file")->required();
  c_compile->add_option("--backend", compile_opt.backend,
                        "inhibitor, priority or strong-sleptsov")->required();
  c_compile->add_option("-o,--output", compile_opt.out_path, "net output file");
  c_compile->add_option("--manifest", compile_opt.manifest_path, "manifest output file");
  c_compile->add_option("--set", compile_opt.sets, "override initial register, r<i>=<value>");

  RmRunOptions rm_opt;
  CLI::App* c_rm = app.add_subcommand("rm-run", "Interpret a register machine program");
  c_rm->add_option("rm", rm_opt.rm_path, "register machine program file")->required();
  c_rm->add_option("--set", rm_opt.sets, "override initial register, r<i>=<value>");
  c_rm->add_option("--max-steps", rm_opt.max_steps, "instruction budget");

  TokenCount x_max = 50;
  CLI::App* c_verify =
      app.add_subcommand("verify-zerocheck", "Verify the strong-Sleptsov zero-check net");
  c_verify->add_option("--x-max", x_max, "largest register value to check");

  CLI::App* c_selftest = app.add_subcommand("selftest", "Run the built-in fixture checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_run->parsed()) return cmd_run(run_opt);
    if (c_rg->parsed()) return cmd_rg(rg_opt);
    if (c_compile->parsed()) return cmd_compile(compile_opt);
    if (c_rm->parsed()) return cmd_rm_run(rm_opt);
    if (c_verify->parsed()) return cmd_verify_zerocheck(x_max);
    if (c_selftest->parsed()) return cmd_selftest();
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace tactnet

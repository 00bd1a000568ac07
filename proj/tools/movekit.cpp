// movekit command line: replay, hitmap, covers, fuzz, eval, scene fmt.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "movekit/expr.hpp"
#include "movekit/harness.hpp"

namespace fs = std::filesystem;
using namespace movekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot write '" + path + "'");
  out << text;
}

Scene scene_from(const std::string& path) { return path.empty() ? default_scene() : load_scene(read_file(path)); }

std::array<int, 4> parse_region(const std::string& s) {
  std::array<int, 4> v{};
  std::istringstream in(s);
  char sep = 0;
  if (!(in >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3]) || !in.eof())
    throw CLI::ValidationError("--region", "expected x,y,w,h");
  return v;
}

int run_replay(const std::string& scene_path, const std::string& script_path, const std::string& out) {
  Scene scene = scene_from(scene_path);
  const auto script = parse_script(read_file(script_path));
  const auto rep = replay(scene, script);
  const fs::path dir = out.empty() || out == "-" ? fs::path(".") : fs::path(out).parent_path();
  for (const auto& [name, text] : rep.snapshots) write_output((dir / (name + ".scene")).string(), text);
  write_output(out, save_scene(scene));
  for (const auto& f : rep.failures) std::cerr << f << "\n";
  return rep.failures.empty() ? kExitOk : kExitAssert;
}

int run_fuzz(const std::string& scene_path, std::uint64_t seed, std::size_t steps, const std::string& out) {
  Scene scene = scene_from(scene_path);
  const auto rep = fuzz(scene, seed, steps);
  std::cout << "seed " << seed << ", " << rep.steps << " events";
  if (!rep.violation) {
    std::cout << ", no violations\n";
    return kExitOk;
  }
  std::cout << "\nviolation: " << *rep.violation << "\n";
  const std::string base = out.empty() ? "fuzz-failure" : out;
  write_output(base + ".scene", rep.initial_scene);
  write_output(base + ".script", script_text(rep.script));
  std::cout << "dumped " << base << ".scene and " << base << ".script\n";
  return kExitAssert;
}

/// Each input line is one expression; it is evaluated at every --arg value.
int run_eval(const std::string& in_path, const std::vector<double>& args, const std::string& out) {
  std::istringstream in(in_path.empty() || in_path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                                           : read_file(in_path));
  std::ostringstream res;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto a = analyse(line);
    if (auto* e = std::get_if<ParseError>(&a)) {
      res << line << "\terror " << to_string(e->kind) << " at " << e->position << "\n";
      continue;
    }
    const auto& prog = std::get<RpnProgram>(a);
    for (double x : args) {
      const auto r = calculate(prog, x);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", r.value);
      res << line << "\t" << format_real(x) << "\t" << (r.ok ? std::string(buf) : std::string("undefined")) << "\n";
    }
  }
  write_output(out, res.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"movekit: headless driver for movable-object scenes"};
  app.require_subcommand(1);

  std::string scene_path, script_path, out, region = "0,0,200,200", in_path;
  std::uint64_t seed = 1;
  std::size_t steps = 10000;
  std::vector<double> args{0.0};

  auto* replay_cmd = app.add_subcommand("replay", "replay an event script against a scene");
  replay_cmd->add_option("--scene", scene_path, "scene snapshot (default scene when omitted)");
  replay_cmd->add_option("--script", script_path, "event script")->required();
  replay_cmd->add_option("--out", out, "final snapshot path; named snapshots go next to it");

  auto* hitmap_cmd = app.add_subcommand("hitmap", "what a press would catch at every point of a region");
  hitmap_cmd->add_option("--scene", scene_path, "scene snapshot");
  hitmap_cmd->add_option("--region", region, "x,y,w,h");
  hitmap_cmd->add_option("--out", out, "output path");

  auto* covers_cmd = app.add_subcommand("covers", "draw the covers as the mover sees them");
  covers_cmd->add_option("--scene", scene_path, "scene snapshot");
  covers_cmd->add_option("--out", out, "output path");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "random gestures with invariant checks");
  fuzz_cmd->add_option("--scene", scene_path, "scene snapshot (default scene when omitted)");
  fuzz_cmd->add_option("--seed", seed, "random seed");
  fuzz_cmd->add_option("--steps", steps, "number of events");
  fuzz_cmd->add_option("--out", out, "prefix of the failure dump");

  auto* eval_cmd = app.add_subcommand("eval", "parse and evaluate function texts, one per line");
  eval_cmd->add_option("input", in_path, "expression file (stdin when omitted)");
  eval_cmd->add_option("--arg", args, "argument values")->delimiter(',');
  eval_cmd->add_option("--out", out, "output path");

  auto* scene_cmd = app.add_subcommand("scene", "scene file utilities");
  scene_cmd->require_subcommand(1);
  auto* fmt_cmd = scene_cmd->add_subcommand("fmt", "rewrite a snapshot in canonical form");
  fmt_cmd->add_option("--scene", scene_path, "scene snapshot")->required();
  fmt_cmd->add_option("--out", out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*replay_cmd) return run_replay(scene_path, script_path, out);
    if (*hitmap_cmd) {
      const auto r = parse_region(region);
      const Scene scene = scene_from(scene_path);
      write_output(out, hitmap_text(hitmap(scene.mover(), r[0], r[1], r[2], r[3])));
      return kExitOk;
    }
    if (*covers_cmd) {
      write_output(out, render_covers(scene_from(scene_path).mover()));
      return kExitOk;
    }
    if (*fuzz_cmd) return run_fuzz(scene_path, seed, steps, out);
    if (*eval_cmd) return run_eval(in_path, args, out);
    if (*fmt_cmd) {
      write_output(out, canonicalize(read_file(scene_path)));
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

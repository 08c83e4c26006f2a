#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cremona/cli.hpp"

namespace {

struct Flags {
  std::string file;
  std::string expression;
  std::string format = "text";
  std::uint64_t seed = 1;
  int grid_bound = 6;
  std::uint64_t budget = 0;
  bool timings = false;
};

void add_common(CLI::App* sub, Flags& f) {
  auto* file = sub->add_option("-i,--input", f.file, "file holding one polynomial")->check(CLI::ExistingFile);
  auto* expr = sub->add_option("expression", f.expression, "polynomial given inline");
  file->excludes(expr);
  sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", f.seed, "seed for every general choice");
  sub->add_option("--grid-bound", f.grid_bound, "bound N of the adjoint grid")->check(CLI::PositiveNumber);
  sub->add_option("--budget", f.budget, "reduction step budget of the Groebner engine");
  sub->add_flag("--timings", f.timings, "append wall-clock timings to the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal Cremona degree of surfaces in P^3 and adjoint tests for plane curves"};
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::pair<cremona::Verb, std::string>> verbs{
      {"analyze", {cremona::Verb::kAnalyze, "singular locus, point classes and birational type of a surface"}},
      {"classify", {cremona::Verb::kClassify, "minimal Cremona degree of a surface"}},
      {"reduce", {cremona::Verb::kReduce, "verified degree-reduction chain of a surface"}},
      {"stabilize", {cremona::Verb::kStabilize, "birational self-map preserving the reduced model"}},
      {"adjoint", {cremona::Verb::kAdjoint, "adjoint grid test of a plane curve"}},
      {"genus", {cremona::Verb::kGenus, "delta invariant and geometric genus of a plane curve"}},
  };
  std::map<CLI::App*, cremona::Verb> subs;
  for (const auto& [name, entry] : verbs) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    add_common(sub, flags);
    subs[sub] = entry.first;
  }
  CLI11_PARSE(app, argc, argv);

  cremona::Command cmd;
  for (const auto& [sub, verb] : subs)
    if (sub->parsed()) cmd.verb = verb;
  if (flags.file.empty() == flags.expression.empty()) {
    std::cerr << "exactly one input source is required: -i FILE or an inline expression\n";
    return cremona::exit_code::kOther;
  }
  if (!flags.file.empty()) {
    std::ifstream in(flags.file);
    std::ostringstream text;
    text << in.rdbuf();
    cmd.input = text.str();
  } else {
    cmd.input = flags.expression;
  }
  cmd.seed = flags.seed;
  cmd.grid_bound = flags.grid_bound;
  cmd.format = flags.format == "json" ? cremona::ReportFormat::kJson : cremona::ReportFormat::kText;
  cmd.timings = flags.timings;
  if (flags.budget > 0) cremona::default_step_budget() = flags.budget;

  cremona::CommandResult result = cremona::run(cmd);
  std::cout << result.rendered();
  if (result.report.contains("error")) std::cerr << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}

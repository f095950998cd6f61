#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "koszul/cli/runner.hpp"
#include "koszul/cli/schema.hpp"
#include "koszul/parallel.hpp"

using namespace koszul::cli;

namespace {

int run_command(const std::string& script_path, RunOptions opts,
                const std::optional<std::string>& json_out) {
  std::ifstream in(script_path, std::ios::binary);
  if (!in) {
    std::cerr << "koszul-lab: cannot read " << script_path << "\n";
    return exit_usage;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  if (!opts.budget) {
    if (const char* env = std::getenv("KOSZUL_LAB_BUDGET"); env && *env) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (*end != '\0') {
        std::cerr << "koszul-lab: KOSZUL_LAB_BUDGET must be a non-negative integer\n";
        return exit_usage;
      }
      opts.budget = v;
    }
  }
  opts.script_name = script_path;
  koszul::set_default_threads(opts.threads);

  RunResult r = run_text(buf.str(), opts);
  const std::string text = dump_report(r.report);
  const bool to_stdout = json_out && *json_out == "-";
  std::ostream& log = to_stdout ? std::cerr : std::cout;
  for (const auto& line : r.log) log << line << "\n";
  if (to_stdout) {
    std::cout << text;
  } else if (json_out) {
    std::ofstream out(*json_out, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "koszul-lab: cannot write " << *json_out << "\n";
      return exit_usage;
    }
  }
  log << "exit " << r.exit_code << "\n";
  return r.exit_code;
}

int validate_command(const std::string& report_path, const std::string& schema_path) {
  try {
    auto schema = load_schema(schema_path);
    std::ifstream in(report_path);
    if (!in) {
      std::cerr << "koszul-lab: cannot read " << report_path << "\n";
      return exit_usage;
    }
    auto doc = nlohmann::ordered_json::parse(in);
    auto errs = schema_errors(doc, schema);
    for (const auto& e : errs) std::cout << e << "\n";
    std::cout << (errs.empty() ? "valid" : "invalid") << "\n";
    return errs.empty() ? exit_ok : exit_fails;
  } catch (const std::exception& e) {
    std::cerr << "koszul-lab: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Koszulity checks for quadratic algebras over F_p", "koszul-lab"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a script and report");
  std::string script;
  RunOptions opts;
  std::optional<std::size_t> degree;
  std::optional<std::uint64_t> budget;
  std::optional<std::string> json_out;
  std::optional<std::string> dot_dir;
  run->add_option("script", script, "script file")->required();
  run->add_option("--degree", degree, "degree override for every check");
  run->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--json", json_out, "write the JSON report here ('-' for stdout)");
  run->add_option("--dot", dot_dir, "write PBW confluence graphs into this directory");
  run->add_option("--budget", budget, "cap on subspaces, bases and graph vertices");
  run->add_flag("--timings", opts.timings, "add elapsed_ms to each check");

  auto* val = app.add_subcommand("validate", "check a report against the schema");
  std::string report_path;
  std::string schema_path = KOSZUL_LAB_SCHEMA;
  val->add_option("report", report_path, "report file")->required();
  val->add_option("--schema", schema_path, "schema file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  if (run->parsed()) {
    opts.degree = degree;
    opts.budget = budget;
    opts.dot_dir = dot_dir;
    return run_command(script, opts, json_out);
  }
  return validate_command(report_path, schema_path);
}

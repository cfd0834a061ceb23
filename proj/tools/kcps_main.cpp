#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace kcps;
  CLI::App app{"Check and produce knowledge-compilation certificates for #SAT and maxSAT"};
  app.require_subcommand(1);

  std::string cnf, cert, out;
  cli::Streams io{std::cin, std::cout, std::cerr};
  int rc = 0;

  auto* count = app.add_subcommand("check-count", "Verify a #SAT certificate");
  std::string expect_count;
  bool quiet = false;
  count->add_option("cnf", cnf, "DIMACS CNF file ('-' for stdin)")->required();
  count->add_option("cert", cert, "CDNNF certificate ('-' for stdin)")->required();
  count->add_option("--expect", expect_count, "Claimed model count");
  count->add_flag("--quiet", quiet, "Only set the exit code");
  count->callback([&] {
    std::optional<std::string> expect;
    if (count->count("--expect")) expect = expect_count;
    rc = cli::cmd_check_count(cnf, cert, expect, quiet, io);
  });

  auto* maxsat = app.add_subcommand("check-maxsat", "Verify a maxSAT certificate over the selector formula");
  std::uint64_t expect_max = 0;
  maxsat->add_option("cnf", cnf, "DIMACS CNF file ('-' for stdin)")->required();
  maxsat->add_option("cert", cert, "CDNNF certificate ('-' for stdin)")->required();
  maxsat->add_option("--expect", expect_max, "Claimed maximum number of satisfiable clauses");
  maxsat->add_flag("--quiet", quiet, "Only set the exit code");
  maxsat->callback([&] {
    std::optional<std::uint64_t> expect;
    if (maxsat->count("--expect")) expect = expect_max;
    rc = cli::cmd_check_maxsat(cnf, cert, expect, quiet, io);
  });

  auto* comp = app.add_subcommand("compile", "Compile a CNF into a certificate");
  CompileOptions opts;
  cli::CompileMode mode = cli::CompileMode::Sharp;
  const std::map<std::string, BranchPolicy> policies{
      {"most-frequent", BranchPolicy::MostFrequent}, {"smallest-index", BranchPolicy::SmallestIndex}};
  const std::map<std::string, cli::CompileMode> modes{{"sharp", cli::CompileMode::Sharp},
                                                      {"max", cli::CompileMode::Max}};
  comp->add_option("cnf", cnf, "DIMACS CNF file ('-' for stdin)")->required();
  comp->add_option("out", out, "Output certificate path ('-' for stdout)")->required();
  comp->add_option("--branching", opts.branching, "Branching heuristic")
      ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case));
  comp->add_flag("--cache", opts.caching, "Share identical residual components");
  comp->add_option("--mode", mode, "sharp: certify F; max: certify the selector formula")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  comp->callback([&] { rc = cli::cmd_compile(cnf, out, opts, mode, io); });

  auto* orc = app.add_subcommand("oracle", "Brute-force model count or maxSAT value");
  bool want_max = false;
  OracleLimit limit;
  orc->add_option("cnf", cnf, "DIMACS CNF file ('-' for stdin)")->required();
  orc->add_flag("--maxsat", want_max, "Report the maximum number of satisfiable clauses");
  orc->add_option("--limit", limit.max_vars, "Largest variable count to enumerate")
      ->capture_default_str();
  orc->callback([&] { rc = cli::cmd_oracle(cnf, want_max, limit, io); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(cli::ExitCode::UsageOrIo);
  }
  return rc;
}

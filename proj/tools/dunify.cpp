#include <iostream>

#include "CLI11.hpp"

#include "dunify/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Unification modulo one-sided distributivity x*(y+z) = x*y + x*z"};
  app.require_subcommand(1);

  dunify::SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve an equation file");
  solve->add_option("file", solve_args.file, "equation file")->required();
  solve->add_flag("--json", solve_args.json, "emit the report as JSON");
  solve->add_flag("--trace", solve_args.trace,
                  "write one line per rule application to stderr");
  solve->add_flag("--check", solve_args.check,
                  "verify the mgu against the input by normalization");
  solve->add_flag("--expand", solve_args.expand,
                  "print fully expanded bindings (refused above the symbol limit)");
  solve->add_option("--max-steps", solve_args.max_steps,
                    "sum transformation budget");
  solve->add_option("--expand-limit", solve_args.expand_limit,
                    "symbol limit for --expand");
  std::string dump_prefix;
  CLI::Option* dump_opt = solve->add_option(
      "--dump-graphs", dump_prefix,
      "write <prefix>.dependency.dot and <prefix>.propagation.dot of the final state");

  dunify::GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate an equation file");
  gen->add_option("family", gen_args.family, "sigma | fail-prop | random")
      ->required();
  gen->add_option("n", gen_args.sigma_n, "sigma index n");
  gen->add_option("--seed", gen_args.seed, "random family seed");
  gen->add_option("--vars", gen_args.num_vars, "random family variable count");
  gen->add_option("--eqs", gen_args.num_eqs, "random family equation count");
  std::string gen_out;
  CLI::Option* gen_out_opt = gen->add_option("-o,--output", gen_out, "output file");

  dunify::BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Sweep sigma(n) and report counts");
  bench->add_option("--family", bench_args.family, "family (sigma)");
  bench->add_option("--from", bench_args.from, "first n")->required();
  bench->add_option("--to", bench_args.to, "last n")->required();
  std::string csv_out;
  CLI::Option* csv_opt = bench->add_option("--csv", csv_out, "CSV output file");
  bench->add_option("--max-steps", bench_args.max_steps,
                    "sum transformation budget");

  dunify::VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Check a substitution against a system");
  verify->add_option("file", verify_args.system_file, "equation file")->required();
  verify->add_option("--mgu", verify_args.mgu_file, "substitution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dunify::kExitUsage;
  }

  try {
    if (solve->parsed()) {
      if (*dump_opt) solve_args.dump_graphs = dump_prefix;
      return dunify::cmd_solve(solve_args, std::cout, std::cerr);
    }
    if (gen->parsed()) {
      if (*gen_out_opt) gen_args.output = gen_out;
      return dunify::cmd_gen(gen_args, std::cout, std::cerr);
    }
    if (bench->parsed()) {
      if (*csv_opt) bench_args.csv = csv_out;
      return dunify::cmd_bench(bench_args, std::cout, std::cerr);
    }
    if (verify->parsed())
      return dunify::cmd_verify(verify_args, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dunify::kExitUsage;
  }
  return dunify::kExitUsage;
}

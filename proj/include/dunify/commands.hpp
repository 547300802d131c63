#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dunify/solver.hpp"

namespace dunify {

// Command exit codes: 0 unified / verified, 1 unification or verification
// failure, 2 parse or usage error, 3 transformation budget exceeded.
enum ExitCode : int {
  kExitUnified = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

struct SolveArgs {
  std::string file;
  bool json = false;
  bool trace = false;
  bool check = false;
  bool expand = false;
  std::uint64_t max_steps = kDefaultBudget;
  std::uint64_t expand_limit = 1'000'000;  // symbols
  std::optional<std::string> dump_graphs;  // path prefix
};

struct GenArgs {
  std::string family;  // sigma | fail-prop | random
  unsigned sigma_n = 0;
  std::uint64_t seed = 0;
  int num_vars = 6;
  int num_eqs = 5;
  std::optional<std::string> output;  // default stdout
};

struct BenchArgs {
  std::string family = "sigma";
  unsigned from = 0;
  unsigned to = 0;
  std::optional<std::string> csv;  // default stdout
  std::uint64_t max_steps = kDefaultBudget;
};

struct VerifyArgs {
  std::string system_file;
  std::string mgu_file;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace dunify

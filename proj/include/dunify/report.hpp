#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dunify/parser.hpp"
#include "dunify/solver.hpp"
#include "dunify/variable.hpp"

namespace dunify {

const char* outcome_name(const SolveOutcome& outcome);

// Stable JSON rendering of a solve report. Expanded sizes are decimal
// strings since they outgrow doubles quickly. input_vars selects whose
// expanded sizes are reported (normally the variables of the input file).
nlohmann::json report_to_json(const SolveReport& report, const VariablePool& pool,
                              const std::vector<VariableId>& input_vars);

// Observer that writes one line per rule application:
//   rule=d peak=x consumed=[x = x1 + x2] produced=[y = y1 + y2 | ...]
class TraceWriter : public SolverObserver {
 public:
  TraceWriter(const VariablePool& pool, std::ostream& os) : pool_(pool), os_(os) {}
  void on_rule(char tag, VariableId context,
               const std::vector<FlatEquation>& consumed,
               const std::vector<FlatEquation>& produced) override;

 private:
  const VariablePool& pool_;
  std::ostream& os_;
};

struct BenchRow {
  unsigned n;
  std::uint64_t m, p;
  BigInt claimed;
  BigInt predicted;
  std::uint64_t actual;
  double wall_time_ms;
  BigInt mgu_size_of_x;
};

void write_bench_csv_header(std::ostream& os);
void write_bench_csv_row(std::ostream& os, const BenchRow& row);

}  // namespace dunify

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dunify/flat.hpp"
#include "dunify/variable.hpp"

namespace dunify {

enum class EdgeColor : std::uint8_t { LPlus, RPlus, LTimes, RTimes };

const char* edge_color_label(EdgeColor c);  // "l+", "r+", "l*", "r*"

// Edge-colored directed multigraph over the variables of a system. Every
// equation x = y + z contributes an l+ edge (x,y) and an r+ edge (x,z);
// products contribute l* and r* edges. Var-var equations contribute none.
struct DependencyGraph {
  struct Edge {
    VariableId from, to;
    EdgeColor color;
  };
  std::vector<VariableId> vertices;  // ascending id order
  std::vector<Edge> edges;           // equation insertion order
  std::uint32_t id_bound = 0;        // all mentioned ids are < id_bound
};

// Quotient of the dependency graph: vertices are the equivalence classes of
// the symmetric/reflexive/transitive closure of the r* relation, and there
// is an edge (V,W) iff some l+ or r+ dependency edge runs from a member of
// V to a member of W. Self-loops are meaningful and count as cycles.
struct PropagationGraph {
  std::vector<std::vector<VariableId>> classes;  // members in ascending id order
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // may repeat
  std::vector<std::uint32_t> class_of_id;  // indexed by raw variable id
  std::uint32_t class_of(VariableId v) const { return class_of_id[v.raw()]; }
};

DependencyGraph build_dependency_graph(const EquationSet& eqs);
DependencyGraph build_dependency_graph(const SimpleSystem& s);

PropagationGraph build_propagation_graph(const DependencyGraph& g);

// True iff a directed cycle (length >= 1) exists; self-loops count.
bool has_cycle(const DependencyGraph& g);
bool has_cycle(const PropagationGraph& g);

// Graphviz text dumps: one vertex per line, one edge per line with its
// color tag.
void dump_dot(const DependencyGraph& g, const VariablePool& pool,
              std::ostream& os);
void dump_dot(const PropagationGraph& g, const VariablePool& pool,
              std::ostream& os);

enum class CycleCheck { None, Dependency, Propagation };

// The solver's per-iteration check: rebuilds both graphs from the equation
// set on every call (no incremental state) and reports the first cycle, the
// dependency graph first. Only the scratch buffers persist between calls.
class CycleChecker {
 public:
  CycleCheck check(const EquationSet& eqs);

 private:
  bool digraph_cycle(std::uint32_t n);

  std::vector<std::uint32_t> uf_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> plus_edges_;
  std::vector<std::uint32_t> head_, adj_, color_helper_;
  std::vector<std::uint8_t> color_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack_;
};

}  // namespace dunify

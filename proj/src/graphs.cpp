#include "dunify/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace dunify {

const char* edge_color_label(EdgeColor c) {
  switch (c) {
    case EdgeColor::LPlus:
      return "l+";
    case EdgeColor::RPlus:
      return "r+";
    case EdgeColor::LTimes:
      return "l*";
    case EdgeColor::RTimes:
      return "r*";
  }
  return "?";
}

DependencyGraph build_dependency_graph(const EquationSet& eqs) {
  DependencyGraph g;
  g.id_bound = id_upper_bound(eqs);
  std::vector<std::uint8_t> seen(g.id_bound, 0);
  auto mark = [&](VariableId v) { seen[v.raw()] = 1; };
  eqs.for_each([&](const EquationSet::Entry& e) {
    const auto& eq = e.eq;
    mark(eq.lhs);
    mark(eq.rhs.a);
    if (eq.is_var()) return;
    mark(eq.rhs.b);
    if (eq.is_sum()) {
      g.edges.push_back({eq.lhs, eq.rhs.a, EdgeColor::LPlus});
      g.edges.push_back({eq.lhs, eq.rhs.b, EdgeColor::RPlus});
    } else {
      g.edges.push_back({eq.lhs, eq.rhs.a, EdgeColor::LTimes});
      g.edges.push_back({eq.lhs, eq.rhs.b, EdgeColor::RTimes});
    }
  });
  for (std::uint32_t id = 0; id < g.id_bound; ++id)
    if (seen[id]) g.vertices.push_back(VariableId(id));
  return g;
}

DependencyGraph build_dependency_graph(const SimpleSystem& s) {
  return build_dependency_graph(s.equations());
}

namespace {

// Union-find over raw ids with path halving.
struct UnionFind {
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
  std::vector<std::uint32_t> parent;
};

// Iterative three-color DFS over a CSR adjacency built from (from,to) pairs.
bool digraph_has_cycle(std::uint32_t n,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::uint32_t> head(n + 1, 0);
  for (const auto& e : edges) ++head[e.first + 1];
  for (std::uint32_t i = 0; i < n; ++i) head[i + 1] += head[i];
  std::vector<std::uint32_t> adj(edges.size());
  {
    std::vector<std::uint32_t> cursor(head.begin(), head.end() - 1);
    for (const auto& e : edges) adj[cursor[e.first]++] = e.second;
  }
  enum : std::uint8_t { White, Gray, Black };
  std::vector<std::uint8_t> color(n, White);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (vertex, next edge)
  for (std::uint32_t root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    color[root] = Gray;
    stack.emplace_back(root, head[root]);
    while (!stack.empty()) {
      auto& [v, cursor] = stack.back();
      if (cursor == head[v + 1]) {
        color[v] = Black;
        stack.pop_back();
        continue;
      }
      std::uint32_t w = adj[cursor++];
      if (color[w] == Gray) return true;
      if (color[w] == White) {
        color[w] = Gray;
        stack.emplace_back(w, head[w]);
      }
    }
  }
  return false;
}

}  // namespace

PropagationGraph build_propagation_graph(const DependencyGraph& g) {
  PropagationGraph p;
  const std::uint32_t n = g.id_bound;
  UnionFind uf(n);
  for (const auto& e : g.edges)
    if (e.color == EdgeColor::RTimes) uf.unite(e.from.raw(), e.to.raw());

  // Dense class ids in order of first appearance over ascending variable ids.
  p.class_of_id.assign(n, 0);
  std::vector<std::uint32_t> rep_to_class(n, UINT32_MAX);
  for (VariableId v : g.vertices) {
    std::uint32_t rep = uf.find(v.raw());
    if (rep_to_class[rep] == UINT32_MAX) {
      rep_to_class[rep] = static_cast<std::uint32_t>(p.classes.size());
      p.classes.emplace_back();
    }
    std::uint32_t cls = rep_to_class[rep];
    p.class_of_id[v.raw()] = cls;
    p.classes[cls].push_back(v);
  }

  for (const auto& e : g.edges) {
    if (e.color != EdgeColor::LPlus && e.color != EdgeColor::RPlus) continue;
    p.edges.emplace_back(p.class_of_id[e.from.raw()], p.class_of_id[e.to.raw()]);
  }
  return p;
}

bool has_cycle(const DependencyGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.emplace_back(e.from.raw(), e.to.raw());
  return digraph_has_cycle(g.id_bound, edges);
}

bool has_cycle(const PropagationGraph& g) {
  return digraph_has_cycle(static_cast<std::uint32_t>(g.classes.size()), g.edges);
}

void dump_dot(const DependencyGraph& g, const VariablePool& pool,
              std::ostream& os) {
  os << "digraph dependency {\n";
  std::vector<std::string> names;
  for (VariableId v : g.vertices) names.push_back(pool.name(v));
  std::sort(names.begin(), names.end());
  for (const auto& name : names) os << "  \"" << name << "\";\n";
  for (const auto& e : g.edges)
    os << "  \"" << pool.name(e.from) << "\" -> \"" << pool.name(e.to)
       << "\" [label=\"" << edge_color_label(e.color) << "\"];\n";
  os << "}\n";
}

namespace {

std::string class_label(const std::vector<VariableId>& members,
                        const VariablePool& pool) {
  std::vector<std::string> names;
  names.reserve(members.size());
  for (VariableId v : members) names.push_back(pool.name(v));
  std::sort(names.begin(), names.end());
  std::string label = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) label += ",";
    label += names[i];
  }
  label += "}";
  return label;
}

}  // namespace

bool CycleChecker::digraph_cycle(std::uint32_t n) {
  head_.assign(n + 1, 0);
  for (const auto& e : edges_) ++head_[e.first + 1];
  for (std::uint32_t i = 0; i < n; ++i) head_[i + 1] += head_[i];
  adj_.resize(edges_.size());
  {
    std::vector<std::uint32_t>& cursor = color_helper_;
    cursor.assign(head_.begin(), head_.end() - 1);
    for (const auto& e : edges_) adj_[cursor[e.first]++] = e.second;
  }
  enum : std::uint8_t { White, Gray, Black };
  color_.assign(n, White);
  stack_.clear();
  for (std::uint32_t root = 0; root < n; ++root) {
    if (color_[root] != White) continue;
    color_[root] = Gray;
    stack_.emplace_back(root, head_[root]);
    while (!stack_.empty()) {
      auto& [v, cursor] = stack_.back();
      if (cursor == head_[v + 1]) {
        color_[v] = Black;
        stack_.pop_back();
        continue;
      }
      std::uint32_t w = adj_[cursor++];
      if (color_[w] == Gray) return true;
      if (color_[w] == White) {
        color_[w] = Gray;
        stack_.emplace_back(w, head_[w]);
      }
    }
  }
  return false;
}

CycleCheck CycleChecker::check(const EquationSet& eqs) {
  const std::uint32_t n = id_upper_bound(eqs);
  uf_.resize(n);
  std::iota(uf_.begin(), uf_.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (uf_[x] != x) {
      uf_[x] = uf_[uf_[x]];
      x = uf_[x];
    }
    return x;
  };

  edges_.clear();
  plus_edges_.clear();
  eqs.for_each([&](const EquationSet::Entry& e) {
    const auto& eq = e.eq;
    if (eq.is_var()) return;
    std::uint32_t from = eq.lhs.raw(), a = eq.rhs.a.raw(), b = eq.rhs.b.raw();
    edges_.emplace_back(from, a);
    edges_.emplace_back(from, b);
    if (eq.is_sum()) {
      plus_edges_.emplace_back(from, a);
      plus_edges_.emplace_back(from, b);
    } else {
      uf_[find(from)] = find(b);  // r* edge joins the classes
    }
  });

  if (digraph_cycle(n)) return CycleCheck::Dependency;

  edges_.clear();
  for (const auto& [from, to] : plus_edges_)
    edges_.emplace_back(find(from), find(to));
  if (digraph_cycle(n)) return CycleCheck::Propagation;
  return CycleCheck::None;
}

void dump_dot(const PropagationGraph& g, const VariablePool& pool,
              std::ostream& os) {
  os << "digraph propagation {\n";
  std::vector<std::string> labels(g.classes.size());
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    labels[i] = class_label(g.classes[i], pool);
  for (const auto& label : labels) os << "  \"" << label << "\";\n";
  // Duplicate class edges collapse in the dump.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges = g.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [from, to] : edges)
    os << "  \"" << labels[from] << "\" -> \"" << labels[to] << "\";\n";
  os << "}\n";
}

}  // namespace dunify

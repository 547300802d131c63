#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dunify/families.hpp"

namespace dunify {

namespace {

// The oracle decides whether the system has a unifier assigning every
// variable a normal-form term of depth <= D over a fixed pool of fresh
// leaves. It runs a complete backtracking search over term shapes instead of
// enumerating the space term by term: cells form a union-find forest with
// partial shape information and a per-cell depth budget, flat sum equations
// propagate structurally (a sum of normal forms is a normal form), and each
// product equation x = y * z case-splits on whether z denotes a sum (then
// x = y*z1 + y*z2 by the axiom) or not (then x is literally the product).
// Since any unifier instance is again a unifier, collapsing all leaves to a
// single one preserves solvability, so searching with one concrete leaf is
// exhaustive for the whole leaf pool.

struct Cell {
  enum Shape : std::uint8_t { Unknown, Sum, Prod };
  int parent;
  std::uint8_t rank = 0;
  Shape shape = Unknown;
  bool non_sum = false;
  int budget;
  int left = -1, right = -1;
};

struct State {
  std::vector<Cell> cells;
  std::vector<std::array<int, 3>> pending;  // (x, y, z) for x = y * z
  std::size_t head = 0;

  int make_cell(int budget) {
    int idx = static_cast<int>(cells.size());
    cells.push_back(Cell{idx, 0, Cell::Unknown, false, budget, -1, -1});
    return idx;
  }

  int find(int i) {
    while (cells[i].parent != i) {
      cells[i].parent = cells[cells[i].parent].parent;
      i = cells[i].parent;
    }
    return i;
  }

  // Caps the depth budget of a cell and, transitively, of its children.
  // Budgets only ever decrease, so this terminates even on cyclic merges
  // (which then fail by running a budget below zero).
  bool limit_budget(int c, int bound) {
    std::vector<std::pair<int, int>> work{{c, bound}};
    while (!work.empty()) {
      auto [i, b] = work.back();
      work.pop_back();
      i = find(i);
      if (cells[i].budget <= b) continue;
      cells[i].budget = b;
      if (b < 0) return false;
      if (cells[i].shape != Cell::Unknown) {
        work.emplace_back(cells[i].left, b - 1);
        work.emplace_back(cells[i].right, b - 1);
      }
    }
    return true;
  }

  bool mark_non_sum(int c) {
    c = find(c);
    if (cells[c].shape == Cell::Sum) return false;
    cells[c].non_sum = true;
    return true;
  }

  bool merge(int a, int b) {
    std::vector<std::pair<int, int>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (cells[x].rank < cells[y].rank) std::swap(x, y);
      // y joins x
      if (cells[x].rank == cells[y].rank) ++cells[x].rank;
      Cell& cx = cells[x];
      Cell& cy = cells[y];
      if (cx.shape != Cell::Unknown && cy.shape != Cell::Unknown) {
        if (cx.shape != cy.shape) return false;
        work.emplace_back(cx.left, cy.left);
        work.emplace_back(cx.right, cy.right);
      } else if (cy.shape != Cell::Unknown) {
        cx.shape = cy.shape;
        cx.left = cy.left;
        cx.right = cy.right;
      }
      cx.non_sum = cx.non_sum || cy.non_sum;
      if (cx.non_sum && cx.shape == Cell::Sum) return false;
      int budget = std::min(cx.budget, cy.budget);
      cy.parent = x;
      if (!limit_budget(x, budget)) return false;
    }
    return true;
  }

  // Constrain cell c to be a sum with the given children cells.
  bool force_sum(int c, int l, int r) {
    c = find(c);
    if (cells[c].non_sum || cells[c].shape == Cell::Prod) return false;
    if (cells[c].shape == Cell::Sum)
      return merge(cells[c].left, l) && merge(cells[c].right, r);
    if (cells[c].budget < 1) return false;
    cells[c].shape = Cell::Sum;
    cells[c].left = l;
    cells[c].right = r;
    int b = cells[c].budget;
    return limit_budget(l, b - 1) && limit_budget(r, b - 1);
  }

  // Constrain cell c to be a product with the given children; the right
  // child of a normal-form product is itself non-sum.
  bool force_prod(int c, int l, int r) {
    c = find(c);
    if (cells[c].shape == Cell::Sum) return false;
    if (!mark_non_sum(r)) return false;
    if (cells[c].shape == Cell::Prod)
      return merge(cells[c].left, l) && merge(cells[c].right, r);
    if (cells[c].budget < 1) return false;
    cells[c].shape = Cell::Prod;
    cells[c].left = l;
    cells[c].right = r;
    int b = cells[c].budget;
    return limit_budget(l, b - 1) && limit_budget(r, b - 1);
  }

  // Splits a pending product constraint for the sum case: z ~ zl + zr,
  // x ~ (y*zl) + (y*zr). Appends the two derived product constraints.
  bool split_product_over_sum(int x, int y, int z) {
    z = find(z);
    int zl, zr;
    if (cells[z].shape == Cell::Sum) {
      zl = cells[z].left;
      zr = cells[z].right;
    } else {
      if (cells[z].non_sum || cells[z].budget < 1) return false;
      zl = make_cell(cells[z].budget - 1);
      zr = make_cell(cells[z].budget - 1);
      if (!force_sum(z, zl, zr)) return false;
    }
    x = find(x);
    int a, b;
    if (cells[x].shape == Cell::Sum) {
      a = cells[x].left;
      b = cells[x].right;
    } else {
      if (cells[x].non_sum || cells[x].shape == Cell::Prod || cells[x].budget < 1)
        return false;
      a = make_cell(cells[x].budget - 1);
      b = make_cell(cells[x].budget - 1);
      if (!force_sum(x, a, b)) return false;
    }
    pending.push_back({a, y, zl});
    pending.push_back({b, y, zr});
    return true;
  }
};

class OracleSearch {
 public:
  OracleSearch(VariablePool& pool, const SimpleSystem& s, int depth,
               std::uint64_t branch_budget)
      : pool_(pool), system_(s), branch_budget_(branch_budget) {
    for (int i = 0; i < 4; ++i) leaves_[i] = pool_.fresh("_c");
    s.equations().for_each([&](const EquationSet::Entry& e) {
      int lhs = cell_of(e.eq.lhs, depth);
      int a = cell_of(e.eq.rhs.a, depth);
      switch (e.eq.rhs.kind) {
        case RhsKind::Var:
          ok_ = ok_ && root_.merge(lhs, a);
          break;
        case RhsKind::Sum:
          ok_ = ok_ && root_.force_sum(lhs, a, cell_of(e.eq.rhs.b, depth));
          break;
        case RhsKind::Prod:
          root_.pending.push_back({lhs, a, cell_of(e.eq.rhs.b, depth)});
          break;
      }
    });
  }

  OracleResult run() {
    if (!ok_) return NoUnifierUpToDepth{};
    Outcome out = search(root_);
    if (out == Outcome::Found) return UnifiableWitness{std::move(witness_)};
    if (out == Outcome::Exhausted) return NoUnifierUpToDepth{};
    return Inconclusive{};
  }

 private:
  enum class Outcome { Found, Exhausted, Truncated };

  int cell_of(VariableId v, int depth) {
    auto it = var_cell_.find(v);
    if (it != var_cell_.end()) return it->second;
    int c = root_.make_cell(depth);
    var_cell_.emplace(v, c);
    return c;
  }

  Outcome search(State& state) {
    if (branch_budget_ == 0) return Outcome::Truncated;
    --branch_budget_;
    while (state.head < state.pending.size()) {
      auto [x, y, z] = state.pending[state.head++];
      int rz = state.find(z);
      bool try_prod = state.cells[rz].shape != Cell::Sum;
      bool try_split = !state.cells[rz].non_sum &&
                       state.cells[rz].shape != Cell::Prod;
      if (try_prod && try_split) {
        State copy = state;
        bool truncated = false;
        if (copy.force_prod(x, y, z)) {
          Outcome out = search(copy);
          if (out == Outcome::Found) return out;
          truncated = truncated || out == Outcome::Truncated;
        }
        if (state.split_product_over_sum(x, y, z)) {
          Outcome out = search(state);
          if (out == Outcome::Found) return out;
          truncated = truncated || out == Outcome::Truncated;
        }
        return truncated ? Outcome::Truncated : Outcome::Exhausted;
      }
      if (try_prod) {
        if (!state.force_prod(x, y, z)) return Outcome::Exhausted;
      } else if (try_split) {
        if (!state.split_product_over_sum(x, y, z)) return Outcome::Exhausted;
      } else {
        return Outcome::Exhausted;
      }
    }
    return finish(state);
  }

  Outcome finish(State& state) {
    Substitution candidate;
    std::unordered_map<int, Term> built;
    for (const auto& [var, cell] : var_cell_)
      candidate.bind(var, build(state, state.find(cell), built));
    if (!check_unifier(system_.term_pairs(), candidate))
      return Outcome::Exhausted;  // consistent state must verify; stay sound
    witness_ = std::move(candidate);
    return Outcome::Found;
  }

  Term build(State& state, int rep, std::unordered_map<int, Term>& built) {
    if (auto it = built.find(rep); it != built.end()) return it->second;
    const Cell& c = state.cells[rep];
    Term t = [&] {
      if (c.shape == Cell::Unknown) return Term::var(leaves_[0]);
      Term l = build(state, state.find(c.left), built);
      Term r = build(state, state.find(c.right), built);
      return c.shape == Cell::Sum ? Term::sum(l, r) : Term::prod(l, r);
    }();
    built.emplace(rep, t);
    return t;
  }

  VariablePool& pool_;
  const SimpleSystem& system_;
  std::uint64_t branch_budget_;
  std::array<VariableId, 4> leaves_{};
  std::unordered_map<VariableId, int> var_cell_;
  State root_;
  Substitution witness_;
  bool ok_ = true;
};

}  // namespace

OracleResult bounded_unifier_oracle(VariablePool& pool, const SimpleSystem& s,
                                    int depth, std::uint64_t branch_budget) {
  if (depth < 0) return NoUnifierUpToDepth{};
  OracleSearch search(pool, s, depth, branch_budget);
  return search.run();
}

}  // namespace dunify

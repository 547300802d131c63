#include "dunify/families.hpp"

#include <random>
#include <stdexcept>

namespace dunify {

IndexString::IndexString(std::string digits) : digits_(std::move(digits)) {
  if (digits_.empty())
    throw std::invalid_argument("index string must be nonempty");
  for (char c : digits_)
    if (c != '1' && c != '2')
      throw std::invalid_argument("index string digits must be 1 or 2");
}

IndexString revlex(const IndexString& i) {
  std::string digits = i.digits();
  std::size_t pos = 0;
  while (pos < digits.size() && digits[pos] == '2') digits[pos++] = '1';
  if (pos == digits.size())
    throw std::invalid_argument("revlex: all-2 index has no successor");
  digits[pos] = '2';
  return IndexString(std::move(digits));
}

SimpleSystem gen_sigma(VariablePool& pool, unsigned n) {
  EquationSet eqs;
  auto xv = [&](const std::string& idx) { return pool.intern("x" + idx); };
  auto yv = [&](const std::string& idx) { return pool.intern("y" + idx); };

  // Sum equations in the listing order: the x and y chains level by level,
  // then the one extra x sum contributed by the last schema.
  for (unsigned i = 0; i <= n; ++i) {
    std::string ones(i, '1'), twos(i, '2');
    eqs.insert(FlatEquation::sum_eq(xv(ones), xv(ones + "1"), xv(ones + "2")));
    eqs.insert(FlatEquation::sum_eq(yv(twos), yv(twos + "1"), yv(twos + "2")));
  }
  std::string deep(n + 1, '1');
  eqs.insert(FlatEquation::sum_eq(xv(deep), xv(deep + "1"), xv(deep + "2")));

  VariableId t = pool.intern("T");
  eqs.insert(FlatEquation::prod_eq(xv(""), t, yv("")));
  for (unsigned i = 0; i <= n; ++i) {
    std::string ones(i, '1'), twos(i, '2');
    eqs.insert(FlatEquation::prod_eq(yv(twos + "1"), t, xv(ones + "2")));
  }
  return SimpleSystem::adopt_unchecked(std::move(eqs));
}

BigInt predicted_steps(unsigned n) {
  return (BigInt(1) << (n + 3)) - BigInt(n + 4);
}

BigInt claimed_bound(unsigned n) {
  return BigInt(n + 2) * BigInt(2 * n + 3);
}

SimpleSystem gen_failure_propagation(VariablePool& pool) {
  EquationSet eqs;
  VariableId z = pool.intern("Z");
  VariableId v1 = pool.intern("V1");
  VariableId v2 = pool.intern("V2");
  VariableId v3 = pool.intern("V3");
  eqs.insert(FlatEquation::sum_eq(z, v2, v3));
  eqs.insert(FlatEquation::prod_eq(z, v1, v3));
  return SimpleSystem::adopt_unchecked(std::move(eqs));
}

SimpleSystem gen_random_simple(VariablePool& pool, std::uint64_t seed,
                               int num_vars, int num_eqs) {
  if (num_vars < 1) throw std::invalid_argument("gen_random_simple: num_vars < 1");
  std::mt19937_64 rng(seed);
  // Modulo draws keep the construction identical across platforms.
  auto draw = [&](std::uint64_t bound) {
    return static_cast<int>(rng() % bound);
  };
  std::vector<VariableId> vars;
  vars.reserve(num_vars);
  for (int i = 0; i < num_vars; ++i)
    vars.push_back(pool.intern("v" + std::to_string(i)));
  auto any_var = [&] { return vars[draw(vars.size())]; };

  EquationSet raw;
  for (int e = 0; e < num_eqs; ++e) {
    VariableId lhs = any_var();
    int shape = draw(10);
    if (shape < 2) {
      raw.insert(FlatEquation::var_eq(lhs, any_var()));
    } else if (shape < 6) {
      raw.insert(FlatEquation::sum_eq(lhs, any_var(), any_var()));
    } else {
      VariableId left = draw(2) == 0 ? pool.intern("T") : any_var();
      raw.insert(FlatEquation::prod_eq(lhs, left, any_var()));
    }
  }
  return simplify_fixpoint(std::move(raw)).first;
}

}  // namespace dunify

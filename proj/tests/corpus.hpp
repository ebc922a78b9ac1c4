#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "recmon/formula.hpp"
#include "recmon/monitor.hpp"
#include "recmon/trace.hpp"

namespace corpus {

using namespace recmon;

inline const Alphabet& sigma3() {
  static const Alphabet s = Alphabet::parse("f,s,r");
  return s;
}

/* Grammar-directed formula generator with fixed seeds.  The modal budget
   caps modal nesting depth, which keeps the bounded oracles decisive: a
   depth-3 safety violation always surfaces within a bound-6 search. */
class FormulaGen {
 public:
  FormulaGen(uint32_t seed, Alphabet sigma)
      : rng_(seed), sigma_(std::move(sigma)) {}

  FormulaPtr shml(size_t modal_budget) {
    vars_.clear();
    return go(modal_budget, true, false);
  }
  FormulaPtr chml(size_t modal_budget) {
    vars_.clear();
    return go(modal_budget, false, true);
  }
  FormulaPtr mixed(size_t modal_budget) {
    vars_.clear();
    return go(modal_budget, true, true);
  }

 private:
  struct BoundVar {
    std::string name;
    bool guarded;
  };

  size_t roll(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }
  const Action& act() { return sigma_.at(roll(sigma_.size())); }

  FormulaPtr leaf() {
    std::vector<std::string> guarded;
    for (const BoundVar& v : vars_) {
      if (v.guarded) guarded.push_back(v.name);
    }
    size_t k = roll(guarded.empty() ? 2 : 4);
    if (k == 0) return Formula::truth();
    if (k == 1) return Formula::falsity();
    return Formula::var(guarded[roll(guarded.size())]);
  }

  FormulaPtr go(size_t budget, bool safety, bool cosafety) {
    if (budget == 0) return leaf();
    switch (roll(6)) {
      case 0:
      case 1: {  // modality: every bound variable becomes guarded below
        std::vector<BoundVar> saved = vars_;
        for (BoundVar& v : vars_) v.guarded = true;
        FormulaPtr body = go(budget - 1, safety, cosafety);
        vars_ = std::move(saved);
        Action a = act();
        if (safety && cosafety) {
          return roll(2) ? Formula::box(a, body) : Formula::diamond(a, body);
        }
        return safety ? Formula::box(a, body) : Formula::diamond(a, body);
      }
      case 2:
      case 3: {  // junction: split the budget between the operands
        size_t l = roll(budget + 1);
        FormulaPtr lhs = go(l, safety, cosafety);
        FormulaPtr rhs = go(budget - l, safety, cosafety);
        if (safety && cosafety) {
          return roll(2) ? Formula::conj(lhs, rhs) : Formula::disj(lhs, rhs);
        }
        return safety ? Formula::conj(lhs, rhs) : Formula::disj(lhs, rhs);
      }
      case 4: {  // fixpoint: the fresh variable starts out unguarded
        std::string x = "X" + std::to_string(vars_.size());
        vars_.push_back({x, false});
        FormulaPtr body = go(budget, safety, cosafety);
        vars_.pop_back();
        if (safety && cosafety) {
          return roll(2) ? Formula::greatest(x, body) : Formula::least(x, body);
        }
        return safety ? Formula::greatest(x, body) : Formula::least(x, body);
      }
      default:
        return leaf();
    }
  }

  std::mt19937 rng_;
  Alphabet sigma_;
  std::vector<BoundVar> vars_;
};

/* Monitor generator; rec bodies use their variable only under an action
   prefix, so every generated monitor is guarded. */
class MonitorGen {
 public:
  MonitorGen(uint32_t seed, Alphabet sigma)
      : rng_(seed), sigma_(std::move(sigma)) {}

  MonitorPtr regular(size_t depth) {
    vars_.clear();
    return go(depth, false);
  }
  MonitorPtr general(size_t depth) {
    vars_.clear();
    return go(depth, true);
  }

 private:
  struct BoundVar {
    std::string name;
    bool guarded;
  };

  size_t roll(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }

  MonitorPtr leaf() {
    std::vector<std::string> guarded;
    for (const BoundVar& v : vars_) {
      if (v.guarded) guarded.push_back(v.name);
    }
    size_t k = roll(guarded.empty() ? 3 : 5);
    if (k == 0) return Monitor::yes();
    if (k == 1) return Monitor::no();
    if (k == 2) return Monitor::end();
    return Monitor::var(guarded[roll(guarded.size())]);
  }

  MonitorPtr go(size_t depth, bool allow_par) {
    if (depth == 0) return leaf();
    switch (roll(7)) {
      case 0:
      case 1:
      case 2: {
        std::vector<BoundVar> saved = vars_;
        for (BoundVar& v : vars_) v.guarded = true;
        MonitorPtr body = go(depth - 1, allow_par);
        vars_ = std::move(saved);
        return Monitor::act(sigma_.at(roll(sigma_.size())), body);
      }
      case 3: {
        size_t l = roll(depth);
        return Monitor::choice(go(l, allow_par), go(depth - 1 - l, allow_par));
      }
      case 4: {
        if (!allow_par) return go(depth - 1, allow_par);
        size_t l = roll(depth);
        MonitorPtr lhs = go(l, allow_par);
        MonitorPtr rhs = go(depth - 1 - l, allow_par);
        return roll(2) ? Monitor::par_and(lhs, rhs) : Monitor::par_or(lhs, rhs);
      }
      case 5: {
        std::string x = "M" + std::to_string(vars_.size());
        vars_.push_back({x, false});
        MonitorPtr body = go(depth - 1, allow_par);
        vars_.pop_back();
        return Monitor::rec(x, body);
      }
      default:
        return leaf();
    }
  }

  std::mt19937 rng_;
  Alphabet sigma_;
  std::vector<BoundVar> vars_;
};

inline FiniteTrace random_trace(std::mt19937& rng, const Alphabet& sigma,
                                size_t max_len) {
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<size_t> pick(0, sigma.size() - 1);
  FiniteTrace t;
  size_t n = len(rng);
  for (size_t i = 0; i < n; ++i) t.push_back(sigma.at(pick(rng)));
  return t;
}

inline FinfiniteTrace random_finfinite(std::mt19937& rng,
                                       const Alphabet& sigma, size_t max_len) {
  FiniteTrace prefix = random_trace(rng, sigma, max_len);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    return FinfiniteTrace::finite(prefix);
  }
  FiniteTrace loop = random_trace(rng, sigma, max_len > 1 ? max_len - 1 : 1);
  if (loop.empty()) loop.push_back(sigma.at(0));
  return FinfiniteTrace::lasso(prefix, loop);
}

}  // namespace corpus

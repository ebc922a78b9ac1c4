#include "recmon/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace recmon {

namespace {

std::string state_name(MonitorRuntime& rt, const MonitorRuntime::StateSet& s) {
  std::vector<std::string> parts;
  parts.reserve(s.size());
  for (auto id : s) parts.push_back(print_monitor(rt.term(id)));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += "}";
  return out;
}

VerdictMark mark_of(MonitorRuntime& rt, const MonitorRuntime::StateSet& s) {
  bool y = rt.contains_yes(s);
  bool n = rt.contains_no(s);
  if (y && n) return VerdictMark::Both;
  if (y) return VerdictMark::Yes;
  if (n) return VerdictMark::No;
  return VerdictMark::None;
}

}  // namespace

VerdictAutomaton to_automaton(const MonitorPtr& m, const Alphabet& sigma,
                              size_t state_cap) {
  MonitorRuntime rt(m, sigma, state_cap);
  VerdictAutomaton a;
  a.alphabet = sigma;
  a.deterministic = false;

  std::map<MonitorRuntime::StateSet, size_t> index;
  std::vector<MonitorRuntime::StateSet> sets;
  std::deque<size_t> queue;
  auto lookup = [&](const MonitorRuntime::StateSet& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (sets.size() >= state_cap) throw StateExplosionError(state_cap);
    size_t id = sets.size();
    index.emplace(s, id);
    sets.push_back(s);
    a.names.push_back(state_name(rt, s));
    a.edges.emplace_back();
    a.marks.push_back(mark_of(rt, s));
    queue.push_back(id);
    return id;
  };

  a.initial = lookup(rt.initial());
  while (!queue.empty()) {
    size_t id = queue.front();
    queue.pop_front();
    MonitorRuntime::StateSet here = sets[id];
    for (const Action& act : sigma.actions()) {
      MonitorRuntime::StateSet next = rt.step(here, act);
      if (next.empty()) continue;  // the term set blocks on act
      a.edges[id][act] = {lookup(next)};
    }
  }
  return a;
}

VerdictAutomaton determinize(const VerdictAutomaton& a) {
  using Subset = std::vector<size_t>;  // sorted source-state ids

  // Full subset exploration first, so conflicts hiding behind an early
  // verdict are still found.
  std::map<Subset, size_t> index;
  std::vector<Subset> subsets;
  std::vector<FiniteTrace> words;  // shortest word reaching each subset
  std::deque<size_t> queue;
  auto lookup = [&](const Subset& s, const FiniteTrace& via) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    size_t id = subsets.size();
    index.emplace(s, id);
    subsets.push_back(s);
    words.push_back(via);
    queue.push_back(id);
    return id;
  };

  lookup({a.initial}, {});
  std::vector<std::map<Action, size_t>> delta;
  while (!queue.empty()) {
    size_t id = queue.front();
    queue.pop_front();
    const Subset here = subsets[id];

    bool yes = false;
    bool no = false;
    for (size_t q : here) {
      yes = yes || a.marks[q] == VerdictMark::Yes || a.marks[q] == VerdictMark::Both;
      no = no || a.marks[q] == VerdictMark::No || a.marks[q] == VerdictMark::Both;
    }
    if (yes && no) throw ConflictingVerdictsError(words[id]);

    if (delta.size() <= id) delta.resize(id + 1);
    for (const Action& act : a.alphabet.actions()) {
      Subset next;
      for (size_t q : here) {
        auto it = a.edges[q].find(act);
        if (it == a.edges[q].end()) continue;
        next.insert(next.end(), it->second.begin(), it->second.end());
      }
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      FiniteTrace via = words[id];
      via.push_back(act);
      delta[id][act] = lookup(next, via);
    }
  }
  delta.resize(subsets.size());

  // Second pass: collapse verdict subsets into shared sinks and complete
  // the transition function with a verdict-free sink.
  VerdictAutomaton d;
  d.alphabet = a.alphabet;
  d.deterministic = true;
  auto add_state = [&](std::string name, VerdictMark mark) {
    d.names.push_back(std::move(name));
    d.edges.emplace_back();
    d.marks.push_back(mark);
    return d.names.size() - 1;
  };

  constexpr size_t kUnset = static_cast<size_t>(-1);
  size_t yes_sink = kUnset;
  size_t no_sink = kUnset;
  size_t dead_sink = kUnset;
  auto sink = [&](size_t& slot, const char* name, VerdictMark mark) {
    if (slot == kUnset) slot = add_state(name, mark);
    return slot;
  };

  std::vector<size_t> rename(subsets.size(), kUnset);
  auto target_of = [&](size_t id) {
    const Subset& s = subsets[id];
    bool yes = false;
    bool no = false;
    for (size_t q : s) {
      yes = yes || a.marks[q] == VerdictMark::Yes || a.marks[q] == VerdictMark::Both;
      no = no || a.marks[q] == VerdictMark::No || a.marks[q] == VerdictMark::Both;
    }
    if (yes) return sink(yes_sink, "YES", VerdictMark::Yes);
    if (no) return sink(no_sink, "NO", VerdictMark::No);
    if (rename[id] == kUnset) {
      std::string name = "{";
      for (size_t i = 0; i < s.size(); ++i) {
        if (i) name += ",";
        name += std::to_string(s[i]);
      }
      name += "}";
      rename[id] = add_state(std::move(name), VerdictMark::None);
    }
    return rename[id];
  };

  size_t initial = target_of(0);
  d.initial = initial;
  for (size_t id = 0; id < subsets.size(); ++id) {
    size_t from = target_of(id);
    if (d.marks[from] != VerdictMark::None) continue;  // sinks filled below
    for (const Action& act : a.alphabet.actions()) {
      auto it = delta[id].find(act);
      size_t to = it == delta[id].end()
                      ? sink(dead_sink, "DEAD", VerdictMark::None)
                      : target_of(it->second);
      d.edges[from][act] = {to};
    }
  }
  for (size_t sink_id : {yes_sink, no_sink, dead_sink}) {
    if (sink_id == kUnset) continue;
    for (const Action& act : a.alphabet.actions())
      d.edges[sink_id][act] = {sink_id};
  }
  return d;
}

namespace {

/* States from which some verdict is reachable, ignoring edges out of
   verdict states themselves. */
std::vector<char> live_states(const VerdictAutomaton& a) {
  std::vector<char> live(a.state_count(), 0);
  for (size_t q = 0; q < a.state_count(); ++q)
    live[q] = a.marks[q] == VerdictMark::Yes || a.marks[q] == VerdictMark::No ||
              a.marks[q] == VerdictMark::Both;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t q = 0; q < a.state_count(); ++q) {
      if (live[q]) continue;
      for (const auto& [act, targets] : a.edges[q]) {
        for (size_t t : targets) {
          if (live[t]) {
            live[q] = 1;
            changed = true;
            break;
          }
        }
        if (live[q]) break;
      }
    }
  }
  return live;
}

struct MonitorExtractor {
  const VerdictAutomaton& a;
  const std::vector<char>& live;
  std::vector<char> on_stack;
  std::vector<std::string> stack_var;
  std::vector<char> var_used;
  size_t counter = 0;

  MonitorPtr build(size_t q) {
    if (a.marks[q] == VerdictMark::Yes) return Monitor::yes();
    if (a.marks[q] == VerdictMark::No) return Monitor::no();
    if (on_stack[q]) {
      var_used[q] = 1;
      return Monitor::var(stack_var[q]);
    }
    on_stack[q] = 1;
    stack_var[q] = "X" + std::to_string(counter++);
    var_used[q] = 0;
    MonitorPtr sum;
    for (const Action& act : a.alphabet.actions()) {
      auto it = a.edges[q].find(act);
      if (it == a.edges[q].end()) continue;
      size_t t = it->second[0];
      if (!live[t]) continue;
      MonitorPtr summand = Monitor::act(act, build(t));
      sum = sum ? Monitor::choice(sum, summand) : summand;
    }
    if (!sum) sum = Monitor::end();
    if (var_used[q]) sum = Monitor::rec(stack_var[q], sum);
    on_stack[q] = 0;
    return sum;
  }
};

}  // namespace

MonitorPtr to_regular_monitor(const VerdictAutomaton& det) {
  std::vector<char> live = live_states(det);
  if (!live[det.initial]) return Monitor::end();
  MonitorExtractor ex{det, live,
                      std::vector<char>(det.state_count(), 0),
                      std::vector<std::string>(det.state_count()),
                      std::vector<char>(det.state_count(), 0)};
  return ex.build(det.initial);
}

EquivalenceResult verdict_equivalent(const MonitorPtr& m1, const MonitorPtr& m2,
                                     const Alphabet& sigma, size_t state_cap) {
  VerdictAutomaton d1 = determinize(to_automaton(m1, sigma, state_cap));
  VerdictAutomaton d2 = determinize(to_automaton(m2, sigma, state_cap));

  std::set<std::pair<size_t, size_t>> seen;
  std::deque<std::pair<std::pair<size_t, size_t>, FiniteTrace>> queue;
  queue.push_back({{d1.initial, d2.initial}, {}});
  seen.insert({d1.initial, d2.initial});
  while (!queue.empty()) {
    auto [pair, word] = queue.front();
    queue.pop_front();
    if (d1.marks[pair.first] != d2.marks[pair.second]) {
      EquivalenceResult r;
      r.equivalent = false;
      r.counterexample = word;
      return r;
    }
    for (const Action& act : sigma.actions()) {
      std::pair<size_t, size_t> next{d1.edges[pair.first].at(act)[0],
                                     d2.edges[pair.second].at(act)[0]};
      if (seen.insert(next).second) {
        FiniteTrace via = word;
        via.push_back(act);
        queue.push_back({next, via});
      }
    }
  }
  EquivalenceResult r;
  r.equivalent = true;
  return r;
}

EquivalenceResult language_equal(const MonitorPtr& m1, const MonitorPtr& m2,
                                 VerdictSide side, const Alphabet& sigma,
                                 size_t state_cap) {
  MonitorRuntime rt1(m1, sigma, state_cap);
  MonitorRuntime rt2(m2, sigma, state_cap);
  auto accepting = [&](MonitorRuntime& rt, const MonitorRuntime::StateSet& s) {
    return side == VerdictSide::Yes ? rt.contains_yes(s) : rt.contains_no(s);
  };

  using Config = std::pair<MonitorRuntime::StateSet, MonitorRuntime::StateSet>;
  std::set<Config> seen;
  std::deque<std::pair<Config, FiniteTrace>> queue;
  Config start{rt1.initial(), rt2.initial()};
  seen.insert(start);
  queue.push_back({start, {}});
  while (!queue.empty()) {
    auto [config, word] = queue.front();
    queue.pop_front();
    bool acc1 = accepting(rt1, config.first);
    bool acc2 = accepting(rt2, config.second);
    if (acc1 != acc2) {
      EquivalenceResult r;
      r.equivalent = false;
      r.counterexample = word;
      return r;
    }
    // Tracked verdicts are irrevocable: once both sides hold one, every
    // extension agrees.
    if (acc1 && acc2) continue;
    for (const Action& act : sigma.actions()) {
      Config next{rt1.step(config.first, act), rt2.step(config.second, act)};
      if (seen.insert(next).second) {
        FiniteTrace via = word;
        via.push_back(act);
        queue.push_back({next, via});
      }
    }
  }
  EquivalenceResult r;
  r.equivalent = true;
  return r;
}

MonitorClass classify_monitor(const MonitorPtr& m, const Alphabet& sigma,
                              size_t state_cap) {
  VerdictAutomaton a = to_automaton(m, sigma, state_cap);

  auto reaches = [&](const std::function<bool(VerdictMark)>& seed) {
    std::vector<char> hit(a.state_count(), 0);
    for (size_t q = 0; q < a.state_count(); ++q) hit[q] = seed(a.marks[q]);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t q = 0; q < a.state_count(); ++q) {
        if (hit[q]) continue;
        for (const auto& [act, targets] : a.edges[q]) {
          for (size_t t : targets) {
            if (hit[t]) {
              hit[q] = 1;
              changed = true;
              break;
            }
          }
          if (hit[q]) break;
        }
      }
    }
    return hit;
  };

  std::vector<char> to_yes = reaches([](VerdictMark v) {
    return v == VerdictMark::Yes || v == VerdictMark::Both;
  });
  std::vector<char> to_no = reaches([](VerdictMark v) {
    return v == VerdictMark::No || v == VerdictMark::Both;
  });
  std::vector<char> to_any =
      reaches([](VerdictMark v) { return v != VerdictMark::None; });

  MonitorClass c;
  c.informative_sat = to_yes[a.initial];
  c.informative_viol = to_no[a.initial];
  c.persistent_sat = std::all_of(to_yes.begin(), to_yes.end(),
                                 [](char v) { return v != 0; });
  c.persistent_viol = std::all_of(to_no.begin(), to_no.end(),
                                  [](char v) { return v != 0; });
  c.persistent_any = std::all_of(to_any.begin(), to_any.end(),
                                 [](char v) { return v != 0; });
  return c;
}

std::string to_dot(const VerdictAutomaton& a) {
  std::ostringstream out;
  out << "digraph monitor {\n  rankdir=LR;\n  start [shape=point];\n";
  for (size_t q = 0; q < a.state_count(); ++q) {
    const char* shape = "circle";
    std::string suffix;
    switch (a.marks[q]) {
      case VerdictMark::Yes:
        shape = "doublecircle";
        suffix = " / yes";
        break;
      case VerdictMark::No:
        shape = "doublecircle";
        suffix = " / no";
        break;
      case VerdictMark::Both:
        shape = "doubleoctagon";
        suffix = " / yes+no";
        break;
      case VerdictMark::None:
        break;
    }
    out << "  q" << q << " [shape=" << shape << ", label=\"";
    for (char ch : a.names[q] + suffix) {
      if (ch == '"' || ch == '\\') out << '\\';
      out << ch;
    }
    out << "\"];\n";
  }
  out << "  start -> q" << a.initial << ";\n";
  for (size_t q = 0; q < a.state_count(); ++q) {
    for (const auto& [act, targets] : a.edges[q]) {
      for (size_t t : targets)
        out << "  q" << q << " -> q" << t << " [label=\"" << act << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace recmon

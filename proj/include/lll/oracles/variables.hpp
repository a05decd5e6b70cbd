#pragma once

// Variable model: independent finite random variables, events that are
// conjunctions of (variable = value) literals, and the oracle that redraws the
// variables an event depends on.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/rng.hpp"

namespace lll {

struct Literal {
  int var = 0;
  int value = 0;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Redraws the variables in `vars` from their marginals; the rest is untouched.
inline void variable_resample(std::vector<int>& state, std::span<const int> vars,
                              const std::vector<std::vector<double>>& marginals, Rng& rng) {
  for (int v : vars) {
    if (v < 0 || static_cast<std::size_t>(v) >= state.size()) throw std::out_of_range("variable out of range");
    state[static_cast<std::size_t>(v)] = static_cast<int>(sample_weighted(rng, marginals[static_cast<std::size_t>(v)]));
  }
}

class VariableSpace {
 public:
  using State = std::vector<int>;

  /// `marginals[v][k]` = Pr[X_v = k].
  explicit VariableSpace(std::vector<std::vector<double>> marginals) : marginals_(std::move(marginals)) {
    for (const auto& m : marginals_) {
      if (m.empty()) throw InputError("variable with empty domain");
      double s = 0;
      for (double w : m) {
        if (!(w >= 0)) throw InputError("negative variable probability");
        s += w;
      }
      if (std::abs(s - 1) > 1e-9) throw InputError("variable marginal does not sum to 1");
    }
  }

  static VariableSpace fair_bits(int count) {
    return VariableSpace(std::vector<std::vector<double>>(static_cast<std::size_t>(count), {0.5, 0.5}));
  }

  /// Adds the event "every literal holds"; returns its index.
  int add_event(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) { return a.var < b.var; });
    for (std::size_t k = 0; k < lits.size(); ++k) {
      const Literal& l = lits[k];
      if (l.var < 0 || l.var >= num_variables()) throw InputError("literal variable out of range");
      if (l.value < 0 || l.value >= static_cast<int>(marginals_[static_cast<std::size_t>(l.var)].size()))
        throw InputError("literal value out of range");
      if (k > 0 && lits[k - 1].var == l.var) throw InputError("variable repeated in one event");
    }
    std::vector<int> vars;
    for (const auto& l : lits) vars.push_back(l.var);
    events_.push_back(std::move(lits));
    vars_.push_back(std::move(vars));
    return num_events() - 1;
  }

  int num_variables() const noexcept { return static_cast<int>(marginals_.size()); }
  int num_events() const noexcept { return static_cast<int>(events_.size()); }
  const std::vector<Literal>& event(int i) const { return events_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& variables_of(int i) const { return vars_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::vector<double>>& marginals() const noexcept { return marginals_; }

  State sample(Rng& rng) const {
    State s(marginals_.size());
    for (std::size_t v = 0; v < s.size(); ++v) s[v] = static_cast<int>(sample_weighted(rng, marginals_[v]));
    return s;
  }

  bool holds(int i, const State& s) const {
    for (const auto& l : event(i))
      if (s[static_cast<std::size_t>(l.var)] != l.value) return false;
    return true;
  }

  void resample(int i, State& s, Rng& rng) const {
    if (!holds(i, s)) throw OracleError("variable oracle called on event " + std::to_string(i) + " that does not hold");
    variable_resample(s, vars_[static_cast<std::size_t>(i)], marginals_, rng);
  }

  /// Events depending on a common variable.
  bool adjacent(int i, int j) const {
    if (i == j) return false;
    const auto& a = variables_of(i);
    const auto& b = variables_of(j);
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
      if (a[x] == b[y]) return true;
      a[x] < b[y] ? ++x : ++y;
    }
    return false;
  }

  double probability(int i) const {
    double r = 1;
    for (const auto& l : event(i)) r *= marginals_[static_cast<std::size_t>(l.var)][static_cast<std::size_t>(l.value)];
    return r;
  }

  DependencyGraph graph() const {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < num_events(); ++i)
      for (int j = i + 1; j < num_events(); ++j)
        if (adjacent(i, j)) e.emplace_back(i, j);
    return DependencyGraph(num_events(), e);
  }

 private:
  std::vector<std::vector<double>> marginals_;
  std::vector<std::vector<Literal>> events_;
  std::vector<std::vector<int>> vars_;
};

}  // namespace lll

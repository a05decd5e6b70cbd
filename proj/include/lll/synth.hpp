#pragma once

// Explicit finite probability spaces: deciding whether a resampling oracle
// exists for an event and constructing one by solving a transportation
// problem exactly.
//
// For event i, let the signature of a state be the set of events outside
// Gamma+(i) that it satisfies. Mass may move from u in E_i (weight
// mu(u)/mu(E_i)) to w (weight mu(w)) only when sig(w) is contained in sig(u).
// A feasible transport is a kernel satisfying (R1) and (R2); infeasibility is
// witnessed by a set of sources whose mass exceeds that of all states they
// may reach.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lll/detail/max_flow.hpp"
#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/rational.hpp"
#include "lll/rng.hpp"

namespace lll {

inline constexpr int kExplicitStateCap = 4096;
inline constexpr int kLopsidependencyCap = 20;

class ExplicitSpace {
 public:
  ExplicitSpace(std::vector<Rational> prob, std::vector<std::vector<int>> events, DependencyGraph graph)
      : prob_(std::move(prob)), events_(std::move(events)), graph_(std::move(graph)) {
    const int k = num_states();
    if (k == 0) throw InputError("explicit space has no states");
    if (k > kExplicitStateCap) throw CapExceeded("explicit space exceeds " + std::to_string(kExplicitStateCap) + " states");
    if (num_events() > kMaskBits) throw CapExceeded("explicit space supports at most 64 events");
    if (graph_.n() != num_events()) throw InputError("graph size does not match the number of events");
    Rational total = 0;
    for (const auto& p : prob_) {
      if (p < 0) throw InputError("negative state probability");
      total += p;
    }
    if (total != 1) throw InputError("state probabilities do not sum to 1");
    sig_.assign(static_cast<std::size_t>(k), 0);
    for (int e = 0; e < num_events(); ++e) {
      auto& ev = events_[static_cast<std::size_t>(e)];
      std::sort(ev.begin(), ev.end());
      ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
      for (int s : ev) {
        if (s < 0 || s >= k) throw InputError("event refers to an unknown state");
        sig_[static_cast<std::size_t>(s)] |= bit(e);
      }
    }
  }

  int num_states() const noexcept { return static_cast<int>(prob_.size()); }
  int num_events() const noexcept { return static_cast<int>(events_.size()); }
  const std::vector<Rational>& prob() const noexcept { return prob_; }
  const Rational& prob(int s) const { return prob_.at(static_cast<std::size_t>(s)); }
  const std::vector<int>& event(int i) const { return events_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::vector<int>>& events() const noexcept { return events_; }
  const DependencyGraph& graph() const noexcept { return graph_; }

  /// Events holding in state s, as a mask.
  Mask events_at(int s) const { return sig_.at(static_cast<std::size_t>(s)); }
  bool holds(int i, int s) const { return (events_at(s) >> i) & 1; }

  Rational probability(int i) const {
    Rational r = 0;
    for (int s : event(i)) r += prob(s);
    return r;
  }

  /// Events outside the closed neighborhood of i.
  Mask non_neighbors(int i) const { return full_mask(num_events()) & ~graph_.closed_mask(i); }

 private:
  std::vector<Rational> prob_;
  std::vector<std::vector<int>> events_;
  DependencyGraph graph_;
  std::vector<Mask> sig_;
};

/// One transition row: (target state, probability), targets ascending.
using KernelRow = std::vector<std::pair<int, Rational>>;

struct SynthesizedOracle {
  int event = 0;
  /// rows[s] is defined for states s in the event; empty otherwise.
  std::vector<KernelRow> rows;
};

struct SynthesisResult {
  bool feasible = false;
  SynthesizedOracle oracle;        // when feasible
  std::vector<int> violating_set;  // when infeasible: Hall-violating sources
  Rational source_mass = 0;        // sum of p_u over violating_set
  Rational reachable_mass = 0;     // sum of p_w over states they may reach
};

/// Solves the transportation problem for event i. States are grouped by
/// signature, which leaves the feasibility question unchanged and keeps the
/// flow network small. States of probability zero inside E_i that form a
/// class of their own stay where they are.
inline SynthesisResult synthesize(const ExplicitSpace& space, int i) {
  if (i < 0 || i >= space.num_events()) throw std::out_of_range("event index out of range");
  const Rational pe = space.probability(i);
  if (pe == 0) throw Error("cannot synthesize an oracle for a zero-probability event");
  const Mask outside = space.non_neighbors(i);
  const int k = space.num_states();

  std::map<Mask, int> u_class, w_class;
  std::vector<Mask> u_sig, w_sig;
  std::vector<Rational> pu, pw;
  std::vector<int> class_of_u(static_cast<std::size_t>(k), -1), class_of_w(static_cast<std::size_t>(k), -1);
  for (int s = 0; s < k; ++s) {
    const Mask sig = space.events_at(s) & outside;
    auto [it, fresh] = w_class.try_emplace(sig, static_cast<int>(w_sig.size()));
    if (fresh) {
      w_sig.push_back(sig);
      pw.emplace_back(0);
    }
    class_of_w[static_cast<std::size_t>(s)] = it->second;
    pw[static_cast<std::size_t>(it->second)] += space.prob(s);
    if (!space.holds(i, s)) continue;
    auto [jt, ufresh] = u_class.try_emplace(sig, static_cast<int>(u_sig.size()));
    if (ufresh) {
      u_sig.push_back(sig);
      pu.emplace_back(0);
    }
    class_of_u[static_cast<std::size_t>(s)] = jt->second;
    pu[static_cast<std::size_t>(jt->second)] += space.prob(s) / pe;
  }

  const int nu = static_cast<int>(u_sig.size()), nw = static_cast<int>(w_sig.size());
  const int src = 0, sink = 1;
  auto unode = [&](int a) { return 2 + a; };
  auto wnode = [&](int b) { return 2 + nu + b; };
  detail::MaxFlow<Rational> flow(2 + nu + nw);
  std::vector<std::vector<std::pair<int, int>>> mid_arcs(static_cast<std::size_t>(nu));  // (b, arc index)
  for (int a = 0; a < nu; ++a) flow.add_edge(src, unode(a), pu[static_cast<std::size_t>(a)]);
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nw; ++b)
      if ((w_sig[static_cast<std::size_t>(b)] & ~u_sig[static_cast<std::size_t>(a)]) == 0)
        mid_arcs[static_cast<std::size_t>(a)].emplace_back(b, flow.add_edge(unode(a), wnode(b), Rational(2)));
  for (int b = 0; b < nw; ++b) flow.add_edge(wnode(b), sink, pw[static_cast<std::size_t>(b)]);
  const Rational value = flow.run(src, sink);

  SynthesisResult res;
  if (value == 1) {
    res.feasible = true;
    res.oracle.event = i;
    res.oracle.rows.resize(static_cast<std::size_t>(k));
    for (int u : space.event(i)) {
      const int a = class_of_u[static_cast<std::size_t>(u)];
      KernelRow& row = res.oracle.rows[static_cast<std::size_t>(u)];
      if (pu[static_cast<std::size_t>(a)] == 0) {
        row.emplace_back(u, Rational(1));
        continue;
      }
      // K(u, w) = F(a, b) / PU(a) * mu(w) / PW(b).
      std::vector<Rational> to_class(static_cast<std::size_t>(nw), Rational(0));
      for (auto [b, arc] : mid_arcs[static_cast<std::size_t>(a)])
        to_class[static_cast<std::size_t>(b)] = flow.arcs(unode(a))[static_cast<std::size_t>(arc)].flow;
      for (int w = 0; w < k; ++w) {
        const int b = class_of_w[static_cast<std::size_t>(w)];
        const Rational& f = to_class[static_cast<std::size_t>(b)];
        if (f == 0 || space.prob(w) == 0) continue;
        row.emplace_back(w, f / pu[static_cast<std::size_t>(a)] * space.prob(w) / pw[static_cast<std::size_t>(b)]);
      }
    }
    return res;
  }

  // Residual-reachable sources: their mass cannot be routed into the states
  // they may reach.
  const auto seen = flow.reachable(src);
  std::vector<char> reach_w(static_cast<std::size_t>(nw), 0);
  for (int u : space.event(i)) {
    const int a = class_of_u[static_cast<std::size_t>(u)];
    if (!seen[static_cast<std::size_t>(unode(a))]) continue;
    res.violating_set.push_back(u);
    res.source_mass += space.prob(u) / pe;
    for (auto [b, arc] : mid_arcs[static_cast<std::size_t>(a)]) reach_w[static_cast<std::size_t>(b)] = 1;
  }
  for (int w = 0; w < k; ++w)
    if (reach_w[static_cast<std::size_t>(class_of_w[static_cast<std::size_t>(w)])]) res.reachable_mass += space.prob(w);
  return res;
}

/// A resampling oracle for event i exists (lopsided association).
inline bool check_lopsided_association(const ExplicitSpace& space, int i) { return synthesize(space, i).feasible; }

/// Pr[E_i | no E_j for j in J] <= Pr[E_i] for every J outside Gamma+(i) with
/// Pr[no E_j for j in J] > 0.
inline bool check_lopsidependency(const ExplicitSpace& space, int i) {
  const Mask outside = space.non_neighbors(i);
  const auto others = from_mask(outside);
  if (static_cast<int>(others.size()) > kLopsidependencyCap)
    throw CapExceeded("lopsidependency check over more than " + std::to_string(kLopsidependencyCap) + " events");
  const Rational pe = space.probability(i);
  const std::size_t subsets = std::size_t{1} << others.size();
  for (std::size_t code = 0; code < subsets; ++code) {
    Mask J = 0;
    for (std::size_t b = 0; b < others.size(); ++b)
      if (code >> b & 1) J |= bit(others[b]);
    Rational avoid = 0, both = 0;
    for (int s = 0; s < space.num_states(); ++s) {
      if (space.events_at(s) & J) continue;
      avoid += space.prob(s);
      if (space.holds(i, s)) both += space.prob(s);
    }
    if (avoid > 0 && both > pe * avoid) return false;
  }
  return true;
}

/// E_i is independent of the events outside Gamma+(i): every joint outcome of
/// those events has the product probability together with E_i.
inline bool check_dependency(const ExplicitSpace& space, int i) {
  const Mask outside = space.non_neighbors(i);
  const Rational pe = space.probability(i);
  std::map<Mask, std::pair<Rational, Rational>> atoms;  // sig -> (mu, mu with E_i)
  for (int s = 0; s < space.num_states(); ++s) {
    auto& [all, with] = atoms[space.events_at(s) & outside];
    all += space.prob(s);
    if (space.holds(i, s)) with += space.prob(s);
  }
  return std::all_of(atoms.begin(), atoms.end(), [&](const auto& kv) { return kv.second.second == pe * kv.second.first; });
}

/// Exact (R1): pushing mu conditioned on E_i through the kernel gives mu.
inline bool kernel_preserves_measure(const ExplicitSpace& space, const SynthesizedOracle& o) {
  const Rational pe = space.probability(o.event);
  std::vector<Rational> out(static_cast<std::size_t>(space.num_states()), Rational(0));
  for (int u : space.event(o.event)) {
    const auto& row = o.rows.at(static_cast<std::size_t>(u));
    Rational sum = 0;
    for (const auto& [w, q] : row) {
      if (q < 0) return false;
      sum += q;
      out[static_cast<std::size_t>(w)] += space.prob(u) / pe * q;
    }
    if (sum != 1) return false;
  }
  return out == space.prob();
}

/// Exact (R2): count of kernel transitions that make some event outside
/// Gamma+(i) start to hold.
inline std::size_t kernel_r2_violations(const ExplicitSpace& space, const SynthesizedOracle& o) {
  const Mask outside = space.non_neighbors(o.event);
  std::size_t bad = 0;
  for (int u : space.event(o.event))
    for (const auto& [w, q] : o.rows.at(static_cast<std::size_t>(u)))
      if (q > 0 && (space.events_at(w) & outside & ~space.events_at(u)) != 0) ++bad;
  return bad;
}

/// Resampling bundle on an explicit space with a synthesized oracle per event.
class ExplicitSpaceBundle {
 public:
  using State = int;

  explicit ExplicitSpaceBundle(ExplicitSpace space) : space_(std::move(space)) {
    for (const auto& p : space_.prob()) cumulative_.push_back(to_double(p));
    for (int i = 0; i < space_.num_events(); ++i) {
      if (space_.probability(i) == 0) {
        oracles_.emplace_back();
        continue;
      }
      auto res = synthesize(space_, i);
      if (!res.feasible) throw Error("no resampling oracle exists for event " + std::to_string(i));
      oracles_.push_back(std::move(res.oracle));
    }
    rows_.resize(oracles_.size());
    for (std::size_t i = 0; i < oracles_.size(); ++i) {
      rows_[i].resize(oracles_[i].rows.size());
      for (std::size_t u = 0; u < oracles_[i].rows.size(); ++u) {
        auto& r = rows_[i][u];
        for (const auto& [w, q] : oracles_[i].rows[u]) {
          r.targets.push_back(w);
          r.weights.push_back(to_double(q));
        }
      }
    }
  }

  const ExplicitSpace& space() const noexcept { return space_; }
  const SynthesizedOracle& oracle(int i) const { return oracles_.at(static_cast<std::size_t>(i)); }

  int num_events() const noexcept { return space_.num_events(); }
  State sample(Rng& rng) const { return static_cast<int>(sample_weighted(rng, cumulative_)); }
  bool holds(int i, State s) const { return space_.holds(i, s); }

  void resample(int i, State& s, Rng& rng) const {
    if (!holds(i, s)) throw OracleError("synthesized oracle called on event " + std::to_string(i) + " that does not hold");
    const auto& r = rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
    s = r.targets[sample_weighted(rng, r.weights)];
  }

  bool adjacent(int i, int j) const { return space_.graph().adjacent(i, j); }

 private:
  struct Row {
    std::vector<int> targets;
    std::vector<double> weights;
  };
  ExplicitSpace space_;
  std::vector<double> cumulative_;  // state weights
  std::vector<SynthesizedOracle> oracles_;
  std::vector<std::vector<Row>> rows_;
};

/// Product of independent finite variables as an explicit space: state index
/// is the mixed-radix encoding with variable 0 least significant. Events are
/// given as predicates on the value vector.
template <class Pred>
ExplicitSpace explicit_product_space(const std::vector<std::vector<Rational>>& marginals,
                                     const std::vector<Pred>& events, const DependencyGraph& g) {
  std::size_t total = 1;
  for (const auto& m : marginals) {
    total *= m.size();
    if (total > static_cast<std::size_t>(kExplicitStateCap)) throw CapExceeded("product space too large");
  }
  std::vector<Rational> prob(total);
  std::vector<std::vector<int>> ev(events.size());
  std::vector<int> values(marginals.size());
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t code = s;
    Rational p = 1;
    for (std::size_t v = 0; v < marginals.size(); ++v) {
      values[v] = static_cast<int>(code % marginals[v].size());
      code /= marginals[v].size();
      p *= marginals[v][static_cast<std::size_t>(values[v])];
    }
    prob[s] = p;
    for (std::size_t e = 0; e < events.size(); ++e)
      if (events[e](values)) ev[e].push_back(static_cast<int>(s));
  }
  return ExplicitSpace(std::move(prob), std::move(ev), g);
}

}  // namespace lll

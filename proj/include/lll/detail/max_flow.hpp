#pragma once

// Edmonds-Karp maximum flow, generic over the capacity type so that it runs
// on exact rationals.

#include <queue>
#include <vector>

namespace lll::detail {

template <class Cap>
class MaxFlow {
 public:
  struct Arc {
    int to;
    int rev;
    Cap cap;   // residual capacity
    Cap flow;  // flow pushed along this arc (negative on reverse arcs)
  };

  explicit MaxFlow(int nodes) : g_(static_cast<std::size_t>(nodes)) {}

  /// Returns the index of the forward arc inside arcs(u).
  int add_edge(int u, int v, const Cap& cap) {
    auto& fu = g_[static_cast<std::size_t>(u)];
    auto& fv = g_[static_cast<std::size_t>(v)];
    fu.push_back({v, static_cast<int>(fv.size()), cap, Cap(0)});
    fv.push_back({u, static_cast<int>(fu.size()) - 1, Cap(0), Cap(0)});
    return static_cast<int>(fu.size()) - 1;
  }

  Cap run(int s, int t) {
    Cap total(0);
    const auto n = g_.size();
    for (;;) {
      std::vector<int> prev_node(n, -1), prev_arc(n, -1);
      std::queue<int> q;
      q.push(s);
      prev_node[static_cast<std::size_t>(s)] = s;
      while (!q.empty() && prev_node[static_cast<std::size_t>(t)] < 0) {
        const int u = q.front();
        q.pop();
        for (std::size_t k = 0; k < g_[static_cast<std::size_t>(u)].size(); ++k) {
          const Arc& a = g_[static_cast<std::size_t>(u)][k];
          if (a.cap > Cap(0) && prev_node[static_cast<std::size_t>(a.to)] < 0) {
            prev_node[static_cast<std::size_t>(a.to)] = u;
            prev_arc[static_cast<std::size_t>(a.to)] = static_cast<int>(k);
            q.push(a.to);
          }
        }
      }
      if (prev_node[static_cast<std::size_t>(t)] < 0) return total;
      Cap push = arc_into(t, prev_node, prev_arc).cap;
      for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
        const Arc& a = arc_into(v, prev_node, prev_arc);
        if (a.cap < push) push = a.cap;
      }
      for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
        Arc& a = arc_into(v, prev_node, prev_arc);
        a.cap -= push;
        a.flow += push;
        Arc& r = g_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a.rev)];
        r.cap += push;
        r.flow -= push;
      }
      total += push;
    }
  }

  /// Nodes reachable from s in the residual graph (the source side of a
  /// minimum cut once run() has finished).
  std::vector<char> reachable(int s) const {
    std::vector<char> seen(g_.size(), 0);
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Arc& a : g_[static_cast<std::size_t>(u)])
        if (a.cap > Cap(0) && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = 1;
          stack.push_back(a.to);
        }
    }
    return seen;
  }

  const std::vector<Arc>& arcs(int u) const { return g_[static_cast<std::size_t>(u)]; }

 private:
  Arc& arc_into(int v, const std::vector<int>& prev_node, const std::vector<int>& prev_arc) {
    return g_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
             [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
  }

  std::vector<std::vector<Arc>> g_;
};

}  // namespace lll::detail

#pragma once

// Product of independent probability spaces. A joint event is a conjunction
// of component events, at most one per space; its oracle resamples each
// component in turn with independent randomness.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lll/engine.hpp"
#include "lll/error.hpp"
#include "lll/rng.hpp"

namespace lll {

struct Component {
  int space = 0;
  int event = 0;
  friend bool operator==(const Component&, const Component&) = default;
  friend auto operator<=>(const Component&, const Component&) = default;
};

/// Joint event: components sorted by space index.
using JointEvent = std::vector<Component>;

template <ResamplingBundle Space>
class ProductBundle {
 public:
  using State = std::vector<typename Space::State>;

  explicit ProductBundle(std::vector<Space> spaces) : spaces_(std::move(spaces)) {}

  int add_event(JointEvent ev) {
    std::sort(ev.begin(), ev.end());
    for (std::size_t k = 0; k < ev.size(); ++k) {
      const auto& c = ev[k];
      if (c.space < 0 || c.space >= num_spaces()) throw InputError("joint event names an unknown space");
      if (c.event < 0 || c.event >= spaces_[static_cast<std::size_t>(c.space)].num_events())
        throw InputError("joint event names an unknown component event");
      if (k > 0 && ev[k - 1].space == c.space) throw InputError("joint event uses a space twice");
    }
    events_.push_back(std::move(ev));
    return num_events() - 1;
  }

  int num_spaces() const noexcept { return static_cast<int>(spaces_.size()); }
  const Space& space(int s) const { return spaces_.at(static_cast<std::size_t>(s)); }
  Space& space(int s) { return spaces_.at(static_cast<std::size_t>(s)); }
  int num_events() const noexcept { return static_cast<int>(events_.size()); }
  const JointEvent& event(int i) const { return events_.at(static_cast<std::size_t>(i)); }

  State sample(Rng& rng) const {
    State s;
    s.reserve(spaces_.size());
    for (const auto& sp : spaces_) s.push_back(sp.sample(rng));
    return s;
  }

  bool holds(int i, const State& s) const {
    for (const auto& c : event(i))
      if (!space(c.space).holds(c.event, s[static_cast<std::size_t>(c.space)])) return false;
    return true;
  }

  void resample(int i, State& s, Rng& rng) const {
    if (!holds(i, s)) throw OracleError("product oracle called on event " + std::to_string(i) + " that does not hold");
    for (const auto& c : event(i)) space(c.space).resample(c.event, s[static_cast<std::size_t>(c.space)], rng);
  }

  /// Some space carries components of both events that coincide or are
  /// adjacent there.
  bool adjacent(int i, int j) const {
    if (i == j) return false;
    const auto& a = event(i);
    const auto& b = event(j);
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
      if (a[x].space < b[y].space) {
        ++x;
      } else if (b[y].space < a[x].space) {
        ++y;
      } else {
        if (a[x].event == b[y].event || space(a[x].space).adjacent(a[x].event, b[y].event)) return true;
        ++x;
        ++y;
      }
    }
    return false;
  }

  double probability(int i) const {
    double r = 1;
    for (const auto& c : event(i)) r *= space(c.space).probability(c.event);
    return r;
  }

 private:
  std::vector<Space> spaces_;
  std::vector<JointEvent> events_;
};

}  // namespace lll

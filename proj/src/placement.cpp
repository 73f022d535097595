// Copyright 2026 The qccd-sta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qccd/placement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace qccd {

TrapId Placement::trap_of(Qubit q) const {
  const auto& w = where_.at(q);
  if (!w) {
    throw std::logic_error(fmt::format("qubit {} is not placed", q));
  }
  return *w;
}

std::size_t Placement::position_of(Qubit q) const {
  const auto& c = chains_.at(trap_of(q));
  return static_cast<std::size_t>(std::find(c.begin(), c.end(), q) - c.begin());
}

bool Placement::complete() const {
  return std::all_of(where_.begin(), where_.end(),
                     [](const auto& w) { return w.has_value(); });
}

void Placement::append(Qubit q, TrapId t) {
  if (where_.at(q)) {
    throw std::logic_error(fmt::format("qubit {} placed twice", q));
  }
  chains_.at(t).push_back(q);
  where_[q] = t;
}

void Placement::move_to_boundary(Qubit q, Side side) {
  auto& c = chains_.at(trap_of(q));
  c.erase(std::find(c.begin(), c.end(), q));
  if (side == Side::left) {
    c.insert(c.begin(), q);
  } else {
    c.push_back(q);
  }
}

DeviceState Placement::to_state(const DeviceSpec& spec) const {
  if (spec.n_traps != chains_.size()) {
    throw InputError(fmt::format("placement has {} traps, device has {}",
                                 chains_.size(), spec.n_traps));
  }
  DeviceState state(spec);
  for (TrapId t = 0; t < chains_.size(); ++t) {
    for (const Qubit q : chains_[t]) {
      state.load(q, t);
    }
  }
  return state;
}

Placement Placement::from_chains(std::vector<std::vector<Qubit>> chains,
                                 std::size_t n_qubits) {
  Placement p(chains.size(), n_qubits);
  for (TrapId t = 0; t < chains.size(); ++t) {
    for (const Qubit q : chains[t]) {
      p.append(q, t);
    }
  }
  return p;
}

std::vector<RatioEntry> compute_ratios(const InteractionGraph& g,
                                       std::size_t n_qubits) {
  std::vector<RatioEntry> out;
  for (Qubit q = 0; q < g.n_qubits(); ++q) {
    if (g.degree(q) > 0) {
      out.push_back({q, g.degree(q), g.strength(q), n_qubits});
    }
  }
  std::sort(out.begin(), out.end(), [](const RatioEntry& x, const RatioEntry& y) {
    if (x.degree != y.degree) {
      return x.degree > y.degree;
    }
    if (x.strength != y.strength) {
      return x.strength > y.strength;
    }
    return x.qubit < y.qubit;
  });
  return out;
}

std::vector<TemporalEntry> compute_temporal_weights(const Circuit& c,
                                                    const SliceList& slices) {
  std::map<QubitPair, double> acc;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    const double w = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(
                                         s, 100000)));
    for (const auto gi : slices.slices[s]) {
      const auto& g = c.gate(gi);
      // A qubit occurs once per slice, so each pair contributes at most
      // one indicator per slice.
      acc[make_pair_key(g.operands[0], g.operands[1])] += w;
    }
  }
  std::vector<TemporalEntry> out;
  out.reserve(acc.size());
  for (const auto& [pair, w] : acc) {
    out.push_back({pair, w});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TemporalEntry& x, const TemporalEntry& y) {
                     return x.weight > y.weight;
                   });
  return out;
}

StaContext::StaContext(const Circuit& c, const DeviceSpec& spec)
    : spec_(spec),
      graph_(spec.topology, spec.n_traps),
      placement_(spec.n_traps, c.n_qubits()),
      in_ratio_(c.n_qubits(), false) {
  spec.validate();
  if (c.n_qubits() > spec.total_capacity()) {
    throw CapacityError(fmt::format(
        "{} qubits do not fit on {} ({} physical slots)", c.n_qubits(),
        spec.summary(), spec.total_capacity()));
  }
  const auto ig = interaction_graph(c);
  ratios_ = compute_ratios(ig, c.n_qubits());
  for (const auto& r : ratios_) {
    in_ratio_[r.qubit] = true;
  }
  temporal_ = compute_temporal_weights(c, compute_slices(c));
  live_.assign(temporal_.size(), true);
}

std::optional<Qubit> StaContext::ratio_head() const {
  for (const auto& r : ratios_) {
    if (in_ratio_[r.qubit]) {
      return r.qubit;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> StaContext::first_pair_of(Qubit q) const {
  for (std::size_t i = 0; i < temporal_.size(); ++i) {
    if (live_[i] &&
        (temporal_[i].pair.first == q || temporal_[i].pair.second == q)) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t StaContext::usable_free(TrapId t) const {
  const auto n = placement_.count(t);
  return n >= spec_.usable_capacity() ? 0 : spec_.usable_capacity() - n;
}

std::size_t StaContext::physical_free(TrapId t) const {
  return spec_.capacity - placement_.count(t);
}

namespace {

// Nearest trap to `from` satisfying `has_room`; ties go to the lower index.
template <typename Pred>
std::optional<TrapId> nearest_trap(const TrapGraph& g, TrapId from,
                                   Pred has_room) {
  std::optional<TrapId> best;
  for (TrapId t = 0; t < g.size(); ++t) {
    if (has_room(t) &&
        (!best || g.distance(from, t) < g.distance(from, *best))) {
      best = t;
    }
  }
  return best;
}

// Closest pair of distinct traps each satisfying `has_room`.
template <typename Pred>
std::optional<std::pair<TrapId, TrapId>> closest_trap_pair(const TrapGraph& g,
                                                           Pred has_room) {
  std::optional<std::pair<TrapId, TrapId>> best;
  for (TrapId a = 0; a < g.size(); ++a) {
    if (!has_room(a)) {
      continue;
    }
    for (TrapId b = a + 1; b < g.size(); ++b) {
      if (has_room(b) &&
          (!best || g.distance(a, b) < g.distance(best->first, best->second))) {
        best = {a, b};
      }
    }
  }
  return best;
}

}  // namespace

void StaContext::place_near(Qubit q, TrapId partner_trap) {
  auto t = nearest_trap(graph_, partner_trap,
                        [&](TrapId x) { return usable_free(x) > 0; });
  if (!t) {
    t = nearest_trap(graph_, partner_trap,
                     [&](TrapId x) { return physical_free(x) > 0; });
  }
  if (!t) {
    throw CapacityError(fmt::format("no physical slot left for qubit {}", q));
  }
  placement_.append(q, *t);
}

void StaContext::place_pair(Qubit first, Qubit second) {
  for (TrapId t = 0; t < spec_.n_traps; ++t) {
    if (usable_free(t) >= 2) {
      placement_.append(first, t);
      placement_.append(second, t);
      return;
    }
  }
  if (const auto tp = closest_trap_pair(
          graph_, [&](TrapId x) { return usable_free(x) > 0; })) {
    placement_.append(first, tp->first);
    placement_.append(second, tp->second);
    return;
  }
  // At most one usable slot remains anywhere: take it, then overflow the
  // partner into excess space next to it.
  for (TrapId t = 0; t < spec_.n_traps; ++t) {
    if (usable_free(t) > 0) {
      placement_.append(first, t);
      place_near(second, t);
      return;
    }
  }
  for (TrapId t = 0; t < spec_.n_traps; ++t) {
    if (physical_free(t) >= 2) {
      placement_.append(first, t);
      placement_.append(second, t);
      return;
    }
  }
  if (const auto tp = closest_trap_pair(
          graph_, [&](TrapId x) { return physical_free(x) > 0; })) {
    placement_.append(first, tp->first);
    placement_.append(second, tp->second);
    return;
  }
  throw CapacityError(
      fmt::format("no physical slots left for qubits {} and {}", first, second));
}

void StaContext::place_isolated(Qubit q) {
  for (const bool usable_only : {true, false}) {
    for (std::size_t k = 0; k < spec_.n_traps; ++k) {
      const TrapId t =
          static_cast<TrapId>((next_round_robin_ + k) % spec_.n_traps);
      const bool room = usable_only ? usable_free(t) > 0 : physical_free(t) > 0;
      if (room) {
        placement_.append(q, t);
        next_round_robin_ = static_cast<TrapId>((t + 1) % spec_.n_traps);
        return;
      }
    }
  }
  throw CapacityError(fmt::format("no physical slot left for qubit {}", q));
}

void map_qubit(Qubit q1, StaContext& ctx) {
  const auto pos = ctx.first_pair_of(q1);
  if (!pos) {
    // Every pair of q1 was consumed by earlier placements.
    if (ctx.in_ratio_list(q1)) {
      ctx.place_isolated(q1);
      ctx.remove_from_ratios(q1);
    }
    return;
  }
  const auto& pair = ctx.temporal()[*pos].pair;
  const Qubit q2 = pair.first == q1 ? pair.second : pair.first;

  // Does q2 hold a stronger pair with some third qubit? Pair indices
  // strictly decrease along the recursion, so it terminates.
  for (std::size_t i = 0; i < *pos; ++i) {
    const auto& other = ctx.temporal()[i].pair;
    if (ctx.pair_live(i) && (other.first == q2 || other.second == q2) &&
        other.first != q1 && other.second != q1) {
      map_qubit(q2, ctx);
      break;
    }
  }

  if (ctx.in_ratio_list(q1) || ctx.in_ratio_list(q2)) {
    auto& p = ctx.placement();
    const bool p1 = p.is_placed(q1);
    const bool p2 = p.is_placed(q2);
    if (!p1 && !p2) {
      ctx.place_pair(q1, q2);
    } else if (!p1) {
      ctx.place_near(q1, p.trap_of(q2));
    } else if (!p2) {
      ctx.place_near(q2, p.trap_of(q1));
    }
    ctx.remove_from_ratios(q1);
    ctx.remove_from_ratios(q2);
    ctx.remove_pair(*pos);
  }
}

void order_qubits(const std::vector<TemporalEntry>& ascending,
                  const TrapGraph& graph, Placement& p) {
  for (const auto& entry : ascending) {
    const auto [a, b] = entry.pair;
    const TrapId ta = p.trap_of(a);
    const TrapId tb = p.trap_of(b);
    if (ta == tb) {
      continue;
    }
    p.move_to_boundary(a, graph.facing_side(ta, tb));
    p.move_to_boundary(b, graph.facing_side(tb, ta));
  }
}

Placement sta_place(const Circuit& c, const DeviceSpec& spec) {
  StaContext ctx(c, spec);
  while (const auto head = ctx.ratio_head()) {
    map_qubit(*head, ctx);
  }
  for (Qubit q = 0; q < c.n_qubits(); ++q) {
    if (!ctx.placement().is_placed(q)) {
      ctx.place_isolated(q);
    }
  }
  std::vector<TemporalEntry> ascending(ctx.temporal().rbegin(),
                                       ctx.temporal().rend());
  Placement out = ctx.placement();
  order_qubits(ascending, ctx.graph(), out);
  return out;
}

Placement greedy_place(const Circuit& c, const DeviceSpec& spec) {
  StaContext ctx(c, spec);
  auto edges = interaction_graph(c).edges();
  std::stable_sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    return x.second > y.second;
  });
  auto& p = ctx.placement();
  for (const auto& [pair, _] : edges) {
    const auto [a, b] = pair;
    const bool pa = p.is_placed(a);
    const bool pb = p.is_placed(b);
    if (!pa && !pb) {
      ctx.place_pair(a, b);
    } else if (!pa) {
      ctx.place_near(a, p.trap_of(b));
    } else if (!pb) {
      ctx.place_near(b, p.trap_of(a));
    }
  }
  for (Qubit q = 0; q < c.n_qubits(); ++q) {
    if (!p.is_placed(q)) {
      ctx.place_isolated(q);
    }
  }
  return p;
}

Placement random_place(const Circuit& c, const DeviceSpec& spec,
                       std::uint64_t seed) {
  spec.validate();
  if (c.n_qubits() > spec.total_capacity()) {
    throw CapacityError(fmt::format(
        "{} qubits do not fit on {} ({} physical slots)", c.n_qubits(),
        spec.summary(), spec.total_capacity()));
  }
  std::vector<Qubit> order(c.n_qubits());
  std::iota(order.begin(), order.end(), Qubit{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Placement p(spec.n_traps, c.n_qubits());
  std::size_t next = 0;
  for (const Qubit q : order) {
    // Deal round-robin, skipping traps whose usable slots are exhausted;
    // excess space is used only once every usable slot is taken.
    std::optional<TrapId> chosen;
    for (const std::size_t limit : {spec.usable_capacity(), spec.capacity}) {
      for (std::size_t k = 0; k < spec.n_traps && !chosen; ++k) {
        const auto t = static_cast<TrapId>((next + k) % spec.n_traps);
        if (p.count(t) < limit) {
          chosen = t;
        }
      }
      if (chosen) {
        break;
      }
    }
    p.append(q, *chosen);
    next = (*chosen + 1) % spec.n_traps;
  }
  return p;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::sta:
      return "sta";
    case Strategy::greedy:
      return "greedy";
    case Strategy::random:
      return "random";
  }
  return "?";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "sta") {
    return Strategy::sta;
  }
  if (s == "greedy") {
    return Strategy::greedy;
  }
  if (s == "random") {
    return Strategy::random;
  }
  throw InputError("unknown placement strategy '" + std::string(s) +
                   "' (expected sta, greedy or random)");
}

Placement place(Strategy s, const Circuit& c, const DeviceSpec& spec,
                std::uint64_t seed) {
  switch (s) {
    case Strategy::sta:
      return sta_place(c, spec);
    case Strategy::greedy:
      return greedy_place(c, spec);
    case Strategy::random:
      return random_place(c, spec, seed);
  }
  throw std::logic_error("unreachable");
}

}  // namespace qccd

#include "dynaflow/bpwrt.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dynaflow::bpwrt {

std::int64_t eligibility_threshold(std::int64_t ready) {
  // ceil((ready - 1) / 2) * 2 + 1
  return (ready % 2 == 1) ? ready : ready + 1;
}

namespace {

// True when a has a strictly larger w/S than b.
bool better_ratio(const PackingItem& a, const PackingItem& b) {
  return static_cast<__int128>(a.weight) * b.size > static_cast<__int128>(b.weight) * a.size;
}

void check_items(const PackingInstance& inst) {
  if (inst.capacity < 1) throw std::invalid_argument("capacity must be positive");
  for (const auto& it : inst.items) {
    if (it.size < 1 || it.weight < 1 || it.ready < 1)
      throw std::invalid_argument("item '" + it.id + "' needs positive size, weight and ready time");
    if (it.size > inst.capacity) throw std::invalid_argument("item '" + it.id + "' exceeds capacity");
  }
}

}  // namespace

GreedyResult solve_greedy(const PackingInstance& inst) {
  check_items(inst);
  const std::size_t m = inst.items.size();
  std::vector<std::int64_t> threshold(m);
  for (std::size_t i = 0; i < m; ++i) threshold[i] = eligibility_threshold(inst.items[i].ready);

  std::vector<std::size_t> remaining(m);
  for (std::size_t i = 0; i < m; ++i) remaining[i] = i;

  GreedyResult result;
  std::int64_t j = 1;
  std::int64_t load = 0;
  while (!remaining.empty()) {
    std::size_t candidates = 0;
    std::optional<std::size_t> best_pos;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      const auto i = remaining[pos];
      if (threshold[i] > j) continue;
      ++candidates;
      // remaining stays in instance order, so a strict comparison keeps the
      // earliest item on ties
      if (!best_pos || better_ratio(inst.items[i], inst.items[remaining[*best_pos]])) best_pos = pos;
    }

    GreedyStep step;
    step.bin = j;
    step.candidates = candidates;
    if (!best_pos) {
      std::int64_t next = std::numeric_limits<std::int64_t>::max();
      for (auto i : remaining) next = std::min(next, threshold[i]);
      step.action = StepAction::jump;
      step.next_bin = next;
      j = next;
      load = 0;
    } else {
      const auto chosen = remaining[*best_pos];
      step.chosen = chosen;
      if (load + inst.items[chosen].size > inst.capacity) {
        step.action = StepAction::close_bin;
        step.next_bin = j + 1;
        ++j;
        load = 0;
      } else {
        step.action = StepAction::place;
        step.next_bin = j;
        if (result.packing.bins.size() < static_cast<std::size_t>(j)) result.packing.bins.resize(j);
        result.packing.bins[j - 1].push_back(chosen);
        load += inst.items[chosen].size;
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*best_pos));
      }
    }
    result.trace.steps.push_back(step);
  }
  return result;
}

std::string GreedyTrace::dump(const PackingInstance& inst) const {
  std::ostringstream out;
  for (const auto& s : steps) {
    out << "bin " << s.bin << " candidates " << s.candidates << ' ';
    switch (s.action) {
      case StepAction::place:
        out << "place " << inst.items.at(*s.chosen).id;
        break;
      case StepAction::close_bin:
        out << "close " << inst.items.at(*s.chosen).id << " does not fit";
        break;
      case StepAction::jump:
        out << "jump " << s.next_bin;
        break;
    }
    out << '\n';
  }
  return out.str();
}

Packing GreedyTrace::replay() const {
  Packing p;
  for (const auto& s : steps) {
    if (s.action != StepAction::place) continue;
    if (p.bins.size() < static_cast<std::size_t>(s.bin)) p.bins.resize(s.bin);
    p.bins[s.bin - 1].push_back(*s.chosen);
  }
  return p;
}

std::int64_t packing_objective(const Packing& p, const PackingInstance& inst) {
  const auto bin_of = p.assignment(inst.items.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    if (bin_of[i] == 0) throw std::invalid_argument("item '" + inst.items[i].id + "' missing from packing");
    total += inst.items[i].weight * bin_of[i];
  }
  return total;
}

std::vector<PackingViolation> validate_packing(const Packing& p, const PackingInstance& inst) {
  std::vector<PackingViolation> out;
  const std::size_t m = inst.items.size();
  std::vector<int> count(m, 0);
  for (std::size_t b = 0; b < p.bins.size(); ++b) {
    const auto bin = static_cast<std::int64_t>(b + 1);
    std::int64_t load = 0;
    for (auto i : p.bins[b]) {
      if (i >= m) {
        out.push_back({PackingViolationKind::unknown_item, bin, std::to_string(i),
                       "bin " + std::to_string(bin) + ": unknown item index " + std::to_string(i)});
        continue;
      }
      const auto& item = inst.items[i];
      load += item.size;
      if (++count[i] == 2)
        out.push_back({PackingViolationKind::duplicate, bin, item.id,
                       "item '" + item.id + "' placed more than once (again in bin " + std::to_string(bin) + ")"});
      if (bin < item.ready)
        out.push_back({PackingViolationKind::ready_time, bin, item.id,
                       "ready time: item '" + item.id + "' (ready " + std::to_string(item.ready) + ") in bin " +
                           std::to_string(bin)});
    }
    if (load > inst.capacity)
      out.push_back({PackingViolationKind::capacity, bin, "",
                     "capacity: bin " + std::to_string(bin) + " holds " + std::to_string(load) + " > " +
                         std::to_string(inst.capacity)});
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (count[i] == 0)
      out.push_back({PackingViolationKind::missing, 0, inst.items[i].id,
                     "item '" + inst.items[i].id + "' not packed"});
  }
  return out;
}

PairedView paired_view(const Packing& p, const PackingInstance& inst) {
  PairedView view;
  for (std::size_t b = 0; b < p.bins.size(); b += 2) {
    BinPair pair;
    pair.index = static_cast<std::int64_t>(b / 2 + 1);
    for (std::size_t k = b; k < std::min(b + 2, p.bins.size()); ++k) {
      for (auto i : p.bins[k]) {
        pair.items.push_back(i);
        pair.size += inst.items.at(i).size;
        pair.weight += inst.items.at(i).weight;
      }
    }
    pair.second_nonempty = b + 1 < p.bins.size() && !p.bins[b + 1].empty();
    view.objective += pair.index * pair.weight;
    view.pairs.push_back(std::move(pair));
  }
  return view;
}

std::vector<std::int64_t> pair_overflow_failures(const PairedView& view, std::int64_t capacity) {
  std::vector<std::int64_t> failures;
  for (const auto& pair : view.pairs) {
    if (pair.second_nonempty && pair.size <= capacity) failures.push_back(pair.index);
  }
  return failures;
}

}  // namespace dynaflow::bpwrt

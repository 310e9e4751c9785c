#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "sodsim/errors.hpp"
#include "sodsim/kernel.hpp"

namespace sodsim {

// Per-drone assigned vs delivered work units per window. Ratios below tau bump
// a consecutive-low counter; a single good window resets it.
class ContributionLedger {
 public:
  explicit ContributionLedger(Tick window_ticks = 100) : window_ticks_(window_ticks) {}

  Tick window_ticks() const { return window_ticks_; }
  int windows_closed() const { return windows_closed_; }

  void track(const EntityId& drone) { entries_.try_emplace(drone); }

  void assign(const EntityId& drone, double units) {
    entries_[drone].assigned += units;
  }

  void report_delivered(const EntityId& drone, double units) {
    auto& e = entries_[drone];
    if (e.delivered + units > e.assigned) {
      throw InternalError("ledger-delivered-exceeds-assigned");
    }
    e.delivered += units;
  }

  double assigned(const EntityId& drone) const {
    auto it = entries_.find(drone);
    return it == entries_.end() ? 0.0 : it->second.assigned;
  }
  double delivered(const EntityId& drone) const {
    auto it = entries_.find(drone);
    return it == entries_.end() ? 0.0 : it->second.delivered;
  }
  int consecutive_low(const EntityId& drone) const {
    auto it = entries_.find(drone);
    return it == entries_.end() ? 0 : it->second.consecutive_low;
  }

  // Ratio for a drone with nothing assigned is 1.0 by convention.
  std::map<EntityId, double> close_window(double tau) {
    if (tau <= 0.0 || tau > 1.0) throw std::invalid_argument("tau must be in (0,1]");
    std::map<EntityId, double> ratios;
    for (auto& [id, e] : entries_) {
      double r = e.assigned > 0.0 ? e.delivered / e.assigned : 1.0;
      ratios[id] = r;
      if (r < tau) {
        ++e.consecutive_low;
      } else {
        e.consecutive_low = 0;
      }
      e.assigned = 0.0;
      e.delivered = 0.0;
    }
    ++windows_closed_;
    return ratios;
  }

  std::set<EntityId> detect_free_riders(int min_windows) const {
    if (min_windows < 1) throw std::invalid_argument("min_windows must be >= 1");
    std::set<EntityId> out;
    for (const auto& [id, e] : entries_) {
      if (e.consecutive_low >= min_windows) out.insert(id);
    }
    return out;
  }

  void forget(const EntityId& drone) { entries_.erase(drone); }

  const std::map<EntityId, double> current_totals() const {
    std::map<EntityId, double> out;
    for (const auto& [id, e] : entries_) out[id] = e.delivered;
    return out;
  }

 private:
  struct Entry {
    double assigned = 0.0;
    double delivered = 0.0;
    int consecutive_low = 0;
  };

  Tick window_ticks_;
  int windows_closed_ = 0;
  std::map<EntityId, Entry> entries_;
};

}  // namespace sodsim

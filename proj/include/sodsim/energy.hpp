#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace sodsim {

enum class Activity : std::size_t { Hover = 0, Cruise = 1, Compute = 2, Radio = 3 };

inline const char* to_string(Activity a) {
  switch (a) {
    case Activity::Hover: return "hover";
    case Activity::Cruise: return "cruise";
    case Activity::Compute: return "compute";
    case Activity::Radio: return "radio";
  }
  return "unknown";
}

// Linear first-order model: time-based classes are watts scaled by duration,
// unit-based classes are joules per unit.
struct EnergyCoefficients {
  double p_hover_w = 100.0;
  double p_cruise_w_per_mps = 20.0;
  double e_compute_j_per_unit = 0.01;
  double e_radio_j_per_byte = 1e-5;
};

struct EnergyState {
  double capacity_j = 0.0;
  double remaining_j = 0.0;
  double critical_reserve_j = 0.0;
  std::array<double, 4> ledger_j{};  // indexed by Activity

  double ledger_total() const {
    return ledger_j[0] + ledger_j[1] + ledger_j[2] + ledger_j[3];
  }

  // capacity == remaining + consumed ledger, within relative tolerance.
  bool conserved(double rel_tol = 1e-9) const {
    double lhs = capacity_j;
    double rhs = remaining_j + ledger_total();
    return std::abs(lhs - rhs) <= rel_tol * std::max(1.0, std::abs(lhs));
  }
};

struct ConsumeOutcome {
  double debited_j = 0.0;
  bool depleted = false;  // the request exceeded remaining energy
};

// Debit = coefficient x amount x duration for hover/cruise, coefficient x
// amount for compute/radio. On depletion only the remaining energy is debited
// so the ledger stays conserved; the caller grounds the drone.
inline ConsumeOutcome consume(EnergyState& energy, const EnergyCoefficients& coeffs,
                              Activity activity, double amount, double dt_seconds) {
  double debit = 0.0;
  switch (activity) {
    case Activity::Hover: debit = coeffs.p_hover_w * amount * dt_seconds; break;
    case Activity::Cruise: debit = coeffs.p_cruise_w_per_mps * amount * dt_seconds; break;
    case Activity::Compute: debit = coeffs.e_compute_j_per_unit * amount; break;
    case Activity::Radio: debit = coeffs.e_radio_j_per_byte * amount; break;
  }
  ConsumeOutcome out;
  if (debit > energy.remaining_j) {
    out.depleted = true;
    debit = energy.remaining_j;
  }
  energy.remaining_j -= debit;
  energy.ledger_j[static_cast<std::size_t>(activity)] += debit;
  out.debited_j = debit;
  return out;
}

}  // namespace sodsim

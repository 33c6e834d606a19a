#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "dchain/model.hpp"
#include "dchain/rational.hpp"

namespace dchain {

// 2^27 states: the largest ring enumerated exhaustively.
inline constexpr int kMaxEnumerationCells = 9;

// ln Z by log-sum-exp over all 2^(3 n_cells) configurations.
double brute_partition(const ExchangeConstants& ex, const FieldPoint& pt, int n_cells);

struct GroundStateReport {
  int n_cells = 0;
  Rational e_min;  // total energy
  BigInt omega;    // number of minimal-energy configurations
  BigInt m_sum;    // sum of total magnetization over those configurations

  // m_sum / (3 n_cells omega), the per-spin ground-state magnetization.
  double magnetization_per_spin() const;
};

GroundStateReport ground_states(const ExchangeConstants& ex, const Rational& h, int n_cells);

// h -> +0 limit: minimize the zero-field energy, then keep the states with the
// largest total magnetization among the minimizers.
GroundStateReport ground_states_plus_zero(const ExchangeConstants& ex, int n_cells);

enum class FieldMode {
  exact,      // ground states at exactly the given field
  plus_zero,  // two-stage h -> +0 selection (field argument ignored)
};

std::vector<GroundStateReport> ground_state_sequence(const ExchangeConstants& ex, const Rational& h, int first,
                                                     int last, FieldMode mode = FieldMode::exact);
std::vector<BigInt> omega_sequence(const ExchangeConstants& ex, const Rational& h, int first, int last,
                                   FieldMode mode = FieldMode::exact);

// ln(omega[last] / omega[last - stride]) / (3 stride). stride 2 handles
// sequences that alternate with the ring parity.
double residual_entropy_estimate(std::span<const BigInt> omega, int stride = 1);

// Lowest zero-field energy within each total-magnetization sector.
struct SectorMinimum {
  int magnetization = 0;
  Rational energy;
  BigInt count;
};

std::vector<SectorMinimum> sector_minima(const ExchangeConstants& ex, int n_cells);

nlohmann::ordered_json to_json(const GroundStateReport& report);

}  // namespace dchain

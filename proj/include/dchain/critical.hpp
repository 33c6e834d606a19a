#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dchain/model.hpp"
#include "dchain/rational.hpp"

namespace dchain {

// A zero-temperature field-induced transition.
struct PhasePoint {
  Rational h_c;
  double m_below = 0.0;  // plateau magnetization per spin just below h_c
  double m_above = 0.0;  // just above h_c
  double m_at = 0.0;     // ground-state average at exactly h_c
  double s_at = 0.0;     // residual entropy at h_c from the degeneracy sequence
  BigInt omega;          // degeneracy at h_c on the largest ring
};

struct CriticalScan {
  int n_cells = 0;
  std::vector<PhasePoint> points;      // ordered by increasing h_c > 0
  std::vector<std::string> warnings;  // finite-size disagreements
};

// Lower envelope of the zero-field sector minima E0(M) - h M over h > 0.
// Breakpoints are exact rationals. Sectors on a straight segment do not
// create spurious transitions because all comparisons are exact.
std::vector<Rational> envelope_breakpoints(const ExchangeConstants& ex, int n_cells);

// Transitions on a ring of n_cells (<= 7 recommended); cross-checked against
// n_cells-1 and n_cells-2, with disagreements reported as warnings.
CriticalScan critical_fields(const ExchangeConstants& ex, int n_cells = 7);

// m0 = m(h -> +0, T = 0) as an exact rational. Uses the h -> +0 ground states
// on rings of n_cells and n_cells-2 and removes a 1/N finite-size term:
//   m0 = (N m_N - (N-2) m_{N-2}) / 2.
Rational residual_magnetization(const ExchangeConstants& ex, int n_cells = 6);

struct EntropyPeak {
  double h = 0.0;
  double s = 0.0;
};

struct PeakScan {
  double t = 0.0;
  std::vector<double> h;
  std::vector<double> s;
  std::vector<EntropyPeak> peaks;
};

// Entropy along h_grid at temperature t_low; local maxima above min_height.
// A grid endpoint counts as a maximum when it exceeds its only neighbour.
PeakScan entropy_peak_scan(const ExchangeConstants& ex, double t_low, std::span<const double> h_grid,
                           double min_height = 1e-3);

// Linear extrapolation of s(h, t) to t -> 0 from the two lowest temperatures.
double entropy_zero_t_limit(const ExchangeConstants& ex, double h, std::span<const double> temperatures);
double magnetization_zero_t_limit(const ExchangeConstants& ex, double h, std::span<const double> temperatures);

nlohmann::ordered_json to_json(const PhasePoint& p, std::string_view case_label, const Rational& m0);

}  // namespace dchain

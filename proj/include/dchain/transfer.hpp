#pragma once

#include <array>
#include <span>
#include <vector>

#include "dchain/model.hpp"

namespace dchain {

/**
 * 2x2 transfer matrix of the triangle chain with the two decorating spins
 * summed out. Rows/columns are indexed by the first spin of consecutive
 * cells, index 0 <-> +1 and index 1 <-> -1.
 *
 * Stored as exp(log_scale) * r with max(r) == 1 so that low temperatures
 * (beta ~ 100) do not overflow. log_r keeps the unscaled logarithms, since
 * entries of r can underflow to zero once beta reaches the thousands.
 */
struct TransferMatrix {
  double log_scale = 0.0;
  std::array<std::array<double, 2>, 2> r{};
  std::array<std::array<double, 2>, 2> log_r{};

  double log_element(int row, int col) const;
};

struct EigenPair {
  double log_lambda_plus = 0.0;     // includes log_scale
  double lambda_minus_ratio = 0.0;  // lambda_- / lambda_+, |ratio| < 1
};

TransferMatrix build_transfer(const ExchangeConstants& ex, const FieldPoint& pt);
EigenPair eigen(const TransferMatrix& tm);

// Per-spin free energy in the thermodynamic limit, f = -(T/3) ln lambda_+.
double free_energy(const ExchangeConstants& ex, const FieldPoint& pt);

// Logarithmic derivatives (1/lambda) d lambda / dT and (1/lambda) d lambda / dh.
struct LambdaDerivatives {
  double dlog_dt = 0.0;
  double dlog_dh = 0.0;
};

// Implicit differentiation of the characteristic polynomial with analytic
// element derivatives.
LambdaDerivatives lambda_derivatives(const ExchangeConstants& ex, const FieldPoint& pt);
// Central differences of ln lambda_+ with one Richardson halving. Cross-check only.
LambdaDerivatives lambda_derivatives_fd(const ExchangeConstants& ex, const FieldPoint& pt);

double entropy(const ExchangeConstants& ex, const FieldPoint& pt);
double magnetization(const ExchangeConstants& ex, const FieldPoint& pt);

// ln Z of a periodic ring of n_cells triangles, ln Tr R^n.
double partition_finite(const ExchangeConstants& ex, const FieldPoint& pt, int n_cells);

struct ThermoRow {
  double h = 0.0;
  double t = 0.0;
  double f = 0.0;
  double s = 0.0;
  double m = 0.0;
};

using SweepTable = std::vector<ThermoRow>;

ThermoRow thermo_point(const ExchangeConstants& ex, const FieldPoint& pt);

// Rows ordered t-major, then h. Rows are independent, so workers > 1 gives
// bit-identical output.
SweepTable sweep(const ExchangeConstants& ex, std::span<const double> h_grid, std::span<const double> t_grid,
                 int workers = 1);

// Worker count from DCHAIN_THREADS, else hardware concurrency (min 1).
int default_workers();

}  // namespace dchain

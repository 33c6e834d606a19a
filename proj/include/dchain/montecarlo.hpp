#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dchain/model.hpp"

namespace dchain {

struct McParams {
  long sweeps = 100000;  // measurement sweeps; one sweep = 3 n_cells attempted flips
  long burn_in = 20000;  // discarded sweeps, spread over the annealing ladder
  std::uint64_t seed = 0x5eed2024;
  int n_bins = 20;
  int anneal_steps = 10;  // geometric stages from 2T down to T

  // Throws ContractViolation unless sweeps >= n_bins >= 2, burn_in >= 0, anneal_steps >= 0.
  void validate() const;
};

struct McResult {
  double m_mean = 0.0;  // per spin
  double m_stderr = 0.0;
  double e_mean = 0.0;  // per spin
  double e_stderr = 0.0;
  double acceptance_rate = 0.0;
};

// Metropolis acceptance probability min(1, exp(-beta dE)).
double acceptance_probability(double delta_e, double beta);

// Energy change from flipping the spin at `flat`, from the bonds touching it
// plus its Zeeman term. Needs n_cells >= 2.
double local_delta_energy(const SpinConfig& cfg, const ChainSpec& spec, double h, int flat);

// Metropolis on the periodic ring. Each sweep visits every spin in order,
// offers every cell a move to another state of its three spins (the
// whole-cell flip with probability 1/2), then offers every inter-cell bond a
// joint flip of its two spins. The chain starts from random spins
// and is annealed from 2T during burn-in.
// Magnetization is measured with the per-cell conditional mean given the
// spins around the cell and its two inter-cell bonds. Deterministic for fixed inputs; error bars from
// n_bins equal bins, never below the resolution 1/(N_spins * sweeps).
McResult mc_run(const ChainSpec& spec, const FieldPoint& pt, const McParams& params);

// Stream-splitting rule: point k of a curve runs with
// seed = splitmix64(master + (k + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Even ring size, at least min_cells, of eight correlation lengths for the
// worst point of the curve (capped at max_cells), so that finite-size
// corrections to m stay far below the statistical error.
int mc_ring_size(const ExchangeConstants& ex, std::span<const double> h_grid, double t, int min_cells = 100,
                 int max_cells = 4000);

std::vector<McResult> mc_curve(const ChainSpec& spec, std::span<const double> h_grid, double t,
                               const McParams& params, int workers = 1);

}  // namespace dchain

#include "dchain/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <thread>

#include "dchain/errors.hpp"
#include "dchain/transfer.hpp"

namespace dchain {

void McParams::validate() const {
  if (n_bins < 2) throw ContractViolation("n_bins must be >= 2");
  if (sweeps < n_bins) throw ContractViolation("sweeps must be >= n_bins");
  if (burn_in < 0) throw ContractViolation("burn_in must be >= 0");
  if (anneal_steps < 0) throw ContractViolation("anneal_steps must be >= 0");
}

double acceptance_probability(double delta_e, double beta) {
  if (delta_e <= 0.0) return 1.0;
  return std::exp(-beta * delta_e);
}

namespace {

// Neighbours of spin k inside a cell. Slot order fixes the bit layout of the
// acceptance lookup table.
struct Neighbour {
  int cell_offset;  // -1, 0 or +1
  int k;
  double coupling;
};

struct SiteStencil {
  std::array<Neighbour, 3> nb;
  int count;
};

std::array<SiteStencil, 3> stencils(const ExchangeConstants& ex) {
  return {{
      {{{{0, 1, ex.j_d}, {0, 2, ex.j}, {-1, 2, ex.j_t}}}, 3},   // S1
      {{{{0, 0, ex.j_d}, {0, 2, ex.j_d}, {0, 0, 0.0}}}, 2},     // S2
      {{{{0, 1, ex.j_d}, {0, 0, ex.j}, {+1, 0, ex.j_t}}}, 3},   // S3
  }};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; portable across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

class Chain {
 public:
  Chain(const ChainSpec& spec, double h, std::mt19937_64& rng)
      : n_spins_(3 * spec.n_cells),
        n_cells_(spec.n_cells),
        h_(h),
        ex_(spec.exchange),
        st_(stencils(spec.exchange)),
        spins_(static_cast<std::size_t>(n_spins_)),
        neighbours_(static_cast<std::size_t>(3 * n_spins_)),
        rng_(rng) {
    const int n = spec.n_cells;
    for (int f = 0; f < n_spins_; ++f) {
      const int cell = f / 3;
      const int k = f % 3;
      const auto& sten = st_[static_cast<std::size_t>(k)];
      for (int j = 0; j < 3; ++j) {
        // Unused slots (S2 has two neighbours) point at the site itself;
        // their coupling is zero so the bit never changes the table entry.
        int target = f;
        if (j < sten.count) {
          const Neighbour& nb = sten.nb[static_cast<std::size_t>(j)];
          target = 3 * ((cell + nb.cell_offset + n) % n) + nb.k;
        }
        neighbours_[static_cast<std::size_t>(3 * f + j)] = target;
      }
    }
    for (auto& s : spins_) s = (rng_() >> 63) ? 1 : -1;
  }

  // Tabulates min(1, exp(-beta dE)) for every (site type, spin, neighbour
  // pattern), the whole-cell move tables and the conditional cell
  // magnetization.
  void set_temperature(double t) {
    const double beta = 1.0 / t;
    beta_ = beta;
    for (int bits = 0; bits < 8; ++bits)
      for (int env = 0; env < 4; ++env) cell_energy_[static_cast<std::size_t>(4 * bits + env)] = cell_local_energy(bits, env);
    for (int from = 0; from < 8; ++from)
      for (int to = 0; to < 8; ++to)
        for (int env = 0; env < 4; ++env) {
          const double delta = cell_energy_[static_cast<std::size_t>(4 * to + env)] - cell_energy_[static_cast<std::size_t>(4 * from + env)];
          const auto idx = static_cast<std::size_t>(32 * from + 4 * to + env);
          cell_accept_[idx] = acceptance_probability(delta, beta);
          cell_delta_[idx] = delta;
        }
    for (int k = 0; k < 3; ++k) {
      const auto& sten = st_[static_cast<std::size_t>(k)];
      for (int pattern = 0; pattern < 8; ++pattern) {
        double field = h_;
        for (int j = 0; j < sten.count; ++j)
          field += sten.nb[static_cast<std::size_t>(j)].coupling * (((pattern >> j) & 1) ? 1 : -1);
        for (int s = 0; s < 2; ++s) {
          const double delta = 2.0 * (s ? 1 : -1) * field;
          const auto idx = static_cast<std::size_t>(16 * k + 8 * s + pattern);
          accept_[idx] = acceptance_probability(delta, beta);
          delta_[idx] = delta;
        }
      }
    }
    // Exact mean of a cell's magnetization given its two outside neighbours.
    for (int env = 0; env < 4; ++env) {
      double e_min = cell_energy_[static_cast<std::size_t>(env)];
      for (int bits = 1; bits < 8; ++bits) e_min = std::min(e_min, cell_energy_[static_cast<std::size_t>(4 * bits + env)]);
      double z = 0.0, mz = 0.0;
      for (int bits = 0; bits < 8; ++bits) {
        const double w = std::exp(-beta * (cell_energy_[static_cast<std::size_t>(4 * bits + env)] - e_min));
        z += w;
        mz += w * (std::popcount(static_cast<unsigned>(bits)) * 2 - 3);
      }
      cell_mean_[static_cast<std::size_t>(env)] = mz / z;
    }
    // The same over the five-spin window of the cell and both bond partners,
    // given the four spins bordering the window.
    std::array<double, 32> window_e{};
    for (int env = 0; env < 16; ++env) {
      double e_min = INFINITY;
      for (int bits = 0; bits < 32; ++bits) {
        window_e[static_cast<std::size_t>(bits)] = window_energy(bits, env);
        e_min = std::min(e_min, window_e[static_cast<std::size_t>(bits)]);
      }
      double z = 0.0, mz = 0.0;
      for (int bits = 0; bits < 32; ++bits) {
        const double w = std::exp(-beta * (window_e[static_cast<std::size_t>(bits)] - e_min));
        z += w;
        mz += w * (std::popcount(static_cast<unsigned>(bits >> 1) & 7u) * 2 - 3);
      }
      window_mean_[static_cast<std::size_t>(env)] = mz / z;
    }
  }

  // Metropolis move on each cell in turn: propose a new state for its three
  // spins, accept with min(1, exp(-beta dE)).
  long cell_sweep() {
    long accepted = 0;
    std::int8_t* sp = spins_.data();
    for (int c = 0; c < n_cells_; ++c) {
      const int base = 3 * c;
      const int prev_s3 = sp[(base + n_spins_ - 1) % n_spins_] > 0;
      const int next_s1 = sp[(base + 3) % n_spins_] > 0;
      const int env = 2 * prev_s3 + next_s1;
      const int from = (sp[base] > 0) | ((sp[base + 1] > 0) << 1) | ((sp[base + 2] > 0) << 2);
      // Whole-cell flip half of the time, otherwise one of the six partial
      // changes; each mask is its own inverse, so proposals stay symmetric.
      const std::uint64_t r = rng_();
      const int mask = (r & 1) ? 7 : static_cast<int>(1 + (r >> 1) % 6);
      const int to = from ^ mask;
      const auto idx = static_cast<std::size_t>(32 * from + 4 * to + env);
      const double p = cell_accept_[idx];
      if (p >= 1.0 || uniform01(rng_) < p) {
        for (int k = 0; k < 3; ++k) {
          const std::int8_t v = ((to >> k) & 1) ? 1 : -1;
          magnetization_ += v - sp[base + k];
          sp[base + k] = v;
        }
        energy_ += cell_delta_[idx];
        ++accepted;
      }
    }
    return accepted;
  }

  // Joint flip of the two spins on each inter-cell bond, S3 of a cell with
  // S1 of the next. Moves a zero-energy wall between ground states that no
  // single-cell move can shift.
  long bond_sweep() {
    long accepted = 0;
    std::int8_t* sp = spins_.data();
    for (int c = 0; c < n_cells_; ++c) {
      const int a = 3 * c + 2;
      const int b = (a + 1) % n_spins_;
      const double delta = 2.0 * sp[a] * local_field(a) + 2.0 * sp[b] * local_field(b) - 4.0 * ex_.j_t * sp[a] * sp[b];
      const double p = acceptance_probability(delta, beta_);
      if (p >= 1.0 || uniform01(rng_) < p) {
        magnetization_ -= 2 * (sp[a] + sp[b]);
        sp[a] = static_cast<std::int8_t>(-sp[a]);
        sp[b] = static_cast<std::int8_t>(-sp[b]);
        energy_ += delta;
        ++accepted;
      }
    }
    return accepted;
  }

  // Sum over cells of E[M_cell | spins outside a window around the cell].
  // Unbiased for <M>, and it sees rare excitations of a cell and of its two
  // bonds that the raw count would miss. Rings of two cells are too short
  // for the window and condition on the cell alone.
  double conditional_magnetization() const {
    const std::int8_t* sp = spins_.data();
    auto up = [&](int f) { return static_cast<int>(sp[(f + n_spins_) % n_spins_] > 0); };
    double sum = 0.0;
    for (int c = 0; c < n_cells_; ++c) {
      const int base = 3 * c;
      if (n_cells_ < 3) {
        sum += cell_mean_[static_cast<std::size_t>(2 * up(base - 1) + up(base + 3))];
        continue;
      }
      const int env = up(base - 3) | (up(base - 2) << 1) | (up(base + 4) << 2) | (up(base + 5) << 3);
      sum += window_mean_[static_cast<std::size_t>(env)];
    }
    return sum;
  }

  // One pass over all spins in index order; returns accepted flips.
  long sweep() {
    long accepted = 0;
    const int* nb = neighbours_.data();
    std::int8_t* sp = spins_.data();
    for (int f = 0, k = 0; f < n_spins_; ++f, nb += 3, k = (k == 2 ? 0 : k + 1)) {
      const int pattern = (sp[nb[0]] > 0) | ((sp[nb[1]] > 0) << 1) | ((sp[nb[2]] > 0) << 2);
      const int s = sp[f] > 0;
      const auto idx = static_cast<std::size_t>(16 * k + 8 * s + pattern);
      const double p = accept_[idx];
      if (p >= 1.0 || uniform01(rng_) < p) {
        sp[f] = static_cast<std::int8_t>(-sp[f]);
        magnetization_ += s ? -2 : 2;
        energy_ += delta_[idx];
        ++accepted;
      }
    }
    return accepted;
  }

  void resync(const ChainSpec& spec) {
    const SpinConfig cfg(spins_);
    magnetization_ = total_magnetization(cfg);
    energy_ = energy(cfg, spec, h_);
  }

  int magnetization() const { return magnetization_; }
  double energy_value() const { return energy_; }
  int n_spins() const { return n_spins_; }
  int n_cells() const { return n_cells_; }

 private:
  // Energy terms that involve the cell's spins: its three internal bonds, its
  // Zeeman term and the two inter-cell bonds. env = 2*[prev S3 up] + [next S1 up].
  double cell_local_energy(int bits, int env) const {
    auto spin = [](int b) { return b ? 1 : -1; };
    const int s1 = spin(bits & 1), s2 = spin((bits >> 1) & 1), s3 = spin((bits >> 2) & 1);
    const int prev_s3 = spin((env >> 1) & 1), next_s1 = spin(env & 1);
    return -(ex_.j_d * (s1 * s2 + s2 * s3) + ex_.j * s1 * s3 + ex_.j_t * (prev_s3 * s1 + s3 * next_s1)) -
           h_ * (s1 + s2 + s3);
  }

  // Energy terms touching the window (prev S3, S1, S2, S3, next S1), window
  // bits in that order; env bits: prev S1, prev S2, next S2, next S3.
  double window_energy(int bits, int env) const {
    auto spin = [](int word, int k) { return ((word >> k) & 1) ? 1 : -1; };
    const int p3 = spin(bits, 0), s1 = spin(bits, 1), s2 = spin(bits, 2), s3 = spin(bits, 3), n1 = spin(bits, 4);
    const int p1 = spin(env, 0), p2 = spin(env, 1), n2 = spin(env, 2), n3 = spin(env, 3);
    const double bonds = ex_.j_d * (s1 * s2 + s2 * s3 + p2 * p3 + n1 * n2) + ex_.j * (s1 * s3 + p1 * p3 + n1 * n3) +
                         ex_.j_t * (p3 * s1 + s3 * n1);
    return -bonds - h_ * (p3 + s1 + s2 + s3 + n1);
  }

  // h plus the exchange field of the neighbours of site f.
  double local_field(int f) const {
    const auto& sten = st_[static_cast<std::size_t>(f % 3)];
    double field = h_;
    for (int j = 0; j < sten.count; ++j)
      field += sten.nb[static_cast<std::size_t>(j)].coupling * spins_[static_cast<std::size_t>(neighbours_[static_cast<std::size_t>(3 * f + j)])];
    return field;
  }

  int n_spins_;
  int n_cells_;
  double h_;
  ExchangeConstants ex_;
  std::array<SiteStencil, 3> st_;
  std::vector<std::int8_t> spins_;
  std::vector<int> neighbours_;
  std::mt19937_64& rng_;
  std::array<double, 48> accept_{};
  std::array<double, 48> delta_{};
  std::array<double, 4> cell_mean_{};
  std::array<double, 16> window_mean_{};
  std::array<double, 32> cell_energy_{};
  std::array<double, 256> cell_accept_{};
  std::array<double, 256> cell_delta_{};
  double beta_ = 1.0;
  int magnetization_ = 0;
  double energy_ = 0.0;
};

struct BinStats {
  double mean;
  double stderr_;
};

BinStats bin_statistics(const std::vector<double>& bins) {
  const double n = static_cast<double>(bins.size());
  double mean = 0.0;
  for (double b : bins) mean += b;
  mean /= n;
  double var = 0.0;
  for (double b : bins) var += (b - mean) * (b - mean);
  var /= (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

double local_delta_energy(const SpinConfig& cfg, const ChainSpec& spec, double h, int flat) {
  validate(spec);
  if (spec.n_cells < 2) throw ContractViolation("local updates need n_cells >= 2");
  if (cfg.size() != spec.n_spins()) throw ContractViolation("configuration length does not match chain");
  if (flat < 0 || flat >= cfg.size()) throw ContractViolation("spin index out of range");
  const auto st = stencils(spec.exchange);
  const int cell = flat / 3;
  const int k = flat % 3;
  const auto& sten = st[static_cast<std::size_t>(k)];
  double field = h;
  for (int j = 0; j < sten.count; ++j) {
    const Neighbour& nb = sten.nb[static_cast<std::size_t>(j)];
    const int c = (cell + nb.cell_offset + spec.n_cells) % spec.n_cells;
    field += nb.coupling * cfg.at(nb.k, c);
  }
  return 2.0 * cfg[flat] * field;
}

McResult mc_run(const ChainSpec& spec, const FieldPoint& pt, const McParams& params) {
  validate(spec);
  require_positive_temperature(pt);
  params.validate();
  if (spec.n_cells < 2) throw ContractViolation("Monte Carlo needs n_cells >= 2");

  std::mt19937_64 rng(params.seed);
  Chain chain(spec, pt.h, rng);

  // Annealing ladder: T_k = T * 2^{(steps - k)/steps}, k = 0..steps, with the
  // burn-in sweeps split evenly over the stages.
  const int stages = params.anneal_steps + 1;
  const long per_stage = params.burn_in / stages;
  for (int k = 0; k < stages; ++k) {
    const double factor = params.anneal_steps == 0 ? 1.0 : std::exp2(static_cast<double>(params.anneal_steps - k) / params.anneal_steps);
    chain.set_temperature(pt.t * factor);
    const long n = k + 1 == stages ? params.burn_in - per_stage * (stages - 1) : per_stage;
    for (long s = 0; s < n; ++s) {
      chain.sweep();
      chain.cell_sweep();
      chain.bond_sweep();
    }
  }
  chain.set_temperature(pt.t);

  const long bin_len = params.sweeps / params.n_bins;
  const double per_spin = 1.0 / chain.n_spins();
  std::vector<double> m_bins, e_bins;
  long accepted = 0;
  long cell_accepted = 0;
  for (int b = 0; b < params.n_bins; ++b) {
    chain.resync(spec);  // clears accumulated rounding in the running energy
    double m_acc = 0.0, e_acc = 0.0;
    for (long s = 0; s < bin_len; ++s) {
      accepted += chain.sweep();
      cell_accepted += chain.cell_sweep() + chain.bond_sweep();
      m_acc += chain.conditional_magnetization();
      e_acc += chain.energy_value();
    }
    m_bins.push_back(m_acc / bin_len * per_spin);
    e_bins.push_back(e_acc / bin_len * per_spin);
  }

  const BinStats m = bin_statistics(m_bins);
  const BinStats e = bin_statistics(e_bins);
  McResult out;
  out.m_mean = m.mean;
  // A run of S sweeps over N spins cannot resolve a magnetization shift
  // smaller than one spin held for one sweep, 1/(N S); bins with no
  // fluctuations at all (saturated chains) would otherwise report zero.
  const double resolution = per_spin / static_cast<double>(bin_len * params.n_bins);
  out.m_stderr = std::hypot(m.stderr_, resolution);
  out.e_mean = e.mean;
  out.e_stderr = e.stderr_;
  const double attempts = static_cast<double>(bin_len) * params.n_bins * (chain.n_spins() + 2 * chain.n_cells());
  out.acceptance_rate = static_cast<double>(accepted + cell_accepted) / attempts;
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

int mc_ring_size(const ExchangeConstants& ex, std::span<const double> h_grid, double t, int min_cells,
                 int max_cells) {
  require_positive_temperature({0.0, t});
  double xi = 0.0;
  for (double h : h_grid) {
    const double r = std::fabs(eigen(build_transfer(ex, {h, t})).lambda_minus_ratio);
    if (r > 0.0) xi = std::max(xi, -1.0 / std::log(r));
  }
  int n = std::clamp(static_cast<int>(std::ceil(8.0 * xi)), min_cells, max_cells);
  return n + n % 2;
}

std::vector<McResult> mc_curve(const ChainSpec& spec, std::span<const double> h_grid, double t,
                               const McParams& params, int workers) {
  validate(spec);
  params.validate();
  require_positive_temperature({0.0, t});
  if (spec.n_cells < 2) throw ContractViolation("Monte Carlo needs n_cells >= 2");
  std::vector<McResult> out(h_grid.size());
  auto run_point = [&](std::size_t i) {
    McParams p = params;
    p.seed = derive_seed(params.seed, i);
    out[i] = mc_run(spec, {h_grid[i], t}, p);
  };
  const auto n_workers = static_cast<std::size_t>(std::max(1, workers));
  if (n_workers == 1 || h_grid.size() < 2) {
    for (std::size_t i = 0; i < h_grid.size(); ++i) run_point(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < h_grid.size(); i += n_workers) run_point(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace dchain

#include "dchain/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "dchain/errors.hpp"
#include "dchain/transfer.hpp"

namespace dchain {

namespace {

// Cell bits: bit0 = S1, bit1 = S2, bit2 = S3 (1 <-> +1). A table key appends
// the next cell's S1 as bit3.
constexpr int kCellStates = 8;

int spin_of(int bits, int k) { return ((bits >> k) & 1) ? 1 : -1; }

int cell_magnetization(int bits) { return spin_of(bits, 0) + spin_of(bits, 1) + spin_of(bits, 2); }

void check_size(int n_cells) {
  if (n_cells < 1) throw ContractViolation("n_cells must be >= 1");
  if (n_cells > kMaxEnumerationCells)
    throw SizeError("exhaustive enumeration limited to " + std::to_string(kMaxEnumerationCells) +
                    " cells, requested " + std::to_string(n_cells));
}

template <typename Energy>
using CellTable = std::array<Energy, 16>;

/**
 * Depth-first walk over every ring configuration. Visitor is called as
 * visit(energy, magnetization) once per configuration; energies are summed
 * from the per-cell table so each leaf costs O(1) amortized.
 */
template <typename Energy, typename Visitor>
class RingWalker {
 public:
  RingWalker(const CellTable<Energy>& table, int n_cells, Visitor& visit)
      : table_(table), n_(n_cells), visit_(visit) {}

  void run() {
    for (int first = 0; first < kCellStates; ++first) {
      first_s1_ = first & 1;
      if (n_ == 1) {
        visit_(table_[first | (first_s1_ << 3)], cell_magnetization(first));
      } else {
        descend(1, first, Energy{0}, cell_magnetization(first));
      }
    }
  }

 private:
  void descend(int level, int prev, Energy e, int m) {
    if (level == n_) {
      visit_(e + table_[prev | (first_s1_ << 3)], m);
      return;
    }
    for (int c = 0; c < kCellStates; ++c) descend(level + 1, c, e + table_[prev | ((c & 1) << 3)], m + cell_magnetization(c));
  }

  const CellTable<Energy>& table_;
  int n_;
  Visitor& visit_;
  int first_s1_ = 0;
};

template <typename Energy, typename Visitor>
void walk_ring(const CellTable<Energy>& table, int n_cells, Visitor& visit) {
  RingWalker<Energy, Visitor>(table, n_cells, visit).run();
}

CellTable<double> float_table(const ExchangeConstants& ex, double h) {
  CellTable<double> t{};
  for (int key = 0; key < 16; ++key)
    t[static_cast<std::size_t>(key)] =
        cell_energy(ex, h, spin_of(key, 0), spin_of(key, 1), spin_of(key, 2), spin_of(key, 3));
  return t;
}

// Cell energies scaled by a common denominator so that ring energies are
// exact 64-bit integers.
struct ScaledTable {
  CellTable<std::int64_t> table{};
  BigInt denominator;
};

ScaledTable scaled_table(const ExchangeConstants& ex, const Rational& h) {
  const ExactExchange exact = to_exact(ex);
  std::array<Rational, 16> values;
  BigInt den = 1;
  for (int key = 0; key < 16; ++key) {
    values[static_cast<std::size_t>(key)] =
        cell_energy_exact(exact, h, spin_of(key, 0), spin_of(key, 1), spin_of(key, 2), spin_of(key, 3));
    den = boost::multiprecision::lcm(den, denominator(values[static_cast<std::size_t>(key)]));
  }
  ScaledTable out;
  out.denominator = den;
  // A ring sum of kMaxEnumerationCells cells must stay far from overflow.
  const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 64);
  for (std::size_t key = 0; key < 16; ++key) {
    Rational scaled = values[key] * den;
    BigInt v = numerator(scaled);
    if (abs(v) > limit) throw UnsupportedInput("couplings too large for exact enumeration");
    out.table[key] = v.convert_to<std::int64_t>();
  }
  return out;
}

struct MinimumTracker {
  std::int64_t e_min = std::numeric_limits<std::int64_t>::max();
  std::uint64_t count = 0;
  std::int64_t m_sum = 0;

  void operator()(std::int64_t e, int m) {
    if (e < e_min) {
      e_min = e;
      count = 1;
      m_sum = m;
    } else if (e == e_min) {
      ++count;
      m_sum += m;
    }
  }
};

// Lexicographic minimum of (energy, -magnetization).
struct PlusZeroTracker {
  std::int64_t e_min = std::numeric_limits<std::int64_t>::max();
  int m_max = std::numeric_limits<int>::min();
  std::uint64_t count = 0;

  void operator()(std::int64_t e, int m) {
    if (e < e_min || (e == e_min && m > m_max)) {
      e_min = e;
      m_max = m;
      count = 1;
    } else if (e == e_min && m == m_max) {
      ++count;
    }
  }
};

struct SectorTracker {
  explicit SectorTracker(int n_cells)
      : offset(3 * n_cells),
        e_min(static_cast<std::size_t>(6 * n_cells + 1), std::numeric_limits<std::int64_t>::max()),
        count(static_cast<std::size_t>(6 * n_cells + 1), 0) {}

  void operator()(std::int64_t e, int m) {
    const auto i = static_cast<std::size_t>(m + offset);
    if (e < e_min[i]) {
      e_min[i] = e;
      count[i] = 1;
    } else if (e == e_min[i]) {
      ++count[i];
    }
  }

  int offset;
  std::vector<std::int64_t> e_min;
  std::vector<std::uint64_t> count;
};

}  // namespace

double GroundStateReport::magnetization_per_spin() const {
  return to_double(Rational(m_sum, omega * 3 * n_cells));
}

double brute_partition(const ExchangeConstants& ex, const FieldPoint& pt, int n_cells) {
  check_size(n_cells);
  validate(ex);
  require_positive_temperature(pt);
  const CellTable<double> table = float_table(ex, pt.h);

  double e_min = std::numeric_limits<double>::infinity();
  auto find_min = [&](double e, int) { e_min = std::min(e_min, e); };
  walk_ring(table, n_cells, find_min);

  const double beta = pt.beta();
  double sum = 0.0;
  auto accumulate = [&](double e, int) { sum += std::exp(-beta * (e - e_min)); };
  walk_ring(table, n_cells, accumulate);
  return -beta * e_min + std::log(sum);
}

GroundStateReport ground_states(const ExchangeConstants& ex, const Rational& h, int n_cells) {
  check_size(n_cells);
  const ScaledTable st = scaled_table(ex, h);
  MinimumTracker tracker;
  walk_ring(st.table, n_cells, tracker);
  GroundStateReport r;
  r.n_cells = n_cells;
  r.e_min = Rational(BigInt(tracker.e_min), st.denominator);
  r.omega = BigInt(tracker.count);
  r.m_sum = BigInt(tracker.m_sum);
  return r;
}

GroundStateReport ground_states_plus_zero(const ExchangeConstants& ex, int n_cells) {
  check_size(n_cells);
  const ScaledTable st = scaled_table(ex, Rational(0));
  PlusZeroTracker tracker;
  walk_ring(st.table, n_cells, tracker);
  GroundStateReport r;
  r.n_cells = n_cells;
  r.e_min = Rational(BigInt(tracker.e_min), st.denominator);
  r.omega = BigInt(tracker.count);
  r.m_sum = BigInt(tracker.count) * tracker.m_max;
  return r;
}

std::vector<GroundStateReport> ground_state_sequence(const ExchangeConstants& ex, const Rational& h, int first,
                                                     int last, FieldMode mode) {
  if (first < 1 || last < first) throw ContractViolation("invalid n_cells range");
  check_size(last);
  std::vector<GroundStateReport> out;
  for (int n = first; n <= last; ++n)
    out.push_back(mode == FieldMode::exact ? ground_states(ex, h, n) : ground_states_plus_zero(ex, n));
  return out;
}

std::vector<BigInt> omega_sequence(const ExchangeConstants& ex, const Rational& h, int first, int last,
                                   FieldMode mode) {
  std::vector<BigInt> out;
  for (const auto& r : ground_state_sequence(ex, h, first, last, mode)) out.push_back(r.omega);
  return out;
}

double residual_entropy_estimate(std::span<const BigInt> omega, int stride) {
  if (omega.size() < 3) throw ContractViolation("residual entropy estimate needs at least 3 terms");
  if (stride < 1 || static_cast<std::size_t>(stride) >= omega.size())
    throw ContractViolation("stride must be in [1, length)");
  for (const auto& w : omega)
    if (w <= 0) throw ContractViolation("degeneracy counts must be positive");
  const BigInt& last = omega[omega.size() - 1];
  const BigInt& prev = omega[omega.size() - 1 - static_cast<std::size_t>(stride)];
  return std::log(to_double(Rational(last, prev))) / (3.0 * stride);
}

std::vector<SectorMinimum> sector_minima(const ExchangeConstants& ex, int n_cells) {
  check_size(n_cells);
  const ScaledTable st = scaled_table(ex, Rational(0));
  SectorTracker tracker(n_cells);
  walk_ring(st.table, n_cells, tracker);
  std::vector<SectorMinimum> out;
  for (std::size_t i = 0; i < tracker.count.size(); ++i) {
    if (tracker.count[i] == 0) continue;
    out.push_back({static_cast<int>(i) - tracker.offset, Rational(BigInt(tracker.e_min[i]), st.denominator),
                   BigInt(tracker.count[i])});
  }
  return out;
}

nlohmann::ordered_json to_json(const GroundStateReport& report) {
  nlohmann::ordered_json j;
  j["n_cells"] = report.n_cells;
  j["e_min"] = format_rational(report.e_min);
  j["omega"] = format_bigint(report.omega);
  j["m_sum"] = format_bigint(report.m_sum);
  return j;
}

}  // namespace dchain

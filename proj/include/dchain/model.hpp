#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dchain/rational.hpp"

namespace dchain {

/**
 * Couplings of the decorated triangle chain (k_B = mu_B = g = 1).
 *
 *   H = -sum_i [ j_d (S1 S2 + S2 S3) + j S1 S3 + j_t S3 S1' ] - h sum S
 *
 * where S1..S3 belong to cell i and S1' is the first spin of cell i+1.
 * Positive values are ferromagnetic.
 */
struct ExchangeConstants {
  double j_d = 0.0;
  double j = 0.0;
  double j_t = 0.0;

  bool operator==(const ExchangeConstants&) const = default;
};

// Throws ContractViolation unless all three couplings are finite.
void validate(const ExchangeConstants& ex);

struct ExactExchange {
  Rational j_d, j, j_t;
};

// Throws UnsupportedInput when a coupling is not a small-denominator rational.
ExactExchange to_exact(const ExchangeConstants& ex);

struct ChainSpec {
  int n_cells = 1;
  ExchangeConstants exchange;

  int n_spins() const { return 3 * n_cells; }
};

void validate(const ChainSpec& spec);

// Temperature and field of one thermodynamic evaluation. beta is derived.
struct FieldPoint {
  double h = 0.0;
  double t = 1.0;

  double beta() const { return 1.0 / t; }
};

// Throws DomainError unless t > 0 and both values are finite.
void require_positive_temperature(const FieldPoint& pt);

// The four parameter sets studied in the model's reference analysis.
enum class PresetCase { a, b, c, d };

inline constexpr PresetCase kAllCases[] = {PresetCase::a, PresetCase::b, PresetCase::c, PresetCase::d};

ExchangeConstants preset(PresetCase c);
PresetCase parse_case(std::string_view tag);  // "a".."d", DomainError otherwise
std::string_view case_tag(PresetCase c);

/**
 * One microstate of the ring. Spin (k, cell) with k in {0,1,2} lives at flat
 * index 3*cell + k. Values are stored as -1/+1.
 */
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(std::vector<std::int8_t> spins);

  // All spins +1.
  static SpinConfig aligned(int n_cells, int value = +1);
  // Bit f of mask set <=> spin at flat index f is +1. Needs 3*n_cells <= 64.
  static SpinConfig from_mask(int n_cells, std::uint64_t mask);
  static SpinConfig from_spins(std::span<const int> spins);

  int size() const { return static_cast<int>(spins_.size()); }
  int n_cells() const { return size() / 3; }
  int operator[](int flat) const { return spins_[static_cast<std::size_t>(flat)]; }
  int at(int k, int cell) const { return spins_[static_cast<std::size_t>(3 * cell + k)]; }
  void flip(int flat) { spins_[static_cast<std::size_t>(flat)] = static_cast<std::int8_t>(-spins_[static_cast<std::size_t>(flat)]); }

  std::span<const std::int8_t> spins() const { return spins_; }
  std::uint64_t to_mask() const;

  SpinConfig flipped() const;
  // Moves every cell forward by `cells` positions around the ring.
  SpinConfig shifted(int cells) const;

 private:
  std::vector<std::int8_t> spins_;
};

double energy(const SpinConfig& cfg, const ChainSpec& spec, double h);
Rational energy_exact(const SpinConfig& cfg, const ChainSpec& spec, const Rational& h);
int total_magnetization(const SpinConfig& cfg);

// Energy of one cell's bonds plus its Zeeman term, given the first spin of
// the following cell. Shared building block for the enumerator tables.
Rational cell_energy_exact(const ExactExchange& ex, const Rational& h, int s1, int s2, int s3, int s1_next);
double cell_energy(const ExchangeConstants& ex, double h, int s1, int s2, int s3, int s1_next);

}  // namespace dchain

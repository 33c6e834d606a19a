#include <doctest.h>

#include <cmath>
#include <random>

#include "dchain/errors.hpp"
#include "dchain/model.hpp"
#include "dchain/rational.hpp"

using namespace dchain;

namespace {

SpinConfig random_config(int n_cells, std::mt19937_64& rng) {
  std::vector<int> s(static_cast<std::size_t>(3 * n_cells));
  for (auto& v : s) v = (rng() & 1) ? 1 : -1;
  return SpinConfig::from_spins(s);
}

// Hamiltonian written out bond by bond, independent of the library's loop.
double reference_energy(const SpinConfig& c, const ExchangeConstants& ex, double h) {
  const int n = c.n_cells();
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    const int s1 = c.at(0, i), s2 = c.at(1, i), s3 = c.at(2, i);
    const int s1n = c.at(0, (i + 1) % n);
    e -= ex.j_d * (s1 * s2 + s2 * s3) + ex.j * s1 * s3 + ex.j_t * s3 * s1n;
    e -= h * (s1 + s2 + s3);
  }
  return e;
}

}  // namespace

TEST_CASE("presets are the four coupling sets") {
  CHECK(preset(PresetCase::a) == ExchangeConstants{-1, -1, -1});
  CHECK(preset(PresetCase::b) == ExchangeConstants{-1, -1, 1});
  CHECK(preset(PresetCase::c) == ExchangeConstants{1, 1, -1});
  CHECK(preset(PresetCase::d) == ExchangeConstants{1, -1, -1});
  CHECK(parse_case("c") == PresetCase::c);
  CHECK(case_tag(PresetCase::d) == "d");
  CHECK_THROWS_AS(parse_case("e"), DomainError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(ExchangeConstants{NAN, 0, 0}), ContractViolation);
  CHECK_THROWS_AS(validate(ChainSpec{0, {}}), ContractViolation);
  CHECK_THROWS_AS(require_positive_temperature({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(require_positive_temperature({0.0, -1.0}), DomainError);
  CHECK_NOTHROW(require_positive_temperature({0.0, 1e-3}));
  CHECK_THROWS_AS(to_exact(ExchangeConstants{std::sqrt(2.0), 0, 0}), UnsupportedInput);
}

TEST_CASE("energy of simple configurations") {
  const ExchangeConstants ex{-1, -1, -1};
  const ChainSpec spec{4, ex};
  // all up: each cell has 2 J_d bonds, one J bond, one J_t bond
  CHECK(energy(SpinConfig::aligned(4), spec, 0.0) == doctest::Approx(-4.0 * (2 * -1 + -1 + -1)));
  CHECK(energy(SpinConfig::aligned(4), spec, 0.5) == doctest::Approx(16.0 - 0.5 * 12));
  CHECK(energy_exact(SpinConfig::aligned(4), spec, Rational(1, 2)) == Rational(10));
}

TEST_CASE("total magnetization") {
  CHECK(total_magnetization(SpinConfig::aligned(2)) == 6);
  CHECK(total_magnetization(SpinConfig::from_spins(std::vector{1, 1, 1, -1, -1, -1})) == 0);
  CHECK(total_magnetization(SpinConfig::from_spins(std::vector{1, 1, -1, 1, 1, -1, 1, 1, -1})) == 3);
}

TEST_CASE("energy matches the bond-by-bond reference") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const ExchangeConstants ex{u(rng), u(rng), u(rng)};
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto cfg = random_config(n, rng);
    const double h = u(rng);
    CHECK(energy(cfg, {n, ex}, h) == doctest::Approx(reference_energy(cfg, ex, h)).epsilon(1e-12));
  }
}

TEST_CASE("exact and float energies agree on random configurations") {
  std::mt19937_64 rng(11);
  const Rational hs[] = {Rational(0), Rational(2, 3), Rational(-3, 2), Rational(1, 6)};
  for (int trial = 0; trial < 1000; ++trial) {
    const PresetCase c = kAllCases[trial % 4];
    const ChainSpec spec{2 + trial % 5, preset(c)};
    const auto cfg = random_config(spec.n_cells, rng);
    const Rational h = hs[trial % 4];
    CHECK(to_double(energy_exact(cfg, spec, h)) == doctest::Approx(energy(cfg, spec, to_double(h))).epsilon(1e-12));
  }
}

TEST_CASE("exact energies tie where float energies might not") {
  const ChainSpec spec{2, {1, 1, -1}};
  const Rational h(2, 3);
  const auto up = SpinConfig::aligned(2);
  const auto alternating = SpinConfig::from_spins(std::vector{1, 1, 1, -1, -1, -1});
  CHECK(energy_exact(up, spec, h) == Rational(-8));
  CHECK(energy_exact(alternating, spec, h) == Rational(-8));
}

TEST_CASE("symmetries of the Hamiltonian") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const ChainSpec spec{1 + trial % 6, preset(kAllCases[trial % 4])};
    const auto cfg = random_config(spec.n_cells, rng);
    const double h = 0.37 * (trial % 7) - 1.0;
    CHECK(energy(cfg.flipped(), spec, 0.0) == doctest::Approx(energy(cfg, spec, 0.0)));
    CHECK(energy(cfg, spec, h) == doctest::Approx(energy(cfg, spec, 0.0) - h * total_magnetization(cfg)));
    CHECK(energy(cfg.shifted(1), spec, h) == doctest::Approx(energy(cfg, spec, h)));
  }
}

TEST_CASE("mask round trip and shifting") {
  const auto cfg = SpinConfig::from_mask(3, 0b101100011ull);
  CHECK(cfg.to_mask() == 0b101100011ull);
  CHECK(cfg[0] == 1);
  CHECK(cfg[2] == -1);
  CHECK(cfg.at(0, 1) == -1);
  CHECK(cfg.shifted(3).to_mask() == cfg.to_mask());
  CHECK(cfg.shifted(1).at(0, 1) == cfg.at(0, 0));
  CHECK_THROWS_AS(SpinConfig::from_mask(22, 0), ContractViolation);
}

TEST_CASE("cell energies sum to the ring energy") {
  const ExchangeConstants ex{1, -1, -1};
  const auto exact = to_exact(ex);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = random_config(4, rng);
    Rational sum;
    for (int i = 0; i < 4; ++i)
      sum += cell_energy_exact(exact, Rational(1, 3), cfg.at(0, i), cfg.at(1, i), cfg.at(2, i), cfg.at(0, (i + 1) % 4));
    CHECK(sum == energy_exact(cfg, {4, ex}, Rational(1, 3)));
  }
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("2/3") == Rational(2, 3));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("3") == Rational(3));
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK(format_rational(Rational(-2, 3)) == "-2/3");
  CHECK(rational_from_double(2.0 / 3.0) == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("abc"), UnsupportedInput);
  CHECK_THROWS_AS(rational_from_double(M_PI), UnsupportedInput);
}

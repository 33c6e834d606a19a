#include <doctest.h>

#include <cmath>
#include <random>

#include "dchain/errors.hpp"
#include "dchain/transfer.hpp"

using namespace dchain;

namespace {

// Transfer element by direct summation over the two decorating spins. The
// first spins of the two cells each carry half their Zeeman term.
double direct_log_element(const ExchangeConstants& ex, const FieldPoint& pt, int s1, int s1n) {
  double terms[4];
  int k = 0;
  for (int s2 : {1, -1})
    for (int s3 : {1, -1}) {
      const double e = -(ex.j_d * (s1 * s2 + s2 * s3) + ex.j * s1 * s3 + ex.j_t * s3 * s1n) - pt.h * (s2 + s3) - 0.5 * pt.h * (s1 + s1n);
      terms[k++] = -pt.beta() * e;
    }
  const double hi = *std::max_element(terms, terms + 4);
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

// ln Z of a ring by summing all 2^(3n) states, written independently of the
// enumeration module.
double ring_log_z(const ExchangeConstants& ex, const FieldPoint& pt, int n) {
  const int bits = 3 * n;
  std::vector<double> logs;
  for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
    auto s = [&](int cell, int k) { return ((mask >> (3 * (cell % n) + k)) & 1) ? 1 : -1; };
    double e = 0.0;
    for (int i = 0; i < n; ++i)
      e -= ex.j_d * (s(i, 0) * s(i, 1) + s(i, 1) * s(i, 2)) + ex.j * s(i, 0) * s(i, 2) + ex.j_t * s(i, 2) * s(i + 1, 0) +
           pt.h * (s(i, 0) + s(i, 1) + s(i, 2));
    logs.push_back(-pt.beta() * e);
  }
  const double hi = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - hi);
  return hi + std::log(sum);
}

struct RandomPoint {
  ExchangeConstants ex;
  FieldPoint pt;
};

RandomPoint draw(std::mt19937_64& rng, double t_lo = 0.05, double t_hi = 5.0) {
  std::uniform_real_distribution<double> c(-2, 2), h(-3, 3), t(t_lo, t_hi);
  return {{c(rng), c(rng), c(rng)}, {h(rng), t(rng)}};
}

}  // namespace

TEST_CASE("elements equal the direct four-term sums") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto [ex, pt] = draw(rng);
    const auto tm = build_transfer(ex, pt);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const double want = direct_log_element(ex, pt, r == 0 ? 1 : -1, c == 0 ? 1 : -1);
        CHECK(std::fabs(tm.log_element(r, c) - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
      }
  }
}

TEST_CASE("scaled storage") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto [ex, pt] = draw(rng, 0.01, 10.0);
    const auto tm = build_transfer(ex, pt);
    int ones = 0;
    for (const auto& row : tm.r)
      for (double v : row) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        if (v == 1.0) ++ones;
      }
    CHECK(ones >= 1);
  }
}

TEST_CASE("infinite temperature and zero field limits") {
  const auto tm = build_transfer({0.3, -1.2, 0.8}, {0.0, 1e9});
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(tm.log_element(r, c) == doctest::Approx(std::log(4.0)));
  CHECK(eigen(tm).log_lambda_plus == doctest::Approx(std::log(8.0)));
  CHECK(partition_finite({0.3, -1.2, 0.8}, {0.5, 1e9}, 5) == doctest::Approx(15 * std::log(2.0)));

  const auto z = build_transfer({1, 1, -1}, {0.0, 0.7});
  CHECK(z.log_element(0, 1) == doctest::Approx(z.log_element(1, 0)));
  CHECK(z.log_element(0, 0) == doctest::Approx(z.log_element(1, 1)));
}

TEST_CASE("eigenvalues satisfy trace and determinant identities") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto [ex, pt] = draw(rng, 0.2, 5.0);
    const auto tm = build_transfer(ex, pt);
    const auto e = eigen(tm);
    const double lp = std::exp(e.log_lambda_plus - tm.log_scale);
    const double lm = lp * e.lambda_minus_ratio;
    const double tr = tm.r[0][0] + tm.r[1][1];
    const double det = tm.r[0][0] * tm.r[1][1] - tm.r[0][1] * tm.r[1][0];
    CHECK(lp + lm == doctest::Approx(tr).epsilon(1e-12));
    CHECK(lp * lm == doctest::Approx(det).epsilon(1e-9).scale(tr * tr));
    CHECK(std::fabs(e.lambda_minus_ratio) < 1.0);
  }
}

TEST_CASE("finite ring partition function matches exhaustive sum") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    const auto [ex, pt] = draw(rng, 0.2, 4.0);
    for (int n = 1; n <= 4; ++n) {
      const double want = ring_log_z(ex, pt, n);
      CHECK(std::fabs(partition_finite(ex, pt, n) - want) <= 1e-10 * std::max(1.0, std::fabs(want)));
    }
  }
}

TEST_CASE("free energy is the large-ring limit") {
  for (PresetCase c : kAllCases) {
    const auto ex = preset(c);
    const FieldPoint pt{0.8, 0.7};
    const double per_spin = -pt.t * partition_finite(ex, pt, 200) / 600.0;
    CHECK(per_spin == doctest::Approx(free_energy(ex, pt)).epsilon(1e-9));
  }
}

TEST_CASE("low temperature free energy approaches the ground-state energy") {
  // Case c at h = 0: alternating ferromagnetic triangles, E/N = -4/3.
  CHECK(free_energy({1, 1, -1}, {0.0, 0.01}) == doctest::Approx(-4.0 / 3.0).epsilon(1e-3));
  // Very low temperature must not overflow.
  const double f = free_energy({-1, -1, -1}, {3.0, 1e-3});
  CHECK(std::isfinite(f));
  CHECK(std::isfinite(entropy({-1, -1, -1}, {3.0, 1e-3})));
}

TEST_CASE("implicit derivatives agree with finite differences") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto [ex, pt] = draw(rng, 0.2, 3.0);
    const auto a = lambda_derivatives(ex, pt);
    const auto b = lambda_derivatives_fd(ex, pt);
    CHECK(a.dlog_dt == doctest::Approx(b.dlog_dt).epsilon(1e-6).scale(1.0));
    CHECK(a.dlog_dh == doctest::Approx(b.dlog_dh).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("thermodynamic values") {
  CHECK(magnetization({-1, -1, -1}, {1.5, 0.25}) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK(magnetization({1, -1, -1}, {10.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(entropy({-1, 1, 0.5}, {0.0, 1e5}) == doctest::Approx(std::log(2.0)).epsilon(1e-4));
  CHECK(magnetization({-1, 1, 0.5}, {0.0, 0.3}) == doctest::Approx(0.0).scale(1.0));
  for (PresetCase c : kAllCases) {
    const auto ex = preset(c);
    for (double h : {0.3, 1.1, 2.5}) {
      CHECK(magnetization(ex, {-h, 0.4}) == doctest::Approx(-magnetization(ex, {h, 0.4})));
      CHECK(entropy(ex, {-h, 0.4}) == doctest::Approx(entropy(ex, {h, 0.4})));
      CHECK(free_energy(ex, {-h, 0.4}) == doctest::Approx(free_energy(ex, {h, 0.4})));
    }
  }
}

TEST_CASE("plateau magnetization at low temperature") {
  CHECK(magnetization({-1, -1, -1}, {1.5, 0.05}) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  CHECK(magnetization({-1, -1, 1}, {1.0, 0.05}) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  CHECK(magnetization({1, -1, -1}, {0.5, 0.05}) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  CHECK(std::fabs(magnetization({1, 1, -1}, {0.33, 0.05})) <= 1e-4);
}

TEST_CASE("small-ring thermodynamics from exhaustive and transfer-matrix ln Z") {
  // Entropy and magnetization of a 4-cell ring from finite differences of
  // the exhaustive ln Z, against the same differences of ln Tr R^4 and,
  // loosely, against the infinite chain.
  const ExchangeConstants ex{-1, -1, -1};
  const int cells = 4;
  const double n_spins = 3.0 * cells;
  const double h = 0.7;
  const double d = 1e-4;
  for (double t : {0.5, 1.0, 2.0}) {
    CAPTURE(t);
    auto derived = [&](auto&& lnz) {
      const double m = t * (lnz(h + d, t) - lnz(h - d, t)) / (2 * d) / n_spins;
      auto f = [&](double tt) { return -tt * lnz(h, tt) / n_spins; };
      return std::pair{m, -(f(t + d) - f(t - d)) / (2 * d)};
    };
    const auto [m_ring, s_ring] = derived([&](double hh, double tt) { return ring_log_z(ex, {hh, tt}, cells); });
    const auto [m_tm, s_tm] = derived([&](double hh, double tt) { return partition_finite(ex, {hh, tt}, cells); });
    CHECK(m_ring == doctest::Approx(m_tm).epsilon(1e-6));
    CHECK(s_ring == doctest::Approx(s_tm).epsilon(1e-6));
    CHECK(m_ring == doctest::Approx(magnetization(ex, {h, t})).epsilon(2e-2));
    CHECK(s_ring == doctest::Approx(entropy(ex, {h, t})).epsilon(2e-2));
  }
}

TEST_CASE("sweep layout and determinism") {
  const ExchangeConstants ex{1, -1, -1};
  const std::vector<double> hs{-1.0, 0.0, 1.0};
  const std::vector<double> ts{0.5, 1.5};
  const auto one = sweep(ex, hs, ts, 1);
  const auto many = sweep(ex, hs, ts, 3);
  REQUIRE(one.size() == 6);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].h == hs[i % 3]);
    CHECK(one[i].t == ts[i / 3]);
    CHECK(one[i].m == many[i].m);
    CHECK(one[i].s == many[i].s);
    CHECK(one[i].f == many[i].f);
  }
  CHECK(one[0].m == doctest::Approx(-one[2].m));
  CHECK(one[0].s == doctest::Approx(one[2].s));
  const auto row = thermo_point(ex, {1.0, 1.5});
  CHECK(row.m == one[5].m);
  CHECK(sweep(ex, std::vector<double>{}, ts).empty());
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(free_energy({1, 1, 1}, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(build_transfer({1, 1, 1}, {0.0, -1.0}), DomainError);
  CHECK_THROWS_AS(partition_finite({1, 1, 1}, {0.0, 1.0}, 0), ContractViolation);
}

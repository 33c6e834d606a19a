#include <doctest.h>

#include <cmath>

#include "dchain/errors.hpp"
#include "dchain/sequences.hpp"

using namespace dchain;

namespace {

std::vector<BigInt> as_big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

template <typename F>
std::vector<BigInt> table(F f, long first, long last) {
  std::vector<BigInt> out;
  for (long n = first; n <= last; ++n) out.push_back(f(n));
  return out;
}

bool contains(const std::vector<SequenceMatch>& v, const SequenceMatch& m) {
  return std::find(v.begin(), v.end(), m) != v.end();
}

}  // namespace

TEST_CASE("recurrence values") {
  CHECK(table(lucas, 1, 10) == as_big({1, 3, 4, 7, 11, 18, 29, 47, 76, 123}));
  CHECK(table(fibonacci, 1, 10) == as_big({1, 1, 2, 3, 5, 8, 13, 21, 34, 55}));
  CHECK(table(pell, 0, 6) == as_big({0, 1, 2, 5, 12, 29, 70}));
  CHECK(table(pell_lucas, 1, 4) == as_big({2, 6, 14, 34}));
  CHECK(lucas(0) == 2);
  CHECK(fibonacci(0) == 0);
  CHECK(pell_lucas(0) == 2);
  CHECK_THROWS_AS(lucas(-1), DomainError);
  CHECK_THROWS_AS(pell(-3), DomainError);
}

TEST_CASE("classical identities") {
  for (long n = 1; n <= 50; ++n) {
    CHECK(lucas(n) == fibonacci(n - 1) + fibonacci(n + 1));
    CHECK(pell_lucas(n) == 2 * (pell(n - 1) + pell(n)));
  }
  // Big values stay exact.
  CHECK(fibonacci(100) == BigInt("354224848179261915075"));
}

TEST_CASE("closed forms agree with recurrences") {
  for (int n = 0; n <= 40; ++n) {
    CHECK(lucas_closed_form(n) == doctest::Approx(to_double(lucas(n))).epsilon(1e-9));
    CHECK(fibonacci_closed_form(n) == doctest::Approx(to_double(fibonacci(n))).epsilon(1e-9));
    CHECK(pell_closed_form(n) == doctest::Approx(to_double(pell(n))).epsilon(1e-9));
    CHECK(pell_lucas_closed_form(n) == doctest::Approx(to_double(pell_lucas(n))).epsilon(1e-9));
  }
}

TEST_CASE("ratios converge monotonically in error") {
  // Stop before the error reaches double rounding.
  double prev_l = 1.0, prev_q = 1.0;
  for (long n = 2; n <= 30; ++n) {
    const double el = std::fabs(to_double(lucas(n + 1)) / to_double(lucas(n)) - kGoldenRatio);
    CHECK(el < prev_l);
    prev_l = el;
  }
  for (long n = 2; n <= 15; ++n) {
    const double eq = std::fabs(to_double(pell_lucas(n + 1)) / to_double(pell_lucas(n)) - kSilverRatio);
    CHECK(eq < prev_q);
    prev_q = eq;
  }
  CHECK(prev_l < 1e-10);
  CHECK(prev_q < 1e-10);
}

TEST_CASE("identify known degeneracy columns") {
  const SequenceMatch lucas_2n{{SequenceTag::lucas, {2, 0}}, 1};
  CHECK(contains(identify(as_big({3, 7, 18, 47, 123, 322, 843})), lucas_2n));
  const SequenceMatch fib_2n3{{SequenceTag::fibonacci, {2, 3}}, 1};
  CHECK(contains(identify(as_big({5, 13, 34, 89, 233, 610, 1597})), fib_2n3));
  const SequenceMatch two_pell{{SequenceTag::pell, {1, 1}}, 2};
  CHECK(contains(identify(as_big({4, 10, 24, 58, 140, 338})), two_pell));
  CHECK(describe(two_pell) == "2*pell(n+1)");
  CHECK(describe(lucas_2n) == "lucas(2n)");
  const SequenceMatch q{{SequenceTag::pell_lucas, {1, 0}}, 1};
  CHECK(contains(identify(as_big({2, 6, 14, 34, 82, 198, 478, 1154})), q));
  CHECK(contains(identify(as_big({4, 10, 28, 82, 244})), SequenceMatch{{SequenceTag::one_plus_pow3, {1, 0}}, 1}));
  CHECK(contains(identify(as_big({2, 10, 26, 82, 242})), SequenceMatch{{SequenceTag::alt_plus_pow3, {1, 0}}, 1}));
  CHECK(identify(as_big({1, 2, 4, 9, 17, 40})).empty());
  CHECK_THROWS_AS(identify(as_big({1, 2, 3})), ContractViolation);
}

TEST_CASE("identify round trip over the supported family") {
  for (SequenceTag tag : kAllSequenceTags)
    for (int a = 1; a <= 3; ++a)
      for (int b = -1; b <= 5; b += 2)
        for (int c = 1; c <= 3; ++c) {
          const SequenceMatch m{{tag, {a, b}}, c};
          std::vector<BigInt> seq;
          for (long n = 1; n <= 7; ++n) seq.push_back(c * sequence_value(tag, a * n + b));
          CHECK(contains(identify(seq), m));
        }
}

TEST_CASE("first index shifts the match") {
  const auto seq = table(lucas, 3, 9);
  CHECK(contains(identify(seq, 3), SequenceMatch{{SequenceTag::lucas, {1, 0}}, 1}));
  CHECK(contains(identify(seq, 1), SequenceMatch{{SequenceTag::lucas, {1, 2}}, 1}));
}

TEST_CASE("asymptotic constants") {
  const double phi = 0.5 * (1 + std::sqrt(5.0));
  const auto a = asymptotic_constants(PresetCase::a, FieldRegime::critical);
  CHECK(a.s == doctest::Approx(0.3208).epsilon(1e-3));
  CHECK(a.m == doctest::Approx(0.6314).epsilon(1e-3));
  const auto b = asymptotic_constants(PresetCase::b, FieldRegime::critical);
  CHECK(b.s == doctest::Approx(0.2938).epsilon(1e-3));
  CHECK(b.m == doctest::Approx(0.5690).epsilon(1e-3));
  const auto c = asymptotic_constants(PresetCase::c, FieldRegime::critical);
  CHECK(c.s == doctest::Approx(std::log(phi) / 3));
  CHECK(c.m == doctest::Approx(0.4472).epsilon(1e-3));
  const auto cz = asymptotic_constants(PresetCase::c, FieldRegime::zero);
  CHECK(cz.s == 0.0);
  CHECK(cz.m == 0.0);
  CHECK(asymptotic_constants(PresetCase::d, FieldRegime::zero).s == doctest::Approx(std::log(3.0) / 3));
}

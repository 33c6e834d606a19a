#include "dchain/sequences.hpp"

#include <cmath>

#include "dchain/errors.hpp"

namespace dchain {

namespace {

// x_{n+1} = k x_n + x_{n-1}
BigInt linear_recurrence(long n, const BigInt& x0, const BigInt& x1, int k) {
  if (n < 0) throw DomainError("sequence index must be nonnegative, got " + std::to_string(n));
  if (n == 0) return x0;
  BigInt prev = x0, cur = x1;
  for (long i = 1; i < n; ++i) {
    BigInt next = k * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt pow3(long n) {
  if (n < 0) throw DomainError("sequence index must be nonnegative, got " + std::to_string(n));
  return boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n));
}

}  // namespace

BigInt lucas(long n) { return linear_recurrence(n, 2, 1, 1); }
BigInt fibonacci(long n) { return linear_recurrence(n, 0, 1, 1); }
BigInt pell(long n) { return linear_recurrence(n, 0, 1, 2); }
BigInt pell_lucas(long n) { return linear_recurrence(n, 2, 2, 2); }

// psi = 1 - phi = -(phi - 1) and 1 - sqrt2 = -(sqrt2 - 1), so the second
// root is raised as a signed power of a number in (0, 1).
static double signed_pow(double base, int n) { return (n % 2 == 0 ? 1.0 : -1.0) * std::pow(base, n); }

double lucas_closed_form(int n) { return std::pow(kGoldenRatio, n) + signed_pow(kGoldenRatio - 1.0, n); }

double fibonacci_closed_form(int n) {
  return (std::pow(kGoldenRatio, n) - signed_pow(kGoldenRatio - 1.0, n)) / std::sqrt(5.0);
}

double pell_closed_form(int n) {
  return (std::pow(kSilverRatio, n) - signed_pow(kSilverRatio - 2.0, n)) / (2.0 * std::sqrt(2.0));
}

double pell_lucas_closed_form(int n) { return std::pow(kSilverRatio, n) + signed_pow(kSilverRatio - 2.0, n); }

std::string_view sequence_name(SequenceTag tag) {
  switch (tag) {
    case SequenceTag::lucas: return "lucas";
    case SequenceTag::fibonacci: return "fibonacci";
    case SequenceTag::pell: return "pell";
    case SequenceTag::pell_lucas: return "pell_lucas";
    case SequenceTag::one_plus_pow3: return "one_plus_pow3";
    case SequenceTag::alt_plus_pow3: return "alt_plus_pow3";
  }
  return "?";
}

BigInt sequence_value(SequenceTag tag, long n) {
  switch (tag) {
    case SequenceTag::lucas: return lucas(n);
    case SequenceTag::fibonacci: return fibonacci(n);
    case SequenceTag::pell: return pell(n);
    case SequenceTag::pell_lucas: return pell_lucas(n);
    case SequenceTag::one_plus_pow3: return 1 + pow3(n);
    case SequenceTag::alt_plus_pow3: return (n % 2 == 0 ? 1 : -1) + pow3(n);
  }
  throw DomainError("unknown sequence tag");
}

std::string describe(const SequenceMatch& match) {
  const auto [a, b] = match.kind.index_map;
  std::string index;
  if (a == 0) {
    index = std::to_string(b);
  } else {
    index = a == 1 ? "n" : a == -1 ? "-n" : std::to_string(a) + "n";
    if (b > 0) index += "+" + std::to_string(b);
    if (b < 0) index += std::to_string(b);
  }
  std::string out = match.prefactor == 1 ? "" : std::to_string(match.prefactor) + "*";
  return out + std::string(sequence_name(match.kind.tag)) + "(" + index + ")";
}

std::vector<SequenceMatch> identify(std::span<const BigInt> seq, long first_index) {
  std::vector<SequenceMatch> matches;
  if (seq.size() < 4) throw ContractViolation("identify needs at least 4 terms");
  const long last_index = first_index + static_cast<long>(seq.size()) - 1;
  for (int prefactor = 1; prefactor <= 3; ++prefactor) {
    for (SequenceTag tag : kAllSequenceTags) {
      for (int a = -3; a <= 3; ++a) {
        for (int b = -5; b <= 5; ++b) {
          const IndexMap map{a, b};
          if (map(first_index) < 0 || map(last_index) < 0) continue;
          bool ok = true;
          for (std::size_t k = 0; k < seq.size() && ok; ++k)
            ok = prefactor * sequence_value(tag, map(first_index + static_cast<long>(k))) == seq[k];
          if (ok) matches.push_back({{tag, map}, prefactor});
        }
      }
    }
  }
  return matches;
}

AsymptoticConstants asymptotic_constants(PresetCase c, FieldRegime regime) {
  const double ln3_third = std::log(3.0) / 3.0;
  if (regime == FieldRegime::zero) {
    if (c == PresetCase::c) return {0.0, 0.0};
    return {ln3_third, 1.0 / 3.0};
  }
  switch (c) {
    case PresetCase::a:
    case PresetCase::d:
      return {2.0 / 3.0 * std::log(kGoldenRatio), (1.0 + 2.0 / std::sqrt(5.0)) / 3.0};
    case PresetCase::b:
      return {std::log(kSilverRatio) / 3.0, kSilverRatio / (3.0 * std::sqrt(2.0))};
    case PresetCase::c:
      return {std::log(kGoldenRatio) / 3.0, 1.0 / std::sqrt(5.0)};
  }
  throw DomainError("unknown case");
}

}  // namespace dchain

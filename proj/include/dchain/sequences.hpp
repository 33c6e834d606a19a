#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "dchain/model.hpp"
#include "dchain/rational.hpp"

namespace dchain {

// Exact values from the two-term recurrences. Negative n throws DomainError.
BigInt lucas(long n);       // L0 = 2, L1 = 1
BigInt fibonacci(long n);   // F0 = 0, F1 = 1
BigInt pell(long n);        // P0 = 0, P1 = 1, P_{n+1} = 2 P_n + P_{n-1}
BigInt pell_lucas(long n);  // Q0 = 2, Q1 = 2

// Binet-type closed forms, for asymptotics only.
double lucas_closed_form(int n);
double fibonacci_closed_form(int n);
double pell_closed_form(int n);
double pell_lucas_closed_form(int n);

inline const double kGoldenRatio = 0.5 * (1.0 + std::sqrt(5.0));
inline const double kSilverRatio = 1.0 + std::sqrt(2.0);

enum class SequenceTag { lucas, fibonacci, pell, pell_lucas, one_plus_pow3, alt_plus_pow3 };

inline constexpr SequenceTag kAllSequenceTags[] = {SequenceTag::lucas,      SequenceTag::fibonacci,
                                                   SequenceTag::pell,       SequenceTag::pell_lucas,
                                                   SequenceTag::one_plus_pow3, SequenceTag::alt_plus_pow3};

std::string_view sequence_name(SequenceTag tag);
BigInt sequence_value(SequenceTag tag, long n);

// n -> a*n + b
struct IndexMap {
  int a = 1;
  int b = 0;

  long operator()(long n) const { return a * n + b; }
  bool operator==(const IndexMap&) const = default;
};

struct SequenceKind {
  SequenceTag tag = SequenceTag::lucas;
  IndexMap index_map;

  bool operator==(const SequenceKind&) const = default;
};

struct SequenceMatch {
  SequenceKind kind;
  int prefactor = 1;

  bool operator==(const SequenceMatch&) const = default;
};

// Human-readable form such as "2*pell(n+1)" or "lucas(2n)".
std::string describe(const SequenceMatch& match);

// Every (prefactor c in {1,2,3}, kind, a*n+b with |a| <= 3, |b| <= 5) whose
// values reproduce seq exactly; seq[k] is taken to be the term at
// n = first_index + k. Needs at least 4 terms.
std::vector<SequenceMatch> identify(std::span<const BigInt> seq, long first_index = 1);

enum class FieldRegime { zero, critical };

struct AsymptoticConstants {
  double s = 0.0;  // ground-state entropy per spin
  double m = 0.0;  // ground-state magnetization per spin
};

// Closed-form T = 0 entropy and magnetization per spin at h = 0 or h = h_c.
AsymptoticConstants asymptotic_constants(PresetCase c, FieldRegime regime);

}  // namespace dchain

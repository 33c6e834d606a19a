#include "dchain/model.hpp"

#include <cmath>

#include "dchain/errors.hpp"

namespace dchain {

void validate(const ExchangeConstants& ex) {
  if (!std::isfinite(ex.j_d) || !std::isfinite(ex.j) || !std::isfinite(ex.j_t))
    throw ContractViolation("exchange constants must be finite");
}

ExactExchange to_exact(const ExchangeConstants& ex) {
  validate(ex);
  return {rational_from_double(ex.j_d), rational_from_double(ex.j), rational_from_double(ex.j_t)};
}

void validate(const ChainSpec& spec) {
  if (spec.n_cells < 1) throw ContractViolation("n_cells must be >= 1");
  validate(spec.exchange);
}

void require_positive_temperature(const FieldPoint& pt) {
  if (!std::isfinite(pt.h)) throw DomainError("field must be finite");
  if (!std::isfinite(pt.t) || !(pt.t > 0.0))
    throw DomainError("temperature must be positive and finite, got " + std::to_string(pt.t));
}

ExchangeConstants preset(PresetCase c) {
  switch (c) {
    case PresetCase::a: return {-1.0, -1.0, -1.0};
    case PresetCase::b: return {-1.0, -1.0, +1.0};
    case PresetCase::c: return {+1.0, +1.0, -1.0};
    case PresetCase::d: return {+1.0, -1.0, -1.0};
  }
  throw DomainError("unknown case");
}

PresetCase parse_case(std::string_view tag) {
  if (tag == "a") return PresetCase::a;
  if (tag == "b") return PresetCase::b;
  if (tag == "c") return PresetCase::c;
  if (tag == "d") return PresetCase::d;
  throw DomainError("unknown case '" + std::string(tag) + "' (expected a, b, c or d)");
}

std::string_view case_tag(PresetCase c) {
  switch (c) {
    case PresetCase::a: return "a";
    case PresetCase::b: return "b";
    case PresetCase::c: return "c";
    case PresetCase::d: return "d";
  }
  return "?";
}

SpinConfig::SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  if (spins_.empty() || spins_.size() % 3 != 0)
    throw ContractViolation("spin count must be a positive multiple of 3");
  for (auto s : spins_)
    if (s != 1 && s != -1) throw ContractViolation("spins must be -1 or +1");
}

SpinConfig SpinConfig::aligned(int n_cells, int value) {
  if (n_cells < 1) throw ContractViolation("n_cells must be >= 1");
  return SpinConfig(std::vector<std::int8_t>(static_cast<std::size_t>(3 * n_cells), static_cast<std::int8_t>(value)));
}

SpinConfig SpinConfig::from_mask(int n_cells, std::uint64_t mask) {
  if (n_cells < 1 || 3 * n_cells > 64) throw ContractViolation("mask form needs 1 <= n_cells <= 21");
  std::vector<std::int8_t> s(static_cast<std::size_t>(3 * n_cells));
  for (std::size_t f = 0; f < s.size(); ++f) s[f] = ((mask >> f) & 1u) ? 1 : -1;
  return SpinConfig(std::move(s));
}

SpinConfig SpinConfig::from_spins(std::span<const int> spins) {
  std::vector<std::int8_t> s;
  s.reserve(spins.size());
  for (int v : spins) {
    if (v != 1 && v != -1) throw ContractViolation("spins must be -1 or +1");
    s.push_back(static_cast<std::int8_t>(v));
  }
  return SpinConfig(std::move(s));
}

std::uint64_t SpinConfig::to_mask() const {
  if (size() > 64) throw ContractViolation("configuration too long for a 64-bit mask");
  std::uint64_t mask = 0;
  for (int f = 0; f < size(); ++f)
    if (spins_[static_cast<std::size_t>(f)] > 0) mask |= std::uint64_t{1} << f;
  return mask;
}

SpinConfig SpinConfig::flipped() const {
  SpinConfig out = *this;
  for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
  return out;
}

SpinConfig SpinConfig::shifted(int cells) const {
  const int n = n_cells();
  const int shift = ((cells % n) + n) % n;
  std::vector<std::int8_t> s(spins_.size());
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < 3; ++k)
      s[static_cast<std::size_t>(3 * ((c + shift) % n) + k)] = spins_[static_cast<std::size_t>(3 * c + k)];
  return SpinConfig(std::move(s));
}

namespace {

void check_length(const SpinConfig& cfg, const ChainSpec& spec) {
  if (cfg.size() != spec.n_spins())
    throw ContractViolation("configuration has " + std::to_string(cfg.size()) + " spins, chain needs " +
                            std::to_string(spec.n_spins()));
}

}  // namespace

double cell_energy(const ExchangeConstants& ex, double h, int s1, int s2, int s3, int s1_next) {
  const double bonds = ex.j_d * (s1 * s2 + s2 * s3) + ex.j * (s1 * s3) + ex.j_t * (s3 * s1_next);
  return -bonds - h * (s1 + s2 + s3);
}

Rational cell_energy_exact(const ExactExchange& ex, const Rational& h, int s1, int s2, int s3, int s1_next) {
  Rational bonds = ex.j_d * (s1 * s2 + s2 * s3) + ex.j * (s1 * s3) + ex.j_t * (s3 * s1_next);
  return -bonds - h * (s1 + s2 + s3);
}

double energy(const SpinConfig& cfg, const ChainSpec& spec, double h) {
  validate(spec);
  check_length(cfg, spec);
  const int n = spec.n_cells;
  double e = 0.0;
  for (int c = 0; c < n; ++c)
    e += cell_energy(spec.exchange, h, cfg.at(0, c), cfg.at(1, c), cfg.at(2, c), cfg.at(0, (c + 1) % n));
  return e;
}

Rational energy_exact(const SpinConfig& cfg, const ChainSpec& spec, const Rational& h) {
  validate(spec);
  check_length(cfg, spec);
  const ExactExchange ex = to_exact(spec.exchange);
  const int n = spec.n_cells;
  Rational e = 0;
  for (int c = 0; c < n; ++c)
    e += cell_energy_exact(ex, h, cfg.at(0, c), cfg.at(1, c), cfg.at(2, c), cfg.at(0, (c + 1) % n));
  return e;
}

int total_magnetization(const SpinConfig& cfg) {
  int m = 0;
  for (auto s : cfg.spins()) m += s;
  return m;
}

}  // namespace dchain

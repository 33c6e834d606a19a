#include "dchain/critical.hpp"

#include <algorithm>
#include <cmath>

#include "dchain/enumerate.hpp"
#include "dchain/errors.hpp"
#include "dchain/transfer.hpp"

namespace dchain {

namespace {

struct Line {
  int m;
  Rational e0;
};

struct Segment {
  Rational h_start;  // segment of the envelope valid from h_start upward
  int m;
};

// Lower envelope of E0 - h M for h >= 0. Returns consecutive segments, each
// starting where it takes over from the previous one.
std::vector<Segment> lower_envelope(const std::vector<SectorMinimum>& sectors) {
  std::vector<Line> lines;
  for (const auto& s : sectors) lines.push_back({s.magnetization, s.energy});
  // At h = 0 (and just above) the winner is the lowest E0 with the largest M.
  auto best_at_zero = std::min_element(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.e0 != b.e0) return a.e0 < b.e0;
    return a.m > b.m;
  });
  std::vector<Segment> env{{Rational(0), best_at_zero->m}};
  Line current = *best_at_zero;
  for (;;) {
    // Next line to overtake: larger M, smallest crossing field; ties go to
    // the largest M.
    const Line* next = nullptr;
    Rational next_h;
    for (const Line& l : lines) {
      if (l.m <= current.m) continue;
      Rational h = (l.e0 - current.e0) / (l.m - current.m);
      if (h < env.back().h_start) continue;
      if (!next || h < next_h || (h == next_h && l.m > next->m)) {
        next = &l;
        next_h = h;
      }
    }
    if (!next) break;
    env.push_back({next_h, next->m});
    current = *next;
  }
  return env;
}

int sector_at(const std::vector<Segment>& env, const Rational& h, bool above) {
  int m = env.front().m;
  for (const auto& seg : env)
    if (seg.h_start < h || (above && seg.h_start == h)) m = seg.m;
  return m;
}

}  // namespace

std::vector<Rational> envelope_breakpoints(const ExchangeConstants& ex, int n_cells) {
  const auto env = lower_envelope(sector_minima(ex, n_cells));
  std::vector<Rational> out;
  for (std::size_t i = 1; i < env.size(); ++i)
    if (env[i].h_start > 0) out.push_back(env[i].h_start);
  return out;
}

CriticalScan critical_fields(const ExchangeConstants& ex, int n_cells) {
  if (n_cells < 3) throw ContractViolation("critical_fields needs n_cells >= 3");
  CriticalScan scan;
  scan.n_cells = n_cells;
  const auto env = lower_envelope(sector_minima(ex, n_cells));
  const auto env_small = lower_envelope(sector_minima(ex, n_cells - 2));
  // Plateau magnetization from the difference of two rings of equal parity;
  // a defect forced by an odd ring cancels.
  auto plateau = [&](const Rational& h, bool above) {
    return (sector_at(env, h, above) - sector_at(env_small, h, above)) / 6.0;
  };

  const auto reference = envelope_breakpoints(ex, n_cells);
  for (int n = n_cells - 2; n < n_cells; ++n) {
    if (envelope_breakpoints(ex, n) != reference) {
      std::string msg = "critical fields on " + std::to_string(n) + " cells differ from " + std::to_string(n_cells) +
                        " cells:";
      for (const auto& h : envelope_breakpoints(ex, n)) msg += " " + format_rational(h);
      msg += " vs";
      for (const auto& h : reference) msg += " " + format_rational(h);
      scan.warnings.push_back(msg);
    }
  }

  for (const Rational& h_c : reference) {
    PhasePoint p;
    p.h_c = h_c;
    p.m_below = plateau(h_c, false);
    p.m_above = plateau(h_c, true);
    const auto reports = ground_state_sequence(ex, h_c, 1, n_cells);
    const auto& last = reports.back();
    p.omega = last.omega;
    p.m_at = last.magnetization_per_spin();
    std::vector<BigInt> omega;
    for (const auto& r : reports) omega.push_back(r.omega);
    p.s_at = residual_entropy_estimate(omega);
    scan.points.push_back(std::move(p));
  }
  return scan;
}

Rational residual_magnetization(const ExchangeConstants& ex, int n_cells) {
  if (n_cells < 3) throw ContractViolation("residual_magnetization needs n_cells >= 3");
  auto m_of = [&](int n) {
    const auto r = ground_states_plus_zero(ex, n);
    return Rational(r.m_sum, r.omega * 3 * n);
  };
  return (n_cells * m_of(n_cells) - (n_cells - 2) * m_of(n_cells - 2)) / 2;
}

PeakScan entropy_peak_scan(const ExchangeConstants& ex, double t_low, std::span<const double> h_grid,
                           double min_height) {
  require_positive_temperature({0.0, t_low});
  PeakScan scan;
  scan.t = t_low;
  scan.h.assign(h_grid.begin(), h_grid.end());
  for (double h : h_grid) scan.s.push_back(entropy(ex, {h, t_low}));
  const std::size_t n = scan.s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || scan.s[i] > scan.s[i - 1];
    const bool right_ok = i + 1 == n || scan.s[i] >= scan.s[i + 1];
    const bool has_neighbour = n > 1;
    if (has_neighbour && left_ok && right_ok && scan.s[i] >= min_height) scan.peaks.push_back({scan.h[i], scan.s[i]});
  }
  return scan;
}

namespace {

template <typename F>
double zero_t_limit(std::span<const double> temperatures, F&& value_at) {
  if (temperatures.size() < 2) throw ContractViolation("need at least two temperatures");
  std::vector<double> ts(temperatures.begin(), temperatures.end());
  std::sort(ts.begin(), ts.end());
  const double t0 = ts[0], t1 = ts[1];
  const double v0 = value_at(t0), v1 = value_at(t1);
  return v0 - (v1 - v0) / (t1 - t0) * t0;
}

}  // namespace

double entropy_zero_t_limit(const ExchangeConstants& ex, double h, std::span<const double> temperatures) {
  return zero_t_limit(temperatures, [&](double t) { return entropy(ex, {h, t}); });
}

double magnetization_zero_t_limit(const ExchangeConstants& ex, double h, std::span<const double> temperatures) {
  return zero_t_limit(temperatures, [&](double t) { return magnetization(ex, {h, t}); });
}

nlohmann::ordered_json to_json(const PhasePoint& p, std::string_view case_label, const Rational& m0) {
  nlohmann::ordered_json j;
  j["case"] = std::string(case_label);
  j["h_c"] = format_rational(p.h_c);
  j["m0"] = to_double(m0);
  j["m_below"] = p.m_below;
  j["m_above"] = p.m_above;
  j["m_at"] = p.m_at;
  j["s_at"] = p.s_at;
  return j;
}

}  // namespace dchain

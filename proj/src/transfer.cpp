#include "dchain/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "dchain/errors.hpp"

namespace dchain {

namespace {

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// ln(2 cosh u) without overflow.
double log_two_cosh(double u) {
  const double a = std::fabs(u);
  return a + std::log1p(std::exp(-2.0 * a));
}

// One term 2 e^p cosh(q) of a closed-form element, with
//   p = beta * p_coupling + h' * p_field,  q = beta * q_coupling + h' * q_field.
struct CoshTerm {
  double p_coupling;
  double p_field;
  double q_coupling;
  double q_field;
};

using ElementTerms = std::array<CoshTerm, 2>;

// R(+,+) = 2e^{x+2h'} cosh(z+h') + 2e^{-x} cosh(h')
// R(+,-) = 2e^{y+h'}  cosh(z+h') + 2e^{-y-h'} cosh(h')
// R(-,+) = 2e^{y-h'}  cosh(z-h') + 2e^{-y+h'} cosh(h')
// R(-,-) = 2e^{x-2h'} cosh(z-h') + 2e^{-x} cosh(h')
// x = beta(J+J_t), y = beta(J-J_t), z = 2 beta J_d, h' = beta h.
std::array<std::array<ElementTerms, 2>, 2> closed_form_terms(const ExchangeConstants& ex) {
  const double x = ex.j + ex.j_t;
  const double y = ex.j - ex.j_t;
  const double z = 2.0 * ex.j_d;
  std::array<std::array<ElementTerms, 2>, 2> t{};
  t[0][0] = {CoshTerm{x, 2.0, z, 1.0}, CoshTerm{-x, 0.0, 0.0, 1.0}};
  t[0][1] = {CoshTerm{y, 1.0, z, 1.0}, CoshTerm{-y, -1.0, 0.0, 1.0}};
  t[1][0] = {CoshTerm{y, -1.0, z, -1.0}, CoshTerm{-y, 1.0, 0.0, 1.0}};
  t[1][1] = {CoshTerm{x, -2.0, z, -1.0}, CoshTerm{-x, 0.0, 0.0, 1.0}};
  return t;
}

struct TermArgs {
  double p;
  double q;
};

TermArgs term_args(const CoshTerm& c, const FieldPoint& pt) {
  const double beta = pt.beta();
  const double hp = beta * pt.h;
  return {beta * c.p_coupling + hp * c.p_field, beta * c.q_coupling + hp * c.q_field};
}

// Scaled element value and its T and h derivatives, all divided by exp(log_scale).
struct ScaledElement {
  double value = 0.0;
  double d_t = 0.0;
  double d_h = 0.0;
};

ScaledElement scaled_element(const ElementTerms& terms, const FieldPoint& pt, double log_scale) {
  ScaledElement out;
  const double beta = pt.beta();
  for (const CoshTerm& c : terms) {
    const auto [p, q] = term_args(c, pt);
    const double ep = std::exp(p + q - log_scale);
    const double em = std::exp(p - q - log_scale);
    const double cosh_part = ep + em;  // 2 e^{p-L} cosh q
    const double sinh_part = ep - em;  // 2 e^{p-L} sinh q
    out.value += cosh_part;
    // p and q are proportional to beta, so dp/dT = -p/T.
    out.d_t += -(p * cosh_part + q * sinh_part) / pt.t;
    out.d_h += beta * (c.p_field * cosh_part + c.q_field * sinh_part);
  }
  return out;
}

// Diagonal similarity D R D^-1 leaves the diagonal and the product of the
// off-diagonal pair unchanged, and the spectrum depends on nothing else.
struct Balanced {
  double log_scale;
  double a;   // r00
  double d;   // r11
  double o2;  // r01 r10
};

Balanced balance(const std::array<std::array<double, 2>, 2>& log_r) {
  const double off = 0.5 * (log_r[0][1] + log_r[1][0]);
  const double s = std::max({log_r[0][0], log_r[1][1], off});
  return {s, std::exp(log_r[0][0] - s), std::exp(log_r[1][1] - s), std::exp(2.0 * (off - s))};
}

}  // namespace

double TransferMatrix::log_element(int row, int col) const {
  return log_r[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

TransferMatrix build_transfer(const ExchangeConstants& ex, const FieldPoint& pt) {
  validate(ex);
  require_positive_temperature(pt);
  const auto terms = closed_form_terms(ex);
  std::array<std::array<double, 2>, 2> log_r{};
  double log_max = -INFINITY;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const ElementTerms& et = terms[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const auto t0 = term_args(et[0], pt);
      const auto t1 = term_args(et[1], pt);
      const double v = log_add_exp(t0.p + log_two_cosh(t0.q), t1.p + log_two_cosh(t1.q));
      log_r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
      log_max = std::max(log_max, v);
    }
  }
  TransferMatrix tm;
  tm.log_scale = log_max;
  tm.log_r = log_r;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) tm.r[a][b] = std::exp(log_r[a][b] - log_max);
  return tm;
}

EigenPair eigen(const TransferMatrix& tm) {
  const Balanced bal = balance(tm.log_r);
  // Tr^2 - 4 Det == (a - d)^2 + 4 o^2, a sum of nonnegative terms.
  const double diff = bal.a - bal.d;
  const double root = std::sqrt(diff * diff + 4.0 * bal.o2);
  const double lambda_plus = 0.5 * (bal.a + bal.d + root);
  EigenPair out;
  out.log_lambda_plus = bal.log_scale + std::log(lambda_plus);
  out.lambda_minus_ratio = ((bal.a * bal.d - bal.o2) / lambda_plus) / lambda_plus;
  return out;
}

double free_energy(const ExchangeConstants& ex, const FieldPoint& pt) {
  return -pt.t / 3.0 * eigen(build_transfer(ex, pt)).log_lambda_plus;
}

LambdaDerivatives lambda_derivatives(const ExchangeConstants& ex, const FieldPoint& pt) {
  const TransferMatrix tm = build_transfer(ex, pt);
  const auto terms = closed_form_terms(ex);
  // Logarithmic element derivatives, each element scaled by itself.
  std::array<std::array<ScaledElement, 2>, 2> g{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const ScaledElement e = scaled_element(terms[a][b], pt, tm.log_r[a][b]);
      g[a][b] = {1.0, e.d_t / e.value, e.d_h / e.value};
    }

  const Balanced bal = balance(tm.log_r);
  const double diff = bal.a - bal.d;
  const double root = std::sqrt(diff * diff + 4.0 * bal.o2);  // 2 lambda - Tr
  if (!(root > 0.0)) throw NumericFailure("degenerate transfer-matrix eigenvalues at T > 0");
  const double lambda = 0.5 * (bal.a + bal.d + root);

  auto derivative = [&](auto member) {
    const double d_tr = bal.a * g[0][0].*member + bal.d * g[1][1].*member;
    const double d_det = bal.a * bal.d * (g[0][0].*member + g[1][1].*member) -
                         bal.o2 * (g[0][1].*member + g[1][0].*member);
    return (lambda * d_tr - d_det) / root / lambda;
  };
  return {derivative(&ScaledElement::d_t), derivative(&ScaledElement::d_h)};
}

LambdaDerivatives lambda_derivatives_fd(const ExchangeConstants& ex, const FieldPoint& pt) {
  require_positive_temperature(pt);
  auto log_lambda = [&](double t, double h) { return eigen(build_transfer(ex, {h, t})).log_lambda_plus; };
  auto richardson = [](auto&& g, double step) {
    const double coarse = (g(step) - g(-step)) / (2.0 * step);
    const double fine = (g(0.5 * step) - g(-0.5 * step)) / step;
    return (4.0 * fine - coarse) / 3.0;
  };
  const double step_t = std::min(std::max(1e-6, 1e-6 * std::fabs(pt.t)), 0.25 * pt.t);
  const double step_h = std::max(1e-6, 1e-6 * std::fabs(pt.h));
  LambdaDerivatives out;
  out.dlog_dt = richardson([&](double d) { return log_lambda(pt.t + d, pt.h); }, step_t);
  out.dlog_dh = richardson([&](double d) { return log_lambda(pt.t, pt.h + d); }, step_h);
  return out;
}

double entropy(const ExchangeConstants& ex, const FieldPoint& pt) {
  const double log_lambda = eigen(build_transfer(ex, pt)).log_lambda_plus;
  return (log_lambda + pt.t * lambda_derivatives(ex, pt).dlog_dt) / 3.0;
}

double magnetization(const ExchangeConstants& ex, const FieldPoint& pt) {
  return pt.t / 3.0 * lambda_derivatives(ex, pt).dlog_dh;
}

double partition_finite(const ExchangeConstants& ex, const FieldPoint& pt, int n_cells) {
  if (n_cells < 1) throw ContractViolation("n_cells must be >= 1");
  const EigenPair ep = eigen(build_transfer(ex, pt));
  return n_cells * ep.log_lambda_plus + std::log1p(std::pow(ep.lambda_minus_ratio, n_cells));
}

ThermoRow thermo_point(const ExchangeConstants& ex, const FieldPoint& pt) {
  const EigenPair ep = eigen(build_transfer(ex, pt));
  const LambdaDerivatives d = lambda_derivatives(ex, pt);
  ThermoRow row;
  row.h = pt.h;
  row.t = pt.t;
  row.f = -pt.t / 3.0 * ep.log_lambda_plus;
  row.s = (ep.log_lambda_plus + pt.t * d.dlog_dt) / 3.0;
  row.m = pt.t / 3.0 * d.dlog_dh;
  return row;
}

SweepTable sweep(const ExchangeConstants& ex, std::span<const double> h_grid, std::span<const double> t_grid,
                 int workers) {
  validate(ex);
  for (double t : t_grid) require_positive_temperature({0.0, t});
  for (double h : h_grid)
    if (!std::isfinite(h)) throw DomainError("field grid must be finite");

  SweepTable table(h_grid.size() * t_grid.size());
  auto fill = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < table.size(); i += stride) {
      const double t = t_grid[i / h_grid.size()];
      const double h = h_grid[i % h_grid.size()];
      table[i] = thermo_point(ex, {h, t});
    }
  };
  const auto n_workers = static_cast<std::size_t>(std::max(1, workers));
  if (n_workers == 1 || table.size() < 64) {
    fill(0, 1);
    return table;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(fill, w, n_workers);
  for (auto& th : pool) th.join();
  return table;
}

int default_workers() {
  if (const char* env = std::getenv("DCHAIN_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace dchain

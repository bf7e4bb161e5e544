#include "robin/spectra1d.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "robin/coeffs.hpp"
#include "robin/errors.hpp"
#include "robin/tridiagonal.hpp"

namespace robin::spectra1d {
namespace {

double negative_part(double c) { return c < 0.0 ? -c : 0.0; }

// Bisection variable s with lambda = s |s|: s = k for lambda > 0, s = -kappa below.
double lambda_of(double s) { return s * std::abs(s); }

// 1 - tanh(x) without cancellation.
double one_minus_tanh(double x) { return 2.0 / (std::exp(2.0 * x) + 1.0); }

bool zero_is_eigenvalue(const RobinInterval& iv) {
  const double f0 = iv.c_left + iv.c_right + iv.c_left * iv.c_right * iv.length;
  return std::abs(f0) <= 1e-12 * (1.0 + std::abs(iv.c_left * iv.c_right) * iv.length);
}

std::string describe(const RobinInterval& iv) {
  std::ostringstream os;
  os.precision(17);
  os << "[L=" << iv.length << ", c_left=" << iv.c_left << ", c_right=" << iv.c_right << "]";
  return os.str();
}

}  // namespace

void RobinInterval::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("RobinInterval: length must be > 0");
  if (!std::isfinite(c_left) || !std::isfinite(c_right)) {
    throw InvalidArgument("RobinInterval: Robin coefficients must be finite");
  }
}

Spectrum1D::Spectrum1D(std::vector<double> eigenvalues, std::vector<std::pair<double, double>> brackets,
                       double cutoff, Certificate certificate)
    : eigenvalues_(std::move(eigenvalues)),
      brackets_(std::move(brackets)),
      cutoff_(cutoff),
      certificate_(certificate) {}

double secular_positive(const RobinInterval& iv, double k) {
  const double kl = k * iv.length;
  return (k * k - iv.c_left * iv.c_right) * std::sin(kl) - k * (iv.c_left + iv.c_right) * std::cos(kl);
}

double secular_negative(const RobinInterval& iv, double kappa) {
  const double kl = kappa * iv.length;
  return (kappa * kappa + iv.c_left * iv.c_right) * std::sinh(kl) +
         kappa * (iv.c_left + iv.c_right) * std::cosh(kl);
}

double secular_negative_scaled(const RobinInterval& iv, double kappa) {
  const double eps = one_minus_tanh(kappa * iv.length);
  return (kappa + iv.c_left) * (kappa + iv.c_right) - eps * (kappa * kappa + iv.c_left * iv.c_right);
}

double characteristic(const RobinInterval& iv, double lambda) {
  if (lambda > 0.0) {
    const double k = std::sqrt(lambda);
    return -secular_positive(iv, k) / k;
  }
  if (lambda < 0.0) {
    const double kappa = std::sqrt(-lambda);
    return secular_negative_scaled(iv, kappa) / kappa;
  }
  return iv.c_left + iv.c_right + iv.c_left * iv.c_right * iv.length;
}

int count_below(const RobinInterval& iv, double lambda) {
  const double cl = iv.c_left, cr = iv.c_right, len = iv.length;
  if (lambda > 0.0) {
    // Modified Pruefer angle: theta(x) = theta(0) + kx, theta(0) = atan2(k, c_l);
    // eigenvalues sit where theta(L) = atan2(k, -c_r) + n pi.
    // Each atan2 is split into a multiple of pi plus a remainder, so that the
    // O(k) part of the phase survives for tiny k instead of rounding into pi.
    const double k = std::sqrt(lambda);
    const auto split = [k](double c, int& turns) {
      turns = c < 0.0 ? 1 : 0;
      if (c == 0.0) return 0.5 * kPi;
      return c > 0.0 ? std::atan(k / c) : -std::atan(k / -c);
    };
    int turns_l = 0, turns_r = 0;
    const double rest = k * len + split(cl, turns_l) - split(-cr, turns_r);
    const int n = turns_l - turns_r + static_cast<int>(std::ceil(rest / kPi));
    return std::max(n, 0);
  }
  // At or below zero the solution has at most one zero in (0, L), present iff
  // u(L) < 0. One more eigenvalue lies below lambda iff u(L) = 0 or
  // (u'(L) + c_r u(L)) u(L) < 0. Both factors are rescaled by positive numbers.
  double u_end, robin_end;
  if (lambda == 0.0) {
    u_end = 1.0 + cl * len;
    robin_end = cl + cr + cl * cr * len;
  } else {
    const double kappa = std::sqrt(-lambda);
    const double eps = one_minus_tanh(kappa * len);
    u_end = kappa + cl - cl * eps;
    robin_end = secular_negative_scaled(iv, kappa);
  }
  const int zeros = u_end < 0.0 ? 1 : 0;
  return zeros + ((u_end == 0.0 || robin_end * u_end < 0.0) ? 1 : 0);
}

int neumann_count(double length, double cutoff) {
  if (cutoff < 0.0) return 0;
  return static_cast<int>(std::floor(std::sqrt(cutoff) * length / kPi)) + 1;
}

Spectrum1D enumerate(const RobinInterval& iv, double cutoff) {
  iv.validate();
  if (!std::isfinite(cutoff)) throw InvalidArgument("enumerate: cutoff must be finite");

  const auto below = [&](double s) { return count_below(iv, lambda_of(s)); };
  const double s_top = cutoff >= 0.0 ? std::sqrt(cutoff) : -std::sqrt(-cutoff);
  const int total = count_below(iv, std::nextafter(cutoff, std::numeric_limits<double>::infinity()));

  // Lower end of the search: no eigenvalue below -kappa^2.
  double kappa = 2.0 * std::max(negative_part(iv.c_left), negative_part(iv.c_right)) + 1.0;
  while (below(-kappa) > 0) kappa *= 2.0;
  const double s_bottom = std::min(-kappa, s_top);

  // Seed grid: bottom, 0, Dirichlet nodes n pi / L, top.
  std::vector<double> grid{s_bottom};
  if (s_top > 0.0) {
    grid.push_back(0.0);
    const double step = kPi / iv.length;
    for (long n = 1; n * step < s_top; ++n) grid.push_back(static_cast<double>(n) * step);
  }
  grid.push_back(s_top);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<int> grid_counts(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid_counts[i] = below(grid[i]);
  grid_counts.back() = total;

  std::vector<double> eigenvalues;
  std::vector<std::pair<double, double>> brackets;
  eigenvalues.reserve(static_cast<std::size_t>(total));
  brackets.reserve(static_cast<std::size_t>(total));
  int bracket_count = 0;

  const auto polish = [&](double s_lo, double s_hi) {
    const double lo = lambda_of(s_lo), hi = lambda_of(s_hi);
    const auto f = [&](double lambda) { return characteristic(iv, lambda); };
    double f_lo = f(lo), f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (f_lo * f_hi < 0.0) {
      std::uintmax_t max_iter = 200;
      const auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                       boost::math::tools::eps_tolerance<double>(46), max_iter);
      return 0.5 * (r.first + r.second);
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  // Isolates eigenvalues with index in [count(a), count(b)) inside [a, b).
  const auto isolate = [&](auto&& self, double a, double b, int ca, int cb, int depth) -> void {
    if (cb <= ca) return;
    const double mid = 0.5 * (a + b);
    const bool exhausted = !(mid > a && mid < b) || depth > 1100;
    if (cb - ca == 1) {
      double value = polish(a, b);
      if (std::isnan(value) && !exhausted) {
        // No sign change: the root sits in a numerically unresolved cluster or
        // at an endpoint. Keep bisecting on the count.
        const int cm = below(mid);
        if (cm == ca) {
          self(self, mid, b, cm, cb, depth + 1);
        } else {
          self(self, a, mid, ca, cm, depth + 1);
        }
        return;
      }
      if (std::isnan(value)) value = lambda_of(mid);
      eigenvalues.push_back(value);
      brackets.emplace_back(lambda_of(a), lambda_of(b));
      return;
    }
    if (exhausted) {
      // Eigenvalues coincide to working precision (exponentially split pairs).
      for (int i = ca; i < cb; ++i) {
        eigenvalues.push_back(lambda_of(mid));
        brackets.emplace_back(lambda_of(a), lambda_of(b));
      }
      return;
    }
    const int cm = below(mid);
    if (cm < ca || cm > cb) {
      throw NumericalError("enumerate: non-monotone eigenvalue count on " + describe(iv));
    }
    self(self, a, mid, ca, cm, depth + 1);
    self(self, mid, b, cm, cb, depth + 1);
  };

  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid_counts[i] < grid_counts[i - 1]) {
      throw NumericalError("enumerate: bracket resolution failed on " + describe(iv));
    }
    if (grid_counts[i] > grid_counts[i - 1]) ++bracket_count;
    isolate(isolate, grid[i - 1], grid[i], grid_counts[i - 1], grid_counts[i], 0);
  }

  if (static_cast<int>(eigenvalues.size()) != total) {
    throw NumericalError("enumerate: isolated " + std::to_string(eigenvalues.size()) + " of " +
                         std::to_string(total) + " eigenvalues on " + describe(iv));
  }

  Certificate cert;
  cert.has_zero = zero_is_eigenvalue(iv);
  for (double& value : eigenvalues) {
    if (cert.has_zero && std::abs(value) <= 1e-10 * (1.0 + iv.c_left * iv.c_left + iv.c_right * iv.c_right)) {
      value = 0.0;
    }
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  for (double value : eigenvalues) {
    if (value < 0.0) ++cert.n_negative;
    if (value > 0.0) ++cert.n_positive;
  }
  cert.bracket_count = bracket_count;
  cert.neumann_count = neumann_count(iv.length, cutoff);

  if (cert.n_negative > 2) {
    throw NumericalError("enumerate: more than two negative eigenvalues on " + describe(iv));
  }
  if (std::abs(total - cert.neumann_count) > 2) {
    throw NumericalError("enumerate: counting certificate |N - N_Neumann| <= 2 violated on " + describe(iv));
  }
  return Spectrum1D(std::move(eigenvalues), std::move(brackets), cutoff, cert);
}

std::vector<double> fd_oracle(const RobinInterval& iv, int n_grid, int n_eigs) {
  iv.validate();
  if (n_grid < 100) throw InvalidArgument("fd_oracle: n_grid must be >= 100");
  if (n_eigs < 0 || n_eigs > n_grid + 1) throw InvalidArgument("fd_oracle: n_eigs exceeds matrix size");

  // Nodes x_i = i dx, i = 0..n. Ghost points u_{-1} = u_1 - 2 dx c_l u_0 and
  // u_{n+1} = u_{n-1} - 2 dx c_r u_n; the end rows are symmetrized by scaling
  // the end unknowns with 1/sqrt(2).
  const double dx = iv.length / n_grid;
  const double inv = 1.0 / (dx * dx);
  SymTridiagonal t;
  t.diag.assign(static_cast<std::size_t>(n_grid) + 1, 2.0 * inv);
  t.offdiag.assign(static_cast<std::size_t>(n_grid), -inv);
  t.diag.front() = 2.0 * (1.0 + dx * iv.c_left) * inv;
  t.diag.back() = 2.0 * (1.0 + dx * iv.c_right) * inv;
  t.offdiag.front() = -std::sqrt(2.0) * inv;
  t.offdiag.back() = -std::sqrt(2.0) * inv;

  std::vector<double> out(static_cast<std::size_t>(n_eigs));
  for (int k = 0; k < n_eigs; ++k) out[static_cast<std::size_t>(k)] = t.eigenvalue(k);
  return out;
}

std::vector<double> fd_oracle_extrapolated(const RobinInterval& iv, int n_grid, int n_eigs) {
  const auto coarse = fd_oracle(iv, n_grid, n_eigs);
  const auto fine = fd_oracle(iv, 2 * n_grid, n_eigs);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

}  // namespace robin::spectra1d

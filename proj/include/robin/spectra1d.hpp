#pragma once

#include <utility>
#include <vector>

/// Eigenvalues of -u'' = lambda u on [0, L] with u'(0) = c_left u(0) and
/// -u'(L) = c_right u(L). Both conditions use the inward derivative, so a
/// positive coefficient raises the spectrum.
namespace robin::spectra1d {

struct RobinInterval {
  double length = 1.0;
  double c_left = 0.0;
  double c_right = 0.0;

  void validate() const;
};

struct Certificate {
  int n_negative = 0;
  int n_positive = 0;
  bool has_zero = false;
  int bracket_count = 0;  // Dirichlet-node brackets that held at least one eigenvalue
  int neumann_count = 0;  // N_Neumann(cutoff)
};

/// Every eigenvalue <= cutoff, in increasing order; immutable once built.
class Spectrum1D {
 public:
  Spectrum1D(std::vector<double> eigenvalues, std::vector<std::pair<double, double>> brackets,
             double cutoff, Certificate certificate);

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  /// Isolating interval in lambda for each eigenvalue.
  const std::vector<std::pair<double, double>>& brackets() const { return brackets_; }
  double cutoff() const { return cutoff_; }
  const Certificate& certificate() const { return certificate_; }
  std::size_t size() const { return eigenvalues_.size(); }
  double operator[](std::size_t i) const { return eigenvalues_[i]; }

 private:
  std::vector<double> eigenvalues_;
  std::vector<std::pair<double, double>> brackets_;
  double cutoff_;
  Certificate certificate_;
};

/// (k^2 - c_l c_r) sin(kL) - k (c_l + c_r) cos(kL); positive eigenvalues are its zeros k^2.
double secular_positive(const RobinInterval& iv, double k);

/// (kappa^2 + c_l c_r) sinh(kappa L) + kappa (c_l + c_r) cosh(kappa L); zeros give -kappa^2.
/// Overflows for kappa L beyond ~700; enumeration uses the scaled form below.
double secular_negative(const RobinInterval& iv, double kappa);

/// secular_negative / cosh(kappa L), written as
/// (kappa + c_l)(kappa + c_r) - eps (kappa^2 + c_l c_r) with eps = 1 - tanh(kappa L).
double secular_negative_scaled(const RobinInterval& iv, double kappa);

/// Characteristic function u'(L) + c_r u(L) of the solution with u(0) = 1,
/// u'(0) = c_l, divided by cosh(kappa L) when lambda < 0. Continuous in lambda
/// with simple zeros exactly at the eigenvalues.
double characteristic(const RobinInterval& iv, double lambda);

/// Number of eigenvalues strictly below lambda, from the Pruefer phase at L.
int count_below(const RobinInterval& iv, double lambda);

/// #{n >= 0 : (n pi / L)^2 <= cutoff}.
int neumann_count(double length, double cutoff);

/// All eigenvalues <= cutoff. Each one is isolated by bisection on count_below,
/// seeded with the Dirichlet nodes k = n pi / L, then polished on the
/// characteristic function. Throws NumericalError when a bracket cannot be
/// resolved or the counting certificate |N - N_Neumann| <= 2 fails.
Spectrum1D enumerate(const RobinInterval& iv, double cutoff);

/// Lowest n_eigs eigenvalues of the ghost-point finite-difference operator on
/// n_grid cells, via Sturm-sequence bisection. Second-order accurate.
std::vector<double> fd_oracle(const RobinInterval& iv, int n_grid, int n_eigs);

/// Richardson combination (4 fd(2n) - fd(n)) / 3.
std::vector<double> fd_oracle_extrapolated(const RobinInterval& iv, int n_grid, int n_eigs);

}  // namespace robin::spectra1d

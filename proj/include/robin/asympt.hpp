#pragma once

#include <span>
#include <vector>

#include "robin/riesz.hpp"

namespace robin {

enum class RegimeKind { Fixed, Small, Large };
enum class SignClass { HasNegativePart, NonNegative };

/// How the Robin coefficient depends on h: b = b0 (Fixed), b = h^s b0 (Small),
/// b = h^{-gamma} b0 (Large). `exponent` holds s or gamma.
struct RegimeSpec {
  RegimeKind kind = RegimeKind::Fixed;
  std::vector<FacetPair> b0;
  double exponent = 0.0;
  /// Large regime: use the exact density while |b| <= this, the leading
  /// pi C_d b_-^{d+1} beyond.
  double large_switch = 50.0;

  static RegimeSpec fixed(std::vector<FacetPair> b0);
  static RegimeSpec small(std::vector<FacetPair> b0, double s);
  static RegimeSpec large(std::vector<FacetPair> b0, double gamma);

  /// Throws InvalidArgument for s <= 0, gamma <= 0, gamma >= 1 or a facet
  /// count that does not match d.
  void validate(Dimension d) const;
  SignClass sign_class() const;
  /// 1, theta(h) or Theta(h).
  double scale(double h) const;
  std::vector<FacetPair> realize(double h) const;
};

struct Prediction {
  double weyl = 0.0;
  double boundary = 0.0;
  bool leading_form = false;  // Large regime: some facet used pi C_d b_-^{d+1}
};

/// Two-term prediction. The boundary term is the facet-area-weighted sum of
/// the regime's density times h^{-d+1}. The facet b stored in `box` is ignored.
Prediction predict(const BoxDomain& box, const RegimeSpec& regime, double h);

/// riesz_mean with b realized per regime, boundary_term and remainder filled in.
RieszReport remainder(const BoxDomain& box, const RegimeSpec& regime, double h,
                      const RieszOptions& options = {});

/// |R_h| h^{d-1}, additionally divided by Theta(h)^{d+1} in the Large regime
/// with a negative part.
double normalized_remainder(const RieszReport& report, const RegimeSpec& regime, Dimension d);

struct SweepPoint {
  double h = 0.0;
  double remainder_normalized = 0.0;
};

struct SweepFit {
  std::vector<SweepPoint> points;
  double fitted_exponent = 0.0;  // slope of log|normalized remainder| against log h
  double fit_residual = 0.0;     // RMS of the log-log residuals
  bool sign_flip = false;        // the remainder changed sign within the sweep

  /// alpha > 0.3 and residual < 0.2.
  bool decays() const { return fitted_exponent > 0.3 && fit_residual < 0.2; }
};

SweepFit fit_sweep(std::span<const RieszReport> reports, const RegimeSpec& regime, Dimension d);

/// Sweep over h, evaluated concurrently and returned in decreasing h order.
/// Wall time per point goes to `seconds` when given.
std::vector<RieszReport> run_sweep(const BoxDomain& box, const RegimeSpec& regime, std::vector<double> hs,
                                   unsigned threads = 0, std::vector<double>* seconds = nullptr);

struct Crossover {
  double weyl = 0.0;
  double boundary = 0.0;
  double ratio = 0.0;  // boundary / weyl, proportional to h^{1 - gamma (d+1)}
};

/// Predicted Weyl and boundary terms for b = h^{-gamma} b0, with b0 taken
/// from the facet values of `box`.
Crossover crossover_demo(const BoxDomain& box, double gamma, double h);

/// min over 0 < mu <= 1/4 of mu + theta (1 + |ln theta|) / mu.
double small_regime_envelope(double theta);

std::vector<double> default_h_grid();
/// 1 x sqrt(2) rectangle with the given b on every facet.
BoxDomain default_rectangle(double b = 0.0);

}  // namespace robin

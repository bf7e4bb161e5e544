#include "robin/asympt.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <exception>
#include <string>
#include <thread>

#include "robin/errors.hpp"

namespace robin {

RegimeSpec RegimeSpec::fixed(std::vector<FacetPair> b0) { return {RegimeKind::Fixed, std::move(b0), 0.0}; }

RegimeSpec RegimeSpec::small(std::vector<FacetPair> b0, double s) {
  return {RegimeKind::Small, std::move(b0), s};
}

RegimeSpec RegimeSpec::large(std::vector<FacetPair> b0, double gamma) {
  return {RegimeKind::Large, std::move(b0), gamma};
}

void RegimeSpec::validate(Dimension d) const {
  if (b0.size() != static_cast<std::size_t>(d.value())) {
    throw InvalidArgument("regime: need one b0 facet pair per dimension");
  }
  for (const auto& f : b0) {
    if (!std::isfinite(f.low) || !std::isfinite(f.high)) throw InvalidArgument("regime: b0 must be finite");
  }
  switch (kind) {
    case RegimeKind::Fixed:
      break;
    case RegimeKind::Small:
      if (!(exponent > 0.0)) throw InvalidArgument("regime small: theta(h) = h^s needs s > 0");
      break;
    case RegimeKind::Large:
      if (!(exponent > 0.0)) throw InvalidArgument("regime large: Theta(h) = h^-gamma needs gamma > 0");
      if (exponent >= 1.0) {
        throw InvalidArgument(
            "regime large: gamma >= 1 rejected; the two-term asymptotics are only established for "
            "Theta(h) = o(h^-1)");
      }
      break;
  }
}

SignClass RegimeSpec::sign_class() const {
  for (const auto& f : b0) {
    if (f.low < 0.0 || f.high < 0.0) return SignClass::HasNegativePart;
  }
  return SignClass::NonNegative;
}

double RegimeSpec::scale(double h) const {
  switch (kind) {
    case RegimeKind::Fixed:
      return 1.0;
    case RegimeKind::Small:
      return std::pow(h, exponent);
    case RegimeKind::Large:
      return std::pow(h, -exponent);
  }
  return 1.0;
}

std::vector<FacetPair> RegimeSpec::realize(double h) const {
  const double s = scale(h);
  std::vector<FacetPair> out(b0.size());
  std::transform(b0.begin(), b0.end(), out.begin(), [s](const FacetPair& f) {
    return FacetPair{s * f.low, s * f.high};
  });
  return out;
}

Prediction predict(const BoxDomain& box, const RegimeSpec& regime, double h) {
  const Dimension dim = box.dimension();
  const int d = dim.value();
  regime.validate(dim);
  const double quarter_l1 = 0.25 * l1(d - 1).value;
  const double theta = regime.scale(h);
  const bool negative = regime.sign_class() == SignClass::HasNegativePart;

  Prediction out;
  const auto density = [&](double b0) {
    switch (regime.kind) {
      case RegimeKind::Fixed:
        return l2(dim, b0).value;
      case RegimeKind::Small:
        return quarter_l1;
      case RegimeKind::Large: {
        if (!negative) return b0 > 0.0 ? -quarter_l1 : quarter_l1;
        const double b = theta * b0;
        if (std::abs(b) <= regime.large_switch) return l2(dim, b).value;
        out.leading_form = true;
        return b < 0.0 ? l2_large_negative_leading(dim, b).value : 0.0;
      }
    }
    return 0.0;
  };

  double boundary = 0.0;
  for (int i = 0; i < d; ++i) {
    const auto& f = regime.b0[static_cast<std::size_t>(i)];
    boundary += box.facet_area(i) * (density(f.low) + density(f.high));
  }
  out.weyl = weyl_term(box, h);
  out.boundary = boundary * std::pow(h, 1 - d);
  return out;
}

RieszReport remainder(const BoxDomain& box, const RegimeSpec& regime, double h, const RieszOptions& options) {
  const auto prediction = predict(box, regime, h);
  auto report = riesz_mean(box.with_facet_b(regime.realize(h)), h, options);
  report.weyl_term = prediction.weyl;
  report.boundary_term = prediction.boundary;
  report.remainder = report.trace - report.weyl_term - report.boundary_term;
  return report;
}

double normalized_remainder(const RieszReport& report, const RegimeSpec& regime, Dimension d) {
  double value = std::abs(report.remainder) * std::pow(report.h, d.value() - 1);
  if (regime.kind == RegimeKind::Large && regime.sign_class() == SignClass::HasNegativePart) {
    value /= std::pow(regime.scale(report.h), d.value() + 1);
  }
  return value;
}

SweepFit fit_sweep(std::span<const RieszReport> reports, const RegimeSpec& regime, Dimension d) {
  if (reports.size() < 4) throw InvalidArgument("fit_sweep: need at least 4 reports");
  std::vector<RieszReport> sorted(reports.begin(), reports.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.h > b.h; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(sorted[i].h < sorted[i - 1].h)) throw InvalidArgument("fit_sweep: h values must be distinct");
  }

  SweepFit fit;
  bool positive = false, negative = false;
  std::vector<double> xs, ys;
  for (const auto& r : sorted) {
    const double y = normalized_remainder(r, regime, d);
    if (!(y > 0.0)) throw NumericalError("fit_sweep: zero remainder cannot be fitted on a log scale");
    fit.points.push_back({r.h, y});
    xs.push_back(std::log(r.h));
    ys.push_back(std::log(y));
    (r.remainder > 0.0 ? positive : negative) = true;
  }
  fit.sign_flip = positive && negative;

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.fitted_exponent = sxy / sxx;
  const double intercept = my - fit.fitted_exponent * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + fit.fitted_exponent * xs[i]);
    rss += e * e;
  }
  fit.fit_residual = std::sqrt(rss / n);
  return fit;
}

std::vector<RieszReport> run_sweep(const BoxDomain& box, const RegimeSpec& regime, std::vector<double> hs,
                                   unsigned threads, std::vector<double>* seconds) {
  regime.validate(box.dimension());
  std::sort(hs.begin(), hs.end(), std::greater<>());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  std::vector<RieszReport> out(hs.size());
  std::vector<double> elapsed(hs.size(), 0.0);
  const RieszOptions inner{1};
  const auto evaluate = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    out[i] = remainder(box, regime, hs[i], inner);
    elapsed[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const unsigned workers = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(1, hs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < hs.size(); ++i) evaluate(i);
    if (seconds) *seconds = std::move(elapsed);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < hs.size(); i = next++) evaluate(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (seconds) *seconds = std::move(elapsed);
  return out;
}

Crossover crossover_demo(const BoxDomain& box, double gamma, double h) {
  const auto regime = RegimeSpec::large(box.facet_b(), gamma);
  if (regime.sign_class() != SignClass::HasNegativePart) {
    throw InvalidArgument("crossover_demo: b0 needs a negative part");
  }
  const auto p = predict(box, regime, h);
  return {p.weyl, p.boundary, p.boundary / p.weyl};
}

double small_regime_envelope(double theta) {
  const double q = theta * (1.0 + std::abs(std::log(theta)));
  const double mu = std::min(0.25, std::sqrt(q));
  return mu + q / mu;
}

std::vector<double> default_h_grid() { return {0.04, 0.02, 0.01, 0.005}; }

BoxDomain default_rectangle(double b) { return BoxDomain::uniform(Dimension(2), {1.0, std::sqrt(2.0)}, b); }

}  // namespace robin

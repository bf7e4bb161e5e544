#include "robin/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "robin/compensated_sum.hpp"
#include "robin/errors.hpp"

namespace robin {
namespace {

constexpr std::size_t kBlock = 64;
constexpr std::uint64_t kCountLimit = std::uint64_t{1} << 62;

struct BlockResult {
  CompensatedSum sum;
  std::uint64_t count = 0;
};

// Sums (E - s - lambda_x)_+ over the innermost axis, scaled by h^2.
struct InnerAxis {
  const std::vector<double>* values;
  std::vector<double> prefix;  // prefix[n] = sum of the first n eigenvalues

  explicit InnerAxis(const std::vector<double>& v) : values(&v), prefix(v.size() + 1, 0.0) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc += v[i];
      prefix[i + 1] = acc.value();
    }
  }

  void add(double energy, double shift, double h2, BlockResult& out) const {
    const double room = energy - shift;
    const auto n = static_cast<std::size_t>(std::lower_bound(values->begin(), values->end(), room) - values->begin());
    if (n == 0) return;
    out.sum += h2 * (static_cast<double>(n) * room - prefix[n]);
    out.count += n;
    if (out.count > kCountLimit) throw NumericalError("riesz_mean: eigenvalue count overflow");
  }
};

}  // namespace

BoxDomain::BoxDomain(Dimension d, std::vector<double> sides, std::vector<FacetPair> facet_b)
    : d_(d), sides_(std::move(sides)), facet_b_(std::move(facet_b)) {
  const auto n = static_cast<std::size_t>(d_.value());
  if (sides_.size() != n) throw InvalidArgument("BoxDomain: need one side length per dimension");
  if (facet_b_.size() != n) throw InvalidArgument("BoxDomain: need one facet pair per dimension");
  for (double s : sides_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("BoxDomain: side lengths must be positive");
  }
  for (const auto& f : facet_b_) {
    if (!std::isfinite(f.low) || !std::isfinite(f.high)) throw InvalidArgument("BoxDomain: facet b must be finite");
  }
}

BoxDomain BoxDomain::uniform(Dimension d, std::vector<double> sides, double b) {
  return BoxDomain(d, std::move(sides), std::vector<FacetPair>(static_cast<std::size_t>(d.value()), {b, b}));
}

double BoxDomain::volume() const {
  return std::accumulate(sides_.begin(), sides_.end(), 1.0, std::multiplies<>());
}

double BoxDomain::facet_area(int axis) const {
  double area = 1.0;
  for (int j = 0; j < d_.value(); ++j) {
    if (j != axis) area *= sides_[static_cast<std::size_t>(j)];
  }
  return area;
}

double BoxDomain::surface_area() const {
  double total = 0.0;
  for (int i = 0; i < d_.value(); ++i) total += 2.0 * facet_area(i);
  return total;
}

double BoxDomain::boundary_integral_b() const {
  double total = 0.0;
  for (int i = 0; i < d_.value(); ++i) {
    const auto& f = facet_b_[static_cast<std::size_t>(i)];
    total += facet_area(i) * (f.low + f.high);
  }
  return total;
}

BoxDomain BoxDomain::with_facet_b(std::vector<FacetPair> facet_b) const {
  return BoxDomain(d_, sides_, std::move(facet_b));
}

spectra1d::RobinInterval BoxDomain::axis_interval(int axis, double h) const {
  const auto& f = facet_b_[static_cast<std::size_t>(axis)];
  return {sides_[static_cast<std::size_t>(axis)], f.low / h, f.high / h};
}

unsigned resolve_threads(unsigned requested) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ROBIN_SEMICLASSICS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) return std::min(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

double weyl_term(const BoxDomain& box, double h) {
  const int d = box.dimension().value();
  return l1(d).value * box.volume() * std::pow(h, -d);
}

double kroger_lower_bound(const BoxDomain& box, double h) {
  const int d = box.dimension().value();
  const double boundary = unit_ball_volume(d).value * std::pow(2.0 * kPi, -d) * box.boundary_integral_b();
  return weyl_term(box, h) - boundary * std::pow(h, 1 - d);
}

bool kroger_check(const BoxDomain& box, double h, double trace) {
  const double bound = kroger_lower_bound(box, h);
  return trace >= bound - 1e-10 * std::max(std::abs(bound), std::abs(trace));
}

RieszReport riesz_mean(const BoxDomain& box, double h, const RieszOptions& options) {
  const int d = box.dimension().value();
  const double min_side = *std::min_element(box.sides().begin(), box.sides().end());
  if (!(h > 0.0) || h > min_side / 4.0) {
    throw InvalidArgument("riesz_mean: need 0 < h <= min(sides)/4, got h = " + std::to_string(h));
  }
  const double energy = 1.0 / (h * h);
  const double h2 = h * h;

  // First pass at the bare cutoff finds each axis' lowest eigenvalue; axes are
  // re-enumerated when a partner's negative eigenvalues raise their cutoff.
  std::vector<spectra1d::Spectrum1D> spectra;
  spectra.reserve(static_cast<std::size_t>(d));
  std::vector<double> lowest(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    spectra.push_back(spectra1d::enumerate(box.axis_interval(i, h), energy));
    const auto& ev = spectra.back().eigenvalues();
    lowest[static_cast<std::size_t>(i)] = ev.empty() ? energy : ev.front();
  }
  for (int i = 0; i < d; ++i) {
    double shift = 0.0;
    for (int j = 0; j < d; ++j) {
      if (j != i) shift += std::min(0.0, lowest[static_cast<std::size_t>(j)]);
    }
    if (shift < 0.0) spectra[static_cast<std::size_t>(i)] = spectra1d::enumerate(box.axis_interval(i, h), energy - shift);
  }

  std::vector<const std::vector<double>*> axes;
  for (const auto& s : spectra) axes.push_back(&s.eigenvalues());
  // min_tail[i] = sum of the lowest eigenvalues of axes 0..i-1, for pruning.
  std::vector<double> min_tail(static_cast<std::size_t>(d) + 1, 0.0);
  for (int i = 0; i < d; ++i) {
    const auto& ev = *axes[static_cast<std::size_t>(i)];
    if (ev.empty()) return RieszReport{h, 0.0, weyl_term(box, h), 0.0, -weyl_term(box, h), 0,
                                       kroger_check(box, h, 0.0), -kroger_lower_bound(box, h)};
    min_tail[static_cast<std::size_t>(i) + 1] = min_tail[static_cast<std::size_t>(i)] + ev.front();
  }

  const InnerAxis inner(*axes[0]);
  // Middle axes 1..d-2 by recursion; axis d-1 is the blocked outer index.
  const std::function<void(int, double, BlockResult&)> walk = [&](int axis, double shift, BlockResult& out) {
    if (axis == 0) {
      inner.add(energy, shift, h2, out);
      return;
    }
    for (double lambda : *axes[static_cast<std::size_t>(axis)]) {
      const double s = shift + lambda;
      if (s + min_tail[static_cast<std::size_t>(axis)] >= energy) break;
      walk(axis - 1, s, out);
    }
  };

  const auto& outer = *axes[static_cast<std::size_t>(d - 1)];
  const std::size_t n_blocks = (outer.size() + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(n_blocks);
  const auto run_block = [&](std::size_t b) {
    const std::size_t end = std::min(outer.size(), (b + 1) * kBlock);
    for (std::size_t j = b * kBlock; j < end; ++j) {
      if (outer[j] + min_tail[static_cast<std::size_t>(d - 1)] >= energy) break;
      walk(d - 2, outer[j], blocks[b]);
    }
  };

  const unsigned workers = std::min<unsigned>(resolve_threads(options.threads), static_cast<unsigned>(std::max<std::size_t>(1, n_blocks)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t b = w; b < n_blocks; b += workers) run_block(b);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  CompensatedSum total;
  std::uint64_t count = 0;
  for (const auto& b : blocks) {
    total += b.sum;
    count += b.count;
  }

  RieszReport report;
  report.h = h;
  report.trace = total.value();
  report.eig_count = count;
  report.weyl_term = weyl_term(box, h);
  report.boundary_term = 0.0;
  report.remainder = report.trace - report.weyl_term;
  report.kroger_margin = report.trace - kroger_lower_bound(box, h);
  report.kroger_ok = kroger_check(box, h, report.trace);
  return report;
}

}  // namespace robin

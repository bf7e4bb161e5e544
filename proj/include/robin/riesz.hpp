#pragma once

#include <cstdint>
#include <vector>

#include "robin/coeffs.hpp"
#include "robin/spectra1d.hpp"

namespace robin {

/// Semiclassical Robin coefficients (b on the x_i = 0 facet, b on the x_i = side facet).
struct FacetPair {
  double low = 0.0;
  double high = 0.0;
};

/// Axis-aligned box [0, s_1] x ... x [0, s_d] with a constant b on each facet.
class BoxDomain {
 public:
  BoxDomain(Dimension d, std::vector<double> sides, std::vector<FacetPair> facet_b);

  /// Same b on every facet.
  static BoxDomain uniform(Dimension d, std::vector<double> sides, double b);

  Dimension dimension() const { return d_; }
  const std::vector<double>& sides() const { return sides_; }
  const std::vector<FacetPair>& facet_b() const { return facet_b_; }

  double volume() const;
  double surface_area() const;
  /// Area of one of the two facets orthogonal to `axis`.
  double facet_area(int axis) const;
  /// Integral of b over the boundary.
  double boundary_integral_b() const;

  BoxDomain with_facet_b(std::vector<FacetPair> facet_b) const;

  /// The Robin interval along `axis` with classical coefficients c = b / h.
  spectra1d::RobinInterval axis_interval(int axis, double h) const;

 private:
  Dimension d_;
  std::vector<double> sides_;
  std::vector<FacetPair> facet_b_;
};

struct RieszReport {
  double h = 0.0;
  double trace = 0.0;          // Tr(H(b))_- = sum (1 - h^2 lambda)_+
  double weyl_term = 0.0;
  double boundary_term = 0.0;  // filled by the asymptotics layer; 0 from riesz_mean
  double remainder = 0.0;      // trace - weyl_term - boundary_term
  std::uint64_t eig_count = 0; // number of negative eigenvalues of H(b)
  bool kroger_ok = false;
  double kroger_margin = 0.0;  // trace - lower bound
};

struct RieszOptions {
  /// Worker threads for the outer summation; 0 reads ROBIN_SEMICLASSICS_THREADS,
  /// falling back to the hardware concurrency.
  unsigned threads = 0;
};

/// Worker count from ROBIN_SEMICLASSICS_THREADS capped by the hardware, or `requested` if nonzero.
unsigned resolve_threads(unsigned requested);

/// L^{(1)}_d |Omega| h^{-d}.
double weyl_term(const BoxDomain& box, double h);

/// Riesz mean of the box Robin Laplacian H(b) = -h^2 Delta_{b/h} - 1.
///
/// Axis spectra are enumerated with the partner cutoff raised by the most
/// negative partner eigenvalue, so no contributing tuple is missed. The
/// innermost axis is summed in closed form from prefix sums and a binary
/// search. Outer contributions go through compensated accumulators in fixed
/// blocks, merged in block order, so the result does not depend on the
/// thread count.
RieszReport riesz_mean(const BoxDomain& box, double h, const RieszOptions& options = {});

/// Right-hand side of the sharp lower bound in trace units:
/// L1_d |Omega| h^{-d} - omega_d (2 pi)^{-d} (int b dsigma) h^{-d+1}.
double kroger_lower_bound(const BoxDomain& box, double h);

/// trace >= kroger_lower_bound within relative slack 1e-10.
bool kroger_check(const BoxDomain& box, double h, double trace);

}  // namespace robin

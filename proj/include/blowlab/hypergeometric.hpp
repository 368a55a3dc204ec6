#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "blowlab/parallel.hpp"

namespace blowlab {

// Gauss 2F1 power series at real parameters, z in [0,1). Terms are updated by
// the ratio recurrence and accumulated with compensated summation; the sum
// stops after three consecutive terms below tol*|sum|. Throws
// std::domain_error for z outside [0,1) or c a nonpositive integer, and
// std::runtime_error when the term cap (1e6) is hit.
double gauss_2f1(double a, double b, double c, double z, double tol = 1e-14);

// Relative gap |lhs-rhs|/max(|lhs|,|rhs|) of the quadratic transformation
//   F(a, a+1/2, c; z) = (1+sqrt z)^{-2a} F(2a, c-1/2, 2c-1; 2 sqrt z/(1+sqrt z)).
double quadratic_identity_residual(double a, double c, double z);

// The self-similar family. lambda = 0 is the unshifted solution on the cone
// r < t; lambda > 0 shifts it to r < lambda + t and scales by lambda^beta.
struct PhiSpec {
    double beta = 1.0;    // > 0
    double lambda = 0.0;  // >= 0
    int dim = 3;          // N >= 2

    void validate() const;
};

// Value of the solution at radius r, time t. Evaluation switches between the
// two equivalent hypergeometric forms at r/(lambda+t) = 0.5 so the series
// argument stays small, and refuses points within relative 1e-12 of the cone
// boundary (std::domain_error).
double phi(const PhiSpec& spec, double r, double t);

// Time derivative: -beta * lambda^beta * Phi_{beta+1}(r, lambda+t).
double phi_dt(const PhiSpec& spec, double r, double t);

// Radial derivative, from term-wise differentiation of the active form.
double phi_dr(const PhiSpec& spec, double r, double t);

// Closed-form solution lambda^{N-1}((lambda+t)^2 - r^2)^{-(N-1)/2} and its
// time derivative. Constant 1 in one dimension.
double special_w(int N, double lambda, double r, double t);
double special_w_dt(int N, double lambda, double r, double t);

// Max over the sample points of the scaled second-order residual
//   |D_tt phi - D_rr phi - (N-1)/r D_r phi| * (lambda+t)^{beta+2}
// with centered differences of step h. Points must keep their stencils inside
// the cone and away from r = 0 by at least h.
double wave_identity_residual(const PhiSpec& spec,
                              std::span<const std::pair<double, double>> points,
                              double h, Exec mode = Exec::Serial);

// Grid estimates of the two-sided envelope constants. For beta < (N-1)/2 the
// normalized quantity is phi * t^beta (its infimum must come out >= 1); for
// beta > (N-1)/2 it is phi * t^beta * (1 - r^2/t^2)^{beta-(N-1)/2}. The exact
// boundary beta = (N-1)/2 is refused.
struct BoundConstants {
    double beta = 0;
    double lower = 0;   // k: grid infimum of the normalized quantity
    double upper = 0;   // K: grid supremum
    std::size_t sample_count = 0;
};

BoundConstants estimate_bound_constants(const PhiSpec& spec, int nz, int nt,
                                        double margin = 1e-3,
                                        Exec mode = Exec::Serial);

} // namespace blowlab

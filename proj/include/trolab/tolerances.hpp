#ifndef TROLAB_TOLERANCES_HPP
#define TROLAB_TOLERANCES_HPP

namespace trolab {

// Global numerical thresholds. All zero tests are scale-relative:
// a quantity X computed from inputs with combined scale s counts as zero
// when |X| <= eps_abs + eps_rel * s.
struct Tolerances {
    double eps_abs = 1e-12;   // absolute floor for zero tests
    double eps_rel = 1e-9;    // relative part of zero tests
    double rank_tol = 1e-10;  // singular values below rank_tol*sigma_max are truncated
    double span_tol = 1e-9;   // relative rank tolerance for subspace arithmetic
};

Tolerances& tolerances();

// Scale-relative zero test for a nonnegative magnitude.
bool approx_zero(double magnitude, double scale);

}  // namespace trolab

#endif

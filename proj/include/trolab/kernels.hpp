#ifndef TROLAB_KERNELS_HPP
#define TROLAB_KERNELS_HPP

#include <complex>
#include <cstddef>

// Data-parallel inner loops over interleaved complex<double> arrays.
// Scalar reference kernels always exist; an AVX2 variant is selected at
// runtime on x86-64 when the CPU supports it. The two paths are
// equivalence-tested against each other.
namespace trolab::kernels {

using cplx = std::complex<double>;

// y[i] += alpha * x[i]
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);

// x[i] *= alpha
void scale(std::size_t n, cplx alpha, cplx* x);

// sum_i conj(x[i]) * y[i]
cplx dot_conj(std::size_t n, const cplx* x, const cplx* y);

// sum_i |x[i]|^2
double norm_sq(std::size_t n, const cplx* x);

// Name of the dispatched backend: "avx2" or "scalar".
const char* active_backend();

// Reference implementations, exposed so tests can compare the dispatched
// path against them on the same inputs.
namespace scalar {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void scale(std::size_t n, cplx alpha, cplx* x);
cplx dot_conj(std::size_t n, const cplx* x, const cplx* y);
double norm_sq(std::size_t n, const cplx* x);
}  // namespace scalar

}  // namespace trolab::kernels

#endif

#include "trolab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define TROLAB_X86 1
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#define TROLAB_NEON 1
#endif

namespace trolab::kernels {

namespace scalar {

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(std::size_t n, cplx alpha, cplx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

cplx dot_conj(std::size_t n, const cplx* x, const cplx* y) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm_sq(std::size_t n, const cplx* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return acc;
}

}  // namespace scalar

#ifdef TROLAB_X86
namespace avx2 {

// Complex multiply on interleaved lanes: for pairs (re, im),
// alpha*x = (xr*ar - xi*ai, xi*ar + xr*ai). fmaddsub gives the
// alternating sign directly.

__attribute__((target("avx2,fma")))
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xs + 2 * i);
        __m256d vy = _mm256_loadu_pd(ys + 2 * i);
        __m256d vxs = _mm256_permute_pd(vx, 0x5);  // swap re/im in each pair
        __m256d t = _mm256_mul_pd(vxs, vai);
        __m256d prod = _mm256_fmaddsub_pd(vx, var, t);
        _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2,fma")))
void scale(std::size_t n, cplx alpha, cplx* x) {
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    double* xs = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xs + 2 * i);
        __m256d vxs = _mm256_permute_pd(vx, 0x5);
        __m256d t = _mm256_mul_pd(vxs, vai);
        _mm256_storeu_pd(xs + 2 * i, _mm256_fmaddsub_pd(vx, var, t));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

__attribute__((target("avx2,fma")))
cplx dot_conj(std::size_t n, const cplx* x, const cplx* y) {
    // conj(x)*y = (xr*yr + xi*yi) + i*(xr*yi - xi*yr)
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xs + 2 * i);
        __m256d vy = _mm256_loadu_pd(ys + 2 * i);
        acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
        __m256d vxs = _mm256_permute_pd(vx, 0x5);  // (xi, xr)
        __m256d t = _mm256_mul_pd(vxs, vy);        // (xi*yr, xr*yi)
        acc_im = _mm256_fmadd_pd(t, sign, acc_im);
    }
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = im4[0] + im4[1] + im4[2] + im4[3];
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

__attribute__((target("avx2,fma")))
double norm_sq(std::size_t n, const cplx* x) {
    const double* xs = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xs + 2 * i);
        acc = _mm256_fmadd_pd(vx, vx, acc);
    }
    alignas(32) double a4[4];
    _mm256_store_pd(a4, acc);
    double r = a4[0] + a4[1] + a4[2] + a4[3];
    for (; i < n; ++i) r += std::norm(x[i]);
    return r;
}

}  // namespace avx2
#endif  // TROLAB_X86

#ifdef TROLAB_NEON
namespace neon {

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(xs + 2 * i);
        float64x2_t vy = vld1q_f64(ys + 2 * i);
        float64x2_t vxs = vextq_f64(vx, vx, 1);
        float64x2_t re_im = vmulq_n_f64(vx, ar);
        float64x2_t cross = vmulq_n_f64(vxs, ai);
        const float64x2_t sign = {-1.0, 1.0};
        re_im = vfmaq_f64(re_im, cross, sign);
        vst1q_f64(ys + 2 * i, vaddq_f64(vy, re_im));
    }
}

void scale(std::size_t n, cplx alpha, cplx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

cplx dot_conj(std::size_t n, const cplx* x, const cplx* y) {
    return scalar::dot_conj(n, x, y);
}

double norm_sq(std::size_t n, const cplx* x) {
    const double* xs = reinterpret_cast<const double*>(x);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(xs + 2 * i);
        acc = vfmaq_f64(acc, vx, vx);
    }
    return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

}  // namespace neon
#endif  // TROLAB_NEON

namespace {

struct Dispatch {
    void (*axpy)(std::size_t, cplx, const cplx*, cplx*);
    void (*scale)(std::size_t, cplx, cplx*);
    cplx (*dot_conj)(std::size_t, const cplx*, const cplx*);
    double (*norm_sq)(std::size_t, const cplx*);
    const char* name;
};

Dispatch select() {
#ifdef TROLAB_X86
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return {avx2::axpy, avx2::scale, avx2::dot_conj, avx2::norm_sq, "avx2"};
#endif
#ifdef TROLAB_NEON
    return {neon::axpy, neon::scale, neon::dot_conj, neon::norm_sq, "neon"};
#endif
    return {scalar::axpy, scalar::scale, scalar::dot_conj, scalar::norm_sq,
            "scalar"};
}

const Dispatch& dispatch() {
    static const Dispatch d = select();
    return d;
}

}  // namespace

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    dispatch().axpy(n, alpha, x, y);
}

void scale(std::size_t n, cplx alpha, cplx* x) {
    dispatch().scale(n, alpha, x);
}

cplx dot_conj(std::size_t n, const cplx* x, const cplx* y) {
    return dispatch().dot_conj(n, x, y);
}

double norm_sq(std::size_t n, const cplx* x) {
    return dispatch().norm_sq(n, x);
}

const char* active_backend() { return dispatch().name; }

}  // namespace trolab::kernels

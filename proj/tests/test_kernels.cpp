#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trolab/kernels.hpp"
#include "trolab/rng.hpp"

using namespace trolab;
using kernels::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, Rng& rng) {
    std::vector<cplx> v(n);
    for (cplx& c : v) c = rng.cgaussian();
    return v;
}

}  // namespace

TEST_CASE("dispatched kernels match the scalar reference") {
    Rng rng(42);
    INFO("backend: " << kernels::active_backend());
    // lengths straddling every SIMD remainder case
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 64u, 67u, 257u}) {
        const cplx alpha = rng.cgaussian();
        auto x = random_vec(n, rng);
        auto y = random_vec(n, rng);

        auto y_ref = y;
        kernels::scalar::axpy(n, alpha, x.data(), y_ref.data());
        auto y_disp = y;
        kernels::axpy(n, alpha, x.data(), y_disp.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y_ref[i] - y_disp[i]) <= 1e-13 * (1.0 + std::abs(y_ref[i])));

        auto x_ref = x;
        kernels::scalar::scale(n, alpha, x_ref.data());
        auto x_disp = x;
        kernels::scale(n, alpha, x_disp.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(x_ref[i] - x_disp[i]) <= 1e-13 * (1.0 + std::abs(x_ref[i])));

        const cplx d_ref = kernels::scalar::dot_conj(n, x.data(), y.data());
        const cplx d_disp = kernels::dot_conj(n, x.data(), y.data());
        CHECK(std::abs(d_ref - d_disp) <= 1e-11 * (1.0 + std::abs(d_ref)));

        const double s_ref = kernels::scalar::norm_sq(n, x.data());
        const double s_disp = kernels::norm_sq(n, x.data());
        CHECK(std::abs(s_ref - s_disp) <= 1e-11 * (1.0 + s_ref));
    }
}

TEST_CASE("kernel semantics on tiny hand inputs") {
    cplx x[2] = {{1, 2}, {3, -1}};
    cplx y[2] = {{0, 1}, {2, 0}};
    kernels::axpy(2, cplx{0, 1}, x, y);  // y += i * x
    CHECK(y[0] == cplx{-2, 2});
    CHECK(y[1] == cplx{3, 3});
    CHECK(kernels::dot_conj(2, x, x) == cplx{15, 0});
    CHECK(kernels::norm_sq(2, x) == doctest::Approx(15.0));
}

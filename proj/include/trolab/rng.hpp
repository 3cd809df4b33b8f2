#ifndef TROLAB_RNG_HPP
#define TROLAB_RNG_HPP

#include <cstdint>
#include <random>

#include "trolab/complex_matrix.hpp"

namespace trolab {

// Deterministic random source. The generator is std::mt19937_64 (whose
// output sequence is fixed by the standard); uniforms are derived by
// taking the top 53 bits, Gaussians by Box-Muller. This makes every
// seeded run reproducible across compilers and machines.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Derive an independent stream for a sub-task, without disturbing
    // this generator's sequence consumption pattern.
    Rng derive(std::uint64_t stream) const {
        // splitmix64 of (seed material ^ stream)
        std::uint64_t z = seed_material_ + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t bits() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) {  // in [0, n)
        return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
    }

    double gaussian() {
        // Box-Muller; u clamped away from 0.
        double u = uniform();
        if (u < 1e-300) u = 1e-300;
        double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

    cplx cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

    ComplexMatrix gaussian_matrix(int rows, int cols) {
        ComplexMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = cgaussian();
        return m;
    }

    // Haar-like unitary via the polar factor of a Gaussian matrix.
    ComplexMatrix random_unitary(int n) {
        SvdResult s = svd(gaussian_matrix(n, n));
        return s.left * s.right.adjoint();
    }

  private:
    std::mt19937_64 gen_;
    std::uint64_t seed_material_ = gen_();  // consumed once at construction
};

}  // namespace trolab

#endif

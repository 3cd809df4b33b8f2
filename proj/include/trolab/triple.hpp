#ifndef TROLAB_TRIPLE_HPP
#define TROLAB_TRIPLE_HPP

#include <functional>
#include <set>
#include <string>
#include <utility>

#include "trolab/algebra.hpp"
#include "trolab/rng.hpp"

namespace trolab {

// [a,b,c] = a b* c
Element tro_product(const Element& a, const Element& b, const Element& c);

// {a,b,c} = (a b* c + c b* a) / 2
Element jordan_triple_product(const Element& a, const Element& b, const Element& c);

// a b* = b* a = 0, scale-relative
bool is_orthogonal(const Element& a, const Element& b);

// a b* = 0 only
bool is_right_orthogonal(const Element& a, const Element& b);

// a^[k] for odd k, via the recursion a^[2n+1] = [a, a, a^[2n-1]]
Element odd_power(const Element& a, int k);

struct TripleSpectrum {
    std::set<double> points;  // distinct singular values above threshold
    double max_point = 0.0;   // operator norm of the element, 0 for a = 0
};

// Distinct singular values above rank_tol * sigma_max, pooled over blocks.
TripleSpectrum triple_spectrum(const Element& a);

// Continuous scalar function with f(0) = 0, applied to singular values.
class ScalarFunction {
  public:
    ScalarFunction(std::function<cplx(double)> evaluator, std::string label);

    cplx operator()(double t) const { return eval_(t); }
    const std::string& label() const { return label_; }

    static ScalarFunction identity();            // t -> t (the generator w)
    static ScalarFunction cube();                // t -> t^3
    static ScalarFunction cube_root();           // t -> t^(1/3)
    static ScalarFunction chop(double eps);      // t -> max(t - eps, 0)
    static ScalarFunction power(double p);       // t -> t^p  (p > 0)
    // Odd polynomial c1*t + c3*t^3 + c5*t^5 + ...
    static ScalarFunction odd_polynomial(const std::vector<cplx>& coeffs);
    // Preset names: identity | cube | cuberoot | chop:<eps> | power:<p> |
    // poly:[c1,c3,...] (real coefficients).
    static ScalarFunction from_preset(const std::string& name);

    ScalarFunction conjugated() const;  // t -> conj(f(t))
    // Pointwise product with the middle factor conjugated: f1 * conj(f2) * f3.
    static ScalarFunction tro_combine(const ScalarFunction& f1,
                                      const ScalarFunction& f2,
                                      const ScalarFunction& f3);

  private:
    std::function<cplx(double)> eval_;
    std::string label_;
};

// Per block, a = U S V*  =>  f(a) = U f(S) V*, truncated singular
// directions mapped through f(0) = 0.
Element apply_scalar_function(const ScalarFunction& f, const Element& a);

// r(a) = U P V* keeping singular directions above rank_tol * sigma_max.
Element range_partial_isometry(const Element& a);

// Randomized structured generators. All are deterministic per seed.
Element random_element(const Algebra& a, int level, Rng& rng);

// a, b drawn from one SVD frame with disjoint singular index sets, so
// a b* = b* a = 0 exactly up to rounding.
std::pair<Element, Element> random_orthogonal_pair(const Algebra& a, int level, Rng& rng);

// Shared left frame, disjoint right supports: a b* = 0 but b* a != 0.
// Throws std::invalid_argument if all blocks are 1x1 (impossible).
std::pair<Element, Element> random_right_orthogonal_pair(const Algebra& a, int level, Rng& rng);

// (x, b, c) with b* c = 0, hence [x, b, c] = 0.
std::tuple<Element, Element, Element> random_zero_tro_triple(const Algebra& a, int level, Rng& rng);

}  // namespace trolab

#endif

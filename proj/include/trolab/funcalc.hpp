#ifndef TROLAB_FUNCALC_HPP
#define TROLAB_FUNCALC_HPP

#include <utility>
#include <vector>

#include "trolab/preservers.hpp"
#include "trolab/triple.hpp"

namespace trolab {

// Finite sum of elementary tensors f_i (x) a_i, the computable part of the
// tensor-product picture of the calculus.
struct FiniteTensor {
    std::vector<std::pair<ScalarFunction, Element>> terms;
};

// f(T): a -> f(h) r* S(a), the calculus attached to a factorization.
LinearMap op_functional_calculus(const Factorization& f, const ScalarFunction& fn);

struct FuncalcReport {
    int depth = 0;
    double max_residual = 0.0;
    // residuals[k-1] = {weight identity, reconstruction identity} at odd
    // exponent 2k - 1, scale-relative.
    std::vector<std::pair<double, double>> residuals;
};

// Checks the odd-power identities h* T(a)^[2k-1] = (T(a*)^[2k-1])* h and
// h^[2k-1] r* S(a^[2k-1]) = T(a)^[2k-1] for k = 1..depth.
FuncalcReport verify_funcalc_identities(const Factorization& f, const Element& a, int depth);

// Relative defect of [f1(T)(a), f2(T)(b), f3(T)(c)] = (f1 conj(f2) f3)(T)([a,b,c]).
// Requires the supporting map to be a TRO homomorphism; throws otherwise.
double verify_tro_product_identity(const Factorization& f, const ScalarFunction& f1,
                                   const ScalarFunction& f2, const ScalarFunction& f3,
                                   const Element& a, const Element& b, const Element& c);

// Calculus for symmetric maps with self-adjoint weight: f applied to the
// eigenvalues of h (kernel pinned to 0), composed with the supporting map.
// Throws std::invalid_argument when T is not symmetric or h is not
// self-adjoint within tolerance.
LinearMap symmetric_functional_calculus(const LinearMap& t, const ScalarFunction& fn);

// Phi_T on a finite tensor: sum of f_i(T)(a_i). Requires ||h|| <= 1.
Element evaluate_phi(const Factorization& f, const FiniteTensor& tensor);

struct TroClosure {
    std::vector<Element> basis;  // orthonormal in the trace inner product
    int rounds = 0;
    bool stabilized = false;
    int dim() const { return static_cast<int>(basis.size()); }
};

// Smallest subspace containing T(basis) and closed under [x,y,z], grown by
// bracket rounds until the dimension stabilizes or max_rounds is hit.
TroClosure tro_closure_of_range(const LinearMap& t, int max_rounds);

}  // namespace trolab

#endif

#include "trolab/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trolab/tolerances.hpp"

namespace trolab {

namespace {

double rel_defect(const Element& lhs, const Element& rhs) {
    const double scale = std::max({1.0, lhs.operator_norm(), rhs.operator_norm()});
    return (lhs - rhs).operator_norm() / scale;
}

Element apply_t(const Factorization& f, const Element& a) {
    return f.h * (f.r.adjoint() * f.s.apply(a));
}

}  // namespace

LinearMap op_functional_calculus(const Factorization& f, const ScalarFunction& fn) {
    Element fh = apply_scalar_function(fn, f.h);
    Element r_adj = f.r.adjoint();
    return LinearMap::from_function(f.s.domain(), f.s.codomain(),
                                    [&](const Element& e) {
                                        return fh * (r_adj * f.s.apply(e));
                                    });
}

FuncalcReport verify_funcalc_identities(const Factorization& f, const Element& a, int depth) {
    FuncalcReport rep;
    rep.depth = depth;
    const Element h_adj = f.h.adjoint();
    const Element r_adj = f.r.adjoint();
    const Element ta = apply_t(f, a);
    const Element tas = apply_t(f, a.adjoint());
    for (int k = 1; k <= depth; ++k) {
        const int m = 2 * k - 1;
        Element ta_m = odd_power(ta, m);
        Element weight_lhs = h_adj * ta_m;
        Element weight_rhs = odd_power(tas, m).adjoint() * f.h;
        Element recon_lhs = odd_power(f.h, m) * (r_adj * f.s.apply(odd_power(a, m)));
        const double d1 = rel_defect(weight_lhs, weight_rhs);
        const double d2 = rel_defect(recon_lhs, ta_m);
        rep.residuals.emplace_back(d1, d2);
        rep.max_residual = std::max({rep.max_residual, d1, d2});
    }
    return rep;
}

double verify_tro_product_identity(const Factorization& f, const ScalarFunction& f1,
                                   const ScalarFunction& f2, const ScalarFunction& f3,
                                   const Element& a, const Element& b, const Element& c) {
    if (!is_tro_homomorphism(f.s).ok)
        throw std::invalid_argument(
            "verify_tro_product_identity: supporting map is not a TRO homomorphism");
    LinearMap t1 = op_functional_calculus(f, f1);
    LinearMap t2 = op_functional_calculus(f, f2);
    LinearMap t3 = op_functional_calculus(f, f3);
    Element lhs = tro_product(t1.apply(a), t2.apply(b), t3.apply(c));
    LinearMap combined = op_functional_calculus(f, ScalarFunction::tro_combine(f1, f2, f3));
    Element rhs = combined.apply(tro_product(a, b, c));
    return rel_defect(lhs, rhs);
}

LinearMap symmetric_functional_calculus(const LinearMap& t, const ScalarFunction& fn) {
    if (!is_symmetric(t))
        throw std::invalid_argument("symmetric_functional_calculus: map is not symmetric");
    FactorizeResult fr = factorize(t);
    if (!fr.ok())
        throw std::invalid_argument("symmetric_functional_calculus: factorization failed: " +
                                    fr.failure);
    const Factorization& f = *fr.factorization;
    const double hn = f.h.operator_norm();
    if (!approx_zero((f.h - f.h.adjoint()).operator_norm(), hn))
        throw std::invalid_argument(
            "symmetric_functional_calculus: weight is not self-adjoint");

    // Eigenvalue calculus on h; eigenvalues inside the kernel band go to 0
    // regardless of f.
    Element fh = Element::zero(f.h.algebra());
    const double kernel_band = tolerances().rank_tol * hn;
    for (int b = 0; b < f.h.block_count(); ++b) {
        EigResult eig = hermitian_eig(f.h.block(b));
        const int d = f.h.block(b).rows();
        ComplexMatrix diag(d, d);
        for (int j = 0; j < d; ++j) {
            const double lam = eig.eigenvalues[static_cast<std::size_t>(j)];
            if (std::abs(lam) > kernel_band) diag(j, j) = fn(lam);
        }
        fh.block(b) = eig.vectors * diag * eig.vectors.adjoint();
    }
    Element r_adj = f.r.adjoint();
    return LinearMap::from_function(t.domain(), t.codomain(), [&](const Element& e) {
        return fh * (r_adj * f.s.apply(e));
    });
}

Element evaluate_phi(const Factorization& f, const FiniteTensor& tensor) {
    if (f.h.operator_norm() > 1.0 + tolerances().eps_rel)
        throw std::invalid_argument("evaluate_phi: weight exceeds the unit ball");
    Element acc = Element::zero(f.s.codomain());
    for (const auto& [fn, a] : tensor.terms)
        acc = acc + op_functional_calculus(f, fn).apply(a);
    return acc;
}

namespace {

// Gram-Schmidt insert over the trace inner product; returns true when the
// candidate enlarged the span.
bool span_insert(std::vector<Element>& basis, Element v) {
    const double orig = v.frobenius_norm();
    if (orig <= tolerances().eps_abs) return false;
    for (const Element& b : basis) {
        cplx coef = hs_inner(b, v);
        v = v - coef * b;
    }
    const double rem = v.frobenius_norm();
    if (rem <= tolerances().span_tol * orig) return false;
    basis.push_back((1.0 / rem) * v);
    return true;
}

}  // namespace

TroClosure tro_closure_of_range(const LinearMap& t, int max_rounds) {
    TroClosure out;
    for (int j = 0; j < t.domain().dim(); ++j)
        span_insert(out.basis, t.apply(Element::basis_element(t.domain(), j)));

    for (int round = 0; round < max_rounds; ++round) {
        bool grew = false;
        const std::size_t snapshot = out.basis.size();
        for (std::size_t i = 0; i < snapshot; ++i)
            for (std::size_t j = 0; j < snapshot; ++j)
                for (std::size_t k = 0; k < snapshot; ++k)
                    if (span_insert(out.basis,
                                    tro_product(out.basis[i], out.basis[j], out.basis[k])))
                        grew = true;
        ++out.rounds;
        if (!grew) {
            out.stabilized = true;
            break;
        }
    }
    return out;
}

}  // namespace trolab

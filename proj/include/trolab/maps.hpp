#ifndef TROLAB_MAPS_HPP
#define TROLAB_MAPS_HPP

#include <functional>
#include <optional>
#include <string>

#include "trolab/algebra.hpp"
#include "trolab/rng.hpp"

namespace trolab {

// A linear operator between two algebras, stored as its action matrix on
// matrix-unit coordinates (ordered block-major, then row, then column).
class LinearMap {
  public:
    LinearMap() = default;
    LinearMap(Algebra domain, Algebra codomain, ComplexMatrix action);

    static LinearMap identity(const Algebra& a);
    static LinearMap zero(const Algebra& domain, const Algebra& codomain);
    // Build from an arbitrary linear rule by probing the basis.
    static LinearMap from_function(const Algebra& domain, const Algebra& codomain,
                                   const std::function<Element(const Element&)>& rule);

    const Algebra& domain() const { return domain_; }
    const Algebra& codomain() const { return codomain_; }
    const ComplexMatrix& action() const { return action_; }

    Element apply(const Element& x) const;            // level 1
    Element amplified_apply(const Element& x) const;  // entrywise at any level

    // Hilbert-Schmidt adjoint (matrix-unit coordinates are HS-orthonormal,
    // so this is the conjugate transpose of the action matrix).
    LinearMap hs_adjoint() const;

    friend LinearMap compose(const LinearMap& t, const LinearMap& u);  // t after u
    friend LinearMap direct_sum(const LinearMap& t, const LinearMap& u);
    // a -> T(a*)*
    friend LinearMap adjoint_map(const LinearMap& t);
    friend LinearMap operator+(const LinearMap& t, const LinearMap& u);
    friend LinearMap operator-(const LinearMap& t, const LinearMap& u);
    friend LinearMap operator*(cplx s, const LinearMap& t);

  private:
    Algebra domain_;
    Algebra codomain_;
    ComplexMatrix action_;
};

// theta(m): a -> a^t on M_m(C).
LinearMap make_transpose(int m);

// T(a*) = T(a)* on the matrix-unit basis.
bool is_symmetric(const LinearMap& t);

struct PositivityVerdict {
    bool certified_false = false;  // otherwise "probably true"
    std::optional<Element> witness;  // positive x with T(x) not PSD
};

// Randomized positivity test on samples x = y* y (plus the unit).
PositivityVerdict is_positive(const LinearMap& t, int trials, std::uint64_t seed);

// Choi-matrix criterion, one Choi block per (domain block, codomain block)
// pair; PSD decided with eigenvalue threshold -1e-9.
bool is_completely_positive(const LinearMap& t);

struct NormEstimate {
    int level = 1;
    double lower_bound = 0.0;
    Element witness;  // ||witness|| <= 1 and ||T_n(witness)|| = lower_bound
    int iterations = 0;
    int restarts = 0;
    bool converged = false;
};

// Certified lower bound on ||T_n|| by alternating maximization over the
// unit ball of M_n(domain). Deterministic given (seed, restarts); an
// optional warm start joins the restart pool.
NormEstimate estimate_amplified_norm(const LinearMap& t, int n, int restarts,
                                     std::uint64_t seed,
                                     const std::optional<Element>& warm_start = {});

}  // namespace trolab

#endif

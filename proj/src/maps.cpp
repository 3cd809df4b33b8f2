#include "trolab/maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trolab/tolerances.hpp"
#include "trolab/triple.hpp"

namespace trolab {

LinearMap::LinearMap(Algebra domain, Algebra codomain, ComplexMatrix action)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), action_(std::move(action)) {
    if (action_.rows() != codomain_.dim() || action_.cols() != domain_.dim())
        throw DimensionError("LinearMap: action matrix shape mismatch");
}

LinearMap LinearMap::identity(const Algebra& a) {
    return {a, a, ComplexMatrix::identity(a.dim())};
}

LinearMap LinearMap::zero(const Algebra& domain, const Algebra& codomain) {
    return {domain, codomain, ComplexMatrix(codomain.dim(), domain.dim())};
}

LinearMap LinearMap::from_function(const Algebra& domain, const Algebra& codomain,
                                   const std::function<Element(const Element&)>& rule) {
    ComplexMatrix action(codomain.dim(), domain.dim());
    for (int j = 0; j < domain.dim(); ++j) {
        Element img = rule(Element::basis_element(domain, j));
        std::vector<cplx> col = img.coordinates();
        for (int i = 0; i < codomain.dim(); ++i) action(i, j) = col[static_cast<std::size_t>(i)];
    }
    return {domain, codomain, std::move(action)};
}

Element LinearMap::apply(const Element& x) const {
    if (x.algebra() != domain_ || x.level() != 1)
        throw DimensionError("apply: element not in domain at level 1");
    std::vector<cplx> in = x.coordinates();
    std::vector<cplx> out(static_cast<std::size_t>(codomain_.dim()), cplx{0.0, 0.0});
    for (int i = 0; i < codomain_.dim(); ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < domain_.dim(); ++j) acc += action_(i, j) * in[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return Element::from_coordinates(codomain_, out);
}

Element LinearMap::amplified_apply(const Element& x) const {
    if (x.algebra() != domain_)
        throw DimensionError("amplified_apply: element not over domain");
    const int n = x.level();
    if (n == 1) return apply(x);
    std::vector<std::vector<Element>> grid(
        static_cast<std::size_t>(n),
        std::vector<Element>(static_cast<std::size_t>(n), Element::zero(codomain_)));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                apply(sub_entry(x, p, q));
    return amplify_element(grid);
}

LinearMap LinearMap::hs_adjoint() const {
    return {codomain_, domain_, action_.adjoint()};
}

LinearMap compose(const LinearMap& t, const LinearMap& u) {
    if (u.codomain_ != t.domain_) throw DimensionError("compose: domain/codomain mismatch");
    return {u.domain_, t.codomain_, t.action_ * u.action_};
}

LinearMap direct_sum(const LinearMap& t, const LinearMap& u) {
    std::vector<int> dd = t.domain_.block_dims();
    dd.insert(dd.end(), u.domain_.block_dims().begin(), u.domain_.block_dims().end());
    std::vector<int> cd = t.codomain_.block_dims();
    cd.insert(cd.end(), u.codomain_.block_dims().begin(), u.codomain_.block_dims().end());
    Algebra domain(dd), codomain(cd);
    ComplexMatrix action(codomain.dim(), domain.dim());
    for (int i = 0; i < t.codomain_.dim(); ++i)
        for (int j = 0; j < t.domain_.dim(); ++j) action(i, j) = t.action_(i, j);
    for (int i = 0; i < u.codomain_.dim(); ++i)
        for (int j = 0; j < u.domain_.dim(); ++j)
            action(t.codomain_.dim() + i, t.domain_.dim() + j) = u.action_(i, j);
    return {domain, codomain, std::move(action)};
}

LinearMap adjoint_map(const LinearMap& t) {
    return LinearMap::from_function(t.domain_, t.codomain_, [&t](const Element& e) {
        return t.apply(e.adjoint()).adjoint();
    });
}

LinearMap operator+(const LinearMap& t, const LinearMap& u) {
    if (t.domain_ != u.domain_ || t.codomain_ != u.codomain_)
        throw DimensionError("map add: mismatch");
    return {t.domain_, t.codomain_, t.action_ + u.action_};
}

LinearMap operator-(const LinearMap& t, const LinearMap& u) {
    if (t.domain_ != u.domain_ || t.codomain_ != u.codomain_)
        throw DimensionError("map sub: mismatch");
    return {t.domain_, t.codomain_, t.action_ - u.action_};
}

LinearMap operator*(cplx s, const LinearMap& t) {
    return {t.domain_, t.codomain_, s * t.action_};
}

LinearMap make_transpose(int m) {
    if (m < 1) throw std::invalid_argument("make_transpose: m must be positive");
    Algebra a({m});
    return LinearMap::from_function(a, a, [](const Element& e) {
        return Element(e.algebra(), 1, {e.block(0).transpose()});
    });
}

bool is_symmetric(const LinearMap& t) {
    // T(a*) = T(a)* is complex-linear in a (both sides conjugate twice),
    // so the matrix-unit basis decides it.
    for (int j = 0; j < t.domain().dim(); ++j) {
        Element e = Element::basis_element(t.domain(), j);
        Element lhs = t.apply(e.adjoint());
        Element rhs = t.apply(e).adjoint();
        if (!approx_zero((lhs - rhs).operator_norm(),
                         std::max(lhs.operator_norm(), rhs.operator_norm()) + 1.0))
            return false;
    }
    return true;
}

PositivityVerdict is_positive(const LinearMap& t, int trials, std::uint64_t seed) {
    Rng rng(seed);
    const double tol = 1e-9;
    auto check = [&](const Element& x) -> bool {
        Element y = t.apply(x);
        double scale = y.operator_norm() + 1.0;
        // Positivity of T(x) requires T(x) Hermitian.
        for (int i = 0; i < y.block_count(); ++i) {
            const ComplexMatrix& b = y.block(i);
            if ((b - b.adjoint()).frobenius_norm() > tol * scale) return false;
            EigResult eig = hermitian_eig(b);
            if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -tol * scale) return false;
        }
        return true;
    };
    Element unit = Element::unit(t.domain());
    if (!check(unit)) return {true, unit};
    for (int i = 0; i < trials; ++i) {
        Element y = random_element(t.domain(), 1, rng);
        Element x = y.adjoint() * y;
        if (!check(x)) return {true, x};
    }
    return {false, std::nullopt};
}

bool is_completely_positive(const LinearMap& t) {
    const Algebra& dom = t.domain();
    const Algebra& cod = t.codomain();
    const double tol = 1e-9;
    // Choi matrix of the restriction to each domain block, one codomain
    // block at a time: C = sum_{p,q} e_pq (x) T(e_pq)|_block.
    for (int db = 0; db < dom.block_count(); ++db) {
        const int k = dom.block_dim(db);
        for (int cb = 0; cb < cod.block_count(); ++cb) {
            const int c = cod.block_dim(cb);
            ComplexMatrix choi(k * c, k * c);
            for (int p = 0; p < k; ++p)
                for (int q = 0; q < k; ++q) {
                    Element img = t.apply(Element::matrix_unit(dom, db, p, q));
                    const ComplexMatrix& blk = img.block(cb);
                    for (int r = 0; r < c; ++r)
                        for (int s = 0; s < c; ++s)
                            choi(p * c + r, q * c + s) = blk(r, s);
                }
            EigResult eig = hermitian_eig(choi);
            // A non-Hermitian Choi block also disqualifies.
            ComplexMatrix herm = 0.5 * (choi + choi.adjoint());
            if ((choi - herm).frobenius_norm() > tol * (choi.frobenius_norm() + 1.0)) return false;
            if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -tol) return false;
        }
    }
    return true;
}

namespace {

// Top singular triple over the blocks of an element: value, the block
// index, and unit vectors xi (left), eta (right) within that block.
struct TopSingular {
    double value = 0.0;
    int block = 0;
    std::vector<cplx> xi, eta;
};

TopSingular top_singular(const Element& y) {
    TopSingular best;
    for (int i = 0; i < y.block_count(); ++i) {
        SvdResult s = svd(y.block(i));
        if (s.singular_values.empty()) continue;
        if (s.singular_values.front() >= best.value) {
            best.value = s.singular_values.front();
            best.block = i;
            const int d = y.block(i).rows();
            best.xi.assign(static_cast<std::size_t>(d), cplx{0.0, 0.0});
            best.eta.assign(static_cast<std::size_t>(d), cplx{0.0, 0.0});
            for (int r = 0; r < d; ++r) {
                best.xi[static_cast<std::size_t>(r)] = s.left(r, 0);
                best.eta[static_cast<std::size_t>(r)] = s.right(r, 0);
            }
        }
    }
    return best;
}

// Blockwise polar partial isometry U V* of an element (all singular
// directions kept; operator norm <= 1 by construction).
Element blockwise_polar(const Element& phi) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(phi.block_count()));
    for (int i = 0; i < phi.block_count(); ++i) {
        SvdResult s = svd(phi.block(i));
        blocks.push_back(s.left * s.right.adjoint());
    }
    return {phi.algebra(), phi.level(), std::move(blocks)};
}

Element normalized(const Element& x) {
    double n = x.operator_norm();
    if (n <= 0.0) return x;
    return (1.0 / n) * x;
}

}  // namespace

NormEstimate estimate_amplified_norm(const LinearMap& t, int n, int restarts,
                                     std::uint64_t seed,
                                     const std::optional<Element>& warm_start) {
    if (n < 1) throw std::invalid_argument("estimate_amplified_norm: n must be positive");
    const int max_iters = 500;
    const double improve_tol = 1e-10;
    const LinearMap t_adj = t.hs_adjoint();

    NormEstimate best;
    best.level = n;
    best.restarts = restarts;
    best.witness = Element::zero(t.domain(), n);

    Rng master(seed);
    std::vector<Element> starts;
    if (warm_start) starts.push_back(normalized(*warm_start));
    for (int r = 0; r < restarts; ++r) {
        Rng rr = master.derive(static_cast<std::uint64_t>(r));
        starts.push_back(normalized(random_element(t.domain(), n, rr)));
    }

    for (const Element& x0 : starts) {
        Element x = x0;
        double value = 0.0;
        int iters = 0;
        bool converged = false;
        for (; iters < max_iters; ++iters) {
            Element y = t.amplified_apply(x);
            TopSingular top = top_singular(y);
            if (top.value <= 0.0) break;
            // Fixed (xi, eta): the objective Re<xi, T_n(x) eta> is the
            // trace pairing <Phi, x> with Phi = (T^H)_n(xi eta*); the
            // maximizer over ||x|| <= 1 is the blockwise polar isometry.
            Element rank_one = Element::zero(t.codomain(), n);
            {
                const int d = static_cast<int>(top.xi.size());
                ComplexMatrix m(d, d);
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        m(r, c) = top.xi[static_cast<std::size_t>(r)] *
                                  std::conj(top.eta[static_cast<std::size_t>(c)]);
                rank_one.block(top.block) = std::move(m);
            }
            Element phi = t_adj.amplified_apply(rank_one);
            Element x_next = blockwise_polar(phi);
            double value_next = t.amplified_apply(x_next).operator_norm();
            if (value_next <= value + improve_tol) {
                if (value_next > value) {
                    x = x_next;
                    value = value_next;
                }
                converged = true;
                break;
            }
            x = x_next;
            value = value_next;
        }
        if (value > best.lower_bound) {
            best.lower_bound = value;
            best.witness = x;
            best.iterations = iters;
            best.converged = converged;
        }
    }
    // Certificate: the reported bound is the recomputed norm at the witness.
    best.lower_bound = t.amplified_apply(best.witness).operator_norm();
    return best;
}

}  // namespace trolab

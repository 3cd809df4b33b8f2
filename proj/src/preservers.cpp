#include "trolab/preservers.hpp"

#include <algorithm>
#include <cmath>

#include "trolab/tolerances.hpp"
#include "trolab/triple.hpp"

namespace trolab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "true";
        case Verdict::no: return "false";
        default: return "unknown";
    }
}

namespace {

constexpr cplx kImag{0.0, 1.0};

using TripleOp = Element (*)(const Element&, const Element&, const Element&);

// Decides S(op(a,b,c)) = op(S(a),S(b),S(c)) for a trilinear identity that
// is conjugate-linear in the middle slot. Both sides are conjugate-linear
// there, so matrix units decide it; the i-scaled middle pass is kept as a
// cheap cross-check of the conjugation conventions.
HomCheck check_triple_identity(const LinearMap& s, TripleOp dom_op, TripleOp cod_op) {
    const Algebra& dom = s.domain();
    const int d = dom.dim();
    std::vector<Element> basis, imgs;
    basis.reserve(static_cast<std::size_t>(d));
    imgs.reserve(static_cast<std::size_t>(d));
    double m = 0.0;
    for (int j = 0; j < d; ++j) {
        basis.push_back(Element::basis_element(dom, j));
        imgs.push_back(s.apply(basis.back()));
        m = std::max(m, imgs.back().frobenius_norm());
    }
    const double scale = (1.0 + m) * (1.0 + m) * (1.0 + m);
    HomCheck res;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int phase = 0; phase < 2; ++phase) {
                    const Element mid = phase ? kImag * basis[static_cast<std::size_t>(j)]
                                              : basis[static_cast<std::size_t>(j)];
                    const Element mid_img = phase ? kImag * imgs[static_cast<std::size_t>(j)]
                                                  : imgs[static_cast<std::size_t>(j)];
                    Element lhs = s.apply(dom_op(basis[static_cast<std::size_t>(i)], mid,
                                                 basis[static_cast<std::size_t>(k)]));
                    Element rhs = cod_op(imgs[static_cast<std::size_t>(i)], mid_img,
                                         imgs[static_cast<std::size_t>(k)]);
                    const double defect = (lhs - rhs).frobenius_norm();
                    res.max_defect = std::max(res.max_defect, defect);
                    if (!approx_zero(defect, scale)) {
                        res.ok = false;
                        res.witness = {basis[static_cast<std::size_t>(i)], mid,
                                       basis[static_cast<std::size_t>(k)]};
                        return res;
                    }
                }
    return res;
}

Element tro_reversed(const Element& a, const Element& b, const Element& c) {
    return tro_product(c, b, a);
}

// Decides S(op(a,b)) = op(S(a),S(b)) for a bilinear identity.
HomCheck check_bilinear_identity(const LinearMap& s,
                                 Element (*dom_op)(const Element&, const Element&),
                                 Element (*cod_op)(const Element&, const Element&)) {
    const Algebra& dom = s.domain();
    const int d = dom.dim();
    std::vector<Element> basis, imgs;
    double m = 0.0;
    for (int j = 0; j < d; ++j) {
        basis.push_back(Element::basis_element(dom, j));
        imgs.push_back(s.apply(basis.back()));
        m = std::max(m, imgs.back().frobenius_norm());
    }
    const double scale = (1.0 + m) * (1.0 + m);
    HomCheck res;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Element lhs = s.apply(dom_op(basis[static_cast<std::size_t>(i)],
                                         basis[static_cast<std::size_t>(j)]));
            Element rhs = cod_op(imgs[static_cast<std::size_t>(i)],
                                 imgs[static_cast<std::size_t>(j)]);
            const double defect = (lhs - rhs).frobenius_norm();
            res.max_defect = std::max(res.max_defect, defect);
            if (!approx_zero(defect, scale)) {
                res.ok = false;
                res.witness = {basis[static_cast<std::size_t>(i)],
                               basis[static_cast<std::size_t>(j)]};
                return res;
            }
        }
    return res;
}

Element jordan_product(const Element& a, const Element& b) {
    return 0.5 * (a * b + b * a);
}

Element plain_product(const Element& a, const Element& b) { return a * b; }

// Blockwise Moore-Penrose pseudo-inverse, singular values below
// rank_tol * sigma_max dropped.
Element pseudo_inverse(const Element& x) {
    std::vector<SvdResult> svds;
    double sigma_max = 0.0;
    for (int i = 0; i < x.block_count(); ++i) {
        svds.push_back(svd(x.block(i)));
        if (!svds.back().singular_values.empty())
            sigma_max = std::max(sigma_max, svds.back().singular_values.front());
    }
    const double cut = tolerances().rank_tol * sigma_max;
    std::vector<ComplexMatrix> blocks;
    for (int i = 0; i < x.block_count(); ++i) {
        const SvdResult& s = svds[static_cast<std::size_t>(i)];
        const int d = x.block(i).rows();
        ComplexMatrix inv(d, d);
        for (int j = 0; j < static_cast<int>(s.singular_values.size()); ++j) {
            const double sv = s.singular_values[static_cast<std::size_t>(j)];
            if (sv > cut) inv(j, j) = 1.0 / sv;
        }
        blocks.push_back(s.right * inv * s.left.adjoint());
    }
    return {x.algebra(), x.level(), std::move(blocks)};
}

}  // namespace

HomCheck is_triple_homomorphism(const LinearMap& s) {
    return check_triple_identity(s, jordan_triple_product, jordan_triple_product);
}

HomCheck is_tro_homomorphism(const LinearMap& s) {
    return check_triple_identity(s, tro_product, tro_product);
}

HomCheck is_tro_anti_homomorphism(const LinearMap& s) {
    return check_triple_identity(s, tro_product, tro_reversed);
}

HomCheck is_jordan_star_homomorphism(const LinearMap& s) {
    if (!is_symmetric(s)) {
        HomCheck res;
        res.ok = false;
        return res;
    }
    return check_bilinear_identity(s, jordan_product, jordan_product);
}

HomCheck is_multiplicative(const LinearMap& s) {
    return check_bilinear_identity(s, plain_product, plain_product);
}

std::pair<Element, Element> transpose_counterexample_pair() {
    Algebra m2({2});
    auto mat = [&](std::initializer_list<double> vals) {
        ComplexMatrix m(4, 4);
        int idx = 0;
        for (double v : vals) {
            m(idx / 4, idx % 4) = v;
            ++idx;
        }
        return m;
    };
    Element x(m2, 2, {mat({1, 0, 1, 0,
                           0, 0, 0, 0,
                           1, 0, 1, 0,
                           0, 0, 0, 0})});
    Element y(m2, 2, {mat({0, 0, 0, 0,
                           1, 2, -1, 0,
                           0, 0, 0, 0,
                           2, 2, -2, 0})});
    return {x, y};
}

std::optional<std::pair<Element, Element>> refute_orthogonality_preserving(
    const LinearMap& t, int n, int trials, std::uint64_t seed) {
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        std::pair<Element, Element> pair;
        if (trial == 0 && n == 2 && t.domain() == Algebra({2})) {
            pair = transpose_counterexample_pair();
        } else {
            pair = random_orthogonal_pair(t.domain(), n, rng);
        }
        Element ia = t.amplified_apply(pair.first);
        Element ib = t.amplified_apply(pair.second);
        if (!is_orthogonal(ia, ib)) return pair;
    }
    return std::nullopt;
}

FactorizeResult factorize(const LinearMap& t) {
    const Algebra& dom = t.domain();
    const Algebra& cod = t.codomain();
    FactorizeResult out;
    Element h = t.apply(Element::unit(dom));
    const double hn = h.operator_norm();
    if (hn <= tolerances().eps_abs) {
        if (t.action().frobenius_norm() <= tolerances().eps_abs) {
            out.factorization = Factorization{h, Element::zero(cod),
                                              LinearMap::zero(dom, cod), 0.0};
            return out;
        }
        out.failure = "numerical_degenerate: T(unit) vanishes but T != 0";
        return out;
    }
    Element r = range_partial_isometry(h);

    // Necessary identities in T and the weight alone; a violation on a
    // basis element certifies that T does not preserve orthogonality.
    const Element h_adj = h.adjoint();
    const Element r_adj = r.adjoint();
    double residual = 0.0;
    for (int j = 0; j < dom.dim(); ++j) {
        Element e = Element::basis_element(dom, j);
        Element te = t.apply(e);
        Element tes = t.apply(e.adjoint());
        const double scale =
            (1.0 + hn) * (1.0 + te.operator_norm() + tes.operator_norm());
        struct Identity {
            const char* name;
            Element lhs, rhs;
        };
        const Identity ids[] = {
            {"h* T(a) = T(a*)* h", h_adj * te, tes.adjoint() * h},
            {"h T(a*)* = T(a) h*", h * tes.adjoint(), te * h_adj},
            {"r* T(a) = T(a*)* r", r_adj * te, tes.adjoint() * r},
            {"r T(a*)* = T(a) r*", r * tes.adjoint(), te * r_adj},
        };
        for (const Identity& id : ids) {
            const double defect = (id.lhs - id.rhs).frobenius_norm();
            residual = std::max(residual, defect / scale);
            if (!approx_zero(defect, scale)) {
                out.failure = id.name;
                out.witness = e;
                out.identity_violation = true;
                return out;
            }
        }
    }

    // Extract the supporting map: T(a) = |h*| S(a) with |h*| = h r*, so
    // S(a) = pinv(|h*|) T(a), normalized to zero off the right support.
    Element w = h * r_adj;
    Element pinv_w = pseudo_inverse(w);
    Element right_support = r_adj * r;
    LinearMap s = LinearMap::from_function(dom, cod, [&](const Element& e) {
        return pinv_w * t.apply(e) * right_support;
    });

    for (int j = 0; j < dom.dim(); ++j) {
        Element e = Element::basis_element(dom, j);
        Element se = s.apply(e);
        Element ses = s.apply(e.adjoint());
        Element te = t.apply(e);
        const double scale = (1.0 + hn) * (1.0 + se.operator_norm() + ses.operator_norm()) +
                             te.operator_norm();
        struct Identity {
            const char* name;
            Element lhs, rhs;
        };
        const Identity ids[] = {
            {"h* S(a) = S(a*)* h", h_adj * se, ses.adjoint() * h},
            {"h S(a*)* = S(a) h*", h * ses.adjoint(), se * h_adj},
            {"T(a) = h r* S(a)", te, h * r_adj * se},
            {"T(a) = S(a) r* h", te, se * r_adj * h},
        };
        for (const Identity& id : ids) {
            const double defect = (id.lhs - id.rhs).frobenius_norm();
            residual = std::max(residual, defect / scale);
            if (!approx_zero(defect, scale)) {
                out.failure = id.name;
                out.witness = e;
                return out;
            }
        }
    }

    HomCheck triple = is_triple_homomorphism(s);
    if (!triple.ok) {
        out.failure = "supporting map is not a triple homomorphism";
        if (!triple.witness.empty()) out.witness = triple.witness.front();
        return out;
    }
    out.factorization = Factorization{std::move(h), std::move(r), std::move(s), residual};
    return out;
}

OpVerdict is_orthogonality_preserving(const LinearMap& t, int trials, std::uint64_t seed) {
    OpVerdict v;
    FactorizeResult fr = factorize(t);
    if (fr.ok()) {
        v.verdict = Verdict::yes;
        v.evidence = "factorization with verified supporting triple homomorphism";
        return v;
    }
    if (fr.identity_violation) {
        v.verdict = Verdict::no;
        v.evidence = "necessary identity violated: " + fr.failure;
        v.witness_basis = fr.witness;
        return v;
    }
    if (auto pair = refute_orthogonality_preserving(t, 1, trials, seed)) {
        v.verdict = Verdict::no;
        v.evidence = "orthogonal pair with non-orthogonal images";
        v.witness_pair = pair;
        return v;
    }
    v.verdict = Verdict::unknown;
    v.evidence = "factorization failed (" + fr.failure + ") and no refutation found";
    return v;
}

namespace {

Verdict vb(bool b) { return b ? Verdict::yes : Verdict::no; }

json pair_to_json(const std::pair<Element, Element>& p) {
    return json{{"a", to_json(p.first)}, {"b", to_json(p.second)}};
}

json triple_to_json(const Element& a, const Element& b, const Element& c) {
    return json{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
}

// Sampled refutation of zero-TRO-product preservation.
std::optional<json> refute_zero_tro(const LinearMap& t, int trials, std::uint64_t seed) {
    Rng rng(seed);
    for (int i = 0; i < trials; ++i) {
        auto [a, b, c] = random_zero_tro_triple(t.domain(), 1, rng);
        Element ia = t.apply(a), ib = t.apply(b), ic = t.apply(c);
        const double scale =
            ia.operator_norm() * ib.operator_norm() * ic.operator_norm();
        if (!approx_zero(tro_product(ia, ib, ic).operator_norm(), scale))
            return triple_to_json(a, b, c);
    }
    return std::nullopt;
}

// Sampled refutation of right-orthogonality preservation. Falls back to
// plain orthogonal pairs when the domain admits no strictly-right pairs
// (all blocks 1x1, where the two notions coincide).
std::optional<json> refute_right_orth(const LinearMap& t, int trials, std::uint64_t seed) {
    Rng rng(seed);
    const bool strict_possible = [&] {
        for (int i = 0; i < t.domain().block_count(); ++i)
            if (t.domain().block_dim(i) >= 2) return true;
        return false;
    }();
    for (int i = 0; i < trials; ++i) {
        std::pair<Element, Element> p =
            strict_possible ? random_right_orthogonal_pair(t.domain(), 1, rng)
                            : random_orthogonal_pair(t.domain(), 1, rng);
        Element ia = t.apply(p.first), ib = t.apply(p.second);
        if (!is_right_orthogonal(ia, ib)) return pair_to_json(p);
    }
    return std::nullopt;
}

}  // namespace

ClassificationReport classify_cop(const LinearMap& t, int trials, std::uint64_t seed) {
    ClassificationReport rep;
    HomCheck trip = is_triple_homomorphism(t);
    rep.verdicts["triple_hom"] = vb(trip.ok);
    rep.verdicts["tro_hom"] = vb(is_tro_homomorphism(t).ok);
    rep.verdicts["tro_anti_hom"] = vb(is_tro_anti_homomorphism(t).ok);
    rep.verdicts["jordan_star_hom"] = vb(is_jordan_star_homomorphism(t).ok);
    const bool sym = is_symmetric(t);
    rep.verdicts["symmetric"] = vb(sym);
    rep.verdicts["star_hom"] = vb(sym && is_multiplicative(t).ok);
    PositivityVerdict pos = is_positive(t, trials, seed ^ 0x7061ull);
    rep.verdicts["positive"] = vb(!pos.certified_false);
    if (pos.witness) rep.witnesses["positive"] = to_json(*pos.witness);
    rep.verdicts["completely_positive"] = vb(is_completely_positive(t));

    OpVerdict op1 = is_orthogonality_preserving(t, trials, seed ^ 0x6f01ull);
    rep.verdicts["op_level_1"] = op1.verdict;
    if (op1.witness_pair) rep.witnesses["op_level_1"] = pair_to_json(*op1.witness_pair);
    if (op1.witness_basis) rep.witnesses["op_level_1_basis"] = to_json(*op1.witness_basis);

    // Structural route: c.o.p. iff weighted TRO homomorphism.
    FactorizeResult fr = factorize(t);
    Verdict cop = Verdict::unknown;
    if (fr.ok()) {
        HomCheck s_tro = is_tro_homomorphism(fr.factorization->s);
        cop = vb(s_tro.ok);
        if (!s_tro.ok && !s_tro.witness.empty())
            rep.witnesses["supporting_tro_defect"] = triple_to_json(
                s_tro.witness[0], s_tro.witness[1], s_tro.witness[2]);
        rep.factorization = fr.factorization;
    } else if (fr.identity_violation) {
        cop = Verdict::no;
        if (fr.witness) rep.witnesses["factorization_identity"] = to_json(*fr.witness);
    }
    rep.verdicts["cop"] = cop;
    rep.verdicts["weighted_tro_hom"] = cop;

    // Sampled routes of the five-way equivalence.
    auto w2 = refute_orthogonality_preserving(t, 2, trials, seed ^ 0x6f02ull);
    rep.verdicts["op_level_2"] = vb(!w2.has_value());
    if (w2) rep.witnesses["op_level_2"] = pair_to_json(*w2);

    auto wz = refute_zero_tro(t, trials, seed ^ 0x7a01ull);
    rep.verdicts["zero_tro_product_preserving"] = vb(!wz.has_value());
    if (wz) rep.witnesses["zero_tro_product_preserving"] = *wz;

    auto wr = refute_right_orth(t, trials, seed ^ 0x7201ull);
    rep.verdicts["right_orthogonality_preserving"] = vb(!wr.has_value());
    if (wr) rep.witnesses["right_orthogonality_preserving"] = *wr;

    const Verdict five[] = {rep.verdicts["cop"], rep.verdicts["op_level_2"],
                            rep.verdicts["weighted_tro_hom"],
                            rep.verdicts["zero_tro_product_preserving"],
                            rep.verdicts["right_orthogonality_preserving"]};
    bool any_definite_disagreement = false;
    for (Verdict a : five)
        for (Verdict b : five)
            if (a != Verdict::unknown && b != Verdict::unknown && a != b)
                any_definite_disagreement = true;
    rep.consistent = !any_definite_disagreement;
    return rep;
}

ClassificationReport classify_order_zero(const LinearMap& t, int trials, std::uint64_t seed) {
    PositivityVerdict pos = is_positive(t, trials, seed ^ 0x5001ull);
    if (pos.certified_false)
        throw std::invalid_argument("classify_order_zero: map is not positive");

    ClassificationReport rep;
    rep.verdicts["positive"] = Verdict::yes;
    const bool cp = is_completely_positive(t);
    rep.verdicts["completely_positive"] = vb(cp);
    rep.verdicts["symmetric"] = vb(is_symmetric(t));

    Rng rng(seed ^ 0x5002ull);
    const Algebra& dom = t.domain();

    // (1) c.p. order zero: CP plus preservation of zero products of
    // orthogonal positive parts.
    bool order_zero = true;
    json oz_witness;
    for (int i = 0; i < trials && order_zero; ++i) {
        Element y = random_element(dom, 1, rng);
        Element s = 0.5 * (y + y.adjoint());
        Element sp = Element::zero(dom), sm = Element::zero(dom);
        for (int b = 0; b < dom.block_count(); ++b) {
            EigResult eig = hermitian_eig(s.block(b));
            const int d = s.block(b).rows();
            ComplexMatrix dp(d, d), dm(d, d);
            for (int j = 0; j < d; ++j) {
                const double lam = eig.eigenvalues[static_cast<std::size_t>(j)];
                if (lam > 0) dp(j, j) = lam;
                if (lam < 0) dm(j, j) = -lam;
            }
            sp.block(b) = eig.vectors * dp * eig.vectors.adjoint();
            sm.block(b) = eig.vectors * dm * eig.vectors.adjoint();
        }
        if (sp.operator_norm() < 1e-6 || sm.operator_norm() < 1e-6) continue;
        Element ip = t.apply(sp), im = t.apply(sm);
        if (!approx_zero((ip * im).operator_norm(),
                         ip.operator_norm() * im.operator_norm())) {
            order_zero = false;
            oz_witness = json{{"a", to_json(sp)}, {"b", to_json(sm)}};
        }
    }
    rep.verdicts["cp_order_zero"] = vb(cp && order_zero);
    if (!oz_witness.is_null()) rep.witnesses["order_zero"] = oz_witness;
    if (!cp) rep.witnesses["completely_positive"] = "Choi eigenvalue below -1e-9";

    // (2) |T(a)| = T(|a|) on general elements, |x| = (x*x)^(1/2).
    auto abs_of = [](const Element& x) {
        Element out = Element::zero(x.algebra(), x.level());
        for (int b = 0; b < x.block_count(); ++b) {
            SvdResult s = svd(x.block(b));
            const int d = x.block(b).rows();
            ComplexMatrix sig(d, d);
            for (int j = 0; j < static_cast<int>(s.singular_values.size()); ++j)
                sig(j, j) = s.singular_values[static_cast<std::size_t>(j)];
            out.block(b) = s.right * sig * s.right.adjoint();
        }
        return out;
    };
    bool abs_preserving = true;
    for (int i = 0; i < trials && abs_preserving; ++i) {
        Element a = random_element(dom, 1, rng);
        if (i % 2 == 0) a = 0.5 * (a + a.adjoint());  // mix in self-adjoint samples
        Element lhs = abs_of(t.apply(a));
        Element rhs = t.apply(abs_of(a));
        if (!approx_zero((lhs - rhs).operator_norm(),
                         lhs.operator_norm() + rhs.operator_norm() + 1.0)) {
            abs_preserving = false;
            rep.witnesses["abs_preserving"] = to_json(a);
        }
    }
    rep.verdicts["abs_preserving"] = vb(abs_preserving);

    // (3) zero products: a = x p, b = (1-p) y for a random projection p.
    bool zero_product = true;
    for (int i = 0; i < trials && zero_product; ++i) {
        Element p = Element::zero(dom);
        bool parity = rng.uniform() < 0.5;
        for (int b = 0; b < dom.block_count(); ++b) {
            const int d = dom.block_dim(b);
            if (d == 1) {
                p.block(b)(0, 0) = parity ? 1.0 : 0.0;
                parity = !parity;
                continue;
            }
            ComplexMatrix u = rng.random_unitary(d);
            const int rank = 1 + rng.uniform_int(d - 1);
            ComplexMatrix proj(d, d);
            for (int c = 0; c < rank; ++c)
                for (int r1 = 0; r1 < d; ++r1)
                    for (int r2 = 0; r2 < d; ++r2)
                        proj(r1, r2) += u(r1, c) * std::conj(u(r2, c));
            p.block(b) = proj;
        }
        Element x = random_element(dom, 1, rng);
        Element y = random_element(dom, 1, rng);
        Element a = x * p;
        Element b = (Element::unit(dom) - p) * y;
        Element ia = t.apply(a), ib = t.apply(b);
        if (!approx_zero((ia * ib).operator_norm(),
                         ia.operator_norm() * ib.operator_norm())) {
            zero_product = false;
            rep.witnesses["zero_product"] = json{{"a", to_json(a)}, {"b", to_json(b)}};
        }
    }
    rep.verdicts["zero_product_preserving"] = vb(zero_product);

    // (4) 2-orthogonality preservation, sampled.
    auto w2 = refute_orthogonality_preserving(t, 2, trials, seed ^ 0x5003ull);
    rep.verdicts["op_level_2"] = vb(!w2.has_value());
    if (w2) rep.witnesses["op_level_2"] =
        json{{"a", to_json(w2->first)}, {"b", to_json(w2->second)}};

    // (5) c.o.p., structural.
    FactorizeResult fr = factorize(t);
    Verdict cop = Verdict::unknown;
    if (fr.ok()) {
        cop = vb(is_tro_homomorphism(fr.factorization->s).ok);
        rep.factorization = fr.factorization;
    } else if (fr.identity_violation) {
        cop = Verdict::no;
    }
    rep.verdicts["cop"] = cop;

    const Verdict five[] = {rep.verdicts["cp_order_zero"], rep.verdicts["abs_preserving"],
                            rep.verdicts["zero_product_preserving"],
                            rep.verdicts["op_level_2"], rep.verdicts["cop"]};
    bool disagree = false;
    for (Verdict a : five)
        for (Verdict b : five)
            if (a != Verdict::unknown && b != Verdict::unknown && a != b) disagree = true;
    rep.consistent = !disagree;
    return rep;
}

// ---- triple homomorphism decomposition ---------------------------------

namespace {

// Orthonormal column collection per codomain block, with scale-relative
// rank decisions. Used to grow the splitting subspace.
class BlockSpan {
  public:
    explicit BlockSpan(const Algebra& a) : vecs_(static_cast<std::size_t>(a.block_count())) {}

    // Gram-Schmidt insert; returns true if the vector enlarged the span.
    bool insert(int block, std::vector<cplx> v) {
        auto& basis = vecs_[static_cast<std::size_t>(block)];
        double orig = norm(v);
        if (orig <= tolerances().eps_abs) return false;
        for (const auto& b : basis) {
            cplx coef = dot(b, v);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= coef * b[i];
        }
        double rem = norm(v);
        if (rem <= tolerances().span_tol * orig) return false;
        for (auto& c : v) c /= rem;
        basis.push_back(std::move(v));
        return true;
    }

    const std::vector<std::vector<cplx>>& block_vectors(int block) const {
        return vecs_[static_cast<std::size_t>(block)];
    }

    int total_dim() const {
        int d = 0;
        for (const auto& b : vecs_) d += static_cast<int>(b.size());
        return d;
    }

  private:
    static double norm(const std::vector<cplx>& v) {
        double s = 0;
        for (const cplx& c : v) s += std::norm(c);
        return std::sqrt(s);
    }
    static cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx s{0, 0};
        for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
        return s;
    }
    std::vector<std::vector<std::vector<cplx>>> vecs_;
};

}  // namespace

TripleHomDecomposition decompose_triple_hom(const LinearMap& s) {
    HomCheck trip = is_triple_homomorphism(s);
    if (!trip.ok) throw DecompositionError("decompose_triple_hom: not a triple homomorphism");

    const Algebra& dom = s.domain();
    const Algebra& cod = s.codomain();
    Element r = s.apply(Element::unit(dom));
    LinearMap j = LinearMap::from_function(dom, cod, [&](const Element& e) {
        return r.adjoint() * s.apply(e);
    });

    std::vector<Element> basis, jimgs;
    for (int i = 0; i < dom.dim(); ++i) {
        basis.push_back(Element::basis_element(dom, i));
        jimgs.push_back(j.apply(basis.back()));
    }

    // Columns of the multiplicative defects seed the splitting subspace.
    BlockSpan span(cod);
    double defect_norm = 0.0;
    for (int a = 0; a < dom.dim(); ++a)
        for (int b = 0; b < dom.dim(); ++b) {
            Element d = j.apply(basis[static_cast<std::size_t>(a)] *
                                basis[static_cast<std::size_t>(b)]) -
                        jimgs[static_cast<std::size_t>(a)] * jimgs[static_cast<std::size_t>(b)];
            defect_norm = std::max(defect_norm, d.frobenius_norm());
            if (approx_zero(d.frobenius_norm(), 1.0)) continue;
            for (int blk = 0; blk < cod.block_count(); ++blk) {
                const ComplexMatrix& m = d.block(blk);
                for (int c = 0; c < m.cols(); ++c) {
                    std::vector<cplx> col(static_cast<std::size_t>(m.rows()));
                    for (int rr = 0; rr < m.rows(); ++rr) col[static_cast<std::size_t>(rr)] = m(rr, c);
                    span.insert(blk, std::move(col));
                }
            }
        }

    // Close under left multiplication by J(A); the resulting projection
    // commutes with the algebra J(A) generates.
    const int cap = cod.dim() * cod.dim();
    for (int round = 0; round < cap; ++round) {
        bool grew = false;
        for (const Element& img : jimgs) {
            for (int blk = 0; blk < cod.block_count(); ++blk) {
                const ComplexMatrix& m = img.block(blk);
                auto snapshot = span.block_vectors(blk);  // copy, we mutate below
                for (const auto& v : snapshot) {
                    std::vector<cplx> mv(static_cast<std::size_t>(m.rows()), cplx{0, 0});
                    for (int rr = 0; rr < m.rows(); ++rr) {
                        cplx acc{0, 0};
                        for (int cc = 0; cc < m.cols(); ++cc)
                            acc += m(rr, cc) * v[static_cast<std::size_t>(cc)];
                        mv[static_cast<std::size_t>(rr)] = acc;
                    }
                    if (span.insert(blk, std::move(mv))) grew = true;
                }
            }
        }
        if (!grew) break;
    }

    // z = projection onto the closed span, per block.
    Element z = Element::zero(cod);
    for (int blk = 0; blk < cod.block_count(); ++blk) {
        const int d = cod.block_dim(blk);
        ComplexMatrix p(d, d);
        for (const auto& v : span.block_vectors(blk))
            for (int rr = 0; rr < d; ++rr)
                for (int cc = 0; cc < d; ++cc)
                    p(rr, cc) += v[static_cast<std::size_t>(rr)] * std::conj(v[static_cast<std::size_t>(cc)]);
        z.block(blk) = p;
    }

    LinearMap anti = LinearMap::from_function(dom, cod, [&](const Element& e) {
        return r * (z * j.apply(e));
    });
    LinearMap hom = s - anti;

    HomCheck hom_ok = is_tro_homomorphism(hom);
    HomCheck anti_ok = is_tro_anti_homomorphism(anti);
    if (!hom_ok.ok || !anti_ok.ok)
        throw DecompositionError(
            "decompose_triple_hom: postcondition failed (hom defect " +
            std::to_string(hom_ok.max_defect) + ", anti defect " +
            std::to_string(anti_ok.max_defect) + ")");

    // Rangewise orthogonality on basis pairs.
    for (int a = 0; a < dom.dim(); ++a)
        for (int b = 0; b < dom.dim(); ++b) {
            Element pa = hom.apply(basis[static_cast<std::size_t>(a)]);
            Element pb = anti.apply(basis[static_cast<std::size_t>(b)]);
            const double scale = pa.operator_norm() * pb.operator_norm();
            if (!approx_zero((pa * pb.adjoint()).operator_norm(), scale) ||
                !approx_zero((pb.adjoint() * pa).operator_norm(), scale))
                throw DecompositionError("decompose_triple_hom: ranges not orthogonal");
        }

    return {std::move(hom), std::move(anti)};
}

// ---- generators ---------------------------------------------------------

namespace {

struct CopyLayout {
    int hom_copies;
    int anti_copies;
    int padding;
};

// Core builder: per domain block, S(a) = U Diag(a,...,a^t,...,0) V* and
// h = U Diag(t_1 I, ..., t_c I, 0) V*. Per-copy scalar weights keep the
// supporting-map identities exact.
GeneratedMap build_weighted(const Algebra& domain, const CopyLayout& layout,
                            std::uint64_t seed, bool weighted, bool contractive,
                            bool star_mode) {
    Rng rng(seed);
    const int copies = layout.hom_copies + layout.anti_copies;
    if (copies < 1) throw std::invalid_argument("generator: needs at least one copy");

    std::vector<int> cod_dims;
    std::vector<ComplexMatrix> us, vs;
    std::vector<std::vector<double>> weights;
    for (int i = 0; i < domain.block_count(); ++i) {
        const int k = domain.block_dim(i);
        const int big = copies * k + layout.padding;
        cod_dims.push_back(big);
        ComplexMatrix u = rng.random_unitary(big);
        us.push_back(u);
        vs.push_back(star_mode ? u : rng.random_unitary(big));
        std::vector<double> t(static_cast<std::size_t>(copies));
        for (double& w : t)
            w = weighted ? rng.uniform(contractive ? 0.3 : 0.5, contractive ? 0.95 : 1.5)
                         : 1.0;
        weights.push_back(std::move(t));
    }
    Algebra codomain(cod_dims);

    auto embed = [&](const Element& a, bool apply_weights) {
        Element out = Element::zero(codomain);
        for (int i = 0; i < domain.block_count(); ++i) {
            const int k = domain.block_dim(i);
            const int big = cod_dims[static_cast<std::size_t>(i)];
            ComplexMatrix mid(big, big);
            for (int c = 0; c < copies; ++c) {
                const bool anti = c >= layout.hom_copies;
                const double w = apply_weights ? weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] : 1.0;
                for (int r1 = 0; r1 < k; ++r1)
                    for (int c1 = 0; c1 < k; ++c1)
                        mid(c * k + r1, c * k + c1) =
                            w * (anti ? a.block(i)(c1, r1) : a.block(i)(r1, c1));
            }
            out.block(i) = us[static_cast<std::size_t>(i)] * mid *
                           vs[static_cast<std::size_t>(i)].adjoint();
        }
        return out;
    };

    GeneratedMap g;
    g.supporting = LinearMap::from_function(domain, codomain, [&](const Element& e) {
        return embed(e, false);
    });
    g.map = LinearMap::from_function(domain, codomain, [&](const Element& e) {
        return embed(e, true);
    });
    // h = T(unit)
    g.weight = g.map.apply(Element::unit(domain));
    const bool anti_effective = [&] {
        if (layout.anti_copies == 0) return false;
        for (int i = 0; i < domain.block_count(); ++i)
            if (domain.block_dim(i) >= 2) return true;
        return false;
    }();
    g.expected["tro_hom_supporting"] = !anti_effective;
    g.expected["cop"] = !anti_effective;
    g.expected["op_level_1"] = true;
    g.expected["weighted"] = weighted;
    return g;
}

}  // namespace

GeneratedMap make_tro_hom(const Algebra& domain, int multiplicity, std::uint64_t seed,
                          int padding) {
    GeneratedMap g = build_weighted(domain, {multiplicity, 0, padding}, seed,
                                    /*weighted=*/false, false, false);
    g.expected["tro_hom"] = true;
    return g;
}

GeneratedMap make_tro_anti_hom(const Algebra& domain, int multiplicity, std::uint64_t seed,
                               int padding) {
    GeneratedMap g = build_weighted(domain, {0, multiplicity, padding}, seed,
                                    /*weighted=*/false, false, false);
    g.expected["tro_anti_hom"] = true;
    return g;
}

GeneratedMap make_weighted_tro_hom(const Algebra& domain, int multiplicity,
                                   std::uint64_t seed, int padding, bool contractive) {
    return build_weighted(domain, {multiplicity, 0, padding}, seed,
                          /*weighted=*/true, contractive, false);
}

GeneratedMap make_weighted_mixed_triple_hom(const Algebra& domain, int hom_copies,
                                            int anti_copies, std::uint64_t seed,
                                            bool contractive) {
    return build_weighted(domain, {hom_copies, anti_copies, 0}, seed,
                          /*weighted=*/true, contractive, false);
}

GeneratedMap make_cp_order_zero(const Algebra& domain, int multiplicity,
                                std::uint64_t seed, int padding) {
    GeneratedMap g = build_weighted(domain, {multiplicity, 0, padding}, seed,
                                    /*weighted=*/true, /*contractive=*/false,
                                    /*star_mode=*/true);
    g.expected["completely_positive"] = true;
    g.expected["cp_order_zero"] = true;
    return g;
}

GeneratedMap make_random_map(const Algebra& domain, const Algebra& codomain,
                             std::uint64_t seed) {
    Rng rng(seed);
    GeneratedMap g;
    g.map = LinearMap(domain, codomain, rng.gaussian_matrix(codomain.dim(), domain.dim()));
    g.expected["op_level_1"] = false;
    return g;
}

}  // namespace trolab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trolab/preservers.hpp"
#include "trolab/triple.hpp"

using namespace trolab;

namespace {

// S(a) = (t(a), u(a)) into the concatenated codomain.
LinearMap pair_into_sum(const LinearMap& t, const LinearMap& u) {
    REQUIRE(t.domain() == u.domain());
    std::vector<int> dims = t.codomain().block_dims();
    for (int d : u.codomain().block_dims()) dims.push_back(d);
    Algebra cod(dims);
    return LinearMap::from_function(t.domain(), cod, [&](const Element& e) {
        Element a = t.apply(e), b = u.apply(e);
        std::vector<ComplexMatrix> blocks = a.blocks();
        for (const ComplexMatrix& m : b.blocks()) blocks.push_back(m);
        return Element(cod, 1, std::move(blocks));
    });
}

}  // namespace

TEST_CASE("homomorphism checks on the transpose") {
    LinearMap theta = make_transpose(2);
    CHECK(is_triple_homomorphism(theta).ok);
    HomCheck tro = is_tro_homomorphism(theta);
    CHECK_FALSE(tro.ok);
    CHECK(tro.witness.size() == 3);
    CHECK(is_tro_anti_homomorphism(theta).ok);
    CHECK(is_jordan_star_homomorphism(theta).ok);
    CHECK_FALSE(is_multiplicative(theta).ok);
}

TEST_CASE("scaling breaks the triple identity") {
    Algebra m2({2});
    LinearMap twice = cplx(2.0) * LinearMap::identity(m2);
    HomCheck c = is_triple_homomorphism(twice);
    CHECK_FALSE(c.ok);
    CHECK(c.witness.size() == 3);
    CHECK(is_multiplicative(LinearMap::identity(m2)).ok);
}

TEST_CASE("generated homomorphisms pass their checks") {
    Algebra dom({2, 1});
    GeneratedMap hom = make_tro_hom(dom, 2, 41, 1);
    CHECK(is_tro_homomorphism(hom.supporting.value()).ok);
    CHECK(is_tro_homomorphism(hom.map).ok);

    GeneratedMap anti = make_tro_anti_hom(dom, 2, 43);
    CHECK(is_tro_anti_homomorphism(anti.map).ok);
    CHECK(is_triple_homomorphism(anti.map).ok);
    CHECK_FALSE(is_tro_homomorphism(anti.map).ok);

    GeneratedMap mixed = make_weighted_mixed_triple_hom(Algebra({2}), 1, 1, 47);
    CHECK(is_triple_homomorphism(mixed.supporting.value()).ok);
    CHECK_FALSE(is_tro_homomorphism(mixed.supporting.value()).ok);
    CHECK_FALSE(is_tro_anti_homomorphism(mixed.supporting.value()).ok);

    GeneratedMap oz = make_cp_order_zero(Algebra({2}), 2, 53, 1);
    CHECK(is_completely_positive(oz.map));
    CHECK(is_symmetric(oz.map));
}

TEST_CASE("refutation sampler") {
    LinearMap theta = make_transpose(2);
    auto w = refute_orthogonality_preserving(theta, 2, 50, 3);
    REQUIRE(w.has_value());
    CHECK(is_orthogonal(w->first, w->second));
    CHECK_FALSE(is_orthogonal(theta.amplified_apply(w->first), theta.amplified_apply(w->second)));
    // level 1 transpose preserves orthogonality
    CHECK_FALSE(refute_orthogonality_preserving(theta, 1, 50, 3).has_value());
    CHECK_FALSE(refute_orthogonality_preserving(LinearMap::identity(Algebra({2})), 3, 30, 3)
                    .has_value());
}

TEST_CASE("factorize the identity") {
    Algebra a({2, 1});
    FactorizeResult fr = factorize(LinearMap::identity(a));
    REQUIRE(fr.ok());
    CHECK((fr.factorization->h - Element::unit(a)).operator_norm() <= 1e-14);
    CHECK(fr.factorization->residual <= 1e-12);
    CHECK((fr.factorization->s.action() - LinearMap::identity(a).action()).max_abs() <= 1e-12);
}

TEST_CASE("factorize recovers generated ground truth") {
    for (std::uint64_t seed : {61ull, 67ull, 71ull}) {
        GeneratedMap g = make_weighted_tro_hom(Algebra({2, 2}), 2, seed, 1);
        FactorizeResult fr = factorize(g.map);
        REQUIRE(fr.ok());
        CHECK((fr.factorization->h - g.weight.value()).operator_norm() <= 1e-10);
        CHECK((fr.factorization->s.action() - g.supporting->action()).max_abs() <= 1e-8);
        CHECK(is_tro_homomorphism(fr.factorization->s).ok);
    }
}

TEST_CASE("factorize failure modes") {
    Algebra m2({2});
    // corner map: T(unit) = 0 but T != 0
    Element e11 = Element::matrix_unit(m2, 0, 0, 0);
    Element e22 = Element::matrix_unit(m2, 0, 1, 1);
    LinearMap corner = LinearMap::from_function(m2, m2, [&](const Element& e) {
        return e11 * e * e22;
    });
    FactorizeResult fr = factorize(corner);
    CHECK_FALSE(fr.ok());
    CHECK_FALSE(fr.identity_violation);

    // generic random map violates the weight identities outright
    Rng rng(73);
    LinearMap noise(m2, m2, rng.gaussian_matrix(4, 4));
    FactorizeResult fr2 = factorize(noise);
    CHECK_FALSE(fr2.ok());
    CHECK(fr2.identity_violation);
    CHECK(fr2.witness.has_value());

    // zero map factors trivially
    CHECK(factorize(LinearMap::zero(m2, m2)).ok());
}

TEST_CASE("level-1 orthogonality verdicts") {
    CHECK(is_orthogonality_preserving(make_transpose(2), 60, 5).verdict == Verdict::yes);
    Rng rng(79);
    LinearMap noise(Algebra({2}), Algebra({2}), rng.gaussian_matrix(4, 4));
    OpVerdict v = is_orthogonality_preserving(noise, 60, 5);
    CHECK(v.verdict == Verdict::no);
}

TEST_CASE("classify_cop on canonical maps") {
    ClassificationReport id = classify_cop(LinearMap::identity(Algebra({2})), 40, 7);
    CHECK(id.verdicts.at("tro_hom") == Verdict::yes);
    CHECK(id.verdicts.at("cop") == Verdict::yes);
    CHECK(id.verdicts.at("completely_positive") == Verdict::yes);
    CHECK(id.verdicts.at("star_hom") == Verdict::yes);
    CHECK(id.consistent);

    ClassificationReport th = classify_cop(make_transpose(2), 40, 7);
    CHECK(th.verdicts.at("triple_hom") == Verdict::yes);
    CHECK(th.verdicts.at("tro_hom") == Verdict::no);
    CHECK(th.verdicts.at("op_level_1") == Verdict::yes);
    CHECK(th.verdicts.at("op_level_2") == Verdict::no);
    CHECK(th.verdicts.at("cop") == Verdict::no);
    CHECK(th.verdicts.at("positive") == Verdict::yes);
    CHECK(th.verdicts.at("completely_positive") == Verdict::no);
    CHECK(th.consistent);

    GeneratedMap g = make_weighted_tro_hom(Algebra({2}), 2, 83);
    ClassificationReport wt = classify_cop(g.map, 40, 7);
    CHECK(wt.verdicts.at("cop") == Verdict::yes);
    CHECK(wt.verdicts.at("op_level_2") == Verdict::yes);
    CHECK(wt.factorization.has_value());
    CHECK(wt.consistent);
}

TEST_CASE("classify_order_zero") {
    Algebra m2({2});
    CHECK_THROWS_AS(classify_order_zero(cplx(-1.0) * LinearMap::identity(m2), 30, 7),
                    std::invalid_argument);

    ClassificationReport th = classify_order_zero(make_transpose(2), 60, 7);
    CHECK(th.verdicts.at("cp_order_zero") == Verdict::no);
    CHECK(th.verdicts.at("abs_preserving") == Verdict::no);
    CHECK(th.verdicts.at("zero_product_preserving") == Verdict::no);
    CHECK(th.verdicts.at("op_level_2") == Verdict::no);
    CHECK(th.verdicts.at("cop") == Verdict::no);
    CHECK(th.consistent);

    GeneratedMap oz = make_cp_order_zero(Algebra({2, 1}), 2, 89);
    ClassificationReport rep = classify_order_zero(oz.map, 60, 7);
    CHECK(rep.verdicts.at("cp_order_zero") == Verdict::yes);
    CHECK(rep.verdicts.at("abs_preserving") == Verdict::yes);
    CHECK(rep.verdicts.at("zero_product_preserving") == Verdict::yes);
    CHECK(rep.verdicts.at("op_level_2") == Verdict::yes);
    CHECK(rep.verdicts.at("cop") == Verdict::yes);
    CHECK(rep.consistent);
}

TEST_CASE("decompose pure cases") {
    Algebra m2({2});
    TripleHomDecomposition id = decompose_triple_hom(LinearMap::identity(m2));
    CHECK(id.anti_part.action().max_abs() <= 1e-12);

    TripleHomDecomposition th = decompose_triple_hom(make_transpose(2));
    CHECK(th.hom_part.action().max_abs() <= 1e-12);
    CHECK((th.anti_part.action() - make_transpose(2).action()).max_abs() <= 1e-12);

    CHECK_THROWS_AS(decompose_triple_hom(cplx(2.0) * LinearMap::identity(m2)),
                    DecompositionError);
}

TEST_CASE("decompose recovers a known split") {
    Algebra dom({2});
    GeneratedMap hom = make_tro_hom(dom, 1, 91);
    GeneratedMap anti = make_tro_anti_hom(dom, 1, 97);
    LinearMap s = pair_into_sum(hom.map, anti.map);
    REQUIRE(is_triple_homomorphism(s).ok);
    TripleHomDecomposition dec = decompose_triple_hom(s);
    LinearMap zero_anti = pair_into_sum(hom.map, LinearMap::zero(dom, anti.map.codomain()));
    LinearMap zero_hom = pair_into_sum(LinearMap::zero(dom, hom.map.codomain()), anti.map);
    CHECK((dec.hom_part.action() - zero_anti.action()).max_abs() <= 1e-8);
    CHECK((dec.anti_part.action() - zero_hom.action()).max_abs() <= 1e-8);
}

TEST_CASE("counterexample pair is orthogonal with the printed product") {
    auto [x, y] = transpose_counterexample_pair();
    CHECK(is_orthogonal(x, y));
    LinearMap theta = make_transpose(2);
    Element prod = theta.amplified_apply(x).adjoint() * theta.amplified_apply(y);
    CHECK(std::abs(prod.block(0)(0, 1) - cplx(3.0)) <= 1e-12);
    CHECK(std::abs(prod.block(0)(2, 3) - cplx(-3.0)) <= 1e-12);
    CHECK(std::abs(prod.block(0)(1, 1)) <= 1e-12);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trolab/tolerances.hpp"
#include "trolab/triple.hpp"

using namespace trolab;

namespace {

Element diag_element(const Algebra& a, const std::vector<double>& s, Rng& rng) {
    // one block assumed; a = U diag(s) V*
    const int d = a.block_dim(0);
    ComplexMatrix sigma(d, d);
    for (int i = 0; i < d; ++i) sigma(i, i) = s[static_cast<std::size_t>(i)];
    ComplexMatrix u = rng.random_unitary(d);
    ComplexMatrix v = rng.random_unitary(d);
    return {a, 1, {u * sigma * v.adjoint()}};
}

}  // namespace

TEST_CASE("matrix-unit triple products") {
    Algebra m2({2});
    Element e11 = Element::matrix_unit(m2, 0, 0, 0);
    Element e12 = Element::matrix_unit(m2, 0, 0, 1);
    Element e21 = Element::matrix_unit(m2, 0, 1, 0);
    CHECK(tro_product(e11, e11, e21).operator_norm() == 0.0);  // e11 e11 e21 = 0
    CHECK((tro_product(e11, e11, e12) - e12).operator_norm() == 0.0);
    CHECK((jordan_triple_product(e11, e11, e11) - e11).operator_norm() == 0.0);
    // transposed images of the zero product above are nonzero
    Element f11 = e11, f12 = e12;
    CHECK((tro_product(f11, f11, f12) - f12).operator_norm() == 0.0);
}

TEST_CASE("orthogonality predicates") {
    Algebra m2({2});
    Element e11 = Element::matrix_unit(m2, 0, 0, 0);
    Element e12 = Element::matrix_unit(m2, 0, 0, 1);
    Element e22 = Element::matrix_unit(m2, 0, 1, 1);
    CHECK(is_orthogonal(e11, e22));
    CHECK(is_right_orthogonal(e11, e22));
    CHECK_FALSE(is_orthogonal(e11, e12));      // e12* e11 != 0 is fine; e11 e12* = e11 != 0
    CHECK(is_right_orthogonal(e12, e11));      // e12 e11* = e12 e11 = 0
    CHECK_FALSE(is_orthogonal(e12, e11));
}

TEST_CASE("odd powers match the scalar calculus") {
    Rng rng(3);
    Algebra a({3});
    for (int k : {1, 3, 5, 7, 9}) {
        Element x = random_element(a, 1, rng);
        Element lhs = odd_power(x, k);
        Element rhs = apply_scalar_function(ScalarFunction::power(k), x);
        const double scale = std::pow(x.operator_norm(), k);
        CHECK((lhs - rhs).operator_norm() <= 1e-9 * scale);
    }
    CHECK_THROWS_AS(odd_power(random_element(a, 1, rng), 2), std::invalid_argument);
}

TEST_CASE("triple spectrum is the set of distinct singular values") {
    Algebra a({2, 2});
    ComplexMatrix b0(2, 2), b1(2, 2);
    b0(0, 0) = 2.0;
    b0(1, 1) = 1.0;
    b1(0, 0) = 1.0;  // duplicate across blocks collapses
    Element x(a, 1, {b0, b1});
    TripleSpectrum sp = triple_spectrum(x);
    CHECK(sp.points.size() == 2);
    CHECK(sp.max_point == doctest::Approx(2.0));
}

TEST_CASE("iterated cube roots converge to the range partial isometry") {
    Rng rng(19);
    Algebra a({4});
    Element x = diag_element(a, {1.7, 0.9, 0.45, 0.12}, rng);
    Element y = x;
    for (int i = 0; i < 40; ++i) y = apply_scalar_function(ScalarFunction::cube_root(), y);
    Element r = range_partial_isometry(x);
    CHECK((y - r).operator_norm() <= 1e-6);
    // r is a partial isometry: r r* r = r
    CHECK((tro_product(r, r, r) - r).operator_norm() <= 1e-12);
}

TEST_CASE("scalar functions act as triple homomorphisms of the calculus") {
    Rng rng(29);
    Algebra a({3});
    ScalarFunction f1 = ScalarFunction::odd_polynomial({cplx(0.7, 0.0), cplx(0.2, 0.0)});
    ScalarFunction f2 = ScalarFunction::odd_polynomial({cplx(0.3, 0.5)});
    ScalarFunction f3 = ScalarFunction::identity();
    for (int i = 0; i < 20; ++i) {
        Element x = random_element(a, 1, rng);
        Element lhs = tro_product(apply_scalar_function(f1, x), apply_scalar_function(f2, x),
                                  apply_scalar_function(f3, x));
        Element rhs = apply_scalar_function(ScalarFunction::tro_combine(f1, f2, f3), x);
        CHECK((lhs - rhs).operator_norm() <= 1e-9 * (1.0 + rhs.operator_norm()));
    }
}

TEST_CASE("scalar function presets parse") {
    CHECK(ScalarFunction::from_preset("identity")(2.0) == cplx(2.0));
    CHECK(ScalarFunction::from_preset("w")(2.0) == cplx(2.0));
    CHECK(ScalarFunction::from_preset("cube")(2.0) == cplx(8.0));
    CHECK(std::abs(ScalarFunction::from_preset("cuberoot")(8.0) - cplx(2.0)) <= 1e-12);
    CHECK(ScalarFunction::from_preset("chop:0.5")(0.3) == cplx(0.0));
    CHECK(std::abs(ScalarFunction::from_preset("chop:0.5")(0.8) - cplx(0.3)) <= 1e-12);
    CHECK(std::abs(ScalarFunction::from_preset("power:2")(3.0) - cplx(9.0)) <= 1e-12);
    // poly:[c1,c3] evaluates c1 t + c3 t^3
    CHECK(std::abs(ScalarFunction::from_preset("poly:[1,2]")(2.0) - cplx(18.0)) <= 1e-12);
    CHECK_THROWS(ScalarFunction::from_preset("nonsense"));
    // f(0) != 0 rejected at construction
    CHECK_THROWS(ScalarFunction([](double) { return cplx(1.0); }, "const"));
}

TEST_CASE("structured random pair generators") {
    Rng rng(31);
    for (const Algebra& a : {Algebra({4}), Algebra({2, 3})}) {
        for (int i = 0; i < 200; ++i) {
            auto [x, y] = random_orthogonal_pair(a, 1, rng);
            CHECK(is_orthogonal(x, y));
            CHECK(x.operator_norm() > 0.0);
            CHECK(y.operator_norm() > 0.0);

            auto [u, v] = random_right_orthogonal_pair(a, 1, rng);
            CHECK(is_right_orthogonal(u, v));
            CHECK_FALSE(is_orthogonal(u, v));

            auto [w, b, c] = random_zero_tro_triple(a, 1, rng);
            CHECK(tro_product(w, b, c).operator_norm() <=
                  1e-12 * (1.0 + w.operator_norm() * b.operator_norm() * c.operator_norm()));
            CHECK(tro_product(c, b, w).operator_norm() > 1e-6);  // not trivially zero both ways
        }
    }
    CHECK_THROWS_AS(random_right_orthogonal_pair(Algebra({1, 1}), 1, rng),
                    std::invalid_argument);
}

TEST_CASE("right orthogonality is equivalent to a vanishing bracket") {
    Rng rng(37);
    Algebra a({3});
    for (int i = 0; i < 200; ++i) {
        const bool structured = i % 2 == 0;
        Element x = structured ? random_right_orthogonal_pair(a, 1, rng).first
                               : random_element(a, 1, rng);
        Element y = structured ? random_element(a, 1, rng) : random_element(a, 1, rng);
        if (structured) {
            auto p = random_right_orthogonal_pair(a, 1, rng);
            x = p.first;
            y = p.second;
        }
        const double bracket = tro_product(x, y, y).operator_norm();
        const double scale = x.operator_norm() * y.operator_norm() * y.operator_norm();
        CHECK(is_right_orthogonal(x, y) == approx_zero(bracket, scale));
    }
}

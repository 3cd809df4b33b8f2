#include "trolab/triple.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "trolab/tolerances.hpp"

namespace trolab {

Element tro_product(const Element& a, const Element& b, const Element& c) {
    return a * b.adjoint() * c;
}

Element jordan_triple_product(const Element& a, const Element& b, const Element& c) {
    return 0.5 * (tro_product(a, b, c) + tro_product(c, b, a));
}

bool is_orthogonal(const Element& a, const Element& b) {
    const double scale = a.operator_norm() * b.operator_norm();
    const Element bstar = b.adjoint();
    return approx_zero((a * bstar).operator_norm(), scale) &&
           approx_zero((bstar * a).operator_norm(), scale);
}

bool is_right_orthogonal(const Element& a, const Element& b) {
    // Equivalent to [a,b,b] = 0; the product form is the cheaper test.
    const double scale = a.operator_norm() * b.operator_norm();
    return approx_zero((a * b.adjoint()).operator_norm(), scale);
}

Element odd_power(const Element& a, int k) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("odd_power: k must be odd and positive");
    if (k == 1) return a;
    return tro_product(a, a, odd_power(a, k - 2));
}

TripleSpectrum triple_spectrum(const Element& a) {
    TripleSpectrum sp;
    std::vector<double> all;
    double sigma_max = 0.0;
    for (int i = 0; i < a.block_count(); ++i) {
        SvdResult s = svd(a.block(i));
        for (double v : s.singular_values) {
            all.push_back(v);
            sigma_max = std::max(sigma_max, v);
        }
    }
    const double cut = tolerances().rank_tol * sigma_max;
    for (double v : all)
        if (v > cut && v > 0.0) sp.points.insert(v);
    sp.max_point = sp.points.empty() ? 0.0 : *sp.points.rbegin();
    return sp;
}

ScalarFunction::ScalarFunction(std::function<cplx(double)> evaluator, std::string label)
    : eval_(std::move(evaluator)), label_(std::move(label)) {
    if (std::abs(eval_(0.0)) > 1e-12)
        throw std::invalid_argument("ScalarFunction: f(0) != 0 for \"" + label_ + "\"");
}

ScalarFunction ScalarFunction::identity() {
    return {[](double t) { return cplx{t, 0.0}; }, "identity"};
}

ScalarFunction ScalarFunction::cube() {
    return {[](double t) { return cplx{t * t * t, 0.0}; }, "cube"};
}

ScalarFunction ScalarFunction::cube_root() {
    return {[](double t) { return cplx{std::cbrt(t), 0.0}; }, "cuberoot"};
}

ScalarFunction ScalarFunction::chop(double eps) {
    return {[eps](double t) { return cplx{std::max(t - eps, 0.0), 0.0}; },
            "chop:" + std::to_string(eps)};
}

ScalarFunction ScalarFunction::power(double p) {
    if (p <= 0.0) throw std::invalid_argument("power preset needs p > 0");
    return {[p](double t) { return cplx{t > 0.0 ? std::pow(t, p) : 0.0, 0.0}; },
            "power:" + std::to_string(p)};
}

ScalarFunction ScalarFunction::odd_polynomial(const std::vector<cplx>& coeffs) {
    return {[coeffs](double t) {
                cplx acc{0.0, 0.0};
                double tp = t;
                for (const cplx& c : coeffs) {
                    acc += c * tp;
                    tp *= t * t;
                }
                return acc;
            },
            "poly"};
}

ScalarFunction ScalarFunction::from_preset(const std::string& name) {
    if (name == "identity" || name == "w") return identity();
    if (name == "cube") return cube();
    if (name == "cuberoot") return cube_root();
    if (name.rfind("chop:", 0) == 0) return chop(std::stod(name.substr(5)));
    if (name.rfind("power:", 0) == 0) return power(std::stod(name.substr(6)));
    if (name.rfind("poly:", 0) == 0) {
        std::vector<cplx> coeffs;
        std::string body = name.substr(5);
        if (!body.empty() && body.front() == '[') body = body.substr(1, body.size() - 2);
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) coeffs.emplace_back(std::stod(tok), 0.0);
        return odd_polynomial(coeffs);
    }
    throw std::invalid_argument("unknown scalar function preset: " + name);
}

ScalarFunction ScalarFunction::conjugated() const {
    auto e = eval_;
    return {[e](double t) { return std::conj(e(t)); }, label_ + "*"};
}

ScalarFunction ScalarFunction::tro_combine(const ScalarFunction& f1,
                                           const ScalarFunction& f2,
                                           const ScalarFunction& f3) {
    auto e1 = f1.eval_, e2 = f2.eval_, e3 = f3.eval_;
    return {[e1, e2, e3](double t) { return e1(t) * std::conj(e2(t)) * e3(t); },
            f1.label_ + "*conj(" + f2.label_ + ")*" + f3.label_};
}

Element apply_scalar_function(const ScalarFunction& f, const Element& a) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    double sigma_max = 0.0;
    std::vector<SvdResult> svds;
    svds.reserve(static_cast<std::size_t>(a.block_count()));
    for (int i = 0; i < a.block_count(); ++i) {
        svds.push_back(svd(a.block(i)));
        if (!svds.back().singular_values.empty())
            sigma_max = std::max(sigma_max, svds.back().singular_values.front());
    }
    const double cut = tolerances().rank_tol * sigma_max;
    for (int i = 0; i < a.block_count(); ++i) {
        const SvdResult& s = svds[static_cast<std::size_t>(i)];
        const int d = a.block(i).rows();
        ComplexMatrix fs(d, d);
        for (int j = 0; j < static_cast<int>(s.singular_values.size()); ++j) {
            double sv = s.singular_values[static_cast<std::size_t>(j)];
            fs(j, j) = (sv > cut) ? f(sv) : cplx{0.0, 0.0};
        }
        blocks.push_back(s.left * fs * s.right.adjoint());
    }
    return {a.algebra(), a.level(), std::move(blocks)};
}

Element range_partial_isometry(const Element& a) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    double sigma_max = 0.0;
    std::vector<SvdResult> svds;
    for (int i = 0; i < a.block_count(); ++i) {
        svds.push_back(svd(a.block(i)));
        if (!svds.back().singular_values.empty())
            sigma_max = std::max(sigma_max, svds.back().singular_values.front());
    }
    const double cut = tolerances().rank_tol * sigma_max;
    for (int i = 0; i < a.block_count(); ++i) {
        const SvdResult& s = svds[static_cast<std::size_t>(i)];
        const int d = a.block(i).rows();
        ComplexMatrix p(d, d);
        for (int j = 0; j < static_cast<int>(s.singular_values.size()); ++j)
            if (s.singular_values[static_cast<std::size_t>(j)] > cut) p(j, j) = 1.0;
        blocks.push_back(s.left * p * s.right.adjoint());
    }
    return {a.algebra(), a.level(), std::move(blocks)};
}

Element random_element(const Algebra& a, int level, Rng& rng) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    for (int i = 0; i < a.block_count(); ++i) {
        const int d = level * a.block_dim(i);
        blocks.push_back(rng.gaussian_matrix(d, d));
    }
    return {a, level, std::move(blocks)};
}

namespace {

// Split {0,...,d-1} into two disjoint nonempty index sets (d >= 2),
// shuffled so different seeds exercise different supports.
std::pair<std::vector<int>, std::vector<int>> split_indices(int d, Rng& rng) {
    std::vector<int> idx(static_cast<std::size_t>(d));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = d - 1; i > 0; --i) std::swap(idx[static_cast<std::size_t>(i)],
                                              idx[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    const int cut = 1 + rng.uniform_int(d - 1);
    return {std::vector<int>(idx.begin(), idx.begin() + cut),
            std::vector<int>(idx.begin() + cut, idx.end())};
}

ComplexMatrix rank_sum(const ComplexMatrix& u, const ComplexMatrix& v,
                       const std::vector<int>& left, const std::vector<int>& right,
                       const std::vector<double>& sv) {
    const int d = u.rows();
    ComplexMatrix m(d, d);
    for (std::size_t t = 0; t < left.size(); ++t) {
        const int li = left[t], ri = right[t];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) += sv[t] * u(r, li) * std::conj(v(c, ri));
    }
    return m;
}

}  // namespace

std::pair<Element, Element> random_orthogonal_pair(const Algebra& a, int level, Rng& rng) {
    Element ea = Element::zero(a, level);
    Element eb = Element::zero(a, level);
    // 1x1 blocks cannot split within the block; alternate them between the
    // two sides instead.
    bool parity = rng.uniform() < 0.5;
    for (int i = 0; i < a.block_count(); ++i) {
        const int d = level * a.block_dim(i);
        if (d < 2) {
            cplx v = rng.cgaussian();
            if (parity)
                ea.block(i)(0, 0) = v;
            else
                eb.block(i)(0, 0) = v;
            parity = !parity;
            continue;
        }
        ComplexMatrix u = rng.random_unitary(d);
        ComplexMatrix v = rng.random_unitary(d);
        auto [s1, s2] = split_indices(d, rng);
        std::vector<double> sv1, sv2;
        for (std::size_t t = 0; t < s1.size(); ++t) sv1.push_back(rng.uniform(0.5, 1.5));
        for (std::size_t t = 0; t < s2.size(); ++t) sv2.push_back(rng.uniform(0.5, 1.5));
        ea.block(i) = rank_sum(u, v, s1, s1, sv1);
        eb.block(i) = rank_sum(u, v, s2, s2, sv2);
    }
    return {ea, eb};
}

std::pair<Element, Element> random_right_orthogonal_pair(const Algebra& a, int level, Rng& rng) {
    bool possible = false;
    for (int i = 0; i < a.block_count(); ++i)
        if (level * a.block_dim(i) >= 2) possible = true;
    if (!possible)
        throw std::invalid_argument("random_right_orthogonal_pair: all blocks are 1x1");
    for (int attempt = 0; attempt < 64; ++attempt) {
        Element ea = Element::zero(a, level);
        Element eb = Element::zero(a, level);
        for (int i = 0; i < a.block_count(); ++i) {
            const int d = level * a.block_dim(i);
            if (d < 2) continue;
            ComplexMatrix u = rng.random_unitary(d);
            ComplexMatrix v = rng.random_unitary(d);
            // Shared left vectors, disjoint right supports: a uses right
            // columns r1, b uses r2, both against the same left columns.
            auto [r1, r2] = split_indices(d, rng);
            const int m = static_cast<int>(std::min(r1.size(), r2.size()));
            std::vector<int> left, right1, right2;
            std::vector<double> sv1, sv2;
            for (int t = 0; t < m; ++t) {
                left.push_back(t);
                right1.push_back(r1[static_cast<std::size_t>(t)]);
                right2.push_back(r2[static_cast<std::size_t>(t)]);
                sv1.push_back(rng.uniform(0.5, 1.5));
                sv2.push_back(rng.uniform(0.5, 1.5));
            }
            ea.block(i) = rank_sum(u, v, left, right1, sv1);
            eb.block(i) = rank_sum(u, v, left, right2, sv2);
        }
        // b* a must be genuinely nonzero, else regenerate.
        const Element bsa = eb.adjoint() * ea;
        if (!approx_zero(bsa.operator_norm(), ea.operator_norm() * eb.operator_norm()))
            return {ea, eb};
    }
    throw std::runtime_error("random_right_orthogonal_pair: degenerate draw repeated");
}

std::tuple<Element, Element, Element> random_zero_tro_triple(const Algebra& a, int level, Rng& rng) {
    Element x = random_element(a, level, rng);
    Element b = Element::zero(a, level);
    Element c = Element::zero(a, level);
    bool parity = rng.uniform() < 0.5;
    for (int i = 0; i < a.block_count(); ++i) {
        const int d = level * a.block_dim(i);
        if (d < 2) {
            cplx v = rng.cgaussian();
            if (parity)
                b.block(i)(0, 0) = v;
            else
                c.block(i)(0, 0) = v;
            parity = !parity;
            continue;
        }
        // Orthogonal left supports for b and c give b* c = 0.
        ComplexMatrix u = rng.random_unitary(d);
        ComplexMatrix vb = rng.random_unitary(d);
        ComplexMatrix vc = rng.random_unitary(d);
        auto [l1, l2] = split_indices(d, rng);
        std::vector<int> rb, rc;
        std::vector<double> svb, svc;
        for (std::size_t t = 0; t < l1.size(); ++t) {
            rb.push_back(static_cast<int>(t));
            svb.push_back(rng.uniform(0.5, 1.5));
        }
        for (std::size_t t = 0; t < l2.size(); ++t) {
            rc.push_back(static_cast<int>(t));
            svc.push_back(rng.uniform(0.5, 1.5));
        }
        b.block(i) = rank_sum(u, vb, l1, rb, svb);
        c.block(i) = rank_sum(u, vc, l2, rc, svc);
    }
    return {x, b, c};
}

}  // namespace trolab

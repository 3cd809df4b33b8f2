#include "trolab/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "trolab/kernels.hpp"

namespace trolab {

Algebra::Algebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
    if (dims_.empty()) throw std::invalid_argument("Algebra: needs at least one block");
    offsets_.reserve(dims_.size());
    for (int k : dims_) {
        if (k < 1) throw std::invalid_argument("Algebra: block dimension must be positive");
        offsets_.push_back(dim_);
        dim_ += k * k;
    }
}

bool Algebra::is_abelian() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int k) { return k == 1; });
}

Element::Element(Algebra algebra, int level, std::vector<ComplexMatrix> blocks)
    : algebra_(std::move(algebra)), level_(level), blocks_(std::move(blocks)) {
    if (level_ < 1) throw std::invalid_argument("Element: level must be positive");
    if (static_cast<int>(blocks_.size()) != algebra_.block_count())
        throw DimensionError("Element: wrong block count");
    for (int i = 0; i < algebra_.block_count(); ++i) {
        const int d = level_ * algebra_.block_dim(i);
        if (blocks_[static_cast<std::size_t>(i)].rows() != d ||
            blocks_[static_cast<std::size_t>(i)].cols() != d)
            throw DimensionError("Element: block dimension mismatch");
    }
}

Element Element::zero(const Algebra& a, int level) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    for (int i = 0; i < a.block_count(); ++i)
        blocks.emplace_back(level * a.block_dim(i), level * a.block_dim(i));
    return {a, level, std::move(blocks)};
}

Element Element::unit(const Algebra& a, int level) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    for (int i = 0; i < a.block_count(); ++i)
        blocks.push_back(ComplexMatrix::identity(level * a.block_dim(i)));
    return {a, level, std::move(blocks)};
}

Element Element::matrix_unit(const Algebra& a, int block, int p, int q) {
    Element e = zero(a);
    e.block(block)(p, q) = 1.0;
    return e;
}

Element Element::basis_element(const Algebra& a, int index) {
    for (int i = 0; i < a.block_count(); ++i) {
        const int k = a.block_dim(i);
        const int off = a.block_offset(i);
        if (index < off + k * k)
            return matrix_unit(a, i, (index - off) / k, (index - off) % k);
    }
    throw std::out_of_range("basis_element: index out of range");
}

void Element::check_compatible(const Element& other, const char* what) const {
    if (algebra_ != other.algebra_ || level_ != other.level_)
        throw DimensionError(std::string(what) + ": algebra or level mismatch");
}

Element Element::adjoint() const {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (const ComplexMatrix& b : blocks_) blocks.push_back(b.adjoint());
    return {algebra_, level_, std::move(blocks)};
}

double Element::operator_norm() const {
    double n = 0.0;
    for (const ComplexMatrix& b : blocks_) n = std::max(n, spectral_norm(b));
    return n;
}

double Element::frobenius_norm() const {
    double s = 0.0;
    for (const ComplexMatrix& b : blocks_) {
        double f = b.frobenius_norm();
        s += f * f;
    }
    return std::sqrt(s);
}

std::vector<cplx> Element::coordinates() const {
    if (level_ != 1) throw std::logic_error("coordinates: level-1 elements only");
    std::vector<cplx> c;
    c.reserve(static_cast<std::size_t>(algebra_.dim()));
    for (const ComplexMatrix& b : blocks_)
        c.insert(c.end(), b.entries().begin(), b.entries().end());
    return c;
}

Element Element::from_coordinates(const Algebra& a, const std::vector<cplx>& coords) {
    if (static_cast<int>(coords.size()) != a.dim())
        throw DimensionError("from_coordinates: wrong length");
    Element e = zero(a);
    std::size_t pos = 0;
    for (int i = 0; i < a.block_count(); ++i) {
        const int k = a.block_dim(i);
        for (int p = 0; p < k; ++p)
            for (int q = 0; q < k; ++q) e.block(i)(p, q) = coords[pos++];
    }
    return e;
}

Element operator+(const Element& x, const Element& y) {
    x.check_compatible(y, "add");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (std::size_t i = 0; i < x.blocks_.size(); ++i)
        blocks.push_back(x.blocks_[i] + y.blocks_[i]);
    return {x.algebra_, x.level_, std::move(blocks)};
}

Element operator-(const Element& x, const Element& y) {
    x.check_compatible(y, "sub");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (std::size_t i = 0; i < x.blocks_.size(); ++i)
        blocks.push_back(x.blocks_[i] - y.blocks_[i]);
    return {x.algebra_, x.level_, std::move(blocks)};
}

Element operator*(const Element& x, const Element& y) {
    x.check_compatible(y, "mul");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (std::size_t i = 0; i < x.blocks_.size(); ++i)
        blocks.push_back(x.blocks_[i] * y.blocks_[i]);
    return {x.algebra_, x.level_, std::move(blocks)};
}

Element operator*(cplx s, const Element& x) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.blocks_.size());
    for (const ComplexMatrix& b : x.blocks_) blocks.push_back(s * b);
    return {x.algebra_, x.level_, std::move(blocks)};
}

cplx hs_inner(const Element& x, const Element& y) {
    x.check_compatible(y, "hs_inner");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.blocks_.size(); ++i)
        acc += kernels::dot_conj(x.blocks_[i].entries().size(),
                                 x.blocks_[i].data(), y.blocks_[i].data());
    return acc;
}

Element amplify_element(const std::vector<std::vector<Element>>& grid) {
    if (grid.empty()) throw std::invalid_argument("amplify_element: empty grid");
    const int n = static_cast<int>(grid.size());
    const Algebra& a = grid[0][0].algebra();
    for (const auto& row : grid) {
        if (static_cast<int>(row.size()) != n)
            throw DimensionError("amplify_element: ragged grid");
        for (const Element& e : row)
            if (e.algebra() != a || e.level() != 1)
                throw DimensionError("amplify_element: entries must be level-1 over one algebra");
    }
    Element out = Element::zero(a, n);
    for (int i = 0; i < a.block_count(); ++i) {
        const int k = a.block_dim(i);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const ComplexMatrix& src = grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)].block(i);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c)
                        out.block(i)(p * k + r, q * k + c) = src(r, c);
            }
    }
    return out;
}

Element sub_entry(const Element& x, int p, int q) {
    const Algebra& a = x.algebra();
    Element out = Element::zero(a);
    for (int i = 0; i < a.block_count(); ++i) {
        const int k = a.block_dim(i);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                out.block(i)(r, c) = x.block(i)(p * k + r, q * k + c);
    }
    return out;
}

Element diagonal_amplification(const Element& x, int n) {
    if (x.level() != 1) throw std::logic_error("diagonal_amplification: level-1 input expected");
    std::vector<std::vector<Element>> grid(
        static_cast<std::size_t>(n),
        std::vector<Element>(static_cast<std::size_t>(n), Element::zero(x.algebra())));
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = x;
    return amplify_element(grid);
}

}  // namespace trolab

#ifndef TROLAB_ALGEBRA_HPP
#define TROLAB_ALGEBRA_HPP

#include <vector>

#include "trolab/complex_matrix.hpp"

namespace trolab {

// A finite-dimensional C*-algebra, presented as a direct sum of full
// complex matrix blocks M_{k_1} + ... + M_{k_s}.
class Algebra {
  public:
    Algebra() = default;
    explicit Algebra(std::vector<int> block_dims);

    const std::vector<int>& block_dims() const { return dims_; }
    int block_count() const { return static_cast<int>(dims_.size()); }
    int block_dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }

    // Linear dimension, sum of k_i^2.
    int dim() const { return dim_; }
    // Coordinate offset of block i in the matrix-unit basis.
    int block_offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }

    bool is_abelian() const;

    bool operator==(const Algebra& other) const { return dims_ == other.dims_; }
    bool operator!=(const Algebra& other) const { return !(*this == other); }

  private:
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int dim_ = 0;
};

// A member of M_n(A): one (n*k_i) x (n*k_i) dense matrix per block.
class Element {
  public:
    Element() = default;
    Element(Algebra algebra, int level, std::vector<ComplexMatrix> blocks);

    static Element zero(const Algebra& a, int level = 1);
    static Element unit(const Algebra& a, int level = 1);
    // Matrix unit e_{pq} in block `block`, at level 1.
    static Element matrix_unit(const Algebra& a, int block, int p, int q);
    // Matrix unit by flat basis index (block-major, then row-major).
    static Element basis_element(const Algebra& a, int index);

    const Algebra& algebra() const { return algebra_; }
    int level() const { return level_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const ComplexMatrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
    ComplexMatrix& block(int i) { return blocks_[static_cast<std::size_t>(i)]; }
    const std::vector<ComplexMatrix>& blocks() const { return blocks_; }

    Element adjoint() const;
    double operator_norm() const;     // max over blocks of the top singular value
    double frobenius_norm() const;

    // Coordinates in the matrix-unit basis (level 1 only).
    std::vector<cplx> coordinates() const;
    static Element from_coordinates(const Algebra& a, const std::vector<cplx>& coords);

    friend Element operator+(const Element& x, const Element& y);
    friend Element operator-(const Element& x, const Element& y);
    friend Element operator*(const Element& x, const Element& y);  // blockwise product
    friend Element operator*(cplx s, const Element& x);

    // Hilbert-Schmidt inner product, sum of tr(x_i* y_i).
    friend cplx hs_inner(const Element& x, const Element& y);

  private:
    void check_compatible(const Element& other, const char* what) const;
    Algebra algebra_;
    int level_ = 1;
    std::vector<ComplexMatrix> blocks_;
};

// Assemble an element of M_n(A) from an n x n grid of level-1 elements:
// the (p,q) sub-block of block i is grid[p][q]'s block i.
Element amplify_element(const std::vector<std::vector<Element>>& grid);

// Extract the (p,q) level-1 sub-entry of a level-n element.
Element sub_entry(const Element& x, int p, int q);

// Diag(x, ..., x), n copies.
Element diagonal_amplification(const Element& x, int n);

}  // namespace trolab

#endif

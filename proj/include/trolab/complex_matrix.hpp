#ifndef TROLAB_COMPLEX_MATRIX_HPP
#define TROLAB_COMPLEX_MATRIX_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace trolab {

using cplx = std::complex<double>;

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Dense complex matrix, row-major. Immutable by convention once built:
// all algebra below returns new values.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw DimensionError("negative dimension");
    }
    ComplexMatrix(int rows, int cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != static_cast<std::size_t>(rows) * cols)
            throw DimensionError("entry count does not match dimensions");
    }

    static ComplexMatrix zero(int rows, int cols) { return {rows, cols}; }
    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    cplx operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& entries() const { return data_; }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;    // conjugate transpose
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
    ComplexMatrix& operator+=(const ComplexMatrix& b);
    ComplexMatrix& operator-=(const ComplexMatrix& b);

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

struct SvdResult {
    ComplexMatrix left;                   // U, columns orthonormal
    std::vector<double> singular_values;  // nonincreasing, >= 0
    ComplexMatrix right;                  // V (not V*), columns orthonormal
};

// Full SVD, a = U diag(s) V*. Throws on non-finite input or LAPACK failure.
SvdResult svd(const ComplexMatrix& a);

// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

struct EigResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix vectors;            // columns are eigenvectors
};

// Eigendecomposition of a Hermitian matrix (the Hermitian part is used;
// callers are expected to pass matrices Hermitian up to rounding).
EigResult hermitian_eig(const ComplexMatrix& a);

}  // namespace trolab

#endif

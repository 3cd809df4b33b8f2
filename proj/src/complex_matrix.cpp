#include "trolab/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "trolab/kernels.hpp"

namespace trolab {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    return std::sqrt(kernels::norm_sq(data_.size(), data_.data()));
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = a;
    r += b;
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = a;
    r -= b;
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("add: shape mismatch");
    kernels::axpy(data_.size(), 1.0, b.data_.data(), data_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("sub: shape mismatch");
    kernels::axpy(data_.size(), -1.0, b.data_.data(), data_.data());
    return *this;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix r = a;
    kernels::scale(r.data_.size(), s, r.data_.data());
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("mul: inner dimensions differ");
    ComplexMatrix c(a.rows_, b.cols_);
    // C(i,:) += A(i,k) * B(k,:), vectorized over the row.
    const std::size_t w = static_cast<std::size_t>(b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        cplx* crow = c.data_.data() + static_cast<std::size_t>(i) * w;
        for (int k = 0; k < a.cols_; ++k) {
            cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            kernels::axpy(w, aik, b.data_.data() + static_cast<std::size_t>(k) * w, crow);
        }
    }
    return c;
}

SvdResult svd(const ComplexMatrix& a) {
    if (!a.all_finite()) throw std::invalid_argument("svd: non-finite entries");
    const int m = a.rows(), n = a.cols();
    const int k = std::min(m, n);
    SvdResult res;
    res.left = ComplexMatrix(m, m);
    res.right = ComplexMatrix(n, n);
    res.singular_values.assign(static_cast<std::size_t>(std::max(k, 1)), 0.0);
    if (m == 0 || n == 0) {
        res.singular_values.clear();
        return res;
    }
    std::vector<cplx> work = a.entries();
    std::vector<double> superb(static_cast<std::size_t>(std::max(k - 1, 1)));
    ComplexMatrix vt(n, n);
    int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'A', 'A', m, n, work.data(), n,
                              res.singular_values.data(), res.left.data(), m,
                              vt.data(), n, superb.data());
    if (info != 0) throw std::runtime_error("svd: zgesvd failed, info=" + std::to_string(info));
    res.singular_values.resize(static_cast<std::size_t>(k));
    res.right = vt.adjoint();
    return res;
}

double spectral_norm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    SvdResult s = svd(a);
    return s.singular_values.empty() ? 0.0 : s.singular_values.front();
}

EigResult hermitian_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("hermitian_eig: not square");
    const int n = a.rows();
    EigResult res;
    res.eigenvalues.assign(static_cast<std::size_t>(std::max(n, 1)), 0.0);
    res.vectors = ComplexMatrix(n, n);
    if (n == 0) {
        res.eigenvalues.clear();
        return res;
    }
    // Hermitize to guard against rounding in the input.
    ComplexMatrix h = a;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'U', n, h.data(), n,
                             res.eigenvalues.data());
    if (info != 0) throw std::runtime_error("hermitian_eig: zheev failed, info=" + std::to_string(info));
    res.vectors = h;
    return res;
}

}  // namespace trolab

#include "spinsinglet/matrixkit.hpp"

#include <algorithm>
#include <cmath>

namespace spinsinglet {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

// ---- ComplexVector ---------------------------------------------------------

ComplexVector::ComplexVector(std::size_t dim)
    : data_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))) {}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : data_(static_cast<Eigen::Index>(entries.size())) {
  Eigen::Index i = 0;
  for (const auto& e : entries) data_(i++) = e;
}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return ComplexVector(Eigen::VectorXcd(data_ / n));
}

Complex ComplexVector::dot(const ComplexVector& other) const {
  require_same(dim(), other.dim(), "dot");
  return data_.dot(other.data_);  // Eigen conjugates the left operand
}

ComplexVector ComplexVector::operator+(const ComplexVector& other) const {
  require_same(dim(), other.dim(), "vector +");
  return ComplexVector(Eigen::VectorXcd(data_ + other.data_));
}

ComplexVector ComplexVector::operator-(const ComplexVector& other) const {
  require_same(dim(), other.dim(), "vector -");
  return ComplexVector(Eigen::VectorXcd(data_ - other.data_));
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  require_same(dim(), other.dim(), "vector +=");
  data_ += other.data_;
  return *this;
}

// ---- ComplexMatrix ---------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : data_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  data_ = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) throw DimensionError("matrix literal is not square");
    Eigen::Index c = 0;
    for (const auto& e : row) data_(r, c++) = e;
    ++r;
  }
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols()) throw DimensionError("matrix is not square");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& ket, const ComplexVector& bra) {
  require_same(ket.dim(), bra.dim(), "outer");
  return ComplexMatrix(Eigen::MatrixXcd(ket.eigen() * bra.eigen().adjoint()));
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  require_same(dim(), other.dim(), "matrix +");
  return ComplexMatrix(Eigen::MatrixXcd(data_ + other.data_));
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  require_same(dim(), other.dim(), "matrix -");
  return ComplexMatrix(Eigen::MatrixXcd(data_ - other.data_));
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  require_same(dim(), other.dim(), "matrix *");
  return ComplexMatrix(Eigen::MatrixXcd(data_ * other.data_));
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& v) const {
  require_same(dim(), v.dim(), "matrix * vector");
  return ComplexVector(Eigen::VectorXcd(data_ * v.eigen()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same(dim(), other.dim(), "matrix +=");
  data_ += other.data_;
  return *this;
}

double ComplexMatrix::max_abs() const {
  return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

double ComplexMatrix::hermiticity_defect() const {
  return data_.size() == 0 ? 0.0 : (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

Complex ComplexMatrix::element(const ComplexVector& bra, const ComplexVector& ket) const {
  require_same(dim(), bra.dim(), "element bra");
  require_same(dim(), ket.dim(), "element ket");
  return bra.eigen().dot(data_ * ket.eigen());
}

// ---- free functions --------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.eigen()(i, j) * b.eigen();
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Eigen::VectorXcd out(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) out.segment(i * nb, nb) = a.eigen()(i) * b.eigen();
  return ComplexVector(std::move(out));
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  return ComplexMatrix(Eigen::MatrixXcd(a.eigen().adjoint()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

HermitianEigen eig_hermitian(const ComplexMatrix& a, double tol) {
  if (a.dim() > 64) throw DimensionError("eig_hermitian supports dim <= 64");
  const double defect = a.hermiticity_defect();
  if (defect > tol) {
    throw NotHermitianError("eig_hermitian: hermiticity defect " + std::to_string(defect));
  }
  // Symmetrize so round-off in the strictly lower triangle does not leak in.
  const Eigen::MatrixXcd sym = 0.5 * (a.eigen() + a.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: no convergence");

  HermitianEigen out;
  const auto n = sym.rows();
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values.push_back(solver.eigenvalues()(k));
    out.vectors.emplace_back(Eigen::VectorXcd(solver.eigenvectors().col(k)));
  }
  return out;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return ComplexMatrix{{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace spinsinglet

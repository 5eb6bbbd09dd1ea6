#pragma once

// Small dense complex linear algebra used by every model tier.
//
// Storage is Eigen; the wrappers add the dimension checks that Eigen only
// performs in debug builds. Operand mismatches throw DimensionError.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinsinglet {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim);
  ComplexVector(std::initializer_list<Complex> entries);
  explicit ComplexVector(Eigen::VectorXcd data) : data_(std::move(data)) {}

  static ComplexVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(data_.size()); }
  Complex operator[](std::size_t i) const { return data_(static_cast<Eigen::Index>(i)); }
  Complex& operator[](std::size_t i) { return data_(static_cast<Eigen::Index>(i)); }

  double norm() const { return data_.norm(); }
  ComplexVector normalized() const;

  /// <this|other>, conjugate-linear in the left argument.
  Complex dot(const ComplexVector& other) const;

  ComplexVector operator+(const ComplexVector& other) const;
  ComplexVector operator-(const ComplexVector& other) const;
  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector operator*(Complex s) const { return ComplexVector(Eigen::VectorXcd(data_ * s)); }
  friend ComplexVector operator*(Complex s, const ComplexVector& v) { return v * s; }

  const Eigen::VectorXcd& eigen() const { return data_; }
  Eigen::VectorXcd& eigen() { return data_; }

 private:
  Eigen::VectorXcd data_;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major nested initializer; must be square.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);
  explicit ComplexMatrix(Eigen::MatrixXcd data);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(const std::vector<Complex>& entries);
  static ComplexMatrix outer(const ComplexVector& ket, const ComplexVector& bra);

  std::size_t dim() const { return static_cast<std::size_t>(data_.rows()); }
  Complex operator()(std::size_t r, std::size_t c) const {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  Complex& operator()(std::size_t r, std::size_t c) {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexVector operator*(const ComplexVector& v) const;
  ComplexMatrix operator*(Complex s) const { return ComplexMatrix(Eigen::MatrixXcd(data_ * s)); }
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }
  ComplexMatrix& operator+=(const ComplexMatrix& other);

  Complex trace() const { return data_.trace(); }
  /// Largest entry modulus.
  double max_abs() const;
  /// max |A - A^dagger| over entries.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  /// <bra|A|ket>
  Complex element(const ComplexVector& bra, const ComplexVector& ket) const;

  const Eigen::MatrixXcd& eigen() const { return data_; }
  Eigen::MatrixXcd& eigen() { return data_; }

 private:
  Eigen::MatrixXcd data_;
};

struct HermitianEigen {
  std::vector<double> values;         // ascending
  std::vector<ComplexVector> vectors; // orthonormal, vectors[k] pairs with values[k]
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws NotHermitianError when the hermiticity defect exceeds `tol`, and
/// DimensionError for matrices above 64x64.
HermitianEigen eig_hermitian(const ComplexMatrix& a, double tol = 1e-10);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace spinsinglet

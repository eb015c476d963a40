#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace scaledcons {

/// Dense row-major square matrix of doubles. Sized for desk-scale agent
/// counts; no expression templates.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  std::vector<std::vector<double>> to_rows() const;

  bool is_symmetric(double abs_tol = 0.0) const;
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> v);

double dot(std::span<const double> a, std::span<const double> b);

/// x' A x
double quadratic_form(const Matrix& a, std::span<const double> x);

}  // namespace scaledcons

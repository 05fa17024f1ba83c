#pragma once

// Dense exact linear algebra over small prime fields.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nangle {

using Vec = std::vector<int>;

/// Arithmetic in F_p. Residues are stored as ints in [0, p).
struct PrimeField {
  int p = 2;

  int reduce(long long v) const {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
  }
  int add(int a, int b) const { return (a + b) % p; }
  int sub(int a, int b) const { return (a - b + p) % p; }
  int mul(int a, int b) const { return (a * b) % p; }
  int neg(int a) const { return a == 0 ? 0 : p - a; }
  int inv(int a) const;
  /// (-1)^k as a residue.
  int sign(long long k) const { return (k % 2 == 0) ? 1 % p : p - 1; }
};

bool is_supported_prime(int p);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int p, std::size_t rows, std::size_t cols);
  FpMatrix(int p, std::size_t rows, std::size_t cols, Vec entries);

  static FpMatrix identity(int p, std::size_t n);
  static FpMatrix from_columns(int p, std::size_t rows, const std::vector<Vec>& columns);

  int modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Vec& entries() const { return data_; }

  int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  Vec apply(const Vec& x) const;
  FpMatrix transpose() const;
  bool is_zero() const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend bool operator==(const FpMatrix& a, const FpMatrix& b) = default;

 private:
  int p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

/// Reduced row echelon form plus pivot columns.
struct EchelonForm {
  FpMatrix reduced;
  std::vector<std::size_t> pivots;
};

EchelonForm row_reduce(const FpMatrix& a);
std::size_t rank(const FpMatrix& a);
std::vector<Vec> kernel_basis(const FpMatrix& a);
/// Basis of the column space, as a subset of the original columns.
std::vector<Vec> image_basis(const FpMatrix& a);

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Solves a·x = b. Empty optional when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const FpMatrix& a, const Vec& b);

/// Inverse of a square matrix, if it is invertible.
std::optional<FpMatrix> invert(const FpMatrix& a);

/// Rank of a family of vectors of length dim.
std::size_t span_rank(int p, std::size_t dim, const std::vector<Vec>& vectors);
bool in_span(int p, std::size_t dim, const std::vector<Vec>& basis, const Vec& v);

/// Points particular + sum c_i kernel_i, enumerated lexicographically in
/// (c_1, ..., c_k) with the zero coefficient vector first.
class AffineSpace {
 public:
  AffineSpace(int p, LinearSolution solution);

  /// Number of points, saturated at cap.
  std::size_t size_capped(std::size_t cap) const;
  /// True when the whole space has at most cap points.
  bool fits(std::size_t cap) const { return size_capped(cap + 1) <= cap; }
  Vec point(std::size_t index) const;
  const LinearSolution& solution() const { return sol_; }

 private:
  int p_;
  LinearSolution sol_;
};

/// All vectors of length dim over F_p in lexicographic order, up to cap.
std::vector<Vec> enumerate_vectors(int p, std::size_t dim, std::size_t cap);

Vec vec_add(int p, const Vec& a, const Vec& b);
Vec vec_sub(int p, const Vec& a, const Vec& b);
Vec vec_scale(int p, int s, const Vec& a);
bool vec_is_zero(const Vec& a);

std::string to_string(const FpMatrix& m);

}  // namespace nangle

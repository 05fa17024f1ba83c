#include "nangle/ffmat.hpp"

#include <sstream>
#include <stdexcept>

namespace nangle {

int PrimeField::inv(int a) const {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  // p is tiny, so Fermat by repeated multiplication is fine.
  int r = 1;
  for (int e = 0; e < p - 2; ++e) r = mul(r, a);
  return r;
}

bool is_supported_prime(int p) { return p == 2 || p == 3 || p == 5; }

FpMatrix::FpMatrix(int p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(int p, std::size_t rows, std::size_t cols, Vec entries)
    : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("FpMatrix: entry count does not match shape");
  for (int& e : data_) {
    if (e < 0 || e >= p) throw std::invalid_argument("FpMatrix: entry out of range");
  }
}

FpMatrix FpMatrix::identity(int p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_columns(int p, std::size_t rows, const std::vector<Vec>& columns) {
  FpMatrix m(p, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("from_columns: column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vec FpMatrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec FpMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: shape mismatch");
  Vec y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    long long acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<long long>(data_[r * cols_ + c]) * x[c];
    y[r] = static_cast<int>(acc % p_);
  }
  return y;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool FpMatrix::is_zero() const { return vec_is_zero(data_); }

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("matrix product: modulus mismatch");
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  FpMatrix c(a.p_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = (c(i, j) + aik * b(k, j)) % a.p_;
    }
  return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("matrix sum: modulus mismatch");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  FpMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = (a.data_[i] + b.data_[i]) % a.p_;
  return c;
}

EchelonForm row_reduce(const FpMatrix& a) {
  const PrimeField f{a.modulus()};
  FpMatrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(sel, c));
    int s = f.inv(m(row, col));
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      int factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FpMatrix& a) { return row_reduce(a).pivots.size(); }

std::vector<Vec> kernel_basis(const FpMatrix& a) {
  const PrimeField f{a.modulus()};
  auto [m, pivots] = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> image_basis(const FpMatrix& a) {
  std::vector<Vec> basis;
  for (auto c : row_reduce(a).pivots) basis.push_back(a.column(c));
  return basis;
}

std::optional<LinearSolution> solve_linear(const FpMatrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: right-hand side length mismatch");
  for (int e : b)
    if (e < 0 || e >= a.modulus()) throw std::invalid_argument("solve_linear: modulus mismatch in right-hand side");
  FpMatrix aug(a.modulus(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto [m, pivots] = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = m(r, a.cols());
  sol.kernel = kernel_basis(a);
  return sol;
}

std::optional<FpMatrix> invert(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix is not square");
  const std::size_t n = a.rows();
  FpMatrix aug(a.modulus(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  auto [m, pivots] = row_reduce(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  FpMatrix inv(a.modulus(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = m(r, n + c);
  return inv;
}

std::size_t span_rank(int p, std::size_t dim, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  return rank(FpMatrix::from_columns(p, dim, vectors));
}

bool in_span(int p, std::size_t dim, const std::vector<Vec>& basis, const Vec& v) {
  if (vec_is_zero(v)) return true;
  return solve_linear(FpMatrix::from_columns(p, dim, basis), v).has_value();
}

AffineSpace::AffineSpace(int p, LinearSolution solution) : p_(p), sol_(std::move(solution)) {}

std::size_t AffineSpace::size_capped(std::size_t cap) const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < sol_.kernel.size(); ++i) {
    n *= static_cast<std::size_t>(p_);
    if (n >= cap) return cap;
  }
  return n;
}

Vec AffineSpace::point(std::size_t index) const {
  Vec x = sol_.particular;
  const std::size_t k = sol_.kernel.size();
  for (std::size_t i = 0; i < k; ++i) {
    int c = static_cast<int>(index % static_cast<std::size_t>(p_));
    index /= static_cast<std::size_t>(p_);
    if (c == 0) continue;
    const Vec& kv = sol_.kernel[k - 1 - i];
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] + c * kv[j]) % p_;
  }
  return x;
}

std::vector<Vec> enumerate_vectors(int p, std::size_t dim, std::size_t cap) {
  AffineSpace all(p, LinearSolution{Vec(dim, 0), [&] {
                                      std::vector<Vec> e;
                                      for (std::size_t i = 0; i < dim; ++i) {
                                        Vec v(dim, 0);
                                        v[i] = 1;
                                        e.push_back(v);
                                      }
                                      return e;
                                    }()});
  std::vector<Vec> out;
  const std::size_t n = all.size_capped(cap);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(all.point(i));
  return out;
}

Vec vec_add(int p, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % p;
  return c;
}

Vec vec_sub(int p, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: length mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] - b[i] + p) % p;
  return c;
}

Vec vec_scale(int p, int s, const Vec& a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (s * a[i]) % p;
  return c;
}

bool vec_is_zero(const Vec& a) {
  for (int e : a)
    if (e != 0) return false;
  return true;
}

std::string to_string(const FpMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace nangle

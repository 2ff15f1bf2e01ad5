#include "icb/field.hpp"

#include <utility>

#include "icb/error.hpp"

namespace icb {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p) || p >= (1u << 16))
    throw InputError("field characteristic must be a prime below 65536, got " + std::to_string(p));
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  require_prime(p);
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows,
                             std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("matrix rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::set(std::size_t i, std::size_t j, long long v) {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  data_[i * cols_ + j] = static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> FpMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void FpMatrix::append_row(const std::vector<std::uint32_t>& r) {
  if (r.size() != cols_) throw InputError("appended row has the wrong length");
  for (auto v : r) data_.push_back(v % p_);
  ++rows_;
}

FpMatrix FpMatrix::stack(const FpMatrix& other) const {
  if (other.cols_ != cols_ || other.p_ != p_) throw InputError("cannot stack incompatible matrices");
  FpMatrix out = *this;
  out.data_.insert(out.data_.end(), other.data_.begin(), other.data_.end());
  out.rows_ += other.rows_;
  return out;
}

FpMatrix FpMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  FpMatrix out(p_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out.data_[i * cols.size() + k] = at(i, cols[k]);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = at(i, j);
  return out;
}

FpMatrix FpMatrix::multiply(const FpMatrix& other) const {
  if (cols_ != other.rows_ || p_ != other.p_) throw InputError("matrix dimensions do not match");
  FpMatrix out(p_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = at(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.data_[i * other.cols_ + j] =
            static_cast<std::uint32_t>((out.data_[i * other.cols_ + j] + a * other.at(k, j)) % p_);
    }
  return out;
}

FpMatrix FpMatrix::rref(std::vector<std::size_t>* pivots) const {
  FpMatrix m = *this;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t sel = rows_;
    for (std::size_t i = r; i < rows_; ++i)
      if (m.at(i, c)) {
        sel = i;
        break;
      }
    if (sel == rows_) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.data_[sel * cols_ + j], m.data_[r * cols_ + j]);
    const std::uint64_t inv = inverse_mod(m.at(r, c), p_);
    for (std::size_t j = 0; j < cols_; ++j)
      m.data_[r * cols_ + j] = static_cast<std::uint32_t>(m.data_[r * cols_ + j] * inv % p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || !m.at(i, c)) continue;
      const std::uint64_t f = p_ - m.at(i, c);
      for (std::size_t j = 0; j < cols_; ++j)
        m.data_[i * cols_ + j] =
            static_cast<std::uint32_t>((m.data_[i * cols_ + j] + f * m.data_[r * cols_ + j]) % p_);
    }
    piv.push_back(c);
    ++r;
  }
  m.data_.resize(r * cols_);
  m.rows_ = r;
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t FpMatrix::rank() const { return rref().rows(); }

FpMatrix FpMatrix::null_space() const {
  std::vector<std::size_t> piv;
  const FpMatrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : piv) is_pivot[c] = true;
  FpMatrix out(p_, 0, cols_);
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint32_t> v(cols_, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p_ - r.at(i, f)) % p_;
    out.append_row(v);
  }
  return out;
}

FpMatrix FpMatrix::inverse() const {
  if (rows_ != cols_) throw InputError("only square matrices are invertible");
  const std::size_t n = rows_;
  FpMatrix aug(p_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.data_[i * 2 * n + j] = at(i, j);
    aug.data_[i * 2 * n + n + i] = 1;
  }
  std::vector<std::size_t> piv;
  const FpMatrix r = aug.rref(&piv);
  if (r.rows() < n || piv[n - 1] != n - 1) throw InputError("matrix is singular");
  FpMatrix out(p_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.data_[i * n + j] = r.at(i, n + j);
  return out;
}

std::string format_matrix(const FpMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += std::to_string(m.at(i, j));
    }
    out += "]\n";
  }
  return out;
}

}  // namespace icb

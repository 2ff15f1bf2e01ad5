#pragma once

// Dense matrices over prime fields F_p with Gaussian elimination.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace icb {

bool is_prime(std::uint64_t p);
/// Throws InputError unless p is a prime below 2^16.
void require_prime(std::uint64_t p);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p (negative values allowed).
  static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows,
                            std::size_t cols = 0);
  static FpMatrix identity(std::uint32_t p, std::size_t n);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long long v);

  std::vector<std::uint32_t> row(std::size_t i) const;
  void append_row(const std::vector<std::uint32_t>& r);
  /// Rows stacked: this on top of other.
  FpMatrix stack(const FpMatrix& other) const;
  FpMatrix select_columns(const std::vector<std::size_t>& cols) const;
  FpMatrix transpose() const;
  FpMatrix multiply(const FpMatrix& other) const;

  std::size_t rank() const;
  /// Reduced row echelon form with zero rows removed; pivot columns in `pivots`.
  FpMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  /// Rows form a basis of {v : this · v = 0}.
  FpMatrix null_space() const;
  /// Rows form a basis of the row space.
  FpMatrix row_basis() const { return rref(); }
  /// Inverse of a square matrix; throws InputError if singular.
  FpMatrix inverse() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

std::string format_matrix(const FpMatrix& m);

}  // namespace icb

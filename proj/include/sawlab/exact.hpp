#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sawlab {

using Integer = mpz_class;
using Rational = mpq_class;

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Dense matrix over the rationals, row-major. Sizes here are tiny (tens of
/// rows), so there is no attempt at blocking or sparsity.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix from_integers(const std::vector<std::vector<std::int64_t>>& rows,
                                      std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const RationalVector& row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each non-zero row
};

/// Gauss-Jordan elimination over Q. Pivot choice is the first non-zero entry
/// in the column, so the result is deterministic.
Echelon reduced_echelon(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Basis of {v : M v = 0}, one vector per free column in increasing order,
/// with a 1 in that column.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Some solution of M x = b, or nullopt if the system is inconsistent.
/// Free variables are set to zero.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

/// Scales a rational vector to the primitive integer vector on the same ray,
/// with the first non-zero entry positive. The zero vector maps to zero.
IntegerVector primitive(const RationalVector& v);

/// Least common multiple of the denominators.
Integer common_denominator(const RationalVector& v);

/// Decimal rendering of N^(1/n) with `digits` digits after the point,
/// truncated toward zero (RoundUp: toward +infinity). Uses only integer roots.
enum class Rounding { Down, Up };
std::string nth_root_decimal(const Integer& value, unsigned n, unsigned digits,
                             Rounding rounding = Rounding::Down);

/// floor(N^(1/n) * 10^digits) (or the ceiling), as an integer.
Integer scaled_nth_root(const Integer& value, unsigned n, unsigned digits, Rounding rounding);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

std::optional<std::int64_t> to_int64(const Integer& v);

}  // namespace sawlab

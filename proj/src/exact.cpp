#include "sawlab/exact.hpp"

#include <stdexcept>
#include <utility>

namespace sawlab {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_integers(const std::vector<std::vector<std::int64_t>>& rows,
                                             std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = Rational(static_cast<long>(rows[r][c]));
    }
  }
  return m;
}

void RationalMatrix::append_row(const RationalVector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Echelon reduced_echelon(RationalMatrix m) {
  Echelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
    }
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(lead_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(lead_row, c);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return reduced_echelon(m).pivots.size(); }

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const Echelon e = reduced_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("rhs length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const Echelon e = reduced_echelon(std::move(aug));
  RationalVector x(m.cols(), Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;  // 0 = non-zero
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

Integer common_denominator(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

IntegerVector primitive(const RationalVector& v) {
  const Integer l = common_denominator(v);
  IntegerVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Integer scaled = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    out.push_back(std::move(scaled));
  }
  if (g == 0) return out;
  int sign = 0;
  for (const auto& x : out) {
    if (x != 0) {
      sign = sgn(x);
      break;
    }
  }
  for (auto& x : out) x = x * sign / g;
  return out;
}

Integer scaled_nth_root(const Integer& value, unsigned n, unsigned digits, Rounding rounding) {
  if (n == 0) throw std::invalid_argument("root index must be positive");
  if (value < 0) throw std::invalid_argument("root of a negative count");
  Integer shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), 10, static_cast<unsigned long>(digits) * n);
  const Integer scaled = value * shift;
  Integer root;
  const int exact = mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), n);
  if (!exact && rounding == Rounding::Up) root += 1;
  return root;
}

std::string nth_root_decimal(const Integer& value, unsigned n, unsigned digits, Rounding rounding) {
  const Integer root = scaled_nth_root(value, n, digits, rounding);
  std::string s = root.get_str();
  if (digits == 0) return s;
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, 1, '.');
  return s;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_str();
}

std::optional<std::int64_t> to_int64(const Integer& v) {
  if (!v.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

}  // namespace sawlab

// Exact arithmetic in Q(sqrt(d)): numbers x + y sqrt(d) with rational x, y.
// Comparisons and sign tests are exact; nothing here rounds.
#pragma once

#include <gmpxx.h>

#include <iosfwd>

namespace hypfc {

class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(long d, mpq_class x, mpq_class y) : d_(d), x_(std::move(x)), y_(std::move(y)) {}

  static QuadNum integer(long d, long v) { return QuadNum(d, mpq_class(v), 0); }
  static QuadNum sqrt_d(long d) { return QuadNum(d, 0, 1); }

  long d() const { return d_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  QuadNum conj() const { return QuadNum(d_, x_, -y_); }
  mpq_class norm() const { return x_ * x_ - d_ * y_ * y_; }
  mpq_class trace() const { return 2 * x_; }

  // Sign of the real number x + y sqrt(d); exact.
  int sign() const;

  QuadNum inverse() const;  // throws std::domain_error on zero

  // Rounds to double; uses the conjugate when x and y sqrt(d) nearly cancel.
  double to_double() const;
  // log |x + y sqrt(d)|, cancellation-safe.  Throws on zero.
  double log_abs() const;

  friend QuadNum operator+(const QuadNum& a, const QuadNum& b);
  friend QuadNum operator-(const QuadNum& a, const QuadNum& b);
  friend QuadNum operator-(const QuadNum& a);
  friend QuadNum operator*(const QuadNum& a, const QuadNum& b);
  friend QuadNum operator/(const QuadNum& a, const QuadNum& b);
  friend bool operator==(const QuadNum& a, const QuadNum& b);
  friend bool operator<(const QuadNum& a, const QuadNum& b);
  friend bool operator<=(const QuadNum& a, const QuadNum& b);
  friend std::ostream& operator<<(std::ostream& os, const QuadNum& q);

 private:
  long d_ = 0;
  mpq_class x_{0}, y_{0};
};

}  // namespace hypfc

#include "hypfc/quadnum.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hypfc {

namespace {

void check_same_field(const QuadNum& a, const QuadNum& b) {
  // d = 0 marks a plain rational, which lives in every field.
  if (a.d() != b.d() && a.d() != 0 && b.d() != 0)
    throw std::invalid_argument("quadnum: mixing different sqrt(d) fields");
}

int sgn(const mpq_class& q) { return sgn(q.get_num()); }

}  // namespace

int QuadNum::sign() const {
  int sx = sgn(x_), sy = sgn(y_);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // Opposite signs: compare x^2 against d y^2; sqrt(d) is irrational in all
  // uses so equality would force x = y = 0.
  mpq_class lhs = x_ * x_, rhs = d_ * y_ * y_;
  int c = cmp(lhs, rhs);
  if (c == 0) throw std::logic_error("quadnum: d is a perfect square");
  return c > 0 ? sx : sy;
}

QuadNum QuadNum::inverse() const {
  if (is_zero()) throw std::domain_error("quadnum: division by zero");
  mpq_class nrm = norm();
  return QuadNum(d_, x_ / nrm, -y_ / nrm);
}

double QuadNum::to_double() const {
  double xd = x_.get_d(), yd = y_.get_d() * std::sqrt(static_cast<double>(d_));
  if (sgn(x_) * sgn(y_) >= 0) return xd + yd;
  // Cancelling branch: x + y sqrt(d) = norm / (x - y sqrt(d)), and the
  // conjugate combination is additive for opposite signs.
  return norm().get_d() / (xd - yd);
}

double QuadNum::log_abs() const {
  if (is_zero()) throw std::domain_error("quadnum: log of zero");
  double xd = x_.get_d(), yd = y_.get_d() * std::sqrt(static_cast<double>(d_));
  if (sgn(x_) * sgn(y_) >= 0) return std::log(std::abs(xd + yd));
  mpq_class nrm = norm();
  return std::log(std::abs(nrm.get_d())) - std::log(std::abs(xd - yd));
}

QuadNum operator+(const QuadNum& a, const QuadNum& b) {
  check_same_field(a, b);
  return QuadNum(a.d_ ? a.d_ : b.d_, a.x_ + b.x_, a.y_ + b.y_);
}

QuadNum operator-(const QuadNum& a, const QuadNum& b) {
  check_same_field(a, b);
  return QuadNum(a.d_ ? a.d_ : b.d_, a.x_ - b.x_, a.y_ - b.y_);
}

QuadNum operator-(const QuadNum& a) { return QuadNum(a.d_, -a.x_, -a.y_); }

QuadNum operator*(const QuadNum& a, const QuadNum& b) {
  check_same_field(a, b);
  long d = a.d_ ? a.d_ : b.d_;
  return QuadNum(d, a.x_ * b.x_ + d * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_);
}

QuadNum operator/(const QuadNum& a, const QuadNum& b) { return a * b.inverse(); }

bool operator==(const QuadNum& a, const QuadNum& b) {
  check_same_field(a, b);
  return a.x_ == b.x_ && a.y_ == b.y_;
}

bool operator<(const QuadNum& a, const QuadNum& b) { return (a - b).sign() < 0; }
bool operator<=(const QuadNum& a, const QuadNum& b) { return (a - b).sign() <= 0; }

std::ostream& operator<<(std::ostream& os, const QuadNum& q) {
  return os << q.x() << (sgn(q.y().get_num()) < 0 ? "" : "+") << q.y()
            << "*sqrt(" << q.d() << ")";
}

}  // namespace hypfc

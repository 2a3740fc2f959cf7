#include "foliage/rational.hpp"

#include "foliage/model.hpp"

namespace foliage {

Rational::Rational(long n, long d) {
  if (d == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

int orientation(const Point& a, const Point& b, const Point& c) {
  mpq_class cross = (b.x.value() - a.x.value()) * (c.y.value() - a.y.value()) -
                    (b.y.value() - a.y.value()) * (c.x.value() - a.x.value());
  return sgn(cross);
}

}  // namespace foliage

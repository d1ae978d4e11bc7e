#include "diffkit/ratfun.hpp"

#include "diffkit/errors.hpp"

namespace diffkit {

namespace {

// Canonical form for already-coprime parts: move the leading coefficient of
// the denominator into the numerator.
void make_monic(QPoly& num, QPoly& den) {
  const Rational lc = den.leading_coeff();
  if (lc != 1) {
    const Rational inv = Rational(1) / lc;
    num = num * inv;
    den = den * inv;
  }
}

QPoly exact(const QPoly& a, const QPoly& b) { return *a.divide_exact(b); }

}  // namespace

RatFun::RatFun(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = QPoly(num_.nvars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    QPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  make_monic(num_, den_);
}

RatFun RatFun::operator-() const {
  RatFun out(*this);
  out.num_ = -out.num_;
  return out;
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    if (den_.is_one()) return RatFun(num_ + o.num_);
    return RatFun(num_ + o.num_, den_);
  }
  if (den_.is_one()) {
    RatFun out;
    out.num_ = num_ * o.den_ + o.num_;
    out.den_ = o.den_;
    return out;  // gcd(num*d + n, d) = gcd(n, d) = 1
  }
  if (o.den_.is_one()) return o + *this;
  QPoly g = gcd(den_, o.den_);
  if (g.is_one()) {
    RatFun out;
    out.num_ = num_ * o.den_ + o.num_ * den_;
    out.den_ = den_ * o.den_;
    if (out.num_.is_zero()) out.den_ = QPoly(nvars(), 1);
    return out;
  }
  QPoly a = exact(den_, g), b = exact(o.den_, g);
  QPoly n = num_ * b + o.num_ * a;
  // The only common factors left can come from g.
  if (n.is_zero()) return RatFun(nvars());
  QPoly h = gcd(n, g);
  if (!h.is_one()) {
    n = exact(n, h);
    g = exact(g, h);
  }
  RatFun out;
  out.num_ = std::move(n);
  out.den_ = a * b * g;
  make_monic(out.num_, out.den_);
  return out;
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  if (is_zero() || o.is_zero()) return RatFun(nvars());
  if (den_.is_one() && o.den_.is_one()) return RatFun(num_ * o.num_);
  QPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    QPoly g = gcd(a, d);
    if (!g.is_one()) {
      a = exact(a, g);
      d = exact(d, g);
    }
  }
  if (!b.is_one()) {
    QPoly g = gcd(c, b);
    if (!g.is_one()) {
      c = exact(c, g);
      b = exact(b, g);
    }
  }
  RatFun out;
  out.num_ = a * c;
  out.den_ = b * d;
  make_monic(out.num_, out.den_);
  return out;
}

RatFun RatFun::operator*(const Rational& q) const {
  if (q == 0) return RatFun(nvars());
  RatFun out(*this);
  out.num_ = out.num_ * q;
  return out;
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero rational function");
  RatFun out;
  out.num_ = den_;
  out.den_ = num_;
  make_monic(out.num_, out.den_);
  return out;
}

RatFun RatFun::operator/(const RatFun& o) const { return *this * o.inverse(); }

RatFun RatFun::derive(const std::vector<RatFun>& images) const {
  const std::size_t p = nvars();
  bool polynomial_images = true;
  for (const auto& im : images) polynomial_images = polynomial_images && im.is_polynomial();

  if (polynomial_images) {
    // delta(n/d) = (delta(n) d - n delta(d)) / d^2 with polynomial delta(n), delta(d).
    QPoly dn(p), dd(p);
    for (std::size_t j = 0; j < p; ++j) {
      if (images[j].is_zero()) continue;
      dn += num_.partial(j) * images[j].num();
      if (!den_.is_constant()) dd += den_.partial(j) * images[j].num();
    }
    if (den_.is_one()) return RatFun(std::move(dn));
    // With g = gcd(d, dd): (dn*d - n*dd)/d^2 = t/(d * d/g), t = dn*(d/g) - n*(dd/g).
    // Only factors of d can still divide t.
    QPoly g = gcd(den_, dd);
    QPoly dg = exact(den_, g);
    QPoly t = dn * dg - num_ * exact(dd, g);
    if (t.is_zero()) return RatFun(p);
    RatFun out;
    QPoly h = gcd(t, den_);
    if (!h.is_one()) {
      t = exact(t, h);
      QPoly h2 = gcd(t, dg);
      if (!h2.is_one()) {
        t = exact(t, h2);
        dg = exact(dg, h2);
      }
      out.den_ = exact(den_, h) * dg;
    } else {
      out.den_ = den_ * dg;
    }
    out.num_ = std::move(t);
    make_monic(out.num_, out.den_);
    return out;
  }

  RatFun out(p);
  for (std::size_t j = 0; j < p; ++j) {
    if (images[j].is_zero()) continue;
    RatFun partial(num_.partial(j) * den_ - num_ * den_.partial(j), den_ * den_);
    out = out + partial * images[j];
  }
  return out;
}

std::string RatFun::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (den_.terms().size() > 1 || den_.leading_coeff() != 1 ||
      (den_.terms().size() == 1 && d.find('*') != std::string::npos))
    d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace diffkit

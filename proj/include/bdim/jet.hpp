#pragma once

// Truncated bivariate Taylor arithmetic.
//
// A Jet<P> holds the Taylor coefficients of a function f(x0 + dx, y0 + dy)
// up to degree P in dx and degree 1 in dy:
//
//   f = sum_{i<=P, j<=1} c(i, j) dx^i dy^j.
//
// The index set is closed under taking lower degrees, so products and
// compositions truncate exactly. Curves use x = natural parameter (or
// arclength) and y = deformation parameter α.

#include <array>
#include <cmath>

namespace bdim {

template <int P>
class Jet {
  static_assert(P >= 0);

 public:
  static constexpr int kOrder = P;

  constexpr Jet() { c_.fill(0.0); }
  constexpr explicit Jet(double value) {
    c_.fill(0.0);
    c_[0] = value;
  }

  static constexpr Jet x_variable(double x0) {
    Jet j(x0);
    if constexpr (P >= 1) j(1, 0) = 1.0;
    return j;
  }
  static constexpr Jet y_variable(double y0) {
    Jet j(y0);
    j(0, 1) = 1.0;
    return j;
  }

  constexpr double& operator()(int i, int j) { return c_[2 * i + j]; }
  constexpr double operator()(int i, int j) const { return c_[2 * i + j]; }
  constexpr double value() const { return c_[0]; }

  // d^{i+j} f / dx^i dy^j at (x0, y0).
  constexpr double derivative(int i, int j) const {
    double f = 1.0;
    for (int k = 2; k <= i; ++k) f *= k;
    return (*this)(i, j) * f;
  }

  constexpr Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  constexpr Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  constexpr Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend constexpr Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= P; ++i) {
      for (int k = 0; k <= i; ++k) {
        const double a0 = a(k, 0), a1 = a(k, 1);
        const double b0 = b(i - k, 0), b1 = b(i - k, 1);
        r(i, 0) += a0 * b0;
        r(i, 1) += a0 * b1 + a1 * b0;
      }
    }
    return r;
  }

 private:
  std::array<double, 2 * (P + 1)> c_;
};

template <int P>
constexpr Jet<P> operator+(Jet<P> a, const Jet<P>& b) {
  return a += b;
}
template <int P>
constexpr Jet<P> operator-(Jet<P> a, const Jet<P>& b) {
  return a -= b;
}
template <int P>
constexpr Jet<P> operator-(Jet<P> a) {
  return a *= -1.0;
}
template <int P>
constexpr Jet<P> operator+(Jet<P> a, double s) {
  return a += s;
}
template <int P>
constexpr Jet<P> operator+(double s, Jet<P> a) {
  return a += s;
}
template <int P>
constexpr Jet<P> operator-(Jet<P> a, double s) {
  return a -= s;
}
template <int P>
constexpr Jet<P> operator-(double s, Jet<P> a) {
  a *= -1.0;
  return a += s;
}
template <int P>
constexpr Jet<P> operator*(Jet<P> a, double s) {
  return a *= s;
}
template <int P>
constexpr Jet<P> operator*(double s, Jet<P> a) {
  return a *= s;
}

// Partial derivative in x; loses one order.
template <int P>
constexpr Jet<P - 1> d_dx(const Jet<P>& f) {
  static_assert(P >= 1);
  Jet<P - 1> r;
  for (int i = 0; i < P; ++i) {
    r(i, 0) = (i + 1) * f(i + 1, 0);
    r(i, 1) = (i + 1) * f(i + 1, 1);
  }
  return r;
}

// Drop the highest x-order.
template <int Q, int P>
constexpr Jet<Q> truncate(const Jet<P>& f) {
  static_assert(Q <= P);
  Jet<Q> r;
  for (int i = 0; i <= Q; ++i) {
    r(i, 0) = f(i, 0);
    r(i, 1) = f(i, 1);
  }
  return r;
}

// g(f) given the derivatives g^(k)(f0), k = 0..P+1 (the nilpotency index
// of f - f0 is P + 2).
template <int P>
constexpr Jet<P> apply_univariate(const Jet<P>& f, const std::array<double, P + 2>& g) {
  Jet<P> h = f;
  h(0, 0) = 0.0;
  double fact = 1.0;
  for (int k = 2; k <= P + 1; ++k) fact *= k;
  Jet<P> r(g[P + 1] / fact);
  for (int k = P; k >= 0; --k) {
    fact /= (k + 1);
    r = r * h;
    r += g[k] / fact;
  }
  return r;
}

template <int P>
Jet<P> sin(const Jet<P>& f) {
  std::array<double, P + 2> g{};
  const double s = std::sin(f.value()), c = std::cos(f.value());
  for (int k = 0; k < P + 2; ++k) {
    switch (k % 4) {
      case 0: g[k] = s; break;
      case 1: g[k] = c; break;
      case 2: g[k] = -s; break;
      default: g[k] = -c; break;
    }
  }
  return apply_univariate(f, g);
}

template <int P>
Jet<P> cos(const Jet<P>& f) {
  std::array<double, P + 2> g{};
  const double s = std::sin(f.value()), c = std::cos(f.value());
  for (int k = 0; k < P + 2; ++k) {
    switch (k % 4) {
      case 0: g[k] = c; break;
      case 1: g[k] = -s; break;
      case 2: g[k] = -c; break;
      default: g[k] = s; break;
    }
  }
  return apply_univariate(f, g);
}

// f^a for f0 > 0.
template <int P>
Jet<P> pow(const Jet<P>& f, double a) {
  std::array<double, P + 2> g{};
  const double f0 = f.value();
  double coef = 1.0;
  for (int k = 0; k < P + 2; ++k) {
    g[k] = coef * std::pow(f0, a - k);
    coef *= (a - k);
  }
  return apply_univariate(f, g);
}

template <int P>
Jet<P> sqrt(const Jet<P>& f) {
  return pow(f, 0.5);
}

template <int P>
Jet<P> operator/(const Jet<P>& a, const Jet<P>& b) {
  return a * pow(b, -1.0);
}

template <int P>
Jet<P> operator/(const Jet<P>& a, double s) {
  return a * (1.0 / s);
}

// Evaluates the Taylor polynomial g at displacements (dx, dy), both jets with
// zero constant term: sum g(i, j) dx^i dy^j.
template <int P>
constexpr Jet<P> substitute(const Jet<P>& g, const Jet<P>& dx, const Jet<P>& dy) {
  Jet<P> r;
  Jet<P> pw(1.0);
  for (int i = 0; i <= P; ++i) {
    r += g(i, 0) * pw;
    r += g(i, 1) * (pw * dy);
    pw = pw * dx;
  }
  return r;
}

}  // namespace bdim

#pragma once

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace deloc {

// Complex number with exact rational parts.
struct QC {
  mpq_class re{0};
  mpq_class im{0};

  QC() = default;
  QC(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  QC(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  QC& operator+=(const QC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QC& operator-=(const QC& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QC& operator*=(const QC& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  QC& operator/=(long d) {
    re /= d;
    im /= d;
    return *this;
  }

  friend QC operator+(QC a, const QC& b) { return a += b; }
  friend QC operator-(QC a, const QC& b) { return a -= b; }
  friend QC operator*(QC a, const QC& b) { return a *= b; }
  friend QC operator/(QC a, long d) { return a /= d; }
  friend QC operator-(QC a) {
    a.re = -a.re;
    a.im = -a.im;
    return a;
  }
  friend bool operator==(const QC& a, const QC& b) { return a.re == b.re && a.im == b.im; }
};

using CD = std::complex<double>;

inline CD to_complex(const QC& q) { return {q.re.get_d(), q.im.get_d()}; }
inline CD to_complex(const CD& z) { return z; }

// Value-field helpers shared by the templated cochain code.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<QC> {
  static QC zero() { return QC{}; }
  static bool is_zero(const QC& v) { return v.is_zero(); }
  static QC from_int(long v) { return QC(v); }
  static QC divide(const QC& v, long d) { return v / d; }
};

template <>
struct ScalarOps<CD> {
  static CD zero() { return CD{0.0, 0.0}; }
  static bool is_zero(const CD& v) { return v == CD{0.0, 0.0}; }
  static CD from_int(long v) { return CD(static_cast<double>(v), 0.0); }
  static CD divide(const CD& v, long d) { return v / static_cast<double>(d); }
};

// Parses "p/q" or "p" with integer p and nonzero q.
std::optional<mpq_class> parse_rational(const std::string& text);
std::string format_rational(const mpq_class& q);

}  // namespace deloc

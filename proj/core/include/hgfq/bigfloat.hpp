#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace hgfq {

// Thin RAII wrapper over mpfr_t with an explicit working precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const mpz_class& v, mpfr_prec_t prec);
  BigFloat(const mpq_class& v, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Decimal rendering with the given number of significant digits.
  std::string str(int digits = 20) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  BigFloat operator-() const;
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }

  static BigFloat pi(mpfr_prec_t prec);
  BigFloat abs() const;
  BigFloat sqrt() const;
  BigFloat cos() const;
  BigFloat sin() const;

 private:
  mpfr_t v_;
};

struct BigComplex {
  BigFloat re, im;
  explicit BigComplex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigFloat norm() const;  // re^2 + im^2
  BigFloat abs() const;
};

}  // namespace hgfq

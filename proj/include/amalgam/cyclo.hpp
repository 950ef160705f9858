#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace amalgam {

using Rational = mpq_class;

/// Exact element of Q(z), z = exp(2*pi*i/12).
///
/// Stored in the power basis 1, z, z^2, z^3 and reduced eagerly by the
/// 12th cyclotomic polynomial z^4 - z^2 + 1. Contains i = z^3 and
/// rho = z^4 = z^2 - 1, hence every scalar used by the hexagon and D_inf
/// algebra maps.
class Cyclotomic {
public:
  Cyclotomic() = default;
  Cyclotomic(long value) : coeffs_{Rational(value), 0, 0, 0} {}
  Cyclotomic(int value) : Cyclotomic(static_cast<long>(value)) {}
  Cyclotomic(const Rational& value);
  Cyclotomic(Rational c0, Rational c1, Rational c2, Rational c3);

  static Cyclotomic zeta();
  static Cyclotomic i();
  static Cyclotomic rho();
  /// zeta^k for any integer k (negative allowed).
  static Cyclotomic zeta_pow(long k);
  /// Exact rational value of a finite double.
  static Cyclotomic from_double(double value);

  const std::array<Rational, 4>& coeffs() const { return coeffs_; }
  const Rational& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  bool is_zero() const;
  bool is_rational() const;

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic& operator/=(const Cyclotomic& other);

  Cyclotomic operator-() const;
  /// Throws std::domain_error on zero.
  Cyclotomic inverse() const;
  Cyclotomic conj() const;
  Cyclotomic pow(long exponent) const;

  std::complex<double> to_complex() const;

  /// "a + b*z + c*z^2 + d*z^3" with rational a..d (always all four terms).
  std::string to_string() const;
  /// Nonzero terms only, e.g. "1/2 - z^3"; "0" for zero. Parses back exactly.
  std::string to_compact_string() const;
  /// Accepts the to_string() form and general expressions built from
  /// rationals, i, rho, z, +, -, *, / by rationals, ^ and parentheses.
  static Cyclotomic parse(std::string_view text);

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  /// Arbitrary total order on coefficient tuples, for use in ordered containers.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) { return a.coeffs_ < b.coeffs_; }

private:
  std::array<Rational, 4> coeffs_{0, 0, 0, 0};
};

inline Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
inline Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
inline Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
inline Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

/// Conversion used by scalar-templated code: cyclotomic coefficients are
/// mapped into the target scalar field.
template <typename Scalar>
Scalar scalar_from(const Cyclotomic& x);

template <>
inline std::complex<double> scalar_from<std::complex<double>>(const Cyclotomic& x) {
  return x.to_complex();
}

template <>
inline Cyclotomic scalar_from<Cyclotomic>(const Cyclotomic& x) {
  return x;
}

}  // namespace amalgam

namespace Eigen {

template <>
struct NumTraits<amalgam::Cyclotomic> : GenericNumTraits<amalgam::Cyclotomic> {
  using Real = amalgam::Cyclotomic;
  using NonInteger = amalgam::Cyclotomic;
  using Nested = amalgam::Cyclotomic;
  using Literal = amalgam::Cyclotomic;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

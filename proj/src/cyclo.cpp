#include "amalgam/cyclo.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace amalgam {

namespace {

// Reduce a polynomial in z of degree <= 6 modulo z^4 - z^2 + 1.
std::array<Rational, 4> reduce(std::array<Rational, 7> p) {
  // z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
  p[3] += p[5];
  p[1] -= p[5];
  p[0] -= p[6];
  p[2] += p[4];
  p[0] -= p[4];
  return {p[0], p[1], p[2], p[3]};
}

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Cyclotomic parse() {
    Cyclotomic value = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cyclotomic parse error at offset " + std::to_string(pos_) + " in '" +
                                std::string(text_) + "': " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Cyclotomic sum() {
    skip();
    Cyclotomic value;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    value = product();
    if (negate) value = -value;
    for (;;) {
      if (accept('+')) value += product();
      else if (accept('-')) value -= product();
      else return value;
    }
  }

  Cyclotomic product() {
    Cyclotomic value = power();
    for (;;) {
      if (accept('*')) {
        value *= power();
      } else if (accept('/')) {
        value /= power();
      } else {
        // implicit multiplication, e.g. "2i" or "i rho"
        skip();
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(')) {
          value *= power();
        } else {
          return value;
        }
      }
    }
  }

  Cyclotomic power() {
    Cyclotomic base = atom();
    if (accept('^')) {
      skip();
      bool negative = accept('-');
      long exponent = integer();
      base = base.pow(negative ? -exponent : exponent);
    }
    return base;
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  Cyclotomic atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Cyclotomic inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Cyclotomic(Rational(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "i") return Cyclotomic::i();
      if (word == "rho") return Cyclotomic::rho();
      if (word == "z" || word == "zeta") return Cyclotomic::zeta();
      pos_ = start;
      fail("unknown symbol '" + std::string(word) + "'");
    }
    // UTF-8 rho (U+03C1) is accepted in labels.
    if (text_.substr(pos_, 2) == "\xCF\x81") {
      pos_ += 2;
      return Cyclotomic::rho();
    }
    fail("unexpected character");
  }
};

}  // namespace

Cyclotomic::Cyclotomic(Rational c0, Rational c1, Rational c2, Rational c3)
    : coeffs_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {
  for (Rational& c : coeffs_) c.canonicalize();
}

Cyclotomic::Cyclotomic(const Rational& value) : coeffs_{value, 0, 0, 0} { coeffs_[0].canonicalize(); }

Cyclotomic Cyclotomic::zeta() { return {0, 1, 0, 0}; }
Cyclotomic Cyclotomic::i() { return {0, 0, 0, 1}; }
Cyclotomic Cyclotomic::rho() { return {-1, 0, 1, 0}; }

Cyclotomic Cyclotomic::zeta_pow(long k) {
  long r = ((k % 12) + 12) % 12;
  Cyclotomic result(1);
  for (long j = 0; j < r; ++j) result *= zeta();
  return result;
}

Cyclotomic Cyclotomic::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("from_double: non-finite value");
  Rational q(value);  // exact: doubles are dyadic rationals
  return Cyclotomic(q);
}

bool Cyclotomic::is_zero() const {
  return coeffs_[0] == 0 && coeffs_[1] == 0 && coeffs_[2] == 0 && coeffs_[3] == 0;
}

bool Cyclotomic::is_rational() const { return coeffs_[1] == 0 && coeffs_[2] == 0 && coeffs_[3] == 0; }

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  for (std::size_t k = 0; k < 4; ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  for (std::size_t k = 0; k < 4; ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  std::array<Rational, 7> p{0, 0, 0, 0, 0, 0, 0};
  for (std::size_t a = 0; a < 4; ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < 4; ++b) {
      if (other.coeffs_[b] == 0) continue;
      p[a + b] += coeffs_[a] * other.coeffs_[b];
    }
  }
  coeffs_ = reduce(std::move(p));
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& other) { return *this *= other.inverse(); }

Cyclotomic Cyclotomic::operator-() const {
  return {-coeffs_[0], -coeffs_[1], -coeffs_[2], -coeffs_[3]};
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclotomic::inverse: division by zero");
  // Solve x * y = 1 using the 4x4 multiplication matrix of x over Q.
  std::array<std::array<Rational, 5>, 4> m;
  for (int col = 0; col < 4; ++col) {
    Cyclotomic image = *this * zeta_pow(col);
    for (int row = 0; row < 4; ++row) m[row][col] = image.coeff(row);
  }
  for (int row = 0; row < 4; ++row) m[row][4] = row == 0 ? 1 : 0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    while (m[pivot][col] == 0) ++pivot;  // the matrix is invertible since Q(z) is a field
    std::swap(m[pivot], m[col]);
    for (int row = 0; row < 4; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational factor = m[row][col] / m[col][col];
      for (int k = col; k < 5; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return {m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]};
}

Cyclotomic Cyclotomic::conj() const {
  // complex conjugation sends z to z^{-1} = z^11
  Cyclotomic result(coeffs_[0]);
  for (int k = 1; k < 4; ++k) result += Cyclotomic(coeffs_[k]) * zeta_pow(12 - k);
  return result;
}

Cyclotomic Cyclotomic::pow(long exponent) const {
  Cyclotomic base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  Cyclotomic result(1);
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> result = 0.0;
  for (int k = 0; k < 4; ++k) {
    double angle = std::numbers::pi * k / 6.0;
    result += coeffs_[static_cast<std::size_t>(k)].get_d() * std::polar(1.0, angle);
  }
  return result;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  os << coeffs_[0].get_str() << " + " << coeffs_[1].get_str() << "*z + " << coeffs_[2].get_str() << "*z^2 + "
     << coeffs_[3].get_str() << "*z^3";
  return os.str();
}

std::string Cyclotomic::to_compact_string() const {
  static const char* const kPowers[] = {"", "z", "z^2", "z^3"};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += c.get_str();
    } else if (c == 1) {
      out += kPowers[k];
    } else {
      out += c.get_str() + "*" + kPowers[k];
    }
  }
  return out.empty() ? "0" : out;
}

Cyclotomic Cyclotomic::parse(std::string_view text) { return ExprParser(text).parse(); }

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.to_string(); }

}  // namespace amalgam

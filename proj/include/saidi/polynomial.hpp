#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace saidi {

using Rational = mpq_class;

/// Exact rational conversion of a double (every finite double is a dyadic rational).
Rational to_rational(double x);
double to_double(const Rational& x);
Rational binomial(long n, long k);

/// Power form Σ a_k p^k with exact rational coefficients. The coefficient
/// vector keeps its nominal length (trailing zeros are not trimmed), so the
/// nominal degree of a SAIDI polynomial is the edge count m.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return constant(1); }
  /// p
  static Polynomial variable() { return Polynomial({Rational(0), Rational(1)}); }
  /// q = 1 - p
  static Polynomial complement() { return Polynomial({Rational(1), Rational(-1)}); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  std::size_t nominal_degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  /// Highest index with a nonzero coefficient (0 for the zero polynomial).
  std::size_t degree() const;
  bool is_zero() const;

  Rational evaluate_exact(const Rational& p) const;
  /// Exact evaluation at the rational value of p, rounded once to double.
  double evaluate(double p) const;
  Polynomial truncated(std::size_t k) const;
  Polynomial padded(std::size_t degree) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  /// Equality ignoring trailing zeros.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
};

/// Binomial form Σ_{k=0}^{m} b_k p^k q^{m-k}.
struct BinomialPolynomial {
  std::size_t m = 0;
  std::vector<Rational> b;  // size m + 1, b[0] first

  Rational coeff(std::size_t k) const { return k < b.size() ? b[k] : Rational(0); }
  double evaluate(double p) const;
  friend bool operator==(const BinomialPolynomial& x, const BinomialPolynomial& y);
};

/// Binomial form of degree m; m defaults to the nominal degree. Throws when
/// the polynomial has nonzero coefficients above m.
BinomialPolynomial to_binomial(const Polynomial& f, std::size_t m);
BinomialPolynomial to_binomial(const Polynomial& f);
Polynomial to_power(const BinomialPolynomial& f);

enum class Ordering { less, equal, greater };
const char* to_string(Ordering o);

/// Lexicographic comparison of b_0, b_1, ... (shorter vectors padded with zeros).
Ordering compare_near_zero(const BinomialPolynomial& f, const BinomialPolynomial& g);
/// Lexicographic comparison of b_m, b_{m-1}, ... after aligning degrees at m.
Ordering compare_near_one(const BinomialPolynomial& f, const BinomialPolynomial& g);

}  // namespace saidi

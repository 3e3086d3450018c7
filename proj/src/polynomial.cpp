#include "saidi/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "saidi/errors.hpp"

namespace saidi {

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw ValidationError("cannot convert a non-finite value to a rational");
  Rational r(x);
  r.canonicalize();
  return r;
}

double to_double(const Rational& x) { return x.get_d(); }

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

std::size_t Polynomial::degree() const {
  for (std::size_t k = coeffs_.size(); k-- > 0;)
    if (coeffs_[k] != 0) return k;
  return 0;
}

bool Polynomial::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

Rational Polynomial::evaluate_exact(const Rational& p) const {
  Rational acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * p + coeffs_[k];
  return acc;
}

double Polynomial::evaluate(double p) const { return to_double(evaluate_exact(to_rational(p))); }

Polynomial Polynomial::truncated(std::size_t k) const {
  std::vector<Rational> c = coeffs_;
  if (c.size() > k + 1) c.resize(k + 1);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::padded(std::size_t degree) const {
  std::vector<Rational> c = coeffs_;
  if (c.size() < degree + 1) c.resize(degree + 1, Rational(0));
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t k = 0; k < n; ++k)
    if (a.coeff(k) != b.coeff(k)) return false;
  return true;
}

std::string Polynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!first) out << (coeffs_[k] < 0 ? " - " : " + ");
    else if (coeffs_[k] < 0) out << "-";
    Rational mag = abs(coeffs_[k]);
    if (k == 0 || mag != 1) out << mag.get_str();
    if (k >= 1) out << (k == 0 || mag != 1 ? "*" : "") << "p";
    if (k >= 2) out << "^" << k;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

double BinomialPolynomial::evaluate(double p) const { return to_power(*this).evaluate(p); }

bool operator==(const BinomialPolynomial& x, const BinomialPolynomial& y) {
  if (x.m != y.m) return false;
  for (std::size_t k = 0; k <= x.m; ++k)
    if (x.coeff(k) != y.coeff(k)) return false;
  return true;
}

BinomialPolynomial to_binomial(const Polynomial& f, std::size_t m) {
  if (f.degree() > m) throw ValidationError("to_binomial: polynomial degree exceeds m");
  BinomialPolynomial out;
  out.m = m;
  out.b.assign(m + 1, Rational(0));
  // p^k = p^k (p + q)^{m-k} = Σ_i C(m-k, i) p^{k+i} q^{m-k-i}
  for (std::size_t k = 0; k <= m; ++k) {
    Rational a = f.coeff(k);
    if (a == 0) continue;
    for (std::size_t j = k; j <= m; ++j) out.b[j] += a * binomial(static_cast<long>(m - k), static_cast<long>(j - k));
  }
  return out;
}

BinomialPolynomial to_binomial(const Polynomial& f) { return to_binomial(f, f.nominal_degree()); }

Polynomial to_power(const BinomialPolynomial& f) {
  // p^j q^{m-j} = Σ_i (-1)^i C(m-j, i) p^{j+i}
  std::vector<Rational> a(f.m + 1, Rational(0));
  for (std::size_t j = 0; j <= f.m; ++j) {
    Rational b = f.coeff(j);
    if (b == 0) continue;
    for (std::size_t k = j; k <= f.m; ++k) {
      Rational term = b * binomial(static_cast<long>(f.m - j), static_cast<long>(k - j));
      if ((k - j) % 2 == 1) a[k] -= term;
      else a[k] += term;
    }
  }
  return Polynomial(std::move(a));
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

Ordering compare_near_zero(const BinomialPolynomial& f, const BinomialPolynomial& g) {
  std::size_t n = std::max(f.b.size(), g.b.size());
  for (std::size_t k = 0; k < n; ++k) {
    Rational x = f.coeff(k), y = g.coeff(k);
    if (x < y) return Ordering::less;
    if (x > y) return Ordering::greater;
  }
  return Ordering::equal;
}

Ordering compare_near_one(const BinomialPolynomial& f, const BinomialPolynomial& g) {
  std::size_t m = std::max(f.m, g.m);
  // Near p = 1 the dominant term is b_m p^m, then b_{m-1} p^{m-1} q, ...;
  // both vectors are aligned at their top index.
  for (std::size_t i = 0; i <= m; ++i) {
    Rational x = i <= f.m ? f.coeff(f.m - i) : Rational(0);
    Rational y = i <= g.m ? g.coeff(g.m - i) : Rational(0);
    if (x < y) return Ordering::less;
    if (x > y) return Ordering::greater;
  }
  return Ordering::equal;
}

}  // namespace saidi

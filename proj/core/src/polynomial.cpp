#include "toricsplit/polynomial.hpp"

#include <sstream>

#include "toricsplit/error.hpp"

namespace toricsplit {

Polynomial::Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<std::int64_t> coeffs) {
  for (auto c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt Polynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

BigInt Polynomial::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial acc = one();
  Polynomial base = *this;
  while (e) {
    if (e & 1u) acc *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return acc;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  if (is_zero()) return Polynomial{};
  if (degree() < divisor.degree()) return std::nullopt;
  std::vector<BigInt> rem = coeffs_;
  const auto dd = static_cast<std::size_t>(divisor.degree());
  const BigInt& lead = divisor.coeffs_.back();
  std::vector<BigInt> quot(rem.size() - dd, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt& top = rem[k + dd];
    if (top == 0) continue;
    if (top % lead != 0) return std::nullopt;
    const BigInt q = top / lead;
    quot[k] = q;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return Polynomial(std::move(quot));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

}  // namespace toricsplit

#include "shiftpred/scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "shiftpred/errors.hpp"

namespace shiftpred {

namespace {

Scalar::Complex as_complex(const std::variant<mpq_class, Scalar::Complex>& v) {
  if (const auto* q = std::get_if<mpq_class>(&v)) return {q->get_d(), 0.0};
  return std::get<Scalar::Complex>(v);
}

}  // namespace

Scalar Scalar::rational(long p, long q) {
  if (q == 0) throw std::domain_error("rational with zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return Scalar(std::move(r));
}

Scalar Scalar::parse_real(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty number");
  const bool rational_form = s.find_first_of(".eE") == std::string::npos;
  if (rational_form) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Scalar(std::move(q));
  }
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad number '" + s + "'");
  return Scalar::real(x);
}

const mpq_class& Scalar::exact() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw std::logic_error("Scalar::exact() on a float-mode value");
}

Scalar::Complex Scalar::to_complex() const { return as_complex(value_); }

double Scalar::abs() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return std::fabs(q->get_d());
  return std::abs(std::get<Complex>(value_));
}

std::optional<mpq_class> Scalar::exact_abs() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return mpq_class(::abs(*q));
  return std::nullopt;
}

bool Scalar::is_zero() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::abs(std::get<Complex>(value_)) < kUnderflowGuard;
}

Scalar Scalar::conj() const {
  if (is_exact()) return *this;
  return Scalar(std::conj(std::get<Complex>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  } else {
    value_ = as_complex(value_) + as_complex(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  } else {
    value_ = as_complex(value_) - as_complex(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  } else {
    value_ = as_complex(value_) * as_complex(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_exact() && sgn(std::get<mpq_class>(rhs.value_)) == 0) {
    throw std::domain_error("division by exact zero");
  }
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) /= std::get<mpq_class>(rhs.value_);
  } else {
    value_ = as_complex(value_) / as_complex(rhs.value_);
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  return Scalar(-std::get<Complex>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.to_complex() == b.to_complex();
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  const Complex z = std::get<Complex>(value_);
  std::ostringstream os;
  os.precision(17);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << '(' << z.real() << ',' << z.imag() << ')';
  }
  return os.str();
}

double distance(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    if (a.exact() == b.exact()) return 0.0;
    return std::fabs(mpq_class(a.exact() - b.exact()).get_d());
  }
  return std::abs(a.to_complex() - b.to_complex());
}

Scalar pow(const Scalar& a, unsigned e) {
  Scalar result(1);
  Scalar base = a;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace shiftpred

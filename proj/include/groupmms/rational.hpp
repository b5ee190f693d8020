#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace groupmms {

// All utilities and derived quantities are exact rationals. mpq_class keeps
// values canonical (coprime, positive denominator) after arithmetic.
using Rational = mpq_class;

// Malformed input text or JSON.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exhaustive search or exact-arithmetic limit was exceeded. Callers get an
// error, never a silently approximate answer.
struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p/q" (q > 0), decimal strings ("1.25", "-0.5", ".75"), and plain
// integers. No exponent notation. Throws ParseError otherwise.
Rational parse_rational(const std::string& text);

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& value);

// A rational extended with +infinity. Ratios against a zero maximin share are
// +infinity by convention: such an agent is satisfied by any bundle.
class ExtRational {
 public:
  ExtRational() : finite_(true), value_(0) {}
  ExtRational(Rational value) : finite_(true), value_(std::move(value)) {}
  static ExtRational infinity() {
    ExtRational r;
    r.finite_ = false;
    return r;
  }

  bool is_infinite() const { return !finite_; }

  // Only valid for finite values.
  const Rational& value() const {
    if (!finite_) throw std::logic_error("ExtRational: infinite value");
    return value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

 private:
  bool finite_;
  Rational value_;
};

// "inf" for the infinite value, otherwise the rational form.
std::string to_string(const ExtRational& value);

}  // namespace groupmms

#include "groupmms/rational.hpp"

#include <cctype>
#include <cstddef>

namespace groupmms {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(const std::string& s, const std::string& original) {
  std::string digits = s;
  bool negative = false;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    negative = digits[0] == '-';
    digits.erase(digits.begin());
  }
  if (!all_digits(digits)) {
    throw ParseError("not a rational literal: \"" + original + "\"");
  }
  mpz_class v(digits, 10);
  if (negative) v = -v;
  return v;
}

mpz_class pow10(std::size_t n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, n);
  return p;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string ws = " \t\r\n";
  std::size_t begin = text.find_first_not_of(ws);
  if (begin == std::string::npos) throw ParseError("empty rational literal");
  std::size_t end = text.find_last_not_of(ws);
  std::string s = text.substr(begin, end - begin + 1);

  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num = parse_integer(s.substr(0, slash), text);
    std::string den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw ParseError("denominator must be a positive integer: \"" + text + "\"");
    }
    mpz_class den(den_text, 10);
    if (den == 0) throw ParseError("zero denominator: \"" + text + "\"");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::size_t dot = s.find('.');
  if (dot != std::string::npos) {
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      negative = s[0] == '-';
      i = 1;
    }
    std::string int_part = s.substr(i, dot - i);
    std::string frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw ParseError("not a rational literal: \"" + text + "\"");
    }
    if (!int_part.empty() && !all_digits(int_part)) {
      throw ParseError("not a rational literal: \"" + text + "\"");
    }
    if (!frac_part.empty() && !all_digits(frac_part)) {
      throw ParseError("not a rational literal: \"" + text + "\"");
    }
    mpz_class scale = pow10(frac_part.size());
    mpz_class num = int_part.empty() ? mpz_class(0) : mpz_class(int_part, 10);
    num *= scale;
    if (!frac_part.empty()) num += mpz_class(frac_part, 10);
    if (negative) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }

  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& value) {
  return value.get_str();
}

std::string to_string(const ExtRational& value) {
  if (value.is_infinite()) return "inf";
  return to_string(value.value());
}

}  // namespace groupmms

#include "hls/real.hpp"

#include <cctype>

namespace hls {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

std::optional<Real> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || exp_text.size() > 6 || !all_digits(exp_text)) return std::nullopt;
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string_view int_part = text, frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!all_digits(int_part) || !all_digits(frac_part)) return std::nullopt;

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  exponent -= static_cast<long>(frac_part.size());

  Real value;
  if (exponent >= 0) {
    value = Real(mantissa * pow10(static_cast<unsigned long>(exponent)));
  } else {
    value = Real(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    value.canonicalize();
  }
  if (negative) value = -value;
  return value;
}

std::optional<std::string> to_exact_decimal(const Real& x) {
  mpz_class den = x.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;

  const unsigned long places = std::max(twos, fives);
  mpz_class scaled = abs(x.get_num()) * pow10(places) / x.get_den();
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  std::string out;
  if (sgn(x) < 0) out.push_back('-');
  if (places == 0) {
    out += digits;
  } else {
    out += digits.substr(0, digits.size() - places);
    out.push_back('.');
    out += digits.substr(digits.size() - places);
  }
  return out;
}

std::string to_decimal_string(const Real& x, int digits) {
  if (auto exact = to_exact_decimal(x)) return *exact;
  mpf_class f(x, 256);
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, static_cast<size_t>(digits));
  bool negative = !mant.empty() && mant.front() == '-';
  if (negative) mant.erase(0, 1);
  std::string out = negative ? "-" : "";
  if (exp <= 0) {
    out += "0." + std::string(static_cast<size_t>(-exp), '0') + mant;
  } else if (static_cast<size_t>(exp) >= mant.size()) {
    out += mant + std::string(static_cast<size_t>(exp) - mant.size(), '0');
  } else {
    out += mant.substr(0, static_cast<size_t>(exp)) + "." + mant.substr(static_cast<size_t>(exp));
  }
  return out;
}

std::string to_smt_real(const Real& x) {
  auto unsigned_literal = [](const Real& v) -> std::string {
    if (auto dec = to_exact_decimal(v)) {
      if (dec->find('.') == std::string::npos) *dec += ".0";
      return *dec;
    }
    return "(/ " + v.get_num().get_str() + ".0 " + v.get_den().get_str() + ".0)";
  };
  if (sgn(x) < 0) return "(- " + unsigned_literal(Real(-x)) + ")";
  return unsigned_literal(x);
}

std::string to_smt_int(const Real& x) {
  mpz_class n = x.get_num();
  if (sgn(n) < 0) return "(- " + mpz_class(-n).get_str() + ")";
  return n.get_str();
}

Real floor_div(const Real& num, const Real& den) {
  Real q = num / den;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Real(f);
}

}  // namespace hls

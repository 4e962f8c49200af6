#include "altcantor/rational.hpp"

#include <cctype>

#include "altcantor/error.hpp"
#include "altcantor/interval.hpp"

namespace altcantor {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::ElementTooSmall: return "element_too_small";
    case ErrorCode::DigitOutOfRange: return "digit_out_of_range";
    case ErrorCode::OutOfDomain: return "out_of_domain";
    case ErrorCode::ExactUnavailable: return "exact_unavailable";
    case ErrorCode::HorizonExceeded: return "horizon_exceeded";
    case ErrorCode::UnsupportedBasis: return "unsupported_basis";
    case ErrorCode::NotWellDefined: return "not_well_defined";
    case ErrorCode::InvalidSelection: return "invalid_selection";
    case ErrorCode::CombinatorialLimit: return "combinatorial_limit";
    case ErrorCode::GateFailed: return "gate_failed";
    case ErrorCode::DegenerateDenominator: return "degenerate_denominator";
    case ErrorCode::InvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

ExactRational::ExactRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

std::size_t scan_integer(std::string_view text, std::size_t pos, bool allow_sign) {
  if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  const std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) throw ParseError(pos, "expected digits");
  return pos;
}

}  // namespace

ExactRational ExactRational::parse(std::string_view text) {
  const std::size_t num_end = scan_integer(text, 0, true);
  std::string num_text(text.substr(0, num_end));
  if (num_text[0] == '+') num_text.erase(0, 1);
  mpz_class num(num_text, 10);
  if (num_end == text.size()) return ExactRational(num);
  if (text[num_end] != '/') throw ParseError(num_end, "expected '/'");
  const std::size_t den_end = scan_integer(text, num_end + 1, false);
  if (den_end != text.size()) throw ParseError(den_end, "trailing characters");
  mpz_class den(std::string(text.substr(num_end + 1)), 10);
  if (den == 0) throw ParseError(num_end + 1, "zero denominator");
  return ExactRational(num, den);
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

mpz_class ExactRational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class ExactRational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string ExactRational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string ExactRational::to_decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half away from zero on the scaled magnitude.
  mpq_class scaled = ::abs(q_) * scale;
  mpz_class mag = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string body = mag.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (sgn(q_) < 0 && mag != 0 ? "-" : "") + body;
}

ExactRational min(const ExactRational& a, const ExactRational& b) { return b < a ? b : a; }
ExactRational max(const ExactRational& a, const ExactRational& b) { return a < b ? b : a; }

ExactInterval::ExactInterval(ExactRational lo, ExactRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error(ErrorCode::InvalidArgument, "interval with lo > hi");
}

ExactInterval ExactInterval::hull(const ExactRational& a, const ExactRational& b) {
  return a < b ? ExactInterval(a, b) : ExactInterval(b, a);
}

}  // namespace altcantor

std::size_t std::hash<altcantor::ExactRational>::operator()(const altcantor::ExactRational& r) const noexcept {
  const std::size_t h1 = mpz_get_ui(r.num().get_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(r.num().get_mpz_t())) << 63);
  const std::size_t h2 = mpz_get_ui(r.den().get_mpz_t());
  return h1 * 1000003u ^ h2;
}

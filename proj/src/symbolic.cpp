#include "crcc/symbolic.hpp"

#include <cctype>
#include <vector>

#include "crcc/errors.hpp"

namespace crcc {

namespace {

bool valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char ch : name) {
    if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

SymbolicExpr SymbolicExpr::symbol(const std::string& name, Rational coeff) {
  if (!valid_name(name)) throw ParseError("invalid constant name '" + name + "'");
  SymbolicExpr e;
  if (!coeff.is_zero()) e.terms_[name] = coeff;
  return e;
}

SymbolicExpr& SymbolicExpr::operator+=(const SymbolicExpr& o) {
  for (const auto& [name, k] : o.terms_) {
    auto& slot = terms_[name];
    slot += k;
    if (slot.is_zero()) terms_.erase(name);
  }
  scalar_ += o.scalar_;
  return *this;
}

SymbolicExpr& SymbolicExpr::operator-=(const SymbolicExpr& o) { return *this += o * Rational(-1); }

SymbolicExpr& SymbolicExpr::operator*=(const Rational& k) {
  if (k.is_zero()) {
    terms_.clear();
    scalar_ = Rational(0);
    return *this;
  }
  for (auto& [name, c] : terms_) c *= k;
  scalar_ *= k;
  return *this;
}

double SymbolicExpr::evaluate(const ConstantTable& values) const {
  double total = scalar_.to_double();
  for (const auto& [name, k] : terms_) {
    auto it = values.find(name);
    if (it == values.end()) throw UnknownVariable("no value for constant " + name);
    total += k.to_double() * it->second;
  }
  return total;
}

std::string SymbolicExpr::str() const {
  std::string out;
  auto append = [&](Rational k, const std::string& name) {
    const bool negative = k.sign() < 0;
    const Rational mag = abs(k);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (name.empty()) {
      out += mag.str();
    } else {
      if (mag != Rational(1)) out += mag.str() + "*";
      out += name;
    }
  };
  for (const auto& [name, k] : terms_) append(k, name);
  if (!scalar_.is_zero() || out.empty()) append(scalar_, "");
  return out;
}

SymbolicExpr SymbolicExpr::parse(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    tokens.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  if (tokens.empty()) throw ParseError("empty symbolic expression");

  SymbolicExpr out;
  auto add_term = [&](std::string_view term, bool negative) {
    if (!term.empty() && term.front() == '-') {
      negative = !negative;
      term.remove_prefix(1);
    }
    Rational coeff(1);
    std::string_view name = term;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coeff = Rational::parse(term.substr(0, star));
      name = term.substr(star + 1);
    } else if (!term.empty() && (std::isdigit(static_cast<unsigned char>(term.front())))) {
      Rational k = Rational::parse(term);
      out.scalar_ += negative ? -k : k;
      return;
    }
    if (!valid_name(name)) throw ParseError("invalid term '" + std::string(term) + "'");
    out += symbol(std::string(name), negative ? -coeff : coeff);
  };

  add_term(tokens[0], false);
  if (tokens.size() % 2 == 0) throw ParseError("dangling operator in '" + std::string(text) + "'");
  for (std::size_t i = 1; i + 1 < tokens.size(); i += 2) {
    if (tokens[i] != "+" && tokens[i] != "-") throw ParseError("expected + or - in '" + std::string(text) + "'");
    add_term(tokens[i + 1], tokens[i] == "-");
  }
  return out;
}

}  // namespace crcc

#include "crcc/family.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "crcc/errors.hpp"

namespace crcc {

struct Expression::Node {
  enum Kind { number, name, negate, add, subtract, multiply, divide } kind = number;
  double value = 0.0;
  std::string id;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr run() {
    auto n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression \"" + std::string(s_) + "\": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Expression::Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr sum() {
    auto n = product();
    while (true) {
      if (eat('+')) {
        n = binary(Expression::Node::add, n, product());
      } else if (eat('-')) {
        n = binary(Expression::Node::subtract, n, product());
      } else {
        return n;
      }
    }
  }

  NodePtr product() {
    auto n = unary();
    while (true) {
      if (eat('*')) {
        n = binary(Expression::Node::multiply, n, unary());
      } else if (eat('/')) {
        n = binary(Expression::Node::divide, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return binary(Expression::Node::negate, unary(), nullptr);
    if (eat('+')) return unary();
    return atom();
  }

  NodePtr atom() {
    skip();
    if (eat('(')) {
      auto n = sum();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    auto n = std::make_shared<Expression::Node>();
    const char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      n->kind = Expression::Node::name;
      n->id = std::string(s_.substr(start, pos_ - start));
      return n;
    }
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number or name");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    n->kind = Expression::Node::number;
    n->value = v;
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, const std::map<std::string, double>& params) {
  switch (n.kind) {
    case Expression::Node::number: return n.value;
    case Expression::Node::name: {
      auto it = params.find(n.id);
      if (it == params.end()) throw UnknownVariable("unknown parameter " + n.id);
      return it->second;
    }
    case Expression::Node::negate: return -eval(*n.lhs, params);
    case Expression::Node::add: return eval(*n.lhs, params) + eval(*n.rhs, params);
    case Expression::Node::subtract: return eval(*n.lhs, params) - eval(*n.rhs, params);
    case Expression::Node::multiply: return eval(*n.lhs, params) * eval(*n.rhs, params);
    case Expression::Node::divide: return eval(*n.lhs, params) / eval(*n.rhs, params);
  }
  return 0.0;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).run();
  e.text_ = std::string(text);
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  auto n = std::make_shared<Node>();
  n->value = value;
  e.root_ = n;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  e.text_ = buf;
  return e;
}

double Expression::evaluate(const std::map<std::string, double>& params) const {
  if (!root_) return 0.0;
  return eval(*root_, params);
}

std::vector<double> Parameter::values() const {
  if (steps < 1) throw InvalidConfig("parameter " + name + " needs at least one step");
  std::vector<double> out;
  if (steps == 1) return {min};
  for (int i = 0; i < steps; ++i) {
    out.push_back(i + 1 == steps ? max : min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

std::size_t FamilySpec::grid_size() const {
  std::size_t total = 1;
  for (const auto& p : parameters) {
    if (p.steps < 1) throw InvalidConfig("parameter " + p.name + " needs at least one step");
    total *= static_cast<std::size_t>(p.steps);
    if (total > kMaxGrid) throw InvalidConfig("parameter grid exceeds " + std::to_string(kMaxGrid) + " points");
  }
  return total;
}

std::map<std::string, double> FamilySpec::grid_point(std::size_t index) const {
  std::map<std::string, double> out;
  for (std::size_t k = parameters.size(); k-- > 0;) {
    const auto vals = parameters[k].values();
    out[parameters[k].name] = vals[index % vals.size()];
    index /= vals.size();
  }
  return out;
}

std::string FamilySpec::describe_point(std::size_t index) const {
  const auto point = grid_point(index);
  std::string out;
  for (const auto& p : parameters) {
    out += (out.empty() ? "" : ", ") + p.name + "=" + format_value(point.at(p.name));
  }
  return out.empty() ? "(no parameters)" : out;
}

FactorizationSpec FamilySpec::instantiate(std::size_t index) const {
  const auto point = grid_point(index);
  auto size_of = [&](const std::string& name) -> std::size_t {
    for (const auto& v : variables) {
      if (v.name == name) return static_cast<std::size_t>(v.size);
    }
    throw UnknownVariable("unknown variable " + name);
  };
  FactorizationSpec spec;
  spec.variables = variables;
  for (const auto& f : factors) {
    Factor out{f.child, f.parents, {}};
    const std::string where = "grid point " + describe_point(index) + ", factor " + out.describe();
    std::size_t cols = 1;
    for (const auto& c : f.child) cols *= size_of(c);
    for (const auto& e : f.table) {
      const double v = e.evaluate(point);
      if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12) {
        throw InvalidFactorization(where + ": entry " + e.text() + " = " + format_value(v) + " is not a probability");
      }
      out.table.push_back(std::min(1.0, std::max(0.0, v)));
    }
    if (cols > 0 && out.table.size() % cols == 0) {
      for (std::size_t r = 0; r < out.table.size() / cols; ++r) {
        double total = 0.0;
        for (std::size_t k = 0; k < cols; ++k) total += out.table[r * cols + k];
        if (std::abs(total - 1.0) > 1e-9) {
          throw InvalidFactorization(where + ": row " + std::to_string(r) + " sums to " + format_value(total));
        }
      }
    }
    spec.factors.push_back(std::move(out));
  }
  return spec;
}

}  // namespace crcc

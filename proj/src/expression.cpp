#include "oppenheim/expression.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace oppenheim {

namespace detail {

enum class Op { constant, pi, e, add, sub, mul, div, neg, pow, sqrt, exp, log, abs };

struct Node {
  Op op = Op::constant;
  Rational value;  // for constant
  std::vector<std::shared_ptr<const Node>> args;
  std::optional<Rational> exact;
};

}  // namespace detail

namespace {

using detail::Node;
using detail::Op;
using NodePtr = std::shared_ptr<const Node>;

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  BigInt n = mp::numerator(x), d = mp::denominator(x);
  BigInt rn = mp::sqrt(n), rd = mp::sqrt(d);
  if (rn * rn == n && rd * rd == d) return Rational(rn) / Rational(rd);
  return std::nullopt;
}

std::optional<Rational> fold(Op op, const std::vector<NodePtr>& a) {
  auto ex = [&](std::size_t i) -> const std::optional<Rational>& { return a[i]->exact; };
  switch (op) {
    case Op::add:
      if (ex(0) && ex(1)) return *ex(0) + *ex(1);
      break;
    case Op::sub:
      if (ex(0) && ex(1)) return *ex(0) - *ex(1);
      break;
    case Op::mul:
      if (ex(0) && ex(1)) return *ex(0) * *ex(1);
      if ((ex(0) && *ex(0) == 0) || (ex(1) && *ex(1) == 0)) return Rational(0);
      break;
    case Op::div:
      if (ex(1) && *ex(1) == 0) throw std::domain_error("division by zero in coefficient expression");
      if (ex(0) && ex(1)) return *ex(0) / *ex(1);
      break;
    case Op::neg:
      if (ex(0)) return Rational(-*ex(0));
      break;
    case Op::abs:
      if (ex(0)) return Rational(mp::abs(*ex(0)));
      break;
    case Op::sqrt:
      if (ex(0)) {
        if (*ex(0) < 0) throw std::domain_error("square root of a negative number");
        return exact_sqrt(*ex(0));
      }
      break;
    case Op::pow:
      if (ex(0) && ex(1) && mp::denominator(*ex(1)) == 1 && mp::abs(*ex(1)) <= 4096) {
        long n = mp::numerator(*ex(1)).convert_to<long>();
        if (*ex(0) == 0 && n < 0) throw std::domain_error("zero to a negative power");
        Rational base = n < 0 ? Rational(1 / *ex(0)) : *ex(0);
        unsigned un = static_cast<unsigned>(n < 0 ? -n : n);
        return Rational(mp::pow(mp::numerator(base), un)) / Rational(mp::pow(mp::denominator(base), un));
      }
      break;
    case Op::exp:
      if (ex(0) && *ex(0) == 0) return Rational(1);
      break;
    case Op::log:
      if (ex(0) && *ex(0) <= 0) throw std::domain_error("logarithm of a non-positive number");
      if (ex(0) && *ex(0) == 1) return Rational(0);
      break;
    default:
      break;
  }
  return std::nullopt;
}

NodePtr make(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->exact = fold(op, args);
  n->args = std::move(args);
  if (n->exact) {
    n->op = Op::constant;
    n->value = *n->exact;
    n->args.clear();
  }
  return n;
}

NodePtr make_const(const Rational& x) {
  auto n = std::make_shared<Node>();
  n->value = x;
  n->exact = x;
  return n;
}

Interval eval(const Node& n, mpfr_prec_t bits) {
  switch (n.op) {
    case Op::constant:
      return Interval(n.value, bits);
    case Op::pi:
      return Interval::pi(bits);
    case Op::e:
      return Interval::euler(bits);
    case Op::add:
      return eval(*n.args[0], bits) + eval(*n.args[1], bits);
    case Op::sub:
      return eval(*n.args[0], bits) - eval(*n.args[1], bits);
    case Op::mul:
      return eval(*n.args[0], bits) * eval(*n.args[1], bits);
    case Op::div:
      return eval(*n.args[0], bits) / eval(*n.args[1], bits);
    case Op::neg:
      return -eval(*n.args[0], bits);
    case Op::abs:
      return abs(eval(*n.args[0], bits));
    case Op::sqrt:
      return sqrt(eval(*n.args[0], bits));
    case Op::exp:
      return exp(eval(*n.args[0], bits));
    case Op::log:
      return log(eval(*n.args[0], bits));
    case Op::pow: {
      const auto& ex = n.args[1]->exact;
      if (ex && mp::denominator(*ex) == 1 && mp::abs(*ex) <= 1000000)
        return pow(eval(*n.args[0], bits), mp::numerator(*ex).convert_to<long>());
      Interval base = eval(*n.args[0], bits);
      if (!base.certainly_positive()) throw std::domain_error("non-integer power of a base not known to be positive");
      return exp(eval(*n.args[1], bits) * log(base));
    }
  }
  throw std::logic_error("unknown expression node");
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr n = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse coefficient '" + s_ + "': " + what);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(Op::add, {lhs, term()});
      else if (eat('-'))
        lhs = make(Op::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Op::mul, {lhs, unary()});
      else if (eat('/'))
        lhs = make(Op::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, {unary()});
    if (eat('+')) return unary();
    NodePtr base = primary();
    if (eat('^')) return make(Op::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      NodePtr n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string name = s_.substr(start, i_ - start);
      if (name == "pi") return make(Op::pi, {});
      if (name == "e") return make(Op::e, {});
      Op op;
      if (name == "sqrt")
        op = Op::sqrt;
      else if (name == "exp")
        op = Op::exp;
      else if (name == "log" || name == "ln")
        op = Op::log;
      else if (name == "abs")
        op = Op::abs;
      else
        fail("unknown name '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!eat(')')) fail("missing ')'");
      return make(op, {arg});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
    // exponent only when followed by a digit or sign+digit, so "2e" stays 2*e is not accepted silently
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        i_ = j;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
    }
    try {
      return make_const(parse_rational(s_.substr(start, i_ - start)));
    } catch (const std::invalid_argument&) {
      fail("malformed number");
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Coefficient::Coefficient() : Coefficient(Rational(0)) {}

Coefficient::Coefficient(long long n) : Coefficient(Rational(n)) {}

Coefficient::Coefficient(const Rational& exact)
    : node_(make_const(exact)), exact_(exact), text_(to_string(exact)), approx_(to_long_double(exact)) {}

Coefficient::Coefficient(std::shared_ptr<const detail::Node> node, std::string text)
    : node_(std::move(node)), exact_(node_->exact), text_(std::move(text)) {
  if (exact_) {
    text_ = to_string(*exact_);
    approx_ = to_long_double(*exact_);
  } else {
    approx_ = eval(*node_, 128).mid();
  }
}

Coefficient Coefficient::parse(const std::string& text) {
  Parser p(text);
  NodePtr n = p.run();
  std::string trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.erase(0, 1);
  return Coefficient(n, trimmed);
}

const Rational& Coefficient::rational() const {
  if (!exact_) throw std::logic_error("coefficient '" + text_ + "' is not rational");
  return *exact_;
}

Interval Coefficient::enclose(mpfr_prec_t bits) const { return eval(*node_, bits); }

long double Coefficient::approx() const { return approx_; }

Float50 Coefficient::approx50() const {
  if (exact_) return Float50(mp::numerator(*exact_)) / Float50(mp::denominator(*exact_));
  return eval(*node_, 200).mid_float50();
}

int Coefficient::sign() const {
  if (exact_) return exact_->sign();
  for (mpfr_prec_t bits = 128; bits <= 4096; bits *= 2) {
    Interval v = enclose(bits);
    if (v.certainly_positive()) return 1;
    if (v.certainly_negative()) return -1;
  }
  throw std::domain_error("sign of '" + text_ + "' undecidable at 4096 bits");
}

namespace {

std::string wrap(const std::string& s) {
  for (char c : s)
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == ' ') return "(" + s + ")";
  return s;
}

}  // namespace

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  return Coefficient(make(Op::add, {a.node_, b.node_}), a.text_ + " + " + wrap(b.text_));
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) {
  return Coefficient(make(Op::sub, {a.node_, b.node_}), a.text_ + " - " + wrap(b.text_));
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  return Coefficient(make(Op::mul, {a.node_, b.node_}), wrap(a.text_) + "*" + wrap(b.text_));
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
  return Coefficient(make(Op::div, {a.node_, b.node_}), wrap(a.text_) + "/" + wrap(b.text_));
}

Coefficient operator-(const Coefficient& a) { return Coefficient(make(Op::neg, {a.node_}), "-" + wrap(a.text_)); }

Coefficient abs(const Coefficient& a) {
  if (a.sign() >= 0) return a;
  return -a;
}

}  // namespace oppenheim

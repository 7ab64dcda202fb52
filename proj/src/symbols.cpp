#include "borelcalc/symbols.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "borelcalc/error.hpp"
#include "borelcalc/numerics.hpp"

namespace borelcalc {

// ---------------------------------------------------------------------------
// Construction with light constant folding

namespace expr {

namespace {
ExprPtr make(Op op, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}
bool is_num(const ExprPtr& e, cx v) { return e->op == Op::Num && e->value == v; }
bool is_num(const ExprPtr& e) { return e->op == Op::Num; }
}  // namespace

ExprPtr num(cx v) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Num;
  e->value = v;
  return e;
}

ExprPtr var() { return make(Op::Var); }

ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_num(a) && is_num(b)) return num(a->value + b->value);
  if (is_num(a, 0.0)) return b;
  if (is_num(b, 0.0)) return a;
  return make(Op::Add, std::move(a), std::move(b));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (is_num(a) && is_num(b)) return num(a->value - b->value);
  if (is_num(b, 0.0)) return a;
  if (is_num(a, 0.0)) return neg(std::move(b));
  return make(Op::Sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_num(a) && is_num(b)) return num(a->value * b->value);
  if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
  if (is_num(a, 1.0)) return b;
  if (is_num(b, 1.0)) return a;
  return make(Op::Mul, std::move(a), std::move(b));
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  if (is_num(b, 1.0)) return a;
  if (is_num(a, 0.0)) return num(0.0);
  if (is_num(a) && is_num(b) && b->value != 0.0) return num(a->value / b->value);
  return make(Op::Div, std::move(a), std::move(b));
}

ExprPtr neg(ExprPtr a) {
  if (is_num(a)) return num(-a->value);
  return make(Op::Neg, std::move(a));
}

ExprPtr pow(ExprPtr a, int n) {
  if (n == 0) return num(1.0);
  if (n == 1) return a;
  auto e = std::make_shared<Expr>();
  e->op = Op::Pow;
  e->exponent = n;
  e->lhs = std::move(a);
  return e;
}

ExprPtr func(Op op, ExprPtr a) { return make(op, std::move(a)); }

}  // namespace expr

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (static_cast<unsigned char>(text_[i]) > 127) fail(i, "non-ASCII character");
    }
    skip();
    if (pos_ >= text_.size()) fail(pos_, "empty expression");
    auto e = parse_expr();
    skip();
    if (pos_ < text_.size()) fail(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg, ErrorKind kind = ErrorKind::ParseError) {
    throw ParseError(kind, at, msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    auto lhs = parse_term();
    while (true) {
      if (accept('+')) {
        lhs = raw(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = raw(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    auto lhs = parse_unary();
    while (true) {
      if (accept('*')) {
        lhs = raw(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = raw(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return raw(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_factor();
  }

  ExprPtr parse_factor() {
    auto base = parse_base();
    if (!accept('^')) return base;
    const long long n = parse_exponent();
    auto e = std::make_shared<Expr>();
    e->op = Op::Pow;
    e->exponent = static_cast<int>(n);
    e->lhs = base;
    return e;
  }

  // int ('^' int)* evaluated right to left.
  long long parse_exponent() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(pos_, "exponent must be a non-negative integer");
    }
    long long base = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      base = base * 10 + (text_[pos_] - '0');
      if (base > 1'000'000) fail(start, "exponent too large");
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail(pos_, "exponent must be an integer");
    }
    if (!accept('^')) return base;
    const long long power = parse_exponent();
    long long result = 1;
    for (long long k = 0; k < power; ++k) {
      result *= base;
      if (result > 1'000'000) fail(start, "exponent too large");
    }
    return result;
  }

  ExprPtr parse_base() {
    skip();
    if (pos_ >= text_.size()) fail(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    if (accept('(')) {
      auto e = parse_expr();
      if (!accept(')')) fail(pos_, "expected ')'");
      return e;
    }
    fail(pos_, std::string("unexpected '") + c + "'");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits == ".") fail(start, "malformed number");
    char* end = nullptr;
    const double v = std::strtod(digits.c_str(), &end);
    if (end != digits.c_str() + digits.size()) fail(start, "malformed number");
    // Imaginary literal: the 'i' must not start a longer identifier.
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return expr::num(cx(0.0, v));
    }
    return expr::num(cx(v, 0.0));
  }

  ExprPtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "z") return expr::var();
    if (name == "i") return expr::num(cx(0.0, 1.0));
    if (name == "pi") return expr::num(cx(std::numbers::pi, 0.0));
    Op op;
    if (name == "exp") {
      op = Op::Exp;
    } else if (name == "sin") {
      op = Op::Sin;
    } else if (name == "cos") {
      op = Op::Cos;
    } else if (name == "sinh") {
      op = Op::Sinh;
    } else if (name == "cosh") {
      op = Op::Cosh;
    } else {
      fail(start, "unknown identifier '" + std::string(name) + "'", ErrorKind::UnknownFunction);
    }
    if (!accept('(')) fail(pos_, "expected '(' after " + std::string(name));
    auto arg = parse_expr();
    if (!accept(')')) fail(pos_, "expected ')'");
    return raw(op, arg);
  }

  // Parsed trees keep their literal structure (no folding).
  static ExprPtr raw(Op op, ExprPtr a, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* func_name(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    default: return "?";
  }
}

}  // namespace

ExprPtr parse_symbol(std::string_view text) { return Parser(text).run(); }

std::string unparse(const ExprPtr& e) {
  switch (e->op) {
    case Op::Num: {
      const cx v = e->value;
      if (v.imag() == 0.0 && v.real() >= 0.0 && !std::signbit(v.real())) return format_real(v.real());
      if (v.real() == 0.0 && v.imag() >= 0.0) return format_real(v.imag()) + "i";
      std::string s = "(" + format_real(v.real());
      if (v.imag() != 0.0) {
        s += v.imag() < 0 ? "-" : "+";
        s += format_real(std::abs(v.imag())) + "i";
      }
      return s + ")";
    }
    case Op::Var: return "z";
    case Op::Add: return "(" + unparse(e->lhs) + "+" + unparse(e->rhs) + ")";
    case Op::Sub: return "(" + unparse(e->lhs) + "-" + unparse(e->rhs) + ")";
    case Op::Mul: return "(" + unparse(e->lhs) + "*" + unparse(e->rhs) + ")";
    case Op::Div: return "(" + unparse(e->lhs) + "/" + unparse(e->rhs) + ")";
    case Op::Neg: return "(-" + unparse(e->lhs) + ")";
    case Op::Pow: return "(" + unparse(e->lhs) + "^" + std::to_string(e->exponent) + ")";
    default: return std::string(func_name(e->op)) + "(" + unparse(e->lhs) + ")";
  }
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Num: return a->value == b->value;
    case Op::Var: return true;
    case Op::Pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    default: return equal(a->lhs, b->lhs);
  }
}

ExprPtr differentiate(const ExprPtr& e) {
  using namespace expr;
  switch (e->op) {
    case Op::Num: return num(0.0);
    case Op::Var: return num(1.0);
    case Op::Add: return add(differentiate(e->lhs), differentiate(e->rhs));
    case Op::Sub: return sub(differentiate(e->lhs), differentiate(e->rhs));
    case Op::Neg: return neg(differentiate(e->lhs));
    case Op::Mul:
      return add(mul(differentiate(e->lhs), e->rhs), mul(e->lhs, differentiate(e->rhs)));
    case Op::Div: {
      // (n/d)' = (n' - (n/d) d') / d
      auto dn = differentiate(e->lhs);
      auto dd = differentiate(e->rhs);
      return div(sub(dn, mul(e, dd)), e->rhs);
    }
    case Op::Pow:
      return mul(mul(num(double(e->exponent)), pow(e->lhs, e->exponent - 1)), differentiate(e->lhs));
    case Op::Exp: return mul(e, differentiate(e->lhs));
    case Op::Sin: return mul(func(Op::Cos, e->lhs), differentiate(e->lhs));
    case Op::Cos: return neg(mul(func(Op::Sin, e->lhs), differentiate(e->lhs)));
    case Op::Sinh: return mul(func(Op::Cosh, e->lhs), differentiate(e->lhs));
    case Op::Cosh: return mul(func(Op::Sinh, e->lhs), differentiate(e->lhs));
  }
  return num(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

cx int_pow(cx base, int n) {
  cx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

constexpr double kRemovableThreshold = 1e-8;
constexpr double kFallbackRadius = 0.1;
constexpr int kFallbackNodes = 32;

cx eval_node(const Expr& e, cx z);

// Constant Taylor coefficient of the quotient about z.
cx removable_fallback(const Expr& quotient, cx z) {
  cx acc = 0.0;
  for (int j = 0; j < kFallbackNodes; ++j) {
    const double t = 2.0 * kPi * (double(j) + 0.5) / kFallbackNodes;
    const cx w = z + kFallbackRadius * cx(std::cos(t), std::sin(t));
    acc += eval_node(*quotient.lhs, w) / eval_node(*quotient.rhs, w);
  }
  return acc / double(kFallbackNodes);
}

cx eval_node(const Expr& e, cx z) {
  switch (e.op) {
    case Op::Num: return e.value;
    case Op::Var: return z;
    case Op::Add: return eval_node(*e.lhs, z) + eval_node(*e.rhs, z);
    case Op::Sub: return eval_node(*e.lhs, z) - eval_node(*e.rhs, z);
    case Op::Mul: return eval_node(*e.lhs, z) * eval_node(*e.rhs, z);
    case Op::Neg: return -eval_node(*e.lhs, z);
    case Op::Div: {
      const cx d = eval_node(*e.rhs, z);
      if (std::abs(d) < kRemovableThreshold) return removable_fallback(e, z);
      return eval_node(*e.lhs, z) / d;
    }
    case Op::Pow: return int_pow(eval_node(*e.lhs, z), e.exponent);
    case Op::Exp: return std::exp(eval_node(*e.lhs, z));
    case Op::Sin: return std::sin(eval_node(*e.lhs, z));
    case Op::Cos: return std::cos(eval_node(*e.lhs, z));
    case Op::Sinh: return std::sinh(eval_node(*e.lhs, z));
    case Op::Cosh: return std::cosh(eval_node(*e.lhs, z));
  }
  return 0.0;
}

}  // namespace

cx eval_expr(const ExprPtr& e, cx z) { return eval_node(*e, z); }

// ---------------------------------------------------------------------------
// Power series

namespace series {

std::vector<cx> mul(const std::vector<cx>& a, const std::vector<cx>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<cx> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<cx> div(const std::vector<cx>& a, const std::vector<cx>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return {};
  if (b[0] == 0.0) throw Error(ErrorKind::SeriesDivisionByZero, "denominator series has zero constant term");
  std::vector<cx> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    cx acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
    c[k] = acc / b[0];
  }
  return c;
}

std::vector<cx> exp(const std::vector<cx>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  // b = exp(a - a0) via b_k = (1/k) Σ_{j=1}^k j a_j b_{k-j}
  std::vector<cx> b(n, 0.0);
  b[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    cx acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += double(j) * a[j] * b[k - j];
    b[k] = acc / double(k);
  }
  const cx scale = std::exp(a[0]);
  for (auto& v : b) v *= scale;
  return b;
}

std::vector<cx> pow(const std::vector<cx>& a, int n) {
  std::vector<cx> result(a.size(), 0.0);
  if (!result.empty()) result[0] = 1.0;
  std::vector<cx> base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

std::size_t valuation(const std::vector<cx>& a, double rel_tol) {
  double scale = 0.0;
  for (const auto& v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return a.size();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k]) > rel_tol * scale) return k;
  }
  return a.size();
}

}  // namespace series

namespace {

std::vector<cx> scaled(std::vector<cx> v, cx s) {
  for (auto& x : v) x *= s;
  return v;
}

std::vector<cx> combine(const std::vector<cx>& a, const std::vector<cx>& b, cx sa, cx sb) {
  std::vector<cx> c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = sa * a[k] + sb * b[k];
  return c;
}

std::vector<cx> series_node(const Expr& e, cx center, std::size_t n) {
  switch (e.op) {
    case Op::Num: {
      std::vector<cx> s(n, 0.0);
      s[0] = e.value;
      return s;
    }
    case Op::Var: {
      std::vector<cx> s(n, 0.0);
      s[0] = center;
      if (n > 1) s[1] = 1.0;
      return s;
    }
    case Op::Add: return combine(series_node(*e.lhs, center, n), series_node(*e.rhs, center, n), 1.0, 1.0);
    case Op::Sub: return combine(series_node(*e.lhs, center, n), series_node(*e.rhs, center, n), 1.0, -1.0);
    case Op::Neg: return scaled(series_node(*e.lhs, center, n), -1.0);
    case Op::Mul: return series::mul(series_node(*e.lhs, center, n), series_node(*e.rhs, center, n));
    case Op::Pow: return series::pow(series_node(*e.lhs, center, n), e.exponent);
    case Op::Div: {
      const auto den_probe = series_node(*e.rhs, center, n);
      const std::size_t v = series::valuation(den_probe);
      if (v >= n) {
        throw Error(ErrorKind::SeriesDivisionByZero, "denominator series vanishes to the requested order");
      }
      if (v == 0) return series::div(series_node(*e.lhs, center, n), den_probe);
      // Removable singularity: cancel z^v from numerator and denominator.
      auto num = series_node(*e.lhs, center, n + v);
      auto den = series_node(*e.rhs, center, n + v);
      double num_scale = 0.0;
      for (const auto& c : num) num_scale = std::max(num_scale, std::abs(c));
      double den_scale = 0.0;
      for (const auto& c : den) den_scale = std::max(den_scale, std::abs(c));
      for (std::size_t k = 0; k < v; ++k) {
        if (std::abs(num[k]) > 1e-12 * std::max(num_scale, den_scale)) {
          throw Error(ErrorKind::SeriesDivisionByZero,
                      "quotient has a pole: numerator valuation below denominator valuation");
        }
      }
      std::vector<cx> a(num.begin() + std::ptrdiff_t(v), num.end());
      std::vector<cx> b(den.begin() + std::ptrdiff_t(v), den.end());
      return series::div(a, b);
    }
    case Op::Exp: return series::exp(series_node(*e.lhs, center, n));
    case Op::Sin: {
      const auto a = series_node(*e.lhs, center, n);
      // sin a = (e^{ia} - e^{-ia}) / 2i
      return scaled(combine(series::exp(scaled(a, kI)), series::exp(scaled(a, -kI)), 1.0, -1.0),
                    1.0 / (2.0 * kI));
    }
    case Op::Cos: {
      const auto a = series_node(*e.lhs, center, n);
      return scaled(combine(series::exp(scaled(a, kI)), series::exp(scaled(a, -kI)), 1.0, 1.0), 0.5);
    }
    case Op::Sinh: {
      const auto a = series_node(*e.lhs, center, n);
      return scaled(combine(series::exp(a), series::exp(scaled(a, -1.0)), 1.0, -1.0), 0.5);
    }
    case Op::Cosh: {
      const auto a = series_node(*e.lhs, center, n);
      return scaled(combine(series::exp(a), series::exp(scaled(a, -1.0)), 1.0, 1.0), 0.5);
    }
  }
  return std::vector<cx>(n, 0.0);
}

}  // namespace

std::vector<cx> expr_series(const ExprPtr& e, cx center, std::size_t n) {
  if (n == 0) return {};
  return series_node(*e, center, n);
}

// ---------------------------------------------------------------------------
// Symbol backends

namespace {

constexpr std::size_t kSymbolicOrders = 4;

class ExprSymbol final : public SymbolImpl {
 public:
  explicit ExprSymbol(ExprPtr e) {
    derivs_.push_back(std::move(e));
    for (std::size_t j = 1; j <= kSymbolicOrders; ++j) derivs_.push_back(differentiate(derivs_.back()));
  }
  cx eval(cx z) const override { return eval_expr(derivs_[0], z); }
  std::vector<cx> taylor(std::size_t n) const override { return expr_series(derivs_[0], 0.0, n); }
  std::optional<cx> exact_derivative(std::size_t j, cx z) const override {
    if (j > kSymbolicOrders) return std::nullopt;
    return eval_expr(derivs_[j], z);
  }
  std::string describe() const override { return unparse(derivs_[0]); }
  const ExprPtr* expression() const override { return &derivs_[0]; }

 private:
  std::vector<ExprPtr> derivs_;
};

class PolynomialSymbol final : public SymbolImpl {
 public:
  PolynomialSymbol(std::vector<cx> c, bool truncated) : c_(std::move(c)), truncated_(truncated) {
    if (c_.empty()) c_.push_back(0.0);
  }
  cx eval(cx z) const override { return horner(c_, z); }
  std::vector<cx> taylor(std::size_t n) const override {
    std::vector<cx> t(n, 0.0);
    for (std::size_t k = 0; k < std::min(n, c_.size()); ++k) t[k] = c_[k];
    return t;
  }
  std::optional<cx> exact_derivative(std::size_t j, cx z) const override {
    if (j >= c_.size()) return cx(0.0);
    std::vector<cx> d(c_.size() - j);
    for (std::size_t k = j; k < c_.size(); ++k) {
      double falling = 1.0;
      for (std::size_t m = 0; m < j; ++m) falling *= double(k - m);
      d[k - j] = c_[k] * falling;
    }
    return horner(d, z);
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "coefficients[" << c_.size() << "]";
    return os.str();
  }
  bool truncated() const override { return truncated_; }

 private:
  static cx horner(const std::vector<cx>& c, cx z) {
    cx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
  }
  std::vector<cx> c_;
  bool truncated_;
};

class CompositeSymbol final : public SymbolImpl {
 public:
  enum class Kind { Sum, Difference, Product };
  CompositeSymbol(Kind kind, Symbol a, Symbol b) : kind_(kind), a_(std::move(a)), b_(std::move(b)) {}

  cx eval(cx z) const override {
    const cx x = a_.impl().eval(z), y = b_.impl().eval(z);
    switch (kind_) {
      case Kind::Sum: return x + y;
      case Kind::Difference: return x - y;
      case Kind::Product: return x * y;
    }
    return 0.0;
  }
  std::vector<cx> taylor(std::size_t n) const override {
    const auto x = a_.impl().taylor(n), y = b_.impl().taylor(n);
    switch (kind_) {
      case Kind::Sum: return combine(x, y, 1.0, 1.0);
      case Kind::Difference: return combine(x, y, 1.0, -1.0);
      case Kind::Product: return series::mul(x, y);
    }
    return {};
  }
  std::optional<cx> exact_derivative(std::size_t j, cx z) const override {
    if (kind_ != Kind::Product) {
      auto x = a_.impl().exact_derivative(j, z);
      auto y = b_.impl().exact_derivative(j, z);
      if (!x || !y) return std::nullopt;
      return kind_ == Kind::Sum ? *x + *y : *x - *y;
    }
    // Leibniz rule.
    cx acc = 0.0;
    double binom = 1.0;
    for (std::size_t k = 0; k <= j; ++k) {
      auto x = a_.impl().exact_derivative(k, z);
      auto y = b_.impl().exact_derivative(j - k, z);
      if (!x || !y) return std::nullopt;
      acc += binom * *x * *y;
      binom = binom * double(j - k) / double(k + 1);
    }
    return acc;
  }
  std::string describe() const override {
    const char* sym = kind_ == Kind::Sum ? "+" : kind_ == Kind::Difference ? "-" : "*";
    return "(" + a_.describe() + sym + b_.describe() + ")";
  }
  bool truncated() const override { return a_.truncated() || b_.truncated(); }

 private:
  Kind kind_;
  Symbol a_, b_;
};

}  // namespace

Symbol::Symbol(std::shared_ptr<const SymbolImpl> impl) : impl_(std::move(impl)) {}

Symbol Symbol::parse(std::string_view text) { return from_expr(parse_symbol(text)); }

Symbol Symbol::from_expr(ExprPtr e) { return Symbol(std::make_shared<ExprSymbol>(std::move(e))); }

Symbol Symbol::polynomial(std::vector<cx> coeffs, bool truncated) {
  return Symbol(std::make_shared<PolynomialSymbol>(std::move(coeffs), truncated));
}

Symbol Symbol::constant(cx c) { return from_expr(expr::num(c)); }

cx Symbol::operator()(cx z) const { return eval_symbol(*this, z); }
std::vector<cx> Symbol::taylor(std::size_t n) const { return taylor_coeffs(*this, n); }
cx Symbol::derivative(std::size_t j, cx z) const { return symbol_derivative(*this, j, z); }
std::string Symbol::describe() const { return impl_->describe(); }

Symbol operator+(const Symbol& a, const Symbol& b) {
  if (a.expression() && b.expression()) return Symbol::from_expr(expr::add(*a.expression(), *b.expression()));
  return Symbol(std::make_shared<CompositeSymbol>(CompositeSymbol::Kind::Sum, a, b));
}

Symbol operator-(const Symbol& a, const Symbol& b) {
  if (a.expression() && b.expression()) return Symbol::from_expr(expr::sub(*a.expression(), *b.expression()));
  return Symbol(std::make_shared<CompositeSymbol>(CompositeSymbol::Kind::Difference, a, b));
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  if (a.expression() && b.expression()) return Symbol::from_expr(expr::mul(*a.expression(), *b.expression()));
  return Symbol(std::make_shared<CompositeSymbol>(CompositeSymbol::Kind::Product, a, b));
}

cx eval_symbol(const Symbol& s, cx z) {
  const cx v = s.impl().eval(z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(ErrorKind::NonFinite, "symbol value overflows at z = (" + std::to_string(z.real()) + ", " +
                                          std::to_string(z.imag()) + ")");
  }
  return v;
}

std::vector<cx> taylor_coeffs(const Symbol& s, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadRange, "taylor_coeffs requires n >= 1");
  return s.impl().taylor(n);
}

cx cauchy_derivative(const Symbol& s, std::size_t j, cx z, double radius) {
  double fact = 1.0;
  for (std::size_t k = 2; k <= j; ++k) fact *= double(k);
  QuadratureOptions opts;
  opts.tol = 1e-13;
  opts.exec = kernels::Exec::Serial;  // callers parallelise at a coarser level
  const auto integrand = [&](cx w) {
    const cx d = w - z;
    cx p = 1.0;
    for (std::size_t k = 0; k <= j; ++k) p *= d;
    return eval_symbol(s, w) / p;
  };
  return fact * contour_integrate(integrand, Circle{z, radius, 32}, opts).value;
}

cx symbol_derivative(const Symbol& s, std::size_t j, cx z) {
  if (j == 0) return eval_symbol(s, z);
  if (auto exact = s.impl().exact_derivative(j, z)) {
    if (!std::isfinite(exact->real()) || !std::isfinite(exact->imag())) {
      throw Error(ErrorKind::NonFinite, "symbol derivative overflows");
    }
    return *exact;
  }
  double radius = 0.5;
  for (int attempt = 0;; ++attempt) {
    try {
      return cauchy_derivative(s, j, z, radius);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonFinite || attempt >= 6) throw;
      radius *= 0.5;
    }
  }
}

}  // namespace borelcalc

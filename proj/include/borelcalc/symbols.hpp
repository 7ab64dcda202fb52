#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace borelcalc {

using cx = std::complex<double>;

// ---------------------------------------------------------------------------
// Expression trees

enum class Op { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Sin, Cos, Sinh, Cosh };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. `value` is used by Num, `exponent` by Pow,
/// `lhs` by unary nodes and functions, `lhs`/`rhs` by binary nodes.
struct Expr {
  Op op = Op::Num;
  cx value{0.0, 0.0};
  int exponent = 0;
  ExprPtr lhs;
  ExprPtr rhs;
};

namespace expr {
ExprPtr num(cx v);
ExprPtr var();
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr pow(ExprPtr a, int n);
ExprPtr func(Op op, ExprPtr a);
}  // namespace expr

/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('+'|'-') unary | factor
///   factor := base ('^' int)*          (right-associative, int >= 0)
///   base   := number | number 'i' | 'i' | 'pi' | 'z'
///           | func '(' expr ')' | '(' expr ')'
///   func   := exp | sin | cos | sinh | cosh
/// Throws ParseError (kind ParseError or UnknownFunction) with the offset.
ExprPtr parse_symbol(std::string_view text);

/// Fully parenthesised text that parses back to an equal tree.
std::string unparse(const ExprPtr& e);

/// Structural equality.
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Symbolic d/dz. Quotients differentiate as (n' - q d')/d so that the
/// denominator never grows.
ExprPtr differentiate(const ExprPtr& e);

/// Pointwise value. Quotient nodes whose denominator is below 1e-8 in
/// modulus are evaluated through the constant Taylor coefficient of the
/// quotient about z (a 32-point Cauchy mean on a radius-0.1 circle).
cx eval_expr(const ExprPtr& e, cx z);

/// First n Taylor coefficients about `center` via power-series arithmetic.
std::vector<cx> expr_series(const ExprPtr& e, cx center, std::size_t n);

// ---------------------------------------------------------------------------
// Truncated power series helpers (coefficient vectors of equal length).

namespace series {
std::vector<cx> mul(const std::vector<cx>& a, const std::vector<cx>& b);
/// a / b with b[0] != 0.
std::vector<cx> div(const std::vector<cx>& a, const std::vector<cx>& b);
std::vector<cx> exp(const std::vector<cx>& a);
std::vector<cx> pow(const std::vector<cx>& a, int n);
/// Index of the first coefficient above rel_tol * max|a|, or a.size().
std::size_t valuation(const std::vector<cx>& a, double rel_tol = 1e-13);
}  // namespace series

// ---------------------------------------------------------------------------
// Symbols

/// Backend of a symbol. Implementations must be immutable after
/// construction so symbols can be evaluated from several threads.
class SymbolImpl {
 public:
  virtual ~SymbolImpl() = default;
  virtual cx eval(cx z) const = 0;
  virtual std::vector<cx> taylor(std::size_t n) const = 0;
  /// φ^{(j)}(z) when the backend has a closed form for order j.
  virtual std::optional<cx> exact_derivative(std::size_t j, cx z) const = 0;
  virtual std::string describe() const = 0;
  /// True when the backend is a truncated stand-in for a richer symbol.
  virtual bool truncated() const { return false; }
  virtual const ExprPtr* expression() const { return nullptr; }
};

/// An entire symbol φ. Cheap to copy (shared immutable backend).
class Symbol {
 public:
  explicit Symbol(std::shared_ptr<const SymbolImpl> impl);

  static Symbol parse(std::string_view text);
  static Symbol from_expr(ExprPtr e);
  /// Σ coeffs[k] z^k. `truncated` marks a coefficient list standing in for
  /// a symbol outside the expression grammar.
  static Symbol polynomial(std::vector<cx> coeffs, bool truncated = false);
  static Symbol constant(cx c);

  cx operator()(cx z) const;
  std::vector<cx> taylor(std::size_t n) const;
  cx derivative(std::size_t j, cx z) const;
  std::string describe() const;
  bool truncated() const { return impl_->truncated(); }
  const ExprPtr* expression() const { return impl_->expression(); }
  const SymbolImpl& impl() const { return *impl_; }

  friend Symbol operator+(const Symbol& a, const Symbol& b);
  friend Symbol operator-(const Symbol& a, const Symbol& b);
  friend Symbol operator*(const Symbol& a, const Symbol& b);

 private:
  std::shared_ptr<const SymbolImpl> impl_;
};

/// φ(z); throws NonFinite on overflow.
cx eval_symbol(const Symbol& s, cx z);
/// a_0 .. a_{n-1}; throws SeriesDivisionByZero for non-removable quotients.
std::vector<cx> taylor_coeffs(const Symbol& s, std::size_t n);
/// φ^{(j)}(z): closed form for j <= 4 when available, otherwise the Cauchy
/// integral j!/(2πi)∮ φ(ζ)/(ζ-z)^{j+1} dζ on a radius-0.5 circle, shrunk
/// on NonFinite.
cx symbol_derivative(const Symbol& s, std::size_t j, cx z);
/// The Cauchy route alone, exposed for cross-checks.
cx cauchy_derivative(const Symbol& s, std::size_t j, cx z, double radius = 0.5);

}  // namespace borelcalc

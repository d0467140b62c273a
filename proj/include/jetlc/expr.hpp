#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jetlc/coords.hpp"
#include "jetlc/rational.hpp"

namespace jetlc {

enum class ExprKind : std::uint8_t { Const, Coord, Sum, Product, Power, Quotient };

class Expr;
struct ExprNode;

/// Exact rational-coefficient expression over the jet coordinates, stored as
/// an immutable DAG. Handles are cheap to copy and safe to share between
/// threads. Construction applies only local rewrites (flattening, constant
/// folding, removal of neutral elements); there is no global simplifier.
class Expr {
 public:
  Expr();  // zero
  Expr(const Rational& value);  // NOLINT: implicit from constants
  Expr(long value);             // NOLINT
  Expr(int value) : Expr(static_cast<long>(value)) {}  // NOLINT

  static Expr coord(const JetCoordinate& c);
  static Expr slot(int slot) { return coord(JetCoordinate::from_slot(slot)); }
  static Expr x(int k) { return coord(JetCoordinate::base(k)); }
  static Expr y(int i, int j) { return coord(JetCoordinate::metric(i, j)); }
  static Expr y_jet(int i, int j, int k) { return coord(JetCoordinate::metric_jet(i, j, k)); }

  ExprKind kind() const;
  /// Slots this expression can depend on (an over-approximation).
  SlotMask deps() const;
  bool is_constant() const { return kind() == ExprKind::Const; }
  /// Structural zero: the constant 0.
  bool is_zero() const;
  bool is_one() const;
  const Rational& constant_value() const;
  int coord_slot() const;
  int exponent() const;
  const std::vector<Expr>& args() const;

  const ExprNode* id() const { return node_.get(); }
  bool same_node(const Expr& other) const { return node_ == other.node_; }

 private:
  friend Expr make_node(ExprNode node);
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  ExprKind kind = ExprKind::Const;
  SlotMask deps = 0;
  int slot = -1;
  int exponent = 0;
  Rational value;
  std::vector<Expr> args;
};

Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr power(const Expr& base, int exponent);
Expr quotient(const Expr& num, const Expr& den);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

/// No Quotient nodes and no negative powers.
bool is_polynomial(const Expr& e);
/// Number of distinct nodes reachable from e.
std::size_t node_count(const Expr& e);
/// Infix rendering, truncated to `max_chars` characters.
std::string to_string(const Expr& e, std::size_t max_chars = 4096);

/// Raised when evaluation meets a vanishing denominator.
class DivisionByZero : public std::domain_error {
 public:
  explicit DivisionByZero(const Expr& node);
  const Expr& node() const { return node_; }

 private:
  Expr node_;
};

class JetPoint;

/// Exact evaluator bound to one point. Results of shared subexpressions are
/// cached, so evaluating many coefficients of one form at the same point
/// costs one pass over their union DAG.
class Evaluator {
 public:
  explicit Evaluator(const JetPoint& point);
  Rational operator()(const Expr& e);
  const JetPoint& point() const { return *point_; }

 private:
  const Rational& value_of(const Expr& e);
  const JetPoint* point_;
  // Entries keep their key node alive so a freed address is never reused as a stale key.
  std::unordered_map<const ExprNode*, std::pair<Expr, Rational>> cache_;
};

Rational eval(const Expr& e, const JetPoint& p);

/// Symbolic partial differentiation with a per-instance memo table.
class Differentiator {
 public:
  Expr operator()(const Expr& e, int slot);

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<const ExprNode*, int>& k) const {
      return std::hash<const void*>()(k.first) * 64 + static_cast<std::size_t>(k.second);
    }
  };
  std::unordered_map<std::pair<const ExprNode*, int>, std::pair<Expr, Expr>, KeyHash> memo_;
};

/// Partial derivative with respect to a normalized coordinate; y_ji is the
/// same variable as y_ij.
Expr partial(const Expr& e, const JetCoordinate& c);

/// Replaces coordinate slots by expressions; unmapped slots stay as they are.
class Substituter {
 public:
  explicit Substituter(std::vector<std::optional<Expr>> replacement);
  Expr operator()(const Expr& e);

 private:
  std::vector<std::optional<Expr>> replacement_;
  SlotMask mapped_ = 0;
  std::unordered_map<const ExprNode*, std::pair<Expr, Expr>> memo_;
};

/// Sparse polynomial used as a normal form for polynomial expressions.
/// Monomials are exponent vectors over slots.
using Monomial = std::vector<std::pair<std::uint8_t, std::uint16_t>>;
using PolynomialNormalForm = std::map<Monomial, Rational>;

/// Expands a polynomial expression; returns nullopt when the expression is not
/// polynomial or the expansion exceeds `max_terms` terms at any stage.
std::optional<PolynomialNormalForm> expand_polynomial(const Expr& e, std::size_t max_terms = 20000);

}  // namespace jetlc

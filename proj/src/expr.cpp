#include "jetlc/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "jetlc/jet_point.hpp"

namespace jetlc {

Expr make_node(ExprNode node) { return Expr(std::make_shared<const ExprNode>(std::move(node))); }

namespace {

const Expr& constant_zero() {
  static const Expr z = make_node(ExprNode{});
  return z;
}

Expr make_constant(const Rational& q) {
  if (is_zero(q)) return constant_zero();
  ExprNode node;
  node.value = q;
  return make_node(std::move(node));
}

Expr make_compound(ExprKind kind, std::vector<Expr> args, int exponent = 0) {
  ExprNode node;
  node.kind = kind;
  node.exponent = exponent;
  for (const auto& a : args) node.deps |= a.deps();
  node.args = std::move(args);
  return make_node(std::move(node));
}

}  // namespace

Expr::Expr() : node_(constant_zero().node_) {}
Expr::Expr(const Rational& value) : node_(make_constant(value).node_) {}
Expr::Expr(long value) : node_(make_constant(Rational(value)).node_) {}

Expr Expr::coord(const JetCoordinate& c) {
  ExprNode node;
  node.kind = ExprKind::Coord;
  node.slot = c.slot();
  node.deps = SlotMask{1} << node.slot;
  return make_node(std::move(node));
}

ExprKind Expr::kind() const { return node_->kind; }
SlotMask Expr::deps() const { return node_->deps; }
bool Expr::is_zero() const { return node_->kind == ExprKind::Const && jetlc::is_zero(node_->value); }
bool Expr::is_one() const { return node_->kind == ExprKind::Const && node_->value == 1; }
const Rational& Expr::constant_value() const { return node_->value; }
int Expr::coord_slot() const { return node_->slot; }
int Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

// --- construction ---------------------------------------------------------

namespace {

// Splits c*X into (c, X) so that like terms can be merged in sums.
std::pair<Rational, Expr> split_scalar(const Expr& t) {
  if (t.kind() == ExprKind::Product && t.args().size() == 2 && t.args()[0].is_constant())
    return {t.args()[0].constant_value(), t.args()[1]};
  return {Rational(1), t};
}

}  // namespace

Expr sum(std::vector<Expr> terms) {
  Rational constant = 0;
  std::vector<std::pair<Rational, Expr>> collected;
  std::unordered_map<const ExprNode*, std::size_t> position;
  std::function<void(const Expr&)> add = [&](const Expr& t) {
    switch (t.kind()) {
      case ExprKind::Const:
        constant += t.constant_value();
        return;
      case ExprKind::Sum:
        for (const auto& a : t.args()) add(a);
        return;
      default: {
        auto [c, core] = split_scalar(t);
        auto [it, inserted] = position.try_emplace(core.id(), collected.size());
        if (inserted)
          collected.emplace_back(c, core);
        else
          collected[it->second].first += c;
      }
    }
  };
  for (const auto& t : terms) add(t);

  std::vector<Expr> args;
  if (!is_zero(constant)) args.push_back(make_constant(constant));
  for (auto& [c, core] : collected) {
    if (is_zero(c)) continue;
    args.push_back(c == 1 ? core : product({make_constant(c), core}));
  }
  if (args.empty()) return constant_zero();
  if (args.size() == 1) return args.front();
  return make_compound(ExprKind::Sum, std::move(args));
}

Expr product(std::vector<Expr> factors) {
  Rational constant = 1;
  std::vector<Expr> rest;
  std::function<void(const Expr&)> add = [&](const Expr& f) {
    if (f.kind() == ExprKind::Const) {
      constant *= f.constant_value();
    } else if (f.kind() == ExprKind::Product) {
      for (const auto& a : f.args()) add(a);
    } else {
      rest.push_back(f);
    }
  };
  for (const auto& f : factors) {
    add(f);
    if (is_zero(constant)) return constant_zero();
  }
  if (rest.empty()) return make_constant(constant);
  if (constant == 1 && rest.size() == 1) return rest.front();
  std::vector<Expr> args;
  args.reserve(rest.size() + 1);
  if (constant != 1) args.push_back(make_constant(constant));
  for (auto& f : rest) args.push_back(std::move(f));
  return make_compound(ExprKind::Product, std::move(args));
}

namespace {

Rational rational_power(const Rational& base, int exponent) {
  Rational b = base;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -static_cast<long>(exponent) : exponent);
  if (exponent < 0) b = 1 / b;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Expr power(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_constant() && !(base.is_zero() && exponent < 0))
    return make_constant(rational_power(base.constant_value(), exponent));
  if (base.kind() == ExprKind::Power) return power(base.args()[0], base.exponent() * exponent);
  return make_compound(ExprKind::Power, {base}, exponent);
}

Expr quotient(const Expr& num, const Expr& den) {
  if (num.is_zero()) return constant_zero();
  if (den.is_constant() && !den.is_zero()) return product({num, make_constant(1 / den.constant_value())});
  return make_compound(ExprKind::Quotient, {num, den});
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }
Expr operator-(const Expr& a) { return product({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }

// --- inspection -------------------------------------------------------------

bool is_polynomial(const Expr& e) {
  std::unordered_map<const ExprNode*, bool> seen;
  std::function<bool(const Expr&)> visit = [&](const Expr& x) -> bool {
    switch (x.kind()) {
      case ExprKind::Const:
      case ExprKind::Coord: return true;
      case ExprKind::Quotient: return false;
      default: break;
    }
    if (auto it = seen.find(x.id()); it != seen.end()) return it->second;
    bool ok = !(x.kind() == ExprKind::Power && x.exponent() < 0);
    for (const auto& a : x.args()) ok = ok && visit(a);
    seen.emplace(x.id(), ok);
    return ok;
  };
  return visit(e);
}

std::size_t node_count(const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  std::vector<Expr> stack{e};
  while (!stack.empty()) {
    Expr x = stack.back();
    stack.pop_back();
    if (!seen.insert(x.id()).second) continue;
    for (const auto& a : x.args()) stack.push_back(a);
  }
  return seen.size();
}

namespace {

void render(const Expr& e, std::string& out, std::size_t budget, int parent_prec) {
  if (out.size() > budget) return;
  auto open = [&](int prec) {
    if (prec < parent_prec) out += '(';
  };
  auto close = [&](int prec) {
    if (prec < parent_prec) out += ')';
  };
  switch (e.kind()) {
    case ExprKind::Const: {
      const Rational& q = e.constant_value();
      const bool wrap = (sgn(q) < 0 || q.get_den() != 1) && parent_prec > 1;
      if (wrap) out += '(';
      out += q.get_str();
      if (wrap) out += ')';
      return;
    }
    case ExprKind::Coord: out += JetCoordinate::from_slot(e.coord_slot()).name(); return;
    case ExprKind::Sum:
      open(1);
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += " + ";
        render(e.args()[i], out, budget, 1);
      }
      close(1);
      return;
    case ExprKind::Product:
      open(2);
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += "*";
        render(e.args()[i], out, budget, 3);
      }
      close(2);
      return;
    case ExprKind::Power:
      render(e.args()[0], out, budget, 4);
      out += "^" + std::to_string(e.exponent());
      return;
    case ExprKind::Quotient:
      open(2);
      render(e.args()[0], out, budget, 3);
      out += "/";
      render(e.args()[1], out, budget, 3);
      close(2);
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e, std::size_t max_chars) {
  std::string out;
  render(e, out, max_chars, 0);
  if (out.size() > max_chars) {
    out.resize(max_chars);
    out += "...";
  }
  return out;
}

DivisionByZero::DivisionByZero(const Expr& node)
    : std::domain_error("division by zero in subexpression: " + to_string(node, 200)), node_(node) {}

// --- evaluation -------------------------------------------------------------

Evaluator::Evaluator(const JetPoint& point) : point_(&point) {}

Rational Evaluator::operator()(const Expr& e) { return value_of(e); }

const Rational& Evaluator::value_of(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const: return e.constant_value();
    case ExprKind::Coord: return (*point_)[e.coord_slot()];
    default: break;
  }
  if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;
  Rational v;
  switch (e.kind()) {
    case ExprKind::Sum:
      v = 0;
      for (const auto& a : e.args()) v += value_of(a);
      break;
    case ExprKind::Product:
      v = 1;
      for (const auto& a : e.args()) {
        v *= value_of(a);
        if (is_zero(v)) break;
      }
      break;
    case ExprKind::Power: {
      const Rational& b = value_of(e.args()[0]);
      if (e.exponent() < 0 && is_zero(b)) throw DivisionByZero(e);
      v = rational_power(b, e.exponent());
      break;
    }
    case ExprKind::Quotient: {
      const Rational& d = value_of(e.args()[1]);
      if (is_zero(d)) throw DivisionByZero(e);
      v = value_of(e.args()[0]) / d;
      break;
    }
    default: break;
  }
  return cache_.emplace(e.id(), std::make_pair(e, std::move(v))).first->second.second;
}

Rational eval(const Expr& e, const JetPoint& p) { return Evaluator(p)(e); }

// --- differentiation --------------------------------------------------------

Expr Differentiator::operator()(const Expr& e, int slot) {
  if ((e.deps() & (SlotMask{1} << slot)) == 0) return Expr();
  if (e.kind() == ExprKind::Coord) return Expr(e.coord_slot() == slot ? 1 : 0);
  const auto key = std::make_pair(e.id(), slot);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second.second;

  Expr d;
  const auto& args = e.args();
  switch (e.kind()) {
    case ExprKind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(args.size());
      for (const auto& a : args) parts.push_back((*this)(a, slot));
      d = sum(std::move(parts));
      break;
    }
    case ExprKind::Product: {
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expr di = (*this)(args[i], slot);
        if (di.is_zero()) continue;
        std::vector<Expr> factors = args;
        factors[i] = di;
        parts.push_back(product(std::move(factors)));
      }
      d = sum(std::move(parts));
      break;
    }
    case ExprKind::Power: {
      const int k = e.exponent();
      d = product({Expr(static_cast<long>(k)), power(args[0], k - 1), (*this)(args[0], slot)});
      break;
    }
    case ExprKind::Quotient: {
      const Expr& num = args[0];
      const Expr& den = args[1];
      Expr dn = (*this)(num, slot);
      Expr dd = (*this)(den, slot);
      if (dd.is_zero())
        d = quotient(dn, den);
      else
        d = quotient(dn * den - num * dd, power(den, 2));
      break;
    }
    default: break;
  }
  memo_.emplace(key, std::make_pair(e, d));
  return d;
}

Expr partial(const Expr& e, const JetCoordinate& c) { return Differentiator()(e, c.slot()); }

// --- substitution -----------------------------------------------------------

Substituter::Substituter(std::vector<std::optional<Expr>> replacement) : replacement_(std::move(replacement)) {
  replacement_.resize(kSlotCount);
  for (int s = 0; s < kSlotCount; ++s)
    if (replacement_[s]) mapped_ |= SlotMask{1} << s;
}

Expr Substituter::operator()(const Expr& e) {
  if ((e.deps() & mapped_) == 0) return e;
  if (e.kind() == ExprKind::Coord) return *replacement_[e.coord_slot()];
  if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second.second;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  for (const auto& a : e.args()) args.push_back((*this)(a));
  Expr r;
  switch (e.kind()) {
    case ExprKind::Sum: r = sum(std::move(args)); break;
    case ExprKind::Product: r = product(std::move(args)); break;
    case ExprKind::Power: r = power(args[0], e.exponent()); break;
    case ExprKind::Quotient: r = quotient(args[0], args[1]); break;
    default: break;
  }
  memo_.emplace(e.id(), std::make_pair(e, r));
  return r;
}

// --- polynomial normal form -------------------------------------------------

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, static_cast<std::uint16_t>(a[i].second + b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

struct Expander {
  std::size_t max_terms;
  std::unordered_map<const ExprNode*, std::shared_ptr<const PolynomialNormalForm>> memo;

  using Ptr = std::shared_ptr<const PolynomialNormalForm>;

  Ptr mul(const PolynomialNormalForm& a, const PolynomialNormalForm& b) {
    auto out = std::make_shared<PolynomialNormalForm>();
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        auto& slot = (*out)[multiply(ma, mb)];
        slot += ca * cb;
        if (out->size() > max_terms) return nullptr;
      }
    std::erase_if(*out, [](const auto& kv) { return is_zero(kv.second); });
    return out;
  }

  Ptr expand(const Expr& e) {
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    auto out = std::make_shared<PolynomialNormalForm>();
    Ptr result = out;
    switch (e.kind()) {
      case ExprKind::Const:
        if (!e.is_zero()) (*out)[{}] = e.constant_value();
        break;
      case ExprKind::Coord: (*out)[{{static_cast<std::uint8_t>(e.coord_slot()), 1}}] = 1; break;
      case ExprKind::Sum:
        for (const auto& a : e.args()) {
          Ptr p = expand(a);
          if (!p) return nullptr;
          for (const auto& [m, c] : *p) (*out)[m] += c;
          if (out->size() > max_terms) return nullptr;
        }
        std::erase_if(*out, [](const auto& kv) { return is_zero(kv.second); });
        break;
      case ExprKind::Product: {
        (*out)[{}] = 1;
        for (const auto& a : e.args()) {
          Ptr p = expand(a);
          if (!p) return nullptr;
          result = mul(*result, *p);
          if (!result) return nullptr;
        }
        break;
      }
      case ExprKind::Power: {
        if (e.exponent() < 0) return nullptr;
        Ptr base = expand(e.args()[0]);
        if (!base) return nullptr;
        (*out)[{}] = 1;
        for (int i = 0; i < e.exponent(); ++i) {
          result = mul(*result, *base);
          if (!result) return nullptr;
        }
        break;
      }
      case ExprKind::Quotient: return nullptr;
    }
    memo.emplace(e.id(), result);
    return result;
  }
};

}  // namespace

std::optional<PolynomialNormalForm> expand_polynomial(const Expr& e, std::size_t max_terms) {
  if (!is_polynomial(e)) return std::nullopt;
  Expander x{max_terms, {}};
  auto p = x.expand(e);
  if (!p) return std::nullopt;
  return *p;
}

}  // namespace jetlc

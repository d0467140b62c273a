#include "jetlc/forms.hpp"

namespace jetlc {

DiffForm dext(const DiffForm& a, Differentiator& d) {
  FormAccumulator<Expr> acc(a.degree() + 1);
  for (const auto& [key, coeff] : a.terms()) {
    SlotMask free = coeff.deps() & ~key;
    while (free) {
      const int c = std::countr_zero(free);
      free &= free - 1;
      Expr dc = d(coeff, c);
      if (dc.is_zero()) continue;
      // d(f dI) = sum_c df/dc dc ^ dI; moving dc into place passes the
      // covectors of I that precede it.
      const bool odd = std::popcount(key & ((SlotMask{1} << c) - 1)) % 2 == 1;
      acc.add(key | (SlotMask{1} << c), odd ? -dc : dc);
    }
  }
  return acc.finish();
}

DiffForm dext(const DiffForm& a) {
  Differentiator d;
  return dext(a, d);
}

MatrixForm dext(const MatrixForm& a, Differentiator& d) {
  MatrixForm r(a.size(), a.degree() + 1);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) r.set(i, j, dext(a(i, j), d));
  return r;
}

MatrixForm dext(const MatrixForm& a) {
  Differentiator d;
  return dext(a, d);
}

TangentVector random_tangent(int n, Rng& rng) {
  TangentVector v;
  for (int s : active_slots(n)) {
    // roughly a third of the components vanish
    if (rng.uniform_int(0, 2) == 0) continue;
    Rational c = rng.uniform_rational(Rational(-3), Rational(3), 4);
    if (!is_zero(c)) v.components[s] = c;
  }
  return v;
}

std::vector<TangentVector> random_tangents(int n, int count, Rng& rng) {
  std::vector<TangentVector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_tangent(n, rng));
  return out;
}

FormValue evaluate_at(const DiffForm& a, Evaluator& ev) {
  FormValue::Terms terms;
  for (const auto& [k, c] : a.terms()) terms.emplace(k, ev(c));
  return FormValue::from_terms(a.degree(), std::move(terms));
}

FormValue evaluate_at(const DiffForm& a, const JetPoint& p) {
  Evaluator ev(p);
  return evaluate_at(a, ev);
}

MatrixFormValue evaluate_at(const MatrixForm& a, Evaluator& ev) {
  return a.map([&](const DiffForm& f) { return evaluate_at(f, ev); });
}

MatrixFormValue evaluate_at(const MatrixForm& a, const JetPoint& p) {
  Evaluator ev(p);
  return evaluate_at(a, ev);
}

Rational evaluate(const FormValue& a, std::span<const TangentVector> vectors) {
  const int p = a.degree();
  if (static_cast<int>(vectors.size()) != p)
    throw DegreeMismatch("form of degree " + std::to_string(p) + " evaluated on " +
                         std::to_string(vectors.size()) + " vectors");
  Rational total = 0;
  for (const auto& [key, coeff] : a.terms()) {
    std::vector<int> slots;
    for (SlotMask m = key; m; m &= m - 1) slots.push_back(std::countr_zero(m));
    RationalMatrix minor(p, std::vector<Rational>(p));
    bool any = true;
    for (int b = 0; b < p && any; ++b) {
      bool col = false;
      for (int r = 0; r < p; ++r) {
        minor[r][b] = vectors[r][slots[b]];
        col = col || !is_zero(minor[r][b]);
      }
      any = col;
    }
    if (!any) continue;
    total += coeff * determinant(std::move(minor));
  }
  return total;
}

Rational evaluate(const DiffForm& a, const JetPoint& p, std::span<const TangentVector> vectors) {
  if (static_cast<int>(vectors.size()) != a.degree())
    throw DegreeMismatch("form of degree " + std::to_string(a.degree()) + " evaluated on " +
                         std::to_string(vectors.size()) + " vectors");
  return evaluate(evaluate_at(a, p), vectors);
}

FormValue restrict_to(const FormValue& a, std::span<const TangentVector> vectors) {
  const int m = static_cast<int>(vectors.size());
  if (m > 63) throw std::invalid_argument("restrict_to: too many vectors");
  if (a.degree() > m) return FormValue(a.degree());
  std::map<int, FormValue> images;
  auto image = [&](int slot) -> const FormValue& {
    auto it = images.find(slot);
    if (it != images.end()) return it->second;
    FormValue::Terms terms;
    for (int i = 0; i < m; ++i) {
      Rational c = vectors[i][slot];
      if (!is_zero(c)) terms.emplace(SlotMask{1} << i, c);
    }
    return images.emplace(slot, FormValue::from_terms(1, std::move(terms))).first->second;
  };
  FormAccumulator<Rational> acc(a.degree());
  for (const auto& [key, coeff] : a.terms()) {
    FormValue piece = FormValue::scalar(coeff);
    for (SlotMask k = key; k && !piece.is_zero(); k &= k - 1) piece = wedge(piece, image(std::countr_zero(k)));
    if (!piece.is_zero()) acc.add(piece);
  }
  return acc.finish();
}

MatrixFormValue restrict_to(const MatrixFormValue& a, std::span<const TangentVector> vectors) {
  return a.map([&](const FormValue& f) { return restrict_to(f, vectors); });
}

namespace {

struct PendingCoefficient {
  Expr a, b;
  std::string label;
};

std::string key_label(SlotMask key) {
  std::string s;
  for (SlotMask k = key; k; k &= k - 1) {
    if (!s.empty()) s += '^';
    s += "d" + JetCoordinate::from_slot(std::countr_zero(k)).name();
  }
  return s.empty() ? "1" : s;
}

// Adds coefficient pairs to `pending`; returns false (with detail) if a
// polynomial difference is already known to be nonzero.
bool collect_differences(const DiffForm& a, const DiffForm& b, const std::string& prefix,
                         std::vector<PendingCoefficient>& pending, IdentityOutcome& out) {
  if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree()) {
    out.holds = false;
    out.detail = prefix + "degree mismatch";
    return false;
  }
  std::vector<SlotMask> keys;
  for (const auto& [k, c] : a.terms()) keys.push_back(k);
  for (const auto& [k, c] : b.terms())
    if (!a.terms().count(k)) keys.push_back(k);
  for (SlotMask k : keys) {
    Expr ca = a.coefficient(k), cb = b.coefficient(k);
    if (ca.same_node(cb)) continue;
    Expr diff = ca - cb;
    if (diff.is_zero()) continue;
    if (auto poly = expand_polynomial(diff)) {
      if (!poly->empty()) {
        out.holds = false;
        out.detail = prefix + "coefficient of " + key_label(k) + " differs by a nonzero polynomial";
        return false;
      }
      continue;
    }
    pending.push_back({ca, cb, prefix + key_label(k)});
  }
  return true;
}

IdentityOutcome sample_pending(const std::vector<PendingCoefficient>& pending, const IdentitySettings& settings,
                               IdentityOutcome out) {
  if (pending.empty()) return out;
  out.by_normalization = false;
  SlotMask deps = 0;
  for (const auto& p : pending) deps |= p.a.deps() | p.b.deps();
  const int n = settings.dimension ? settings.dimension : dimension_for_mask(deps);
  PointSampler sampler(n, settings.seed);
  int done = 0, attempts = 0;
  while (done < settings.trials) {
    JetPoint point = sampler.next();
    Evaluator ev(point);
    try {
      for (const auto& p : pending) {
        Rational va = ev(p.a), vb = ev(p.b);
        if (va != vb) {
          out.holds = false;
          out.witness = point;
          out.detail = "coefficient of " + p.label + ": " + to_fraction_string(va) + " vs " + to_fraction_string(vb);
          return out;
        }
      }
      ++done;
    } catch (const DivisionByZero&) {
      if (++attempts > kMaxResamplesPerTrial * settings.trials) throw;
    }
  }
  return out;
}

}  // namespace

IdentityOutcome forms_identical(const DiffForm& a, const DiffForm& b, const IdentitySettings& settings) {
  IdentityOutcome out;
  std::vector<PendingCoefficient> pending;
  if (!collect_differences(a, b, "", pending, out)) return out;
  return sample_pending(pending, settings, out);
}

IdentityOutcome forms_identical(const MatrixForm& a, const MatrixForm& b, const IdentitySettings& settings) {
  IdentityOutcome out;
  if (a.size() != b.size()) {
    out.holds = false;
    out.detail = "matrix size mismatch";
    return out;
  }
  std::vector<PendingCoefficient> pending;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      const std::string prefix = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") ";
      if (!collect_differences(a(i, j), b(i, j), prefix, pending, out)) return out;
    }
  return sample_pending(pending, settings, out);
}

FormValue pfaffian(const MatrixFormValue& a) {
  if (a.size() % 2 != 0) throw OddDimension();
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j)
      if (!(a(i, j) + a(j, i)).is_zero())
        throw NotAntisymmetric("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") is not the negative of its transpose");
  return pfaffian_unchecked(a);
}

DiffForm pfaffian(const MatrixForm& a, const IdentitySettings& settings) {
  if (a.size() % 2 != 0) throw OddDimension();
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j) {
      auto check = forms_identical(a(i, j), -a(j, i), settings);
      if (!check.holds)
        throw NotAntisymmetric("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") is not the negative of its transpose: " + check.detail);
    }
  return pfaffian_unchecked(a);
}

namespace {

void matchings(std::vector<int> idx, std::vector<std::pair<int, int>>& prefix, bool negative,
               std::vector<std::pair<std::vector<std::pair<int, int>>, bool>>& out) {
  if (idx.empty()) {
    out.emplace_back(prefix, negative);
    return;
  }
  const int first = idx[0];
  for (std::size_t t = 1; t < idx.size(); ++t) {
    std::vector<int> rest;
    for (std::size_t s = 1; s < idx.size(); ++s)
      if (s != t) rest.push_back(idx[s]);
    prefix.emplace_back(first, idx[t]);
    matchings(std::move(rest), prefix, negative ^ ((t - 1) % 2 == 1), out);
    prefix.pop_back();
  }
}

}  // namespace

FormValue pfaffian_differential(const MatrixFormValue& a, const MatrixFormValue& da) {
  if (a.size() % 2 != 0) throw OddDimension();
  if (a.degree() % 2 != 0) throw DegreeMismatch("pfaffian_differential expects even-degree entries");
  std::vector<std::pair<std::vector<std::pair<int, int>>, bool>> all;
  std::vector<std::pair<int, int>> prefix;
  std::vector<int> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  matchings(idx, prefix, false, all);
  FormAccumulator<Rational> acc(a.degree() * a.size() / 2 + 1);
  for (const auto& [pairs, negative] : all)
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      FormValue chain = FormValue::scalar(Rational(1));
      for (std::size_t s = 0; s < pairs.size() && !chain.is_zero(); ++s) {
        const auto [r, c] = pairs[s];
        chain = wedge(chain, s == t ? da(r, c) : a(r, c));
      }
      if (!chain.is_zero()) acc.add(chain, negative);
    }
  return acc.finish();
}

FormValue char_coeff_differential(int k, const MatrixFormValue& a, const MatrixFormValue& da) {
  const int n = a.size();
  if (2 * k > n || k < 1) throw std::out_of_range("char_coeff_differential: bad k");
  if (a.degree() % 2 != 0) throw DegreeMismatch("char_coeff_differential expects even-degree entries");
  const int m = 2 * k;
  FormAccumulator<Rational> acc(a.degree() * m + 1);
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (pick[i]) subset.push_back(i);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const bool negative = detail::permutation_parity(perm) == 1;
      for (int t = 0; t < m; ++t) {
        FormValue chain = FormValue::scalar(Rational(1));
        for (int s = 0; s < m && !chain.is_zero(); ++s) {
          const int r = subset[s], c = subset[perm[s]];
          chain = wedge(chain, s == t ? da(r, c) : a(r, c));
        }
        if (!chain.is_zero()) acc.add(chain, negative);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return acc.finish();
}

}  // namespace jetlc

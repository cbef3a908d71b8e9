#include "finv/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "finv/errors.hpp"

namespace finv {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t exp = p - 2;
  a %= p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    exp >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> unit_weights_if_empty(std::vector<std::uint64_t> weights, std::size_t n) {
  if (weights.empty()) weights.assign(n, 1);
  if (weights.size() != n) throw ArgumentError("weight vector length does not match the ring");
  for (auto w : weights) {
    if (w == 0) throw ArgumentError("weights must be positive");
  }
  return weights;
}

void check_same_ring(const PolyFp& a, const PolyFp& b) {
  if (a.num_variables() != b.num_variables() || !(a.prime() == b.prime())) {
    throw ArgumentError("polynomials live in different rings");
  }
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

void monomials_rec(const std::vector<std::uint64_t>& weights, std::size_t index, std::uint64_t left,
                   Exponent& current, std::vector<Exponent>& out) {
  if (index + 1 == weights.size()) {
    if (left % weights[index] == 0) {
      current[index] = left / weights[index];
      out.push_back(current);
    }
    return;
  }
  for (std::uint64_t k = 0; k * weights[index] <= left; ++k) {
    current[index] = k;
    monomials_rec(weights, index + 1, left - k * weights[index], current, out);
  }
  current[index] = 0;
}

std::vector<Exponent> monomials_up_to(std::size_t n, std::uint64_t degree) {
  std::vector<Exponent> out;
  const std::vector<std::uint64_t> unit(n, 1);
  for (std::uint64_t d = 0; d <= degree; ++d) {
    auto slice = monomials_of_degree(unit, d);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

using SparseVector = std::map<std::size_t, std::uint64_t>;

/// Row-echelon span of sparse vectors over F_p; each stored vector has
/// leading coefficient 1 at its pivot row.
class Span {
 public:
  explicit Span(std::uint64_t p) : p_(p) {}

  // Returns false when v is already in the span.
  bool add(SparseVector v) {
    reduce(v);
    if (v.empty()) return false;
    const auto pivot = v.begin()->first;
    const auto scale = inverse_mod(v.begin()->second, p_);
    for (auto& [row, c] : v) c = mul_mod(c, scale, p_);
    basis_.emplace(pivot, std::move(v));
    return true;
  }

  bool contains(SparseVector v) const {
    reduce(v);
    return v.empty();
  }

 private:
  void reduce(SparseVector& v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto found = basis_.find(it->first);
      if (found == basis_.end()) {
        ++it;
        continue;
      }
      const auto factor = it->second;
      const auto next_row = it->first;
      for (const auto& [row, c] : found->second) {
        auto& slot = v[row];
        slot = (slot + p_ - mul_mod(factor, c, p_)) % p_;
        if (slot == 0) v.erase(row);
      }
      it = v.upper_bound(next_row);
    }
  }

  std::uint64_t p_;
  std::map<std::size_t, SparseVector> basis_;
};

class RowIndex {
 public:
  SparseVector encode(const PolyFp& g) {
    SparseVector v;
    for (const auto& [exp, c] : g.terms()) v.emplace(index_of(exp), c);
    return v;
  }

 private:
  std::size_t index_of(const Exponent& exp) {
    auto [it, inserted] = rows_.emplace(exp, rows_.size());
    return it->second;
  }
  std::map<Exponent, std::size_t> rows_;
};

void charge_column(std::uint64_t& used, const Budget& budget) {
  if (++used > budget.max_columns) {
    throw ResourceError("membership matrix exceeds " + std::to_string(budget.max_columns) + " columns");
  }
}

bool homogeneous_piece_in_ideal(const IdealFp& ideal, const PolyFp& piece, std::uint64_t degree,
                                const Budget& budget) {
  const auto& weights = ideal.weights();
  RowIndex rows;
  Span span(ideal.prime());
  std::uint64_t columns = 0;
  for (const auto& gen : ideal.generators()) {
    const auto gen_degree = gen.max_degree(weights);
    if (gen_degree > degree) continue;
    for (const auto& m : monomials_of_degree(weights, degree - gen_degree)) {
      if (span.add(rows.encode(PolyFp::monomial(ideal.prime(), m) * gen))) charge_column(columns, budget);
    }
  }
  return span.contains(rows.encode(piece));
}

}  // namespace

std::uint64_t weighted_degree(const Exponent& exponent, const std::vector<std::uint64_t>& weights) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < exponent.size(); ++i) d += exponent[i] * weights[i];
  return d;
}

PolyFp PolyFp::constant(std::size_t num_variables, Prime p, std::uint64_t c) {
  PolyFp out(num_variables, p);
  out.add_term(Exponent(num_variables, 0), c);
  return out;
}

PolyFp PolyFp::monomial(Prime p, Exponent exponent, std::uint64_t c) {
  PolyFp out(exponent.size(), p);
  out.add_term(exponent, c);
  return out;
}

PolyFp PolyFp::variable(std::size_t num_variables, Prime p, std::size_t index) {
  Exponent e(num_variables, 0);
  e.at(index) = 1;
  return monomial(p, std::move(e));
}

void PolyFp::add_term(const Exponent& exponent, std::uint64_t c) {
  if (exponent.size() != nvars_) throw ArgumentError("exponent length does not match the ring");
  c %= prime_.value();
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, c);
  if (inserted) return;
  it->second = (it->second + c) % prime_.value();
  if (it->second == 0) terms_.erase(it);
}

PolyFp& PolyFp::operator+=(const PolyFp& other) {
  check_same_ring(*this, other);
  for (const auto& [exp, c] : other.terms_) add_term(exp, c);
  return *this;
}

PolyFp& PolyFp::operator-=(const PolyFp& other) {
  check_same_ring(*this, other);
  for (const auto& [exp, c] : other.terms_) add_term(exp, prime_.value() - c);
  return *this;
}

PolyFp PolyFp::operator*(const PolyFp& other) const {
  check_same_ring(*this, other);
  PolyFp out(nvars_, prime_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      out.add_term(add_exponents(ea, eb), mul_mod(ca, cb, prime_.value()));
    }
  }
  return out;
}

PolyFp PolyFp::scaled(std::uint64_t c) const {
  PolyFp out(nvars_, prime_);
  for (const auto& [exp, coef] : terms_) out.add_term(exp, mul_mod(coef, c % prime_.value(), prime_.value()));
  return out;
}

PolyFp PolyFp::pow(std::uint64_t n) const {
  PolyFp result = constant(nvars_, prime_, 1);
  PolyFp base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::uint64_t PolyFp::max_degree(const std::vector<std::uint64_t>& weights) const {
  std::uint64_t best = 0;
  for (const auto& [exp, c] : terms_) best = std::max(best, weighted_degree(exp, weights));
  return best;
}

std::uint64_t PolyFp::min_degree(const std::vector<std::uint64_t>& weights) const {
  std::uint64_t best = UINT64_MAX;
  for (const auto& [exp, c] : terms_) best = std::min(best, weighted_degree(exp, weights));
  return best;
}

bool PolyFp::is_homogeneous(const std::vector<std::uint64_t>& weights) const {
  return terms_.empty() || max_degree(weights) == min_degree(weights);
}

std::map<std::uint64_t, PolyFp> PolyFp::homogeneous_components(
    const std::vector<std::uint64_t>& weights) const {
  std::map<std::uint64_t, PolyFp> out;
  for (const auto& [exp, c] : terms_) {
    auto [it, inserted] = out.try_emplace(weighted_degree(exp, weights), nvars_, prime_);
    it->second.add_term(exp, c);
  }
  return out;
}

std::vector<std::pair<Exponent, std::uint64_t>> PolyFp::serialize() const {
  return {terms_.begin(), terms_.end()};
}

std::string PolyFp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest monomials first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    const auto& [exp, c] = *it;
    bool constant_term = std::all_of(exp.begin(), exp.end(), [](auto v) { return v == 0; });
    bool wrote = false;
    if (c != 1 || constant_term) {
      out << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (exp[i] == 0) continue;
      if (wrote) out << '*';
      out << 'x' << (i + 1);
      if (exp[i] > 1) out << '^' << exp[i];
      wrote = true;
    }
  }
  return out.str();
}

IdealFp::IdealFp(std::size_t num_variables, Prime p, std::vector<std::uint64_t> weights)
    : nvars_(num_variables), prime_(p), weights_(unit_weights_if_empty(std::move(weights), num_variables)) {}

IdealFp IdealFp::maximal(std::size_t num_variables, Prime p, std::vector<std::uint64_t> weights) {
  IdealFp out(num_variables, p, std::move(weights));
  for (std::size_t i = 0; i < num_variables; ++i) out.add_generator(PolyFp::variable(num_variables, p, i));
  return out;
}

IdealFp IdealFp::principal(const PolyFp& g, std::vector<std::uint64_t> weights) {
  IdealFp out(g.num_variables(), g.prime(), std::move(weights));
  out.add_generator(g);
  return out;
}

void IdealFp::add_generator(PolyFp g) {
  if (g.num_variables() != nvars_ || !(g.prime() == prime_)) {
    throw ArgumentError("generator lives in a different ring");
  }
  if (g.is_zero()) return;
  // Generators are kept up to scalar multiples.
  const auto lead = inverse_mod(g.terms().begin()->second, prime_.value());
  std::vector<std::pair<Exponent, std::uint64_t>> key;
  for (const auto& [exp, c] : g.terms()) key.emplace_back(exp, mul_mod(c, lead, prime_.value()));
  if (seen_.insert(std::move(key)).second) generators_.push_back(std::move(g));
}

bool IdealFp::is_homogeneous() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [this](const PolyFp& g) { return g.is_homogeneous(weights_); });
}

bool IdealFp::has_unit_generator() const {
  const Exponent zero(nvars_, 0);
  return std::any_of(generators_.begin(), generators_.end(), [&zero](const PolyFp& g) {
    return g.size() == 1 && g.terms().begin()->first == zero;
  });
}

std::vector<Exponent> monomials_of_degree(const std::vector<std::uint64_t>& weights, std::uint64_t degree) {
  std::vector<Exponent> out;
  if (weights.empty()) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent current(weights.size(), 0);
  monomials_rec(weights, 0, degree, current, out);
  return out;
}

Membership ideal_membership(const IdealFp& ideal, const PolyFp& g, const MembershipOptions& options) {
  if (g.num_variables() != ideal.num_variables() || !(g.prime() == ideal.prime())) {
    throw ArgumentError("polynomial and ideal live in different rings");
  }
  if (g.is_zero()) return Membership::Member;

  if (ideal.is_homogeneous()) {
    const auto cap = ideal.degree_cap();
    for (const auto& [degree, piece] : g.homogeneous_components(ideal.weights())) {
      if (cap && degree > *cap) return Membership::Inconclusive;
      if (ideal.has_unit_generator()) continue;
      if (!homogeneous_piece_in_ideal(ideal, piece, degree, options.budget)) return Membership::NotMember;
    }
    return Membership::Member;
  }

  if (ideal.degree_cap()) return Membership::Inconclusive;
  if (ideal.has_unit_generator()) return Membership::Member;
  const std::vector<std::uint64_t> unit(ideal.num_variables(), 1);
  std::uint64_t max_gen = 0;
  for (const auto& gen : ideal.generators()) max_gen = std::max(max_gen, gen.max_degree(unit));
  const std::uint64_t bound = options.degree_bound.value_or(g.max_degree(unit) + max_gen);

  RowIndex rows;
  Span span(ideal.prime());
  std::uint64_t columns = 0;
  const auto multipliers = monomials_up_to(ideal.num_variables(), bound);
  for (const auto& gen : ideal.generators()) {
    for (const auto& m : multipliers) {
      if (span.add(rows.encode(PolyFp::monomial(ideal.prime(), m) * gen))) charge_column(columns, options.budget);
    }
  }
  return span.contains(rows.encode(g)) ? Membership::Member : Membership::Inconclusive;
}

bool ideal_contains(const IdealFp& ideal, const PolyFp& g, const MembershipOptions& options) {
  switch (ideal_membership(ideal, g, options)) {
    case Membership::Member: return true;
    case Membership::NotMember: return false;
    case Membership::Inconclusive: break;
  }
  throw InconclusiveError("membership of " + g.to_string() + " undecided within the degree bound");
}

bool ideals_equal(const IdealFp& a, const IdealFp& b, const MembershipOptions& options) {
  // Truncated ideals are compared up to the smaller cap.
  std::optional<std::uint64_t> cap = a.degree_cap();
  if (b.degree_cap()) cap = cap ? std::min(*cap, *b.degree_cap()) : *b.degree_cap();
  auto contained = [&](const IdealFp& from, const IdealFp& into) {
    for (const auto& g : from.generators()) {
      if (cap && g.max_degree(from.weights()) > *cap) continue;
      if (!ideal_contains(into, g, options)) return false;
    }
    return true;
  };
  return contained(a, b) && contained(b, a);
}

}  // namespace finv

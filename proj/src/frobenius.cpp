#include "finv/frobenius.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace finv {

namespace {

constexpr std::uint64_t kNoBound = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// p^e, refusing values that would not leave headroom for d * k arithmetic.
std::uint64_t checked_power(Prime p, std::uint64_t e) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (out > (std::uint64_t{1} << 40) / p.value()) {
      throw ResourceError("p^e = " + std::to_string(p.value()) + "^" + std::to_string(e) +
                          " is beyond the oracle's range");
    }
    out *= p.value();
  }
  return out;
}

void require_level(std::uint64_t e) {
  if (e == 0) throw ArgumentError("Frobenius level e must be positive");
}

/// Factorials and inverse factorials mod p for single base-p digits.
class DigitFactorials {
 public:
  explicit DigitFactorials(Prime p) : p_(p.value()) {
    if (p_ > 1'000'000) throw ResourceError("prime too large for the digit factorial table");
    fact_.resize(p_);
    inv_fact_.resize(p_);
    fact_[0] = 1;
    for (std::uint64_t i = 1; i < p_; ++i) fact_[i] = mul_mod(fact_[i - 1], i, p_);
    inv_fact_[p_ - 1] = pow_mod(fact_[p_ - 1], p_ - 2, p_);
    for (std::uint64_t i = p_ - 1; i > 0; --i) inv_fact_[i - 1] = mul_mod(inv_fact_[i], i, p_);
  }

  std::uint64_t fact(std::uint64_t d) const { return fact_[d]; }
  std::uint64_t inv_fact(std::uint64_t d) const { return inv_fact_[d]; }

  /// prod over digits of 1/digit!, for one summand.
  std::uint64_t inverse_digit_factorials(std::uint64_t k) const {
    std::uint64_t out = 1;
    while (k > 0) {
      out = mul_mod(out, inv_fact_[k % p_], p_);
      k /= p_;
    }
    return out;
  }

  /// Multinomial |k|! / prod k_i! mod p by Lucas; 0 if the k_i carry.
  std::uint64_t multinomial(const std::vector<std::uint64_t>& k) const {
    std::uint64_t total = 0;
    for (auto v : k) total += v;
    std::uint64_t out = 1;
    std::uint64_t t = total;
    while (t > 0) {
      out = mul_mod(out, fact_[t % p_], p_);
      t /= p_;
    }
    std::uint64_t column_check = 0;
    for (auto v : k) out = mul_mod(out, inverse_digit_factorials(v), p_);
    // Carry-free iff the digit sums of the summands add up to that of the total.
    auto digit_sum = [this](std::uint64_t v) {
      std::uint64_t s = 0;
      while (v > 0) {
        s += v % p_;
        v /= p_;
      }
      return s;
    };
    for (auto v : k) column_check += digit_sum(v);
    return column_check == digit_sum(total) ? out : 0;
  }

 private:
  std::uint64_t p_;
  std::vector<std::uint64_t> fact_;
  std::vector<std::uint64_t> inv_fact_;
};

std::vector<std::uint64_t> digits_of(std::uint64_t n, std::uint64_t p, std::size_t length) {
  std::vector<std::uint64_t> out(length, 0);
  for (std::size_t l = 0; l < length && n > 0; ++l) {
    out[l] = n % p;
    n /= p;
  }
  return out;
}

/// Optional pruning: the running total of w_j * floor(d_j k_j / p^e) over the
/// chosen coordinates may not exceed cap.
struct QuotientCost {
  std::vector<std::uint64_t> weights;
  std::vector<std::uint64_t> exponents;
  std::uint64_t modulus = 1;  // p^e
  std::uint64_t cap = kNoBound;

  std::uint64_t of(std::size_t j, std::uint64_t k) const {
    return weights[j] * (exponents[j] * k / modulus);
  }
};

using TermVisitor = std::function<bool(const std::vector<std::uint64_t>&, std::uint64_t)>;

bool carry_free_split_exists(std::uint64_t R, std::uint64_t parts, std::uint64_t bound, std::uint64_t p);

/// Depth-first enumeration of carry-free k with |k| = N: every k_j is a
/// digit-wise sub-vector of what the earlier coordinates left over.
/// Coordinates are visited in `order`, which defaults to 0..n-1.
class CarryFreeWalker {
 public:
  CarryFreeWalker(const DiagonalForm& form, std::uint64_t N, std::vector<std::uint64_t> upper,
                  const QuotientCost* cost, const Budget& budget)
      : form_(form),
        p_(form.prime().value()),
        factorials_(form.prime()),
        upper_(std::move(upper)),
        cost_(cost),
        budget_(budget) {
    const auto n = form.num_variables();
    if (upper_.empty()) upper_.assign(n, kNoBound);
    if (upper_.size() != n) throw ArgumentError("bound vector length does not match the form");
    length_ = base_p_digits(N, form.prime()).size();
    remaining_ = digits_of(N, p_, length_);
    total_ = N;
    // N! contribution: product of factorials of the digits of N.
    base_coefficient_ = 1;
    for (auto d : remaining_) base_coefficient_ = mul_mod(base_coefficient_, factorials_.fact(d), p_);
    k_.assign(n, 0);
    lower_.assign(n, 0);
    order_.resize(n);
    for (std::size_t j = 0; j < n; ++j) order_[j] = j;
    refresh_suffixes();
  }

  void set_lower(std::vector<std::uint64_t> lower) {
    if (lower.size() != form_.num_variables()) throw ArgumentError("bound vector length does not match the form");
    lower_ = std::move(lower);
    refresh_suffixes();
  }

  void set_order(std::vector<std::size_t> order) {
    order_ = std::move(order);
    refresh_suffixes();
  }

  /// Returns false if the visitor asked to stop.
  bool run(const TermVisitor& visit) {
    visit_ = &visit;
    return descend(0, total_, base_coefficient_, 0);
  }

 private:
  void refresh_suffixes() {
    const auto n = order_.size();
    suffix_upper_.assign(n + 1, 0);
    suffix_lower_.assign(n + 1, 0);
    for (std::size_t t = n; t-- > 0;) {
      const auto j = order_[t];
      suffix_upper_[t] = upper_[j] == kNoBound || suffix_upper_[t + 1] == kNoBound
                             ? kNoBound
                             : std::min<std::uint64_t>(kNoBound - 1, suffix_upper_[t + 1] + upper_[j]);
      suffix_lower_[t] = suffix_lower_[t + 1] + lower_[j];
    }
  }

  std::uint64_t value_of(const std::vector<std::uint64_t>& digits) const {
    std::uint64_t v = 0;
    for (std::size_t l = digits.size(); l-- > 0;) v = v * p_ + digits[l];
    return v;
  }

  std::uint64_t factor_for(std::size_t j, std::uint64_t k) const {
    return mul_mod(factorials_.inverse_digit_factorials(k), pow_mod(form_.coefficients()[j], k, p_), p_);
  }

  bool emit(std::uint64_t coefficient) {
    if (++visited_ > budget_.max_terms) {
      throw ResourceError("expansion exceeds " + std::to_string(budget_.max_terms) + " terms");
    }
    return (*visit_)(k_, coefficient);
  }

  // Whether `left` can still be split among positions t.. under the cost left.
  bool feasible(std::size_t t, std::uint64_t left, std::uint64_t spent) const {
    const auto n = order_.size();
    if (left < suffix_lower_[t]) return false;
    if (suffix_upper_[t] != kNoBound && left > suffix_upper_[t]) return false;
    if (!cost_ || cost_->cap == kNoBound) return true;
    const std::uint64_t slack = cost_->cap - spent;
    std::uint64_t bound = 0;
    for (std::size_t s = t; s < n; ++s) {
      const auto j = order_[s];
      const std::uint64_t quotient = slack / cost_->weights[j];
      const std::uint64_t by_cost = quotient + 1 > kNoBound / cost_->modulus
                                        ? kNoBound
                                        : ((quotient + 1) * cost_->modulus - 1) / cost_->exponents[j];
      bound = std::max(bound, std::min(upper_[j], by_cost));
    }
    return carry_free_split_exists(left, n - t, bound, p_);
  }

  bool descend(std::size_t t, std::uint64_t rest, std::uint64_t coefficient, std::uint64_t spent) {
    const auto n = order_.size();
    const auto j = order_[t];
    if (t + 1 == n) {
      if (rest > upper_[j] || rest < lower_[j]) return true;
      if (cost_ && spent + cost_->of(j, rest) > cost_->cap) return true;
      k_[j] = rest;
      return emit(mul_mod(coefficient, factor_for(j, rest), p_));
    }
    // Odometer over sub-vectors of `remaining_`, least significant digit
    // first, which visits k_j in increasing order.
    std::vector<std::uint64_t> chosen(length_, 0);
    const std::vector<std::uint64_t> saved = remaining_;
    while (true) {
      const std::uint64_t k = value_of(chosen);
      if (k > upper_[j]) break;
      const std::uint64_t step = cost_ ? cost_->of(j, k) : 0;
      const bool affordable = !cost_ || spent + step <= cost_->cap;
      if (!affordable) break;  // cost is monotone in k_j
      if (k >= lower_[j] && feasible(t + 1, rest - k, spent + step)) {
        for (std::size_t l = 0; l < length_; ++l) remaining_[l] = saved[l] - chosen[l];
        k_[j] = k;
        const bool go_on = descend(t + 1, rest - k, mul_mod(coefficient, factor_for(j, k), p_), spent + step);
        remaining_ = saved;
        if (!go_on) return false;
      }
      std::size_t l = 0;
      while (l < length_ && chosen[l] == saved[l]) chosen[l++] = 0;
      if (l == length_) break;
      ++chosen[l];
    }
    k_[j] = 0;
    return true;
  }

  const DiagonalForm& form_;
  std::uint64_t p_;
  DigitFactorials factorials_;
  std::vector<std::uint64_t> upper_;
  std::vector<std::uint64_t> lower_;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> suffix_upper_;
  std::vector<std::uint64_t> suffix_lower_;
  const QuotientCost* cost_;
  const Budget& budget_;
  std::size_t length_ = 0;
  std::vector<std::uint64_t> remaining_;
  std::uint64_t total_ = 0;
  std::uint64_t base_coefficient_ = 1;
  std::vector<std::uint64_t> k_;
  const TermVisitor* visit_ = nullptr;
  std::uint64_t visited_ = 0;
};

Exponent scaled_exponent(const DiagonalForm& form, const std::vector<std::uint64_t>& k) {
  Exponent out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) out[j] = form.exponents()[j] * k[j];
  return out;
}

QuotientCost quotient_cost(const DiagonalForm& form, std::uint64_t modulus, std::uint64_t cap) {
  auto exps = form.exponents();
  return QuotientCost{form.weights(), {exps.begin(), exps.end()}, modulus, cap};
}

/// Largest k_j whose quotient floor(d_j k_j / p^e) keeps w_j * quotient <= cap.
std::vector<std::uint64_t> capped_upper_bounds(const DiagonalForm& form, std::uint64_t modulus,
                                               std::uint64_t cap) {
  const auto weights = form.weights();
  std::vector<std::uint64_t> out;
  for (std::size_t j = 0; j < form.num_variables(); ++j) {
    out.push_back(((cap / weights[j] + 1) * modulus - 1) / form.exponents()[j]);
  }
  return out;
}

/// Streams the capped generators of I_e(f^N) one residue class at a time. For
/// every residue r first met during the walk, the generator sum c_k x^q is
/// assembled from all quotients q of weighted degree <= cap.
void stream_capped_generators(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                              std::uint64_t cap, const Budget& budget,
                              const std::function<bool(PolyFp)>& on_generator,
                              const std::vector<std::uint64_t>& lower = {},
                              std::set<Exponent>* shared_seen = nullptr) {
  const Prime p = form.prime();
  const auto modulus = checked_power(p, e);
  const auto n = form.num_variables();
  const auto weights = form.weights();
  const DigitFactorials factorials(p);

  std::vector<Exponent> quotients;
  for (std::uint64_t deg = 0; deg <= cap; ++deg) {
    for (auto& q : monomials_of_degree(weights, deg)) quotients.push_back(std::move(q));
  }

  std::set<Exponent> local_seen;
  std::set<Exponent>& seen = shared_seen ? *shared_seen : local_seen;
  const QuotientCost cost = quotient_cost(form, modulus, cap);
  CarryFreeWalker walker(form, N, capped_upper_bounds(form, modulus, cap), &cost, budget);
  if (!lower.empty()) {
    walker.set_lower(lower);
    // Put the most constrained coordinates first.
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lower[a] > lower[b]; });
    walker.set_order(std::move(order));
  }
  walker.run([&](const std::vector<std::uint64_t>& k, std::uint64_t) {
    Exponent residue(n);
    for (std::size_t j = 0; j < n; ++j) residue[j] = form.exponents()[j] * k[j] % modulus;
    if (!seen.insert(residue).second) return true;
    PolyFp generator(n, p);
    std::vector<std::uint64_t> candidate(n);
    for (const auto& q : quotients) {
      std::uint64_t total = 0;
      bool integral = true;
      for (std::size_t j = 0; j < n && integral; ++j) {
        const std::uint64_t scaled = modulus * q[j] + residue[j];
        integral = scaled % form.exponents()[j] == 0;
        candidate[j] = scaled / form.exponents()[j];
        total += candidate[j];
      }
      if (!integral || total != N) continue;
      std::uint64_t c = factorials.multinomial(candidate);
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        c = mul_mod(c, pow_mod(form.coefficients()[j], candidate[j], p.value()), p.value());
      }
      generator.add_term(q, c);
    }
    return on_generator(std::move(generator));
  });
}

/// Feasibility of writing R (base-p digits, least significant first) as a
/// carry-free sum of `parts` naturals, each at most `bound`.
bool carry_free_split_exists(std::uint64_t R, std::uint64_t parts, std::uint64_t bound, std::uint64_t p) {
  if (parts == 0) return R == 0;
  std::size_t length = 0;
  for (std::uint64_t v = std::max(R, bound); v > 0; v /= p) ++length;
  const auto r = digits_of(R, p, length);
  const auto b = digits_of(bound, p, length);
  // reachable[t]: some prefix assignment leaves exactly t parts still equal
  // to the bound's prefix.
  std::vector<bool> reachable(parts + 1, false);
  reachable[parts] = true;
  for (std::size_t l = length; l-- > 0;) {
    std::vector<bool> next(parts + 1, false);
    for (std::uint64_t t = 0; t <= parts; ++t) {
      if (!reachable[t]) continue;
      const std::uint64_t free_parts = parts - t;
      for (std::uint64_t s = 0; s <= t; ++s) {
        if (b[l] == 0 && s != t) continue;
        const std::uint64_t low = s * b[l];
        const std::uint64_t high = low + (t - s) * (b[l] == 0 ? 0 : b[l] - 1) + free_parts * (p - 1);
        if (low <= r[l] && r[l] <= high) next[s] = true;
      }
    }
    reachable = std::move(next);
  }
  return std::any_of(reachable.begin(), reachable.end(), [](bool v) { return v; });
}

bool is_power_of(std::uint64_t d, std::uint64_t p) {
  if (d < p) return false;
  while (d % p == 0) d /= p;
  return d == 1;
}

}  // namespace

std::uint64_t nu(const DiagonalForm& form, std::uint64_t e, const Budget& budget) {
  require_level(e);
  const Prime p = form.prime();
  const std::uint64_t pv = p.value();
  const std::uint64_t modulus = checked_power(p, e);
  const std::size_t n = form.num_variables();
  if (n > 30) throw ResourceError("digit DP supports at most 30 variables");
  const std::uint64_t masks = std::uint64_t{1} << n;
  const std::uint64_t states = e * (n + 1) * pv * masks;
  if (states > budget.max_states) {
    throw ResourceError("nu digit DP needs " + std::to_string(states) + " states, budget is " +
                        std::to_string(budget.max_states));
  }
  std::vector<std::vector<std::uint64_t>> bound_digits;
  for (auto d : form.exponents()) bound_digits.push_back(digits_of((modulus - 1) / d, pv, e));
  std::vector<std::uint64_t> place(e, 1);
  for (std::size_t l = 1; l < e; ++l) place[l] = place[l - 1] * pv;

  std::vector<std::int64_t> memo(states, -1);
  // best(level, j, budget s left in this column, tight mask): largest sum of
  // the still-undecided digit values.
  std::function<std::uint64_t(std::int64_t, std::size_t, std::uint64_t, std::uint64_t)> best =
      [&](std::int64_t level, std::size_t j, std::uint64_t s, std::uint64_t mask) -> std::uint64_t {
    if (level < 0) return 0;
    if (j == n) return best(level - 1, 0, pv - 1, mask);
    const std::size_t index = ((static_cast<std::size_t>(level) * (n + 1) + j) * pv + s) * masks + mask;
    if (memo[index] >= 0) return static_cast<std::uint64_t>(memo[index]);
    const bool tight = (mask >> j) & 1;
    const std::uint64_t cap_digit = tight ? bound_digits[j][level] : pv - 1;
    std::uint64_t result = 0;
    for (std::uint64_t c = 0; c <= std::min(s, cap_digit); ++c) {
      const std::uint64_t next_mask = (tight && c == cap_digit) ? mask : (mask & ~(std::uint64_t{1} << j));
      result = std::max(result, c * place[level] + best(level, j + 1, s - c, next_mask));
    }
    memo[index] = static_cast<std::int64_t>(result);
    return result;
  };
  return best(static_cast<std::int64_t>(e) - 1, 0, pv - 1, masks - 1);
}

std::uint64_t nu_by_enumeration(const DiagonalForm& form, std::uint64_t e, const Budget& budget) {
  require_level(e);
  const Prime p = form.prime();
  const std::uint64_t modulus = checked_power(p, e);
  const std::size_t n = form.num_variables();
  std::vector<std::uint64_t> bounds;
  double box = 1;
  for (auto d : form.exponents()) {
    bounds.push_back((modulus - 1) / d);
    box *= static_cast<double>(bounds.back() + 1);
  }
  if (box > static_cast<double>(budget.max_terms)) {
    throw ResourceError("enumeration box of size " + std::to_string(static_cast<std::uint64_t>(box)) +
                        " exceeds the term budget");
  }
  std::vector<std::uint64_t> k(n, 0);
  std::uint64_t best = 0;
  while (true) {
    std::uint64_t total = 0;
    for (auto v : k) total += v;
    if (total > best && multinomial_nonzero_mod_p(MultiIndex(k), p)) best = total;
    std::size_t j = 0;
    while (j < n && k[j] == bounds[j]) k[j++] = 0;
    if (j == n) break;
    ++k[j];
  }
  return best;
}

std::pair<Rational, Rational> fpt_bracket(const DiagonalForm& form, std::uint64_t e, const Budget& budget) {
  const auto v = nu(form, e, budget);
  const BigInt scale = pow_big(form.prime(), e);
  return {Rational(BigInt(v), scale), Rational(BigInt(v + 1), scale)};
}

PolyFp to_poly(const DiagonalForm& form) {
  PolyFp f(form.num_variables(), form.prime());
  for (std::size_t j = 0; j < form.num_variables(); ++j) {
    Exponent e(form.num_variables(), 0);
    e[j] = form.exponents()[j];
    f.add_term(e, form.coefficients()[j]);
  }
  return f;
}

void for_each_carry_free_term(const DiagonalForm& form, std::uint64_t N,
                              const std::vector<std::uint64_t>& upper, const TermVisitor& visit,
                              const Budget& budget) {
  CarryFreeWalker walker(form, N, upper, nullptr, budget);
  walker.run(visit);
}

PolyFp expand_power(const DiagonalForm& form, std::uint64_t N, const Budget& budget) {
  PolyFp out(form.num_variables(), form.prime());
  for_each_carry_free_term(
      form, N, {},
      [&](const std::vector<std::uint64_t>& k, std::uint64_t c) {
        out.add_term(scaled_exponent(form, k), c);
        return true;
      },
      budget);
  return out;
}

IdealFp pideal_generators(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                          const GeneratorOptions& options) {
  require_level(e);
  const Prime p = form.prime();
  const auto modulus = checked_power(p, e);
  const auto n = form.num_variables();
  IdealFp ideal(n, p, form.weights());

  if (options.degree_cap) {
    ideal.set_degree_cap(options.degree_cap);
    stream_capped_generators(form, N, e, *options.degree_cap, options.budget, [&](PolyFp g) {
      ideal.add_generator(std::move(g));
      return true;
    });
    return ideal;
  }

  std::map<Exponent, PolyFp> by_residue;
  for_each_carry_free_term(
      form, N, {},
      [&](const std::vector<std::uint64_t>& k, std::uint64_t c) {
        Exponent residue(n);
        Exponent quotient(n);
        for (std::size_t j = 0; j < n; ++j) {
          const auto v = form.exponents()[j] * k[j];
          residue[j] = v % modulus;
          quotient[j] = v / modulus;
        }
        auto [it, inserted] = by_residue.try_emplace(std::move(residue), n, p);
        it->second.add_term(quotient, c);
        return true;
      },
      options.budget);
  for (auto& [residue, g] : by_residue) ideal.add_generator(std::move(g));
  return ideal;
}

bool frobenius_power_membership(const PolyFp& g, const IdealFp& ideal, std::uint64_t e,
                                const MembershipOptions& options) {
  require_level(e);
  if (g.num_variables() != ideal.num_variables() || !(g.prime() == ideal.prime())) {
    throw ArgumentError("polynomial and ideal live in different rings");
  }
  const auto modulus = checked_power(g.prime(), e);
  const auto n = g.num_variables();
  std::map<Exponent, PolyFp> by_residue;
  for (const auto& [exp, c] : g.terms()) {
    Exponent residue(n);
    Exponent quotient(n);
    for (std::size_t j = 0; j < n; ++j) {
      residue[j] = exp[j] % modulus;
      quotient[j] = exp[j] / modulus;
    }
    auto [it, inserted] = by_residue.try_emplace(std::move(residue), n, g.prime());
    it->second.add_term(quotient, c);
  }
  for (const auto& [residue, coefficient] : by_residue) {
    if (!ideal_contains(ideal, coefficient, options)) return false;
  }
  return true;
}

TestIdealResult test_ideal(const DiagonalForm& form, const Rational& lambda, const TestIdealOptions& options) {
  if (lambda <= 0) throw DomainError("test ideal parameter must be positive, got " + to_string(lambda));
  const Prime p = form.prime();
  const std::uint64_t first = std::max<std::uint64_t>(options.e_hint, 1);
  GeneratorOptions gen_options{options.degree_cap, options.budget};

  const int exact_level = p_power_exponent_of_denominator(lambda, p);
  if (exact_level >= 0) {
    const std::uint64_t e = std::max<std::uint64_t>(first, static_cast<std::uint64_t>(exact_level));
    const BigInt scaled = numerator_of(lambda * pow_big(p, e));
    if (scaled > BigInt(std::numeric_limits<std::uint64_t>::max() / 4)) {
      throw ResourceError("f^N with N = " + scaled.str() + " is beyond the oracle's range");
    }
    const auto N = scaled.convert_to<std::uint64_t>();
    return TestIdealResult{pideal_generators(form, N, e, gen_options), e, N, false};
  }

  const MembershipOptions membership{std::nullopt, options.budget};
  std::vector<IdealFp> last;
  for (std::uint64_t e = first; e <= options.e_max; ++e) {
    const auto N = ceil_of(lambda * pow_big(p, e)).convert_to<std::uint64_t>();
    try {
      IdealFp current = pideal_generators(form, N, e, gen_options);
      if (!last.empty() && ideals_equal(last.back(), current, membership)) {
        return TestIdealResult{std::move(current), e, N, true};
      }
      last.push_back(std::move(current));
      if (last.size() > 2) last.erase(last.begin());
    } catch (const ResourceError& err) {
      throw StabilizationError(std::string("test ideal did not stabilize within budget: ") + err.what(),
                               std::move(last));
    }
  }
  throw StabilizationError("test ideal did not stabilize by level " + std::to_string(options.e_max),
                           std::move(last));
}

IdealShape classify_ideal(const IdealFp& ideal, const DiagonalForm& form, const MembershipOptions& options) {
  const auto n = form.num_variables();
  const Prime p = form.prime();
  if (ideal_contains(ideal, PolyFp::constant(n, p, 1), options)) return IdealShape::Unit;
  bool all_variables = true;
  for (std::size_t i = 0; i < n && all_variables; ++i) {
    all_variables = ideal_contains(ideal, PolyFp::variable(n, p, i), options);
  }
  if (all_variables) return IdealShape::Maximal;
  const PolyFp f = to_poly(form);
  const IdealFp principal = IdealFp::principal(f, form.weights());
  if (ideal_contains(ideal, f, options)) {
    if (ideal.degree_cap() && *ideal.degree_cap() < form.weighted_degree()) {
      throw InconclusiveError("truncated ideal cannot be compared with (f)");
    }
    bool inside = true;
    for (const auto& g : ideal.generators()) {
      if (!ideal_contains(principal, g, options)) {
        inside = false;
        break;
      }
    }
    if (inside) return IdealShape::PrincipalF;
  }
  return IdealShape::Other;
}

bool nogathering_member(std::uint64_t degree, Prime p, std::uint64_t e, std::uint64_t N, std::size_t i) {
  require_level(e);
  if (degree < 2) throw ArgumentError("degree must be at least 2");
  if (i >= degree) throw ArgumentError("variable index out of range");
  if (is_power_of(degree, p)) {
    throw HypothesisError("degree " + std::to_string(degree) + " is a power of p = " + std::to_string(p.value()));
  }
  const std::uint64_t modulus = checked_power(p, e);
  const std::uint64_t low = (modulus + degree - 1) / degree;
  const std::uint64_t high = std::min<std::uint64_t>((2 * modulus - 1) / degree, N);
  const std::uint64_t others = (modulus - 1) / degree;
  for (std::uint64_t k = low; k <= high; ++k) {
    // k must be a digit-wise sub-vector of N for the sum to be carry-free.
    bool submask = true;
    for (std::uint64_t a = k, b = N; a > 0 && submask; a /= p, b /= p) submask = a % p <= b % p;
    if (!submask) continue;
    if (carry_free_split_exists(N - k, degree - 1, others, p)) return true;
  }
  return false;
}

ProjectionVerdict projection_ideal_member(const DiagonalForm& form, std::uint64_t e, std::size_t i) {
  require_level(e);
  if (i >= form.num_variables()) throw ArgumentError("variable index out of range");
  const Prime p = form.prime();
  const auto modulus = checked_power(p, e);
  const auto d = form.exponents()[i];
  if (d >= modulus) throw HypothesisError("projection criterion needs d_i < p^e");
  if (is_power_of(d, p)) throw HypothesisError("projection criterion needs d_i not a power of p");

  std::uint64_t digit_sum = 0;
  std::vector<std::uint64_t> k;
  for (const auto& delta : form.reciprocal_exponents()) {
    digit_sum += digit(delta, p, e);
    k.push_back(numerator_of(truncate(delta, p, e) * modulus).convert_to<std::uint64_t>());
  }
  if (digit_sum > p.value() - 2) return ProjectionVerdict::DigitSumTooLarge;
  if (!multinomial_nonzero_mod_p(MultiIndex(k), p)) return ProjectionVerdict::MultinomialVanishes;
  return ProjectionVerdict::Member;
}

std::uint64_t projection_power(const DiagonalForm& form, std::uint64_t e) {
  require_level(e);
  const auto modulus = checked_power(form.prime(), e);
  std::uint64_t total = 1;
  for (const auto& delta : form.reciprocal_exponents()) {
    total += numerator_of(truncate(delta, form.prime(), e) * modulus).convert_to<std::uint64_t>();
  }
  return total;
}

std::uint64_t min_generator_degree(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                                   const Budget& budget) {
  require_level(e);
  const Prime p = form.prime();
  const std::uint64_t pv = p.value();
  const auto modulus = checked_power(p, e);
  const auto n = form.num_variables();
  const auto weights = form.weights();
  const auto top = base_p_digits(N, p);
  const std::size_t length = top.size();

  // Sub-vectors R of N's digit vector, indexed in mixed radix (digit_l + 1).
  std::vector<std::uint64_t> radix(length + 1, 1);
  for (std::size_t l = 0; l < length; ++l) radix[l + 1] = radix[l] * (top[l] + 1);
  const std::uint64_t count = radix[length];
  if (count * n > budget.max_states) throw ResourceError("generator-degree DP exceeds the state budget");

  auto value_of = [&](std::uint64_t index) {
    std::uint64_t v = 0;
    std::uint64_t place = 1;
    for (std::size_t l = 0; l < length; ++l) {
      v += (index / radix[l] % (top[l] + 1)) * place;
      place *= pv;
    }
    return v;
  };
  auto cost = [&](std::size_t j, std::uint64_t k) {
    return weights[j] * (form.exponents()[j] * k / modulus);
  };

  std::vector<std::uint64_t> values(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) values[idx] = value_of(idx);

  // table[R]: least cost of splitting R among variables j..n-1.
  std::vector<std::uint64_t> table(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) table[idx] = cost(n - 1, values[idx]);
  for (std::size_t j = n - 1; j-- > 0;) {
    std::vector<std::uint64_t> next(count, kNoBound);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      // Enumerate sub-vectors S of R by odometer over the digits of R.
      std::vector<std::uint64_t> r_digits(length), s_digits(length, 0);
      for (std::size_t l = 0; l < length; ++l) r_digits[l] = idx / radix[l] % (top[l] + 1);
      std::uint64_t best = kNoBound;
      while (true) {
        std::uint64_t s_idx = 0;
        std::uint64_t rest_idx = 0;
        for (std::size_t l = 0; l < length; ++l) {
          s_idx += s_digits[l] * radix[l];
          rest_idx += (r_digits[l] - s_digits[l]) * radix[l];
        }
        best = std::min(best, cost(j, values[s_idx]) + table[rest_idx]);
        std::size_t l = 0;
        while (l < length && s_digits[l] == r_digits[l]) s_digits[l++] = 0;
        if (l == length) break;
        ++s_digits[l];
      }
      next[idx] = best;
    }
    table = std::move(next);
  }
  return table[count - 1];
}

std::vector<bool> coefficient_ideal_variables(const DiagonalForm& form, std::uint64_t N, std::uint64_t e,
                                              const Budget& budget) {
  const auto n = form.num_variables();
  const Prime p = form.prime();
  std::vector<bool> found(n, false);
  if (min_generator_degree(form, N, e, budget) == 0) return std::vector<bool>(n, true);

  const auto weights = form.weights();
  const auto cap = *std::max_element(weights.begin(), weights.end());
  IdealFp ideal(n, p, weights);
  ideal.set_degree_cap(cap);
  const MembershipOptions membership{std::nullopt, budget};
  std::size_t missing = n;
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (!found[i] && ideal_contains(ideal, PolyFp::variable(n, p, i), membership)) {
        found[i] = true;
        --missing;
      }
    }
  };
  // Phase i forces a nonzero quotient on x_i, so its generators involve x_i
  // early. Cost-zero terms are excluded since the ideal is proper; the phases
  // together still visit every remaining term.
  std::set<Exponent> seen;
  const auto modulus = checked_power(p, e);
  for (std::size_t i = 0; i < n && missing > 0; ++i) {
    if (found[i]) continue;
    std::vector<std::uint64_t> lower(n, 0);
    lower[i] = (modulus + form.exponents()[i] - 1) / form.exponents()[i];
    stream_capped_generators(
        form, N, e, cap, budget,
        [&](PolyFp g) {
          ideal.add_generator(std::move(g));
          if (ideal_contains(ideal, PolyFp::variable(n, p, i), membership)) return false;
          return true;
        },
        lower, &seen);
    refresh();
  }
  return found;
}

bool IdealFingerprint::maximal() const {
  return !unit() && std::all_of(contains_variable.begin(), contains_variable.end(), [](bool v) { return v; });
}

IdealFingerprint fermat_fingerprint(std::uint64_t degree, Prime p, std::uint64_t e, std::uint64_t N,
                                    const Budget& budget) {
  const DiagonalForm form = DiagonalForm::fermat(degree, p);
  IdealFingerprint out;
  out.min_degree = min_generator_degree(form, N, e, budget);
  out.contains_variable.assign(degree, true);
  if (!out.unit()) {
    for (std::size_t i = 0; i < degree; ++i) out.contains_variable[i] = nogathering_member(degree, p, e, N, i);
  }
  return out;
}

std::vector<JumpScanPoint> jump_scan(std::uint64_t degree, Prime p, std::uint64_t e_max, const Budget& budget) {
  require_level(e_max);
  if (p.value() <= degree) {
    throw UnsupportedRegimeError("jump scan needs p > d (got d=" + std::to_string(degree) +
                                 ", p=" + std::to_string(p.value()) + ")");
  }
  const auto modulus = checked_power(p, e_max);
  if (modulus > budget.max_terms) throw ResourceError("jump scan grid exceeds the term budget");
  IdealFingerprint previous;  // tau(f^0) = R
  previous.contains_variable.assign(degree, true);
  std::vector<JumpScanPoint> changes;
  for (std::uint64_t m = 1; m <= modulus; ++m) {
    auto current = fermat_fingerprint(degree, p, e_max, m, budget);
    if (!(current == previous)) {
      changes.push_back({Rational(BigInt(m), BigInt(modulus)), current});
    }
    previous = std::move(current);
  }
  return changes;
}

std::string_view to_string(IdealShape shape) {
  switch (shape) {
    case IdealShape::Unit: return "UNIT";
    case IdealShape::Maximal: return "MAXIMAL";
    case IdealShape::PrincipalF: return "PRINCIPAL_F";
    case IdealShape::Other: return "OTHER";
  }
  return "OTHER";
}

std::string_view to_string(ProjectionVerdict verdict) {
  switch (verdict) {
    case ProjectionVerdict::Member: return "MEMBER";
    case ProjectionVerdict::DigitSumTooLarge: return "DIGIT_SUM_TOO_LARGE";
    case ProjectionVerdict::MultinomialVanishes: return "MULTINOMIAL_VANISHES";
  }
  return "MEMBER";
}

}  // namespace finv

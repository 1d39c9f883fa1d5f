#include "frobperf/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "frobperf/errors.hpp"

namespace frobperf {

PolyRing::PolyRing(PrimeField f, std::vector<std::string> v, MonomialOrder o)
    : field(f), vars(std::move(v)), order(std::move(o)) {
  if (order.perm.size() != vars.size())
    throw structural_error("monomial order arity does not match variable count");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw structural_error("duplicate variable name: " + vars[i]);
}

std::optional<std::size_t> PolyRing::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(PrimeField field, std::vector<std::string> vars) {
  auto order = MonomialOrder::grevlex(vars.size());
  return std::make_shared<const PolyRing>(field, std::move(vars), std::move(order));
}

RingPtr make_ring(PrimeField field, std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const PolyRing>(field, std::move(vars), std::move(order));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring()))
    throw structural_error("polynomial ring mismatch");
}

} // namespace

Polynomial Polynomial::zero(RingPtr ring) {
  Polynomial p;
  p.ring_ = std::move(ring);
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, std::uint32_t c) {
  c %= ring->field.p();
  Polynomial p = zero(std::move(ring));
  if (c) p.terms_.push_back({Monomial::one(p.ring_->nvars()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i, std::uint32_t exp) {
  if (i >= ring->nvars()) throw structural_error("variable index out of range");
  Polynomial p = zero(std::move(ring));
  if (exp == 0) return constant(p.ring_, 1);
  p.terms_.push_back({Monomial::var(p.ring_->nvars(), i, exp), 1});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& ord = ring->order;
  auto greater = [&ord](const Term& a, const Term& b) { return ord.greater(a.m, b.m); };
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return greater(a, b);
  });
  Polynomial p = zero(ring);
  for (auto& t : terms) {
    std::uint32_t c = t.c % ring->field.p();
    if (!c) continue;
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      std::uint32_t s = ring->field.add(p.terms_.back().c, c);
      if (s)
        p.terms_.back().c = s;
      else
        p.terms_.pop_back();
    } else {
      p.terms_.push_back({std::move(t.m), c});
    }
  }
  return p;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw structural_error("leading term of zero polynomial");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.degree());
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ring(*this, o);
  const auto& F = ring_->field;
  const auto& ord = ring_->order;
  Polynomial r = zero(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ord.cmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      std::uint32_t s = F.add(terms_[i].c, o.terms_[j].c);
      if (s) r.terms_.push_back({terms_[i].m, s});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = ring_->field.neg(t.c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Term& t) const {
  if (t.c == 0) return zero(ring_);
  Polynomial r = zero(ring_);
  r.terms_.reserve(terms_.size());
  const auto& F = ring_->field;
  for (const auto& s : terms_) {
    std::uint32_t c = F.mul(s.c, t.c);
    if (c) r.terms_.push_back({s.m * t.m, c});
  }
  return r; // multiplying by a monomial preserves the term order
}

Polynomial Polynomial::mul_scalar(std::uint32_t c) const {
  return mul_term({Monomial::one(ring_->nvars()), c % ring_->field.p()});
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(*this, o);
  const auto& F = ring_->field;
  const auto& ord = ring_->order;
  auto less = [&ord](const Monomial& a, const Monomial& b) { return ord.less(a, b); };
  std::map<Monomial, std::uint32_t, decltype(less)> acc(less);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Monomial m = a.m * b.m;
      std::uint32_t c = F.mul(a.c, b.c);
      auto [it, fresh] = acc.try_emplace(std::move(m), c);
      if (!fresh) it->second = F.add(it->second, c);
    }
  Polynomial r = zero(ring_);
  r.terms_.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second) r.terms_.push_back({it->first, it->second});
  return r;
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  Polynomial acc = constant(ring_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

Polynomial Polynomial::frobenius_power(unsigned n) const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= ring_->field.p();
    if (q > (1ull << 32)) throw structural_error("frobenius power exponent overflow");
  }
  Polynomial r = zero(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m.pow(q), t.c});
  // Exponent scaling is strictly monotone for every admissible order, so the
  // term sequence stays sorted.
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ring_->nvars()) throw structural_error("variable index out of range");
  std::vector<Term> out;
  const auto& F = ring_->field;
  for (const auto& t : terms_) {
    std::uint32_t e = t.m.e[var];
    if (!e) continue;
    std::uint32_t c = F.mul(t.c, e % F.p());
    if (!c) continue;
    Term d = t;
    d.c = c;
    d.m.e[var] = e - 1;
    out.push_back(std::move(d));
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::uint32_t lc = terms_.front().c;
  if (lc == 1) return *this;
  return mul_scalar(ring_->field.inv(lc));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  return terms_ == o.terms_;
}

int Polynomial::compare(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  const auto& ord = a.ring()->order;
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = ord.cmp(a.terms_[i].m, b.terms_[i].m);
    if (c) return c;
    if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

Polynomial Polynomial::transplant(const RingPtr& target,
                                  const std::vector<std::size_t>& var_map) const {
  if (var_map.size() != ring_->nvars())
    throw structural_error("transplant: variable map arity mismatch");
  if (ring_->field != target->field)
    throw structural_error("transplant: field mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = Monomial::one(target->nvars());
    for (std::size_t i = 0; i < var_map.size(); ++i) {
      if (!t.m.e[i]) continue;
      if (var_map[i] >= target->nvars())
        throw structural_error("transplant: target variable out of range");
      m.e[var_map[i]] += t.m.e[i];
    }
    out.push_back({std::move(m), t.c});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::reorder(const RingPtr& target) const {
  if (ring_->vars != target->vars || ring_->field != target->field)
    throw structural_error("reorder: rings differ by more than the order");
  std::vector<std::size_t> id(ring_->nvars());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return transplant(target, id);
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const auto& vars = p.ring()->vars;
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    if (t.c != 1 || t.m.is_one()) {
      os << t.c;
      printed = true;
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!t.m.e[i]) continue;
      if (printed) os << "*";
      os << vars[i];
      if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      printed = true;
    }
  }
  return os.str();
}

std::string Polynomial::str() const { return to_string(*this); }

} // namespace frobperf

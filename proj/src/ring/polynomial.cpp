#include "bihamil/ring/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "bihamil/errors.hpp"

namespace bihamil {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw ParseError("invalid rational '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 1; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) r.set(i, std::min((*this)[i], o[i]));
  return r;
}

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono > b.mono; }

// Brings two operands to a common arity; constants adapt.
std::size_t common_arity(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() == b.nvars()) return a.nvars();
  if (a.is_constant()) return b.nvars();
  if (b.is_constant()) return a.nvars();
  throw PreconditionError("polynomials over different coordinate counts");
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.push_back({Monomial(nvars), c});
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  Monomial m(nvars);
  m.set(i, 1);
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
  p.normalize_sorted();
  return p;
}

void Polynomial::normalize_sorted() {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw PreconditionError("polynomial is not constant");
  return terms_[0].coeff;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_[0].mono.degree(); }

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const {
  if (var >= nvars_) return false;
  for (const auto& t : terms_)
    if (t.mono[var] != 0) return true;
  return false;
}

std::vector<bool> Polynomial::variables_used() const {
  std::vector<bool> used(nvars_, false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.mono[i] != 0) used[i] = true;
  return used;
}

Polynomial Polynomial::with_nvars(std::size_t n) const {
  if (n == nvars_) return *this;
  if (!is_constant()) throw PreconditionError("cannot change arity of a non-constant polynomial");
  return Polynomial(n, constant_value());
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  std::size_t n = common_arity(*this, o);
  if (o.is_zero()) {
    if (nvars_ != n) *this = with_nvars(n);
    return *this;
  }
  const Polynomial rhs = o.with_nvars(n);
  Polynomial lhs = with_nvars(n);
  std::vector<Term> out;
  out.reserve(lhs.terms_.size() + rhs.terms_.size());
  auto i = lhs.terms_.begin();
  auto j = rhs.terms_.begin();
  while (i != lhs.terms_.end() && j != rhs.terms_.end()) {
    if (i->mono > j->mono) {
      out.push_back(std::move(*i++));
    } else if (j->mono > i->mono) {
      out.push_back(*j++);
    } else {
      Rational c = i->coeff + j->coeff;
      if (c != 0) out.push_back({std::move(i->mono), std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i != lhs.terms_.end(); ++i) out.push_back(std::move(*i));
  for (; j != rhs.terms_.end(); ++j) out.push_back(*j);
  nvars_ = n;
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;  // multiplication by a monomial preserves the order
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::size_t n = common_arity(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(n);
  if (a.is_constant()) return b.with_nvars(n) * a.constant_value();
  if (b.is_constant()) return a.with_nvars(n) * b.constant_value();
  if (a.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial::from_terms(n, std::move(prod));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.nvars_ != b.nvars_) {
    if (!a.is_constant() || !b.is_constant()) return false;
    return a.constant_value() == b.constant_value();
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(nvars_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial r(nvars_);
  if (var >= nvars_) return r;
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    r.terms_.push_back({m, t.coeff * e});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (point.size() < nvars_) throw PreconditionError("evaluation point has too few coordinates");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) {
      std::uint32_t e = t.mono[i];
      if (e == 0) continue;
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), e);
      v *= p;
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono[var];
    if (e == 0) {
      out.push_back(t);
      continue;
    }
    if (value == 0) continue;
    Monomial m = t.mono;
    m.set(var, 0);
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), e);
    mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), e);
    out.push_back({m, t.coeff * p});
  }
  return from_terms(nvars_, std::move(out));
}

Polynomial Polynomial::reindex(std::size_t new_nvars, const std::vector<int>& map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(new_nvars);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.mono[i] == 0) continue;
      if (i >= map.size() || map[i] < 0) throw PreconditionError("reindex drops a variable that is present");
      m.set(static_cast<std::size_t>(map[i]), m[static_cast<std::size_t>(map[i])] + t.mono[i]);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(new_nvars, std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw PreconditionError("division by the zero polynomial");
  std::size_t n = common_arity(*this, d);
  if (is_zero()) return Polynomial(n);
  if (d.is_constant()) return with_nvars(n) * (Rational(1) / d.constant_value());
  const Polynomial dv = d.with_nvars(n);
  const Term& ld = dv.leading();
  if (dv.size() == 1) {
    Polynomial q(n);
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!ld.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({t.mono / ld.mono, t.coeff / ld.coeff});
    }
    return q;
  }
  std::map<Monomial, Rational, std::greater<Monomial>> rem;
  for (const auto& t : with_nvars(n).terms_) rem.emplace(t.mono, t.coeff);
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!ld.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / ld.mono;
    Rational qc = it->second / ld.coeff;
    quot.push_back({qm, qc});
    for (const auto& t : dv.terms_) {
      Monomial m = t.mono * qm;
      auto [pos, inserted] = rem.try_emplace(m, 0);
      pos->second -= t.coeff * qc;
      if (pos->second == 0) rem.erase(pos);
    }
  }
  Polynomial q(n);
  q.terms_ = std::move(quot);  // produced in decreasing order
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading_coeff());
}

Monomial Polynomial::min_monomial() const {
  if (terms_.empty()) return Monomial(nvars_);
  Monomial m = terms_[0].mono;
  for (const auto& t : terms_) m = m.gcd(t.mono);
  return m;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    std::uint32_t e = m[var];
    m.set(var, 0);
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(nvars_, std::move(b)));
  return out;
}

Polynomial compose(const Polynomial& p, std::size_t new_nvars, const std::vector<Polynomial>& images) {
  if (images.size() < p.nvars()) throw PreconditionError("compose: too few images");
  std::vector<std::vector<Polynomial>> powers(p.nvars());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& tab = powers[v];
    if (tab.empty()) tab.push_back(Polynomial(new_nvars, Rational(1)));
    while (tab.size() <= e) tab.push_back(tab.back() * images[v].with_nvars(new_nvars));
    return tab[e];
  };
  Polynomial out(new_nvars);
  for (const auto& t : p.terms()) {
    Polynomial term(new_nvars, t.coeff);
    for (std::size_t v = 0; v < p.nvars(); ++v)
      if (t.mono[v] > 0) term *= power(v, t.mono[v]);
    out += term;
  }
  return out;
}

Polynomial Polynomial::from_coefficients_in(std::size_t nvars, std::size_t var, const std::vector<Polynomial>& c) {
  std::vector<Term> all;
  for (std::size_t e = 0; e < c.size(); ++e) {
    const Polynomial ce = c[e].with_nvars(nvars);
    for (const auto& t : ce.terms_) {
      Monomial m = t.mono;
      m.set(var, m[var] + static_cast<std::uint32_t>(e));
      all.push_back({m, t.coeff});
    }
  }
  return from_terms(nvars, std::move(all));
}

namespace {

using UPoly = std::vector<Polynomial>;  // coefficients in the main variable, ascending

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = a.divide_exact(b);
  if (!q) throw DefectError("expected exact polynomial division");
  return *q;
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed over the coefficient ring.
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lb = b.back();
  std::size_t steps = a.size() - b.size() + 1;
  while (!a.empty() && a.size() - 1 >= db) {
    Polynomial la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    --steps;
  }
  if (steps > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(steps));
    for (auto& c : a) c = c * f;
  }
  return a;
}

Polynomial content(const UPoly& p);

Polynomial primitive(const UPoly& p, std::size_t nvars, std::size_t var, Polynomial* cont_out = nullptr) {
  Polynomial c = content(p);
  if (cont_out) *cont_out = c;
  UPoly q;
  q.reserve(p.size());
  for (const auto& x : p) q.push_back(exact(x, c));
  return Polynomial::from_coefficients_in(nvars, var, q);
}

Polynomial content(const UPoly& p) {
  Polynomial g;
  bool first = true;
  // Start from the sparsest coefficients; gcd drops quickly to 1 there.
  std::vector<const Polynomial*> order;
  for (const auto& c : p)
    if (!c.is_zero()) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Polynomial* x, const Polynomial* y) { return x->size() < y->size(); });
  for (const Polynomial* c : order) {
    g = first ? c->monic() : gcd(g, *c);
    first = false;
    if (g.is_constant()) break;
  }
  return g;
}

// gcd of two polynomials primitive in `var`, both of positive degree in it.
Polynomial subresultant_gcd(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const std::size_t n = a.nvars();
  UPoly f1 = a.coefficients_in(var);
  UPoly f2 = b.coefficients_in(var);
  if (f1.size() < f2.size()) std::swap(f1, f2);
  Polynomial g(n, Rational(1));
  Polynomial h(n, Rational(1));
  for (;;) {
    std::size_t delta = f1.size() - f2.size();
    UPoly r = pseudo_remainder(f1, f2);
    if (r.empty()) break;
    if (r.size() == 1) return Polynomial(n, Rational(1));
    Polynomial div = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact(c, div);
    f1 = std::move(f2);
    f2 = std::move(r);
    g = f1.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  return primitive(f2, n, var).monic();
}

// Degree of gcd over Q of two univariate polynomials, ascending coefficients.
std::size_t rational_gcd_degree(std::vector<Rational> f, std::vector<Rational> g) {
  auto trim_q = [](std::vector<Rational>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim_q(f);
  trim_q(g);
  if (f.size() < g.size()) std::swap(f, g);
  while (!g.empty()) {
    while (f.size() >= g.size()) {
      Rational q = f.back() / g.back();
      std::size_t shift = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) f[i + shift] -= q * g[i];
      f.pop_back();
      trim_q(f);
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return f.empty() ? 0 : f.size() - 1;
}

// True if an evaluation of every variable except `var` shows that a and b
// share no factor of positive degree in `var`. A nonvanishing leading
// coefficient keeps the degree of the gcd from dropping under evaluation.
bool coprime_in(const UPoly& ca, const UPoly& cb, std::size_t nvars) {
  for (int trial = 0; trial < 2; ++trial) {
    std::vector<Rational> pt(nvars);
    for (std::size_t i = 0; i < nvars; ++i) pt[i] = Rational(static_cast<long>(3 + 5 * i + 7 * trial), 2 + trial);
    if (ca.back().evaluate(pt) == 0 || cb.back().evaluate(pt) == 0) continue;
    std::vector<Rational> fa, fb;
    for (const auto& c : ca) fa.push_back(c.evaluate(pt));
    for (const auto& c : cb) fb.push_back(c.evaluate(pt));
    return rational_gcd_degree(fa, fb) == 0;
  }
  return false;
}

}  // namespace

Polynomial gcd(const Polynomial& a_in, const Polynomial& b_in) {
  std::size_t n = common_arity(a_in, b_in);
  if (a_in.is_zero()) return b_in.with_nvars(n).monic();
  if (b_in.is_zero()) return a_in.with_nvars(n).monic();
  if (a_in.is_constant() || b_in.is_constant()) return Polynomial(n, Rational(1));
  Polynomial a = a_in.with_nvars(n);
  Polynomial b = b_in.with_nvars(n);
  if (a == b) return a.monic();

  Monomial ma = a.min_monomial();
  Monomial mb = b.min_monomial();
  Monomial mg = ma.gcd(mb);
  Polynomial mono_part = Polynomial::from_terms(n, {{mg, Rational(1)}});
  if (!ma.is_one()) a = exact(a, Polynomial::from_terms(n, {{ma, Rational(1)}}));
  if (!mb.is_one()) b = exact(b, Polynomial::from_terms(n, {{mb, Rational(1)}}));
  if (a.is_constant() || b.is_constant()) return mono_part;

  // Variables occurring in only one operand cannot occur in the gcd.
  for (;;) {
    auto ua = a.variables_used();
    auto ub = b.variables_used();
    bool changed = false;
    for (std::size_t v = 0; v < n && !changed; ++v) {
      if (ua[v] && !ub[v]) {
        a = content(a.coefficients_in(v));
        changed = true;
      } else if (ub[v] && !ua[v]) {
        b = content(b.coefficients_in(v));
        changed = true;
      }
    }
    if (a.is_constant() || b.is_constant()) return mono_part;
    if (!changed) break;
  }

  // Main variable: the common one with the smallest combined degree.
  auto used = a.variables_used();
  std::size_t var = n;
  std::uint32_t best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!used[v]) continue;
    std::uint32_t d = a.degree_in(v) + b.degree_in(v);
    if (var == n || d < best) {
      var = v;
      best = d;
    }
  }
  if (var == n) return mono_part;

  UPoly ca = a.coefficients_in(var);
  UPoly cb = b.coefficients_in(var);
  Polynomial conta, contb;
  Polynomial pa = primitive(ca, n, var, &conta);
  Polynomial pb = primitive(cb, n, var, &contb);
  Polynomial gc = gcd(conta, contb);
  if (coprime_in(ca, cb, n)) return (mono_part * gc).monic();
  Polynomial gp = subresultant_gcd(pa, pb, var);
  return (mono_part * gc * gp).monic();
}

std::string render(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (t.mono.is_one() || c != 1) {
      os << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      std::uint32_t e = t.mono[i];
      if (e == 0) continue;
      if (need_star) os << '*';
      os << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace bihamil

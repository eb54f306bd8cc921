#include "jkinv/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "jkinv/error.hpp"

namespace jk {

// ---------------------------------------------------------------------------
// VarRegistry
// ---------------------------------------------------------------------------

VarRegistry::VarRegistry(std::vector<Var> vars) : vars_(std::move(vars)) {
  if (vars_.size() > std::numeric_limits<VarId>::max()) throw Error("too many variables");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name.empty()) throw Error("empty variable name");
    if (i > 0 && vars_[i].kind < vars_[i - 1].kind) {
      throw Error("variable '" + vars_[i].name + "' is out of kind order");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[j].name == vars_[i].name) throw Error("duplicate variable '" + vars_[i].name + "'");
    }
  }
}

std::shared_ptr<const VarRegistry> VarRegistry::for_algebra(const std::vector<std::string>& params,
                                                            std::size_t dimension) {
  std::vector<Var> vars;
  vars.reserve(params.size() + 2 * dimension + 1);
  for (const auto& p : params) vars.push_back({p, VarKind::parameter});
  for (std::size_t k = 1; k <= dimension; ++k) vars.push_back({"x" + std::to_string(k), VarKind::coordinate});
  for (std::size_t k = 1; k <= dimension; ++k) vars.push_back({"a" + std::to_string(k), VarKind::a_point});
  vars.push_back({"lambda", VarKind::pencil});
  return std::make_shared<const VarRegistry>(std::move(vars));
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

std::vector<VarId> VarRegistry::of_kind(VarKind kind) const {
  std::vector<VarId> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].kind == kind) out.push_back(static_cast<VarId>(i));
  }
  return out;
}

VarId VarRegistry::coordinate(std::size_t k) const {
  auto id = find("x" + std::to_string(k));
  if (!id || kind(*id) != VarKind::coordinate) throw Error("no coordinate x" + std::to_string(k));
  return *id;
}

VarId VarRegistry::a_point(std::size_t k) const {
  auto id = find("a" + std::to_string(k));
  if (!id || kind(*id) != VarKind::a_point) throw Error("no a-point a" + std::to_string(k));
  return *id;
}

VarId VarRegistry::pencil() const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].kind == VarKind::pencil) return static_cast<VarId>(i);
  }
  throw Error("registry has no pencil variable");
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::variable(VarId var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.entries_.emplace_back(var, exponent);
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  Monomial m;
  for (const auto& [var, e] : entries) {
    if (e == 0) continue;
    if (!m.entries_.empty() && m.entries_.back().first == var) {
      m.entries_.back().second += e;
    } else {
      m.entries_.emplace_back(var, e);
    }
    m.degree_ += e;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarId var) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, VarId v) { return e.first < v; });
  return (it != entries_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (const auto& [var, e] : entries_) {
    if (other.exponent(var) < e) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [var, e] : entries_) {
    const auto d = divisor.exponent(var);
    if (e > d) out.emplace_back(var, e - d);
  }
  Monomial m;
  m.entries_ = std::move(out);
  m.degree_ = degree_ - divisor.degree_;
  return m;
}

Monomial Monomial::without(VarId var) const {
  Monomial m;
  for (const auto& entry : entries_) {
    if (entry.first != var) {
      m.entries_.push_back(entry);
      m.degree_ += entry.second;
    }
  }
  return m;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ <=> other.degree_;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  for (; a != entries_.end() && b != other.entries_.end(); ++a, ++b) {
    if (a->first != b->first) {
      // The monomial carrying the more significant variable is larger.
      return a->first < b->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a->second != b->second) return a->second <=> b->second;
  }
  if (a != entries_.end()) return std::strong_ordering::greater;
  if (b != other.entries_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

void require_same_registry(const Polynomial& a, const Polynomial& b) {
  if (a.registry() == b.registry()) return;
  if (!a.registry() || !b.registry() || !(*a.registry() == *b.registry())) {
    throw RegistryMismatch("polynomials belong to different variable registries");
  }
}

Polynomial::Polynomial(RegistryPtr registry) : registry_(std::move(registry)) {}

Polynomial::Polynomial(RegistryPtr registry, const Rational& constant) : registry_(std::move(registry)) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial::Polynomial(RegistryPtr registry, TermMap terms) : registry_(std::move(registry)) {
  for (auto& [m, c] : terms) {
    if (c != 0) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::variable(RegistryPtr registry, VarId var, std::uint32_t exponent) {
  if (var >= registry->size()) throw Error("variable id out of range");
  return monomial(std::move(registry), Monomial::variable(var, exponent), Rational(1));
}

Polynomial Polynomial::monomial(RegistryPtr registry, Monomial m, const Rational& coefficient) {
  Polynomial p(std::move(registry));
  if (coefficient != 0) p.terms_.emplace(std::move(m), coefficient);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

const std::pair<const Monomial, Rational>& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return *terms_.begin();
}

Degree Polynomial::total_degree() const {
  if (terms_.empty()) return Degree::neg_infinity();
  return Degree(terms_.begin()->first.total_degree());
}

Degree Polynomial::degree_in(const std::set<VarKind>& kinds) const {
  if (terms_.empty()) return Degree::neg_infinity();
  std::uint32_t best = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t d = 0;
    for (const auto& [var, e] : m.entries()) {
      if (kinds.contains(registry_->kind(var))) d += e;
    }
    best = std::max(best, d);
  }
  return Degree(best);
}

Degree Polynomial::degree_in_var(VarId var) const {
  if (terms_.empty()) return Degree::neg_infinity();
  std::uint32_t best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.exponent(var));
  return Degree(best);
}

bool Polynomial::contains(VarId var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first.exponent(var) > 0; });
}

std::set<VarId> Polynomial::variables() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [var, e] : m.entries()) out.insert(var);
  }
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_registry(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_registry(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= scalar;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_registry(a, b);
  Polynomial out(a.registry_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result(registry_, Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(const std::map<VarId, Polynomial>& bindings) const {
  for (const auto& [var, value] : bindings) require_same_registry(*this, value);
  std::map<std::pair<VarId, std::uint32_t>, Polynomial> powers;
  auto power_of = [&](VarId var, std::uint32_t e) -> const Polynomial& {
    auto key = std::make_pair(var, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, bindings.at(var).pow(e)).first;
    return it->second;
  };

  Polynomial out(registry_);
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Entry> kept;
    std::vector<const Polynomial*> factors;
    for (const auto& [var, e] : m.entries()) {
      if (bindings.contains(var)) {
        factors.push_back(&power_of(var, e));
      } else {
        kept.emplace_back(var, e);
      }
    }
    Polynomial term = monomial(registry_, Monomial::from_entries(std::move(kept)), c);
    for (const Polynomial* f : factors) term = term * *f;
    out += term;
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<VarId, Rational>& values) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [var, e] : m.entries()) {
      auto it = values.find(var);
      if (it == values.end()) throw DomainError("no value for variable '" + registry_->name(var) + "'");
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      t *= p;
    }
    total += t;
  }
  return total;
}

Polynomial Polynomial::rebase(const RegistryPtr& target) const {
  if (registry_ == target) return *this;
  Polynomial out(target);
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Entry> entries;
    for (const auto& [var, e] : m.entries()) {
      const auto& name = registry_->name(var);
      auto id = target->find(name);
      if (!id) throw RegistryMismatch("variable '" + name + "' is not in the target registry");
      entries.emplace_back(*id, e);
    }
    out.add_term(Monomial::from_entries(std::move(entries)), c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      out << mag.get_str();
      need_star = true;
    }
    for (const auto& [var, e] : m.entries()) {
      if (need_star) out << '*';
      out << registry_->name(var);
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

bool Polynomial::operator==(const Polynomial& other) const {
  require_same_registry(*this, other);
  return terms_ == other.terms_;
}

// ---------------------------------------------------------------------------
// Division, content, normalization
// ---------------------------------------------------------------------------

DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor) {
  require_same_registry(dividend, divisor);
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  const auto& reg = dividend.registry();
  const auto& [lead_m, lead_c] = divisor.leading_term();

  Polynomial quotient(reg);
  Polynomial remainder(reg);
  Polynomial rest = dividend;
  while (!rest.is_zero()) {
    const auto [m, c] = rest.leading_term();
    if (lead_m.divides(m)) {
      Polynomial step = Polynomial::monomial(reg, m.divided_by(lead_m), c / lead_c);
      rest -= step * divisor;
      quotient += step;
    } else {
      Polynomial lt = Polynomial::monomial(reg, m, c);
      rest -= lt;
      remainder += lt;
    }
  }
  return {std::move(quotient), std::move(remainder)};
}

std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  auto result = divide(dividend, divisor);
  if (!result.remainder.is_zero()) return std::nullopt;
  return std::move(result.quotient);
}

Rational rational_content(const Polynomial& p) {
  if (p.is_zero()) return Rational(0);
  Integer num = 0;
  Integer den = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational scale = 1 / rational_content(p);
  if (p.leading_term().second < 0) scale = -scale;
  return p * scale;
}

}  // namespace jk

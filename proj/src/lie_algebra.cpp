#include "jkinv/lie_algebra.hpp"

#include <sstream>

#include "jkinv/error.hpp"

namespace jk {

// ---------------------------------------------------------------------------
// SkewPolyMatrix
// ---------------------------------------------------------------------------

SkewPolyMatrix::SkewPolyMatrix(RegistryPtr registry, std::size_t size)
    : registry_(std::move(registry)), size_(size), upper_(size * (size ? size - 1 : 0) / 2, Polynomial(registry_)) {}

std::size_t SkewPolyMatrix::slot(std::size_t i, std::size_t j) const {
  // Row-major strict upper triangle.
  return i * size_ - i * (i + 1) / 2 + (j - i - 1);
}

Polynomial SkewPolyMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_) throw Error("matrix index out of range");
  if (i == j) return Polynomial(registry_);
  if (i < j) return upper_[slot(i, j)];
  return -upper_[slot(j, i)];
}

void SkewPolyMatrix::set(std::size_t i, std::size_t j, Polynomial value) {
  if (i >= size_ || j >= size_) throw Error("matrix index out of range");
  if (i == j) throw Error("diagonal of a skew-symmetric matrix is fixed at zero");
  if (value.registry() != registry_) value = value.rebase(registry_);
  if (i < j) {
    upper_[slot(i, j)] = std::move(value);
  } else {
    upper_[slot(j, i)] = -value;
  }
}

SkewPolyMatrix SkewPolyMatrix::principal_submatrix(const std::vector<std::size_t>& indices) const {
  SkewPolyMatrix sub(registry_, indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      sub.upper_[sub.slot(a, b)] = entry(indices[a], indices[b]);
    }
  }
  return sub;
}

SkewPolyMatrix SkewPolyMatrix::substitute(const std::map<VarId, Polynomial>& bindings) const {
  SkewPolyMatrix out(registry_, size_);
  for (std::size_t s = 0; s < upper_.size(); ++s) out.upper_[s] = upper_[s].substitute(bindings);
  return out;
}

RationalMatrix SkewPolyMatrix::evaluate(const std::map<VarId, Rational>& values) const {
  RationalMatrix out(size_, size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      const Rational v = upper_[slot(i, j)].evaluate(values);
      out(i, j) = v;
      out(j, i) = -v;
    }
  }
  return out;
}

bool SkewPolyMatrix::is_zero() const {
  for (const auto& p : upper_) {
    if (!p.is_zero()) return false;
  }
  return true;
}

bool SkewPolyMatrix::operator==(const SkewPolyMatrix& other) const {
  return size_ == other.size_ && upper_ == other.upper_;
}

// ---------------------------------------------------------------------------
// LieAlgebra
// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::size_t dimension, const std::vector<std::string>& param_names)
    : dimension_(dimension) {
  if (dimension == 0) throw DomainError("dimension must be positive");
  for (const auto& name : param_names) {
    const bool reserved = name == "lambda" ||
                          (name.size() > 1 && (name[0] == 'x' || name[0] == 'a' || name[0] == 'e') &&
                           name.find_first_not_of("0123456789", 1) == std::string::npos);
    if (reserved) throw DomainError("parameter name '" + name + "' is reserved");
  }
  try {
    registry_ = VarRegistry::for_algebra(param_names, dimension);
  } catch (const Error& e) {
    throw DomainError(e.what());
  }
  for (const auto& name : param_names) params_.push_back({name, {}});
}

Polynomial LieAlgebra::param(std::string_view name) const {
  auto id = registry_->find(name);
  if (!id || registry_->kind(*id) != VarKind::parameter) {
    throw DomainError("undeclared parameter '" + std::string(name) + "'");
  }
  return Polynomial::variable(registry_, *id);
}

namespace {

void require_parameters_only(const Polynomial& p, const char* what) {
  for (VarId v : p.variables()) {
    if (p.registry()->kind(v) != VarKind::parameter) {
      throw DomainError(std::string(what) + " may only involve parameters, found '" + p.registry()->name(v) + "'");
    }
  }
}

}  // namespace

void LieAlgebra::add_exclusion(std::string_view param, const Polynomial& nonzero) {
  Polynomial p = nonzero.rebase(registry_);
  require_parameters_only(p, "exclusion");
  if (p.is_zero()) throw DomainError("exclusion polynomial is identically zero");
  for (auto& decl : params_) {
    if (decl.name == param) {
      decl.exclusions.push_back(std::move(p));
      return;
    }
  }
  throw DomainError("undeclared parameter '" + std::string(param) + "'");
}

void LieAlgebra::add_bracket_term(std::size_t i, std::size_t j, std::size_t k, const Polynomial& coeff) {
  for (std::size_t idx : {i, j, k}) {
    if (idx < 1 || idx > dimension_) {
      throw DomainError("basis index " + std::to_string(idx) + " outside 1.." + std::to_string(dimension_));
    }
  }
  if (i == j) throw DomainError("bracket [e_i, e_i] is zero by antisymmetry");
  Polynomial c = coeff.rebase(registry_);
  require_parameters_only(c, "structure constant");
  if (i > j) {
    std::swap(i, j);
    c = -c;
  }
  if (c.is_zero()) return;
  auto& bracket = brackets_[{i, j}];
  auto [it, inserted] = bracket.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) bracket.erase(it);
  }
  if (bracket.empty()) brackets_.erase({i, j});
}

Polynomial LieAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) return zero();
  const bool flip = i > j;
  auto it = brackets_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == brackets_.end()) return zero();
  auto kt = it->second.find(k);
  if (kt == it->second.end()) return zero();
  return flip ? -kt->second : kt->second;
}

bool LieAlgebra::operator==(const LieAlgebra& other) const {
  if (dimension_ != other.dimension_ || !(*registry_ == *other.registry_)) return false;
  if (params_.size() != other.params_.size()) return false;
  for (std::size_t p = 0; p < params_.size(); ++p) {
    if (params_[p].name != other.params_[p].name || params_[p].exclusions != other.params_[p].exclusions) {
      return false;
    }
  }
  return brackets_ == other.brackets_;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  if (ok()) {
    out << "ok\n";
    return out.str();
  }
  for (const auto& e : index_errors) out << "index error: " << e << '\n';
  for (const auto& v : violations) {
    out << "Jacobi identity fails for (e" << v.i << ", e" << v.j << ", e" << v.k << "): coefficient of e" << v.m
        << " is " << v.value.to_string() << '\n';
  }
  return out.str();
}

ValidationReport validate(const LieAlgebra& alg) {
  ValidationReport report;
  const std::size_t n = alg.dimension();
  for (const auto& [key, bracket] : alg.brackets()) {
    const auto [i, j] = key;
    if (i < 1 || j > n || i >= j) {
      report.index_errors.push_back("bracket [e" + std::to_string(i) + ",e" + std::to_string(j) + "]");
    }
    for (const auto& [k, c] : bracket) {
      if (k < 1 || k > n) report.index_errors.push_back("coefficient index e" + std::to_string(k));
    }
  }
  if (!report.index_errors.empty()) return report;

  // Dense cache of c_ij^k, 1-based.
  std::vector<Polynomial> table((n + 1) * (n + 1) * (n + 1), alg.zero());
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Polynomial& {
    return table[(i * (n + 1) + j) * (n + 1) + k];
  };
  for (const auto& [key, bracket] : alg.brackets()) {
    for (const auto& [k, c] : bracket) {
      at(key.first, key.second, k) = c;
      at(key.second, key.first, k) = -c;
    }
  }

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      for (std::size_t k = j + 1; k <= n; ++k) {
        for (std::size_t m = 1; m <= n; ++m) {
          Polynomial sum = alg.zero();
          for (std::size_t l = 1; l <= n; ++l) {
            const Polynomial& a1 = at(i, j, l);
            const Polynomial& a2 = at(j, k, l);
            const Polynomial& a3 = at(k, i, l);
            if (!a1.is_zero()) sum += a1 * at(l, k, m);
            if (!a2.is_zero()) sum += a2 * at(l, i, m);
            if (!a3.is_zero()) sum += a3 * at(l, j, m);
          }
          if (!sum.is_zero()) report.violations.push_back({i, j, k, m, sum});
        }
      }
    }
  }
  return report;
}

SkewPolyMatrix build_ax(const LieAlgebra& alg) {
  const auto& reg = alg.registry();
  SkewPolyMatrix ax(reg, alg.dimension());
  for (const auto& [key, bracket] : alg.brackets()) {
    Polynomial form(reg);
    for (const auto& [k, c] : bracket) form += c * Polynomial::variable(reg, reg->coordinate(k));
    ax.set(key.first - 1, key.second - 1, std::move(form));
  }
  return ax;
}

LieAlgebra change_of_basis(const LieAlgebra& alg, const RationalMatrix& basis) {
  const std::size_t n = alg.dimension();
  if (basis.rows() != n || basis.cols() != n) throw DomainError("change of basis has the wrong size");
  const auto inv = inverse(basis);
  if (!inv) throw DomainError("change of basis matrix is singular");

  std::vector<std::string> names;
  for (const auto& p : alg.params()) names.push_back(p.name);
  LieAlgebra out(n, names);
  for (const auto& p : alg.params()) {
    for (const auto& e : p.exclusions) out.add_exclusion(p.name, e);
  }

  // [e'_i, e'_j] = sum_{p<q} (P_pi P_qj - P_qi P_pj) [e_p, e_q], e_k = sum_l Pinv_lk e'_l.
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      for (const auto& [key, bracket] : alg.brackets()) {
        const auto [p, q] = key;
        const Rational w = basis(p - 1, i - 1) * basis(q - 1, j - 1) - basis(q - 1, i - 1) * basis(p - 1, j - 1);
        if (w == 0) continue;
        for (const auto& [k, c] : bracket) {
          for (std::size_t l = 1; l <= n; ++l) {
            const Rational f = w * (*inv)(l - 1, k - 1);
            if (f != 0) out.add_bracket_term(i, j, l, c * f);
          }
        }
      }
    }
  }
  return out;
}

bool admissible(const LieAlgebra& alg, const std::map<std::string, Rational>& values) {
  std::map<VarId, Rational> bound;
  for (const auto& [name, v] : values) {
    if (auto id = alg.registry()->find(name)) bound.emplace(*id, v);
  }
  for (const auto& p : alg.params()) {
    for (const auto& e : p.exclusions) {
      if (e.evaluate(bound) == 0) return false;
    }
  }
  return true;
}

LieAlgebra substitute_params(const LieAlgebra& alg, const std::map<std::string, Rational>& values) {
  std::map<VarId, Rational> bound;
  for (const auto& [name, v] : values) {
    auto id = alg.registry()->find(name);
    if (!id || alg.registry()->kind(*id) != VarKind::parameter) {
      throw DomainError("unknown parameter '" + name + "'");
    }
    bound.emplace(*id, v);
  }
  for (const auto& p : alg.params()) {
    if (!values.contains(p.name)) throw DomainError("parameter '" + p.name + "' is unbound");
    for (const auto& e : p.exclusions) {
      if (e.evaluate(bound) == 0) {
        throw DomainError("exclusion violated: " + e.to_string() + " vanishes at " + p.name + " = " +
                          values.at(p.name).get_str());
      }
    }
  }
  LieAlgebra out(alg.dimension());
  for (const auto& [key, bracket] : alg.brackets()) {
    for (const auto& [k, c] : bracket) {
      out.add_bracket_term(key.first, key.second, k, out.constant(c.evaluate(bound)));
    }
  }
  return out;
}

RationalMatrix numeric_form(const LieAlgebra& alg, const std::vector<Rational>& point) {
  if (alg.has_params()) throw DomainError("numeric form requires a parameter-free algebra");
  const std::size_t n = alg.dimension();
  if (point.size() != n) throw DomainError("point has the wrong dimension");
  RationalMatrix out(n, n);
  for (const auto& [key, bracket] : alg.brackets()) {
    Rational v = 0;
    for (const auto& [k, c] : bracket) v += c.constant_value() * point[k - 1];
    out(key.first - 1, key.second - 1) = v;
    out(key.second - 1, key.first - 1) = -v;
  }
  return out;
}

}  // namespace jk

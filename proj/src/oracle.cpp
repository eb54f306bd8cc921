#include "jkinv/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "jkinv/error.hpp"

namespace jk::oracle {

// ---------------------------------------------------------------------------
// UPoly
// ---------------------------------------------------------------------------

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::linear(const Rational& a, const Rational& b) { return UPoly({a, b}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (1 / leading());
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> out(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
  return UPoly(std::move(out));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o * Rational(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(std::move(out));
}

UPoly UPoly::operator*(const Rational& s) const {
  if (s == 0) return {};
  std::vector<Rational> out = c_;
  for (auto& v : out) v *= s;
  return UPoly(std::move(out));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Rational mag = abs(c);
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    if (i == 0 || mag != 1) {
      out << mag.get_str();
      if (i > 0) out << '*';
    }
    if (i > 0) out << var;
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

UDivision divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  std::vector<Rational> rem = a.coeffs();
  const long db = b.degree();
  std::vector<Rational> quot(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
  const Rational inv_lead = 1 / b.leading();
  for (long i = a.degree(); i >= db; --i) {
    const Rational f = rem[static_cast<std::size_t>(i)] * inv_lead;
    if (f == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = f;
    for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

namespace {

// Scales to coprime integer coefficients, keeping remainder sequences small.
UPoly primitive(const UPoly& p) {
  if (p.is_zero()) return p;
  Integer num = 0, den = 1;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  return p * Rational(den, num);
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = primitive(a);
  UPoly y = primitive(b);
  while (!y.is_zero()) {
    UPoly r = primitive(divmod(x, y).remainder);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

// ---------------------------------------------------------------------------
// Rational roots
// ---------------------------------------------------------------------------

namespace {

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

// Rational with the smallest denominator in the open interval (lo, hi).
Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo < 0 && hi > 0) return 0;
  if (hi <= 0) return -simplest_between(-hi, -lo);
  const Rational fl(floor_of(lo));
  if (fl + 1 < hi) return fl + 1;
  if (lo == fl) return fl + 1 / Rational(floor_of(1 / (hi - fl)) + 1);
  return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
    seq.push_back(r * Rational(-1));
  }
  seq.pop_back();
  return seq;
}

std::size_t sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Width below which an interval holds at most one rational whose denominator
// divides the leading coefficient of the integer-scaled polynomial.
Rational separation(const UPoly& p) {
  Integer den_lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  const Rational lead = p.leading() * Rational(den_lcm);
  const Rational a = abs(lead);
  return 1 / (a * a + 1);
}

Rational cauchy_bound(const UPoly& p) {
  Rational m = 0;
  for (long i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeffs()[static_cast<std::size_t>(i)] / p.leading())));
  return m + 1;
}

// Finds one rational root of the square-free polynomial `s`, if any.
std::optional<Rational> find_rational_root(const UPoly& s) {
  if (s.degree() <= 0) return std::nullopt;
  if (s(0) == 0) return Rational(0);
  const auto seq = sturm_sequence(s);
  const Rational eps = separation(s);
  const Rational bound = cauchy_bound(s);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const std::size_t count = sign_changes(seq, lo) - sign_changes(seq, hi);
    if (count == 0) continue;
    if (count == 1) {
      while (hi - lo >= eps) {
        const Rational mid = (lo + hi) / 2;
        if (s(mid) == 0) return mid;
        if (sign_changes(seq, lo) - sign_changes(seq, mid) == 1) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      const Rational candidate = simplest_between(lo, hi);
      if (s(candidate) == 0) return candidate;
      continue;
    }
    const Rational mid = (lo + hi) / 2;
    if (s(mid) == 0) return mid;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  return std::nullopt;
}

}  // namespace

RootFactorization rational_roots(const UPoly& p) {
  RootFactorization out;
  if (p.is_zero()) throw DomainError("roots of the zero polynomial");
  UPoly rest = p.monic();
  UPoly square_free = divmod(rest, gcd(rest, rest.derivative())).quotient.monic();
  while (auto root = find_rational_root(square_free)) {
    const UPoly factor = UPoly::linear(-*root, 1);
    square_free = divmod(square_free, factor).quotient;
    std::size_t mult = 0;
    while (true) {
      auto [q, r] = divmod(rest, factor);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    out.rational_roots.emplace_back(*root, mult);
  }
  std::sort(out.rational_roots.begin(), out.rational_roots.end());
  out.residual = rest.monic();
  return out;
}

// ---------------------------------------------------------------------------
// Blocks and pencils
// ---------------------------------------------------------------------------

BlockSpec BlockSpec::jordan_finite(const Rational& eigenvalue, std::size_t k) {
  return {Kind::jordan_finite, k, eigenvalue};
}

BlockSpec BlockSpec::jordan_infinite(std::size_t k) { return {Kind::jordan_infinite, k, Rational(0)}; }

BlockSpec BlockSpec::kronecker(std::size_t k) { return {Kind::kronecker, k, Rational(0)}; }

std::size_t BlockSpec::dimension() const { return kind == Kind::kronecker ? 2 * size + 1 : 2 * size; }

std::string BlockSpec::to_string() const {
  switch (kind) {
    case Kind::jordan_finite: return "J(" + eigenvalue.get_str() + ", " + std::to_string(size) + ")";
    case Kind::jordan_infinite: return "J(inf, " + std::to_string(size) + ")";
    case Kind::kronecker: return "K(" + std::to_string(size) + ")";
  }
  return {};
}

namespace {

// Writes [[0, X], [-X^T, 0]] at `offset`, X being `rows` x `cols`.
void place_skew(RationalMatrix& m, std::size_t offset, std::size_t rows, std::size_t cols,
                const std::function<Rational(std::size_t, std::size_t)>& x) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational v = x(i, j);
      m(offset + i, offset + rows + j) = v;
      m(offset + rows + j, offset + i) = -v;
    }
  }
}

}  // namespace

NumericPencil assemble(const std::vector<BlockSpec>& blocks) {
  if (blocks.empty()) throw DomainError("a pencil needs at least one block");
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (b.kind != BlockSpec::Kind::kronecker && b.size == 0) throw DomainError("Jordan block of size 0");
    n += b.dimension();
  }
  NumericPencil out{RationalMatrix(n, n), RationalMatrix(n, n)};
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    const std::size_t k = b.size;
    auto identity = [](std::size_t i, std::size_t j) { return Rational(i == j ? 1 : 0); };
    auto jordan = [&b](std::size_t i, std::size_t j) {
      if (i == j) return b.eigenvalue;
      return Rational(j == i + 1 ? 1 : 0);
    };
    switch (b.kind) {
      case BlockSpec::Kind::jordan_finite:
        place_skew(out.a, offset, k, k, jordan);
        place_skew(out.b, offset, k, k, identity);
        break;
      case BlockSpec::Kind::jordan_infinite:
        place_skew(out.a, offset, k, k, identity);
        place_skew(out.b, offset, k, k, jordan);
        break;
      case BlockSpec::Kind::kronecker:
        // A from [I | 0], B from [0 | I], both k x (k+1).
        place_skew(out.a, offset, k, k + 1, [](std::size_t i, std::size_t j) { return Rational(i == j ? 1 : 0); });
        place_skew(out.b, offset, k, k + 1, [](std::size_t i, std::size_t j) { return Rational(j == i + 1 ? 1 : 0); });
        break;
    }
    offset += b.dimension();
  }
  return out;
}

NumericPencil congruence(const NumericPencil& pencil, const RationalMatrix& p) {
  if (!p.is_square() || p.rows() != pencil.size()) throw DomainError("congruence matrix has the wrong size");
  if (determinant(p) == 0) throw DomainError("congruence matrix is singular");
  const RationalMatrix pt = p.transpose();
  return {pt * pencil.a * p, pt * pencil.b * p};
}

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// The pencil scaled by a common denominator; ranks and divisors are unchanged up to units.
std::pair<IntMatrix, IntMatrix> integral(const RationalMatrix& a, const RationalMatrix& b) {
  Integer den = 1;
  for (const auto* m : {&a, &b}) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      for (std::size_t j = 0; j < m->cols(); ++j) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), (*m)(i, j).get_den_mpz_t());
      }
    }
  }
  auto convert = [&den](const RationalMatrix& m) {
    IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = Integer(m(i, j) * den);
    }
    return out;
  };
  return {convert(a), convert(b)};
}

IntMatrix combine(const IntMatrix& a, const IntMatrix& b, long t) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j] * t;
  }
  return out;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t inner = y.size();
  IntMatrix out(x.size(), std::vector<Integer>(y.empty() ? 0 : y[0].size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

// Fraction-free elimination; returns the rank and, for square input, the determinant.
std::pair<std::size_t, Integer> bareiss(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    mpz_srcptr pivot = m[r][c].get_mpz_t();
    for (std::size_t i = r + 1; i < rows; ++i) {
      mpz_srcptr lead = m[i][c].get_mpz_t();
      const bool lead_zero = m[i][c] == 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_ptr e = m[i][j].get_mpz_t();
        mpz_mul(e, e, pivot);
        if (!lead_zero) mpz_submul(e, lead, m[r][j].get_mpz_t());
        mpz_divexact(e, e, prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  Integer det = (r == rows && rows == cols) ? Integer(prev * sign) : Integer(0);
  return {r, det};
}

// Rank over Q(lambda): a rank deficiency at n + 1 distinct points would make
// every maximal minor, a polynomial of degree <= n, vanish identically.
std::size_t pencil_rank(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  std::size_t best = 0;
  for (std::size_t t = 0; t <= n && best < n; ++t) {
    best = std::max(best, bareiss(combine(a, b, static_cast<long>(t))).first);
  }
  return best;
}

// Newton interpolation through (xs[i], ys[i]).
UPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const std::size_t m = xs.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - level]);
  }
  UPoly out;
  for (std::size_t i = m; i-- > 0;) out = out * UPoly::linear(-xs[i], 1) + UPoly::constant(ys[i]);
  return out;
}

// gcd of the r x r minors of A + lambda*B. Each det(U (A + lambda B) V) with
// integer U (r x n) and V (n x r) is a combination of those minors
// (Cauchy-Binet), so the gcd of a few random projections is a multiple of the
// divisor and equals it unless the projections share a spurious factor.
UPoly maximal_divisor(const IntMatrix& a, const IntMatrix& b, std::size_t r) {
  if (r == 0) return UPoly::constant(1);
  const std::size_t n = a.size();
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n);
  std::uniform_int_distribution<long> dist(-50, 50);
  std::vector<Rational> xs;
  for (std::size_t t = 0; t <= r; ++t) xs.emplace_back(static_cast<long>(t));

  UPoly g;
  std::size_t projections = 0;
  for (std::size_t attempt = 0; projections < 3 && attempt < 20; ++attempt) {
    IntMatrix u(r, std::vector<Integer>(n)), v(n, std::vector<Integer>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        u[i][j] = dist(rng);
        v[j][i] = dist(rng);
      }
    }
    const IntMatrix ua = multiply(multiply(u, a), v);
    const IntMatrix ub = multiply(multiply(u, b), v);
    std::vector<Rational> ys;
    for (std::size_t t = 0; t <= r; ++t) ys.emplace_back(bareiss(combine(ua, ub, static_cast<long>(t))).second);
    const UPoly q = interpolate(xs, ys);
    if (q.is_zero()) continue;
    g = gcd(g, q);
    ++projections;
  }
  if (projections == 0) throw DomainError("no nonzero projection of the maximal minors");
  return g;
}

// Monic s with s^2 == p, if it exists (p monic).
std::optional<UPoly> square_root(const UPoly& p) {
  if (p.degree() % 2 != 0) return std::nullopt;
  const auto d = static_cast<std::size_t>(p.degree() / 2);
  std::vector<Rational> s(d + 1);
  s[d] = 1;
  for (std::size_t k = d; k-- > 0;) {
    Rational acc = p.coeffs()[d + k];
    for (std::size_t i = k + 1; i < d; ++i) {
      const std::size_t j = d + k - i;
      if (j > k && j < d) acc -= s[i] * s[j];
    }
    s[k] = acc / 2;
  }
  UPoly root(s);
  if (!(root * root == p)) return std::nullopt;
  return root;
}

}  // namespace

PencilTypeReport pencil_type(const NumericPencil& pencil) {
  if (!pencil.a.is_skew_symmetric() || !pencil.b.is_skew_symmetric() || pencil.a.rows() != pencil.b.rows()) {
    throw DomainError("pencil forms must be skew-symmetric of equal size");
  }
  PencilTypeReport report;
  const auto [a, b] = integral(pencil.a, pencil.b);
  report.rank = pencil_rank(a, b);
  report.corank = pencil.size() - report.rank;

  const UPoly divisor = maximal_divisor(a, b, report.rank).monic();
  if (auto root = square_root(divisor)) {
    report.p0 = *root;
  } else {
    report.divisor_is_square = false;
    report.p0 = divisor;
  }

  // Infinite eigenvalues show up as the root 0 of the reversed pencil B + mu*A.
  const UPoly rev = maximal_divisor(b, a, report.rank);
  std::size_t zeros = 0;
  while (zeros < rev.coeffs().size() && rev.coeffs()[zeros] == 0) ++zeros;
  if (zeros % 2 != 0) report.divisor_is_square = false;
  report.infinite_jordan_size = zeros / 2;

  report.characteristic = rational_roots(report.p0);
  if (report.corank == 0) {
    report.type = Verdict::jordan;
  } else {
    report.type = report.jordan_size() > 0 ? Verdict::mixed : Verdict::kronecker;
  }
  return report;
}

std::string PencilTypeReport::to_string() const {
  std::ostringstream out;
  out << "type: " << jk::to_string(type) << '\n';
  out << "rank: " << rank << ", corank: " << corank << '\n';
  out << "p0: " << p0.to_string() << '\n';
  out << "infinite Jordan size: " << infinite_jordan_size << '\n';
  out << "rational eigenvalues:";
  if (characteristic.rational_roots.empty()) out << " none";
  for (const auto& [root, mult] : characteristic.rational_roots) out << ' ' << root.get_str() << " (x" << mult << ')';
  out << '\n';
  if (characteristic.residual.degree() > 0) out << "irrational part: " << characteristic.residual.to_string() << '\n';
  if (!divisor_is_square) out << "warning: the maximal determinantal divisor is not a square\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Cross-check against the symbolic classifier
// ---------------------------------------------------------------------------

std::size_t CrossCheckReport::agreeing() const {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.agrees; }));
}

CrossCheckReport cross_check(const LieAlgebra& alg, std::size_t trials, std::uint64_t seed) {
  if (alg.has_params()) throw DomainError("cross-check needs all parameters bound");
  CrossCheckReport report{.expected = classify(alg), .seed = seed, .trials = {}};
  const std::size_t n = alg.dimension();
  for (std::size_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    TrialResult trial;
    for (std::size_t k = 0; k < n; ++k) trial.x.emplace_back(dist(rng));
    for (std::size_t k = 0; k < n; ++k) trial.a.emplace_back(dist(rng));
    trial.result = pencil_type({numeric_form(alg, trial.x), numeric_form(alg, trial.a)});
    trial.agrees = trial.result.type == report.expected.verdict && trial.result.corank == report.expected.index;
    report.trials.push_back(std::move(trial));
  }
  return report;
}

}  // namespace jk::oracle

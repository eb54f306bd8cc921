#include "jkinv/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "jkinv/error.hpp"

namespace jk {

using nlohmann::json;

SourceDoc load_source(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  SourceDoc doc;
  doc.text = buf.str();
  doc.origin = path.string();
  doc.format = path.extension() == ".json" ? SourceFormat::structured : SourceFormat::text;
  return doc;
}

// ---------------------------------------------------------------------------
// Polynomial expressions
// ---------------------------------------------------------------------------

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::number, s.substr(start, i - start), start + 1});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, s.substr(start, i - start), start + 1});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", 1, start + 1);
    }
    out.push_back({kind, s.substr(start, 1), start + 1});
    ++i;
  }
  out.push_back({Tok::end, {}, s.size() + 1});
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, RegistryPtr registry) : tokens_(tokenize(text)), registry_(std::move(registry)) {}

  Polynomial parse() {
    if (peek().kind == Tok::end) fail("empty expression");
    Polynomial p = expr();
    if (peek().kind != Tok::end) fail("unexpected '" + std::string(peek().text) + "'");
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, peek().column); }

  Polynomial expr() {
    Polynomial acc = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = next().kind == Tok::minus;
      Polynomial t = term();
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  static bool starts_atom(Tok t) { return t == Tok::number || t == Tok::ident || t == Tok::lparen; }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      const Tok t = peek().kind;
      if (t == Tok::star) {
        next();
        acc = acc * unary();
      } else if (t == Tok::slash) {
        next();
        const std::size_t col = peek().column;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division only by a nonzero constant", 1, col);
        acc *= 1 / d.constant_value();
      } else if (starts_atom(t)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (peek().kind == Tok::minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::plus) {
      next();
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek().kind == Tok::caret) {
      next();
      if (peek().kind != Tok::number) fail("expected an integer exponent");
      const auto& tok = next();
      if (tok.text.size() > 4) throw ParseError("exponent too large", 1, tok.column);
      base = base.pow(static_cast<std::uint32_t>(std::stoul(std::string(tok.text))));
    }
    return base;
  }

  Polynomial atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::number: {
        next();
        return Polynomial(registry_, Rational(Integer(std::string(tok.text), 10)));
      }
      case Tok::ident: {
        next();
        auto id = registry_->find(tok.text);
        if (!id) throw ParseError("unknown identifier '" + std::string(tok.text) + "'", 1, tok.column);
        return Polynomial::variable(registry_, *id);
      }
      case Tok::lparen: {
        next();
        Polynomial inner = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        next();
        return inner;
      }
      default:
        fail(tok.kind == Tok::end ? "unexpected end of expression" : "unexpected '" + std::string(tok.text) + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  RegistryPtr registry_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RegistryPtr& registry) {
  return ExprParser(text, registry).parse();
}

// ---------------------------------------------------------------------------
// Text DSL
// ---------------------------------------------------------------------------

namespace {

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped
  std::size_t indent;     // offset of text within the raw line
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  std::size_t number = 1;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    std::size_t indent = 0;
    while (indent < raw.size() && std::isspace(static_cast<unsigned char>(raw[indent]))) ++indent;
    if (indent < raw.size()) out.push_back({number, raw.substr(indent), indent});
    if (end == text.size()) break;
    start = end + 1;
    ++number;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// Cursor over one DSL line with 1-based column reporting.
class LineCursor {
 public:
  explicit LineCursor(const Line& line) : line_(line) {}

  std::size_t column() const { return line_.indent + pos_ + 1; }
  bool done() const { return pos_ >= line_.text.size(); }
  std::string_view rest() const { return line_.text.substr(pos_); }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_.number, column()); }

  void expect(char c) {
    skip_space();
    if (done() || line_.text[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (!done() && !std::isspace(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
    return line_.text.substr(start, pos_ - start);
  }

  std::size_t basis_index(std::size_t dim) {
    skip_space();
    const std::size_t col = column();
    if (done() || line_.text[pos_] != 'e') fail("expected a basis element e<k>");
    ++pos_;
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
    if (start == pos_) fail("expected an index after 'e'");
    const auto digits = line_.text.substr(start, pos_ - start);
    const std::size_t k = digits.size() > 6 ? 0 : std::stoul(std::string(digits));
    if (k < 1 || k > dim) {
      throw ParseError("index e" + std::string(digits) + " out of range 1.." + std::to_string(dim), line_.number, col);
    }
    return k;
  }

  void advance(std::size_t n) { pos_ += n; }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

Polynomial parse_in_line(std::string_view text, const RegistryPtr& reg, const Line& line, std::size_t column) {
  try {
    return parse_polynomial(text, reg);
  } catch (const ParseError& e) {
    throw ParseError(e.bare_message(), line.number, column + e.column() - 1);
  }
}

// Registry for bracket right-hand sides: parameters plus basis symbols e1..en.
RegistryPtr bracket_registry(const std::vector<std::string>& params, std::size_t dim) {
  std::vector<VarRegistry::Var> vars;
  for (const auto& p : params) vars.push_back({p, VarKind::parameter});
  for (std::size_t k = 1; k <= dim; ++k) vars.push_back({"e" + std::to_string(k), VarKind::coordinate});
  return std::make_shared<const VarRegistry>(std::move(vars));
}

// Splits a linear form in e1..en into parameter-only coefficients. Returns an error text on failure.
std::optional<std::string> split_linear(const Polynomial& rhs, const LieAlgebra& alg,
                                        std::map<std::size_t, Polynomial>& out) {
  const auto& reg = rhs.registry();
  for (const auto& [m, c] : rhs.terms()) {
    std::optional<std::size_t> basis;
    std::vector<Monomial::Entry> rest;
    for (const auto& [var, e] : m.entries()) {
      if (reg->kind(var) == VarKind::coordinate) {
        if (basis || e != 1) return "right-hand side must be linear in the basis elements";
        basis = std::stoul(reg->name(var).substr(1));
      } else {
        rest.emplace_back(var, e);
      }
    }
    if (!basis) return "term without a basis element on the right-hand side";
    Polynomial coeff = Polynomial::monomial(reg, Monomial::from_entries(std::move(rest)), c).rebase(alg.registry());
    auto [it, inserted] = out.try_emplace(*basis, coeff);
    if (!inserted) it->second += coeff;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return std::nullopt;
}

}  // namespace

LieAlgebra parse_text(const SourceDoc& doc) {
  const auto lines = split_lines(doc.text);

  // Pass 1: dimension and parameter names.
  std::optional<std::size_t> dim;
  std::vector<std::string> params;
  for (const auto& line : lines) {
    LineCursor cur(line);
    const auto col = cur.column();
    const auto keyword = cur.word();
    if (keyword == "dim") {
      if (dim) throw ParseError("duplicate 'dim' line", line.number, col);
      const auto value_col = (cur.skip_space(), cur.column());
      const auto value = cur.word();
      if (value.empty() || value.size() > 6 || value.find_first_not_of("0123456789") != std::string_view::npos ||
          std::stoul(std::string(value)) == 0) {
        throw ParseError("'dim' expects a positive integer", line.number, value_col);
      }
      cur.skip_space();
      if (!cur.done()) cur.fail("unexpected text after dimension");
      dim = std::stoul(std::string(value));
    } else if (keyword == "param") {
      cur.skip_space();
      const auto name_col = cur.column();
      auto rest = cur.rest();
      auto name = rest.substr(0, rest.find_first_of(" \t!"));
      if (!is_identifier(name)) throw ParseError("expected a parameter name", line.number, name_col);
      for (const auto& p : params) {
        if (p == name) throw ParseError("parameter '" + p + "' declared twice", line.number, name_col);
      }
      params.emplace_back(name);
    } else if (keyword.empty() || keyword.front() != '[') {
      throw ParseError("expected 'dim', 'param' or a bracket line", line.number, col);
    }
  }
  if (!dim) throw ParseError("missing 'dim' line", lines.empty() ? 1 : lines.front().number, 1);

  LieAlgebra alg = [&] {
    try {
      return LieAlgebra(*dim, params);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 1, 1);
    }
  }();
  const RegistryPtr rhs_registry = bracket_registry(params, *dim);

  // Pass 2: exclusions and brackets.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<LieAlgebra::Bracket, std::size_t>> seen;
  for (const auto& line : lines) {
    LineCursor cur(line);
    const auto keyword = cur.word();
    if (keyword == "param") {
      cur.skip_space();
      auto rest = cur.rest();
      const auto name_len = rest.find_first_of(" \t!");
      const std::string name(rest.substr(0, name_len));
      cur.advance(name_len == std::string_view::npos ? rest.size() : name_len);
      const Polynomial var = alg.param(name);
      while (true) {
        cur.skip_space();
        if (cur.done()) break;
        if (!cur.rest().starts_with("!=")) cur.fail("expected '!=' after parameter name");
        cur.advance(2);
        cur.skip_space();
        const auto col = cur.column();
        auto clause = cur.rest();
        auto stop = clause.find("!=");
        clause = clause.substr(0, stop);
        Polynomial value = parse_in_line(clause, alg.registry(), line, col);
        for (VarId v : value.variables()) {
          if (alg.registry()->kind(v) != VarKind::parameter) {
            throw ParseError("exclusion may only involve parameters", line.number, col);
          }
        }
        const Polynomial excl = var - value;
        if (excl.is_zero()) throw ParseError("exclusion '" + name + " != " + std::string(clause) + "' is never satisfiable", line.number, col);
        alg.add_exclusion(name, excl);
        cur.advance(clause.size());
      }
      continue;
    }
    if (keyword == "dim") continue;

    LineCursor br(line);
    br.expect('[');
    const std::size_t i = br.basis_index(*dim);
    br.expect(',');
    const std::size_t j = br.basis_index(*dim);
    br.expect(']');
    br.expect('=');
    br.skip_space();
    const auto rhs_col = br.column();
    if (i == j) throw ParseError("bracket of an element with itself", line.number, 1 + line.indent);
    Polynomial rhs = parse_in_line(br.rest(), rhs_registry, line, rhs_col);

    LieAlgebra::Bracket terms;
    if (auto err = split_linear(rhs, alg, terms)) throw ParseError(*err, line.number, rhs_col);
    if (i > j) {
      for (auto& [k, c] : terms) c = -c;
    }
    const auto key = std::make_pair(std::min(i, j), std::max(i, j));
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second.first != terms) {
        throw ParseError("conflicting duplicate bracket [e" + std::to_string(key.first) + ",e" +
                             std::to_string(key.second) + "] (first given on line " +
                             std::to_string(it->second.second) + ")",
                         line.number, 1 + line.indent);
      }
      continue;
    }
    seen.emplace(key, std::make_pair(terms, line.number));
    for (const auto& [k, c] : terms) alg.add_bracket_term(key.first, key.second, k, c);
  }
  return alg;
}

// ---------------------------------------------------------------------------
// Structured format
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw ParseError("schema error at " + path + ": " + msg);
}

std::size_t index_field(const json& obj, const std::string& key, const std::string& path, std::size_t dim) {
  if (!obj.contains(key)) schema_error(path, "missing field '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) schema_error(path + "." + key, "expected an integer");
  const auto k = v.get<long long>();
  if (k < 1 || static_cast<std::size_t>(k) > dim) {
    schema_error(path + "." + key, "index " + std::to_string(k) + " out of range 1.." + std::to_string(dim));
  }
  return static_cast<std::size_t>(k);
}

Polynomial coefficient_field(const json& v, const std::string& path, const RegistryPtr& reg) {
  if (!v.is_string()) schema_error(path, "expected a polynomial string");
  try {
    return parse_polynomial(v.get<std::string>(), reg);
  } catch (const ParseError& e) {
    schema_error(path, e.bare_message() + " (column " + std::to_string(e.column()) + ")");
  }
}

}  // namespace

LieAlgebra parse_structured(const json& doc) {
  if (!doc.is_object()) schema_error("$", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "dim" && key != "params" && key != "brackets" && key != "name") {
      schema_error("$." + key, "unknown field");
    }
  }
  if (!doc.contains("dim")) schema_error("$", "missing field 'dim'");
  const auto& dim_v = doc.at("dim");
  if (!dim_v.is_number_integer() || dim_v.get<long long>() < 1) schema_error("$.dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(dim_v.get<long long>());

  std::vector<std::string> names;
  const json empty = json::array();
  const json& params = doc.contains("params") ? doc.at("params") : empty;
  if (!params.is_array()) schema_error("$.params", "expected an array");
  for (std::size_t p = 0; p < params.size(); ++p) {
    const std::string path = "$.params[" + std::to_string(p) + "]";
    const auto& entry = params[p];
    if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string()) {
      schema_error(path, "expected an object with a string 'name'");
    }
    for (const auto& [key, value] : entry.items()) {
      if (key != "name" && key != "nonzero") schema_error(path + "." + key, "unknown field");
    }
    const auto name = entry.at("name").get<std::string>();
    if (!is_identifier(name)) schema_error(path + ".name", "invalid parameter name");
    for (const auto& other : names) {
      if (other == name) schema_error(path + ".name", "parameter declared twice");
    }
    names.push_back(name);
  }

  LieAlgebra alg = [&] {
    try {
      return LieAlgebra(dim, names);
    } catch (const DomainError& e) {
      schema_error("$.params", e.what());
    }
  }();
  RegistryPtr param_registry = [&] {
    std::vector<VarRegistry::Var> vars;
    for (const auto& n : names) vars.push_back({n, VarKind::parameter});
    return std::make_shared<const VarRegistry>(std::move(vars));
  }();

  for (std::size_t p = 0; p < params.size(); ++p) {
    const std::string path = "$.params[" + std::to_string(p) + "].nonzero";
    if (!params[p].contains("nonzero")) continue;
    const auto& nz = params[p].at("nonzero");
    std::vector<std::pair<const json*, std::string>> items;
    if (nz.is_array()) {
      for (std::size_t q = 0; q < nz.size(); ++q) items.emplace_back(&nz[q], path + "[" + std::to_string(q) + "]");
    } else {
      items.emplace_back(&nz, path);
    }
    for (const auto& [v, vpath] : items) {
      Polynomial excl = coefficient_field(*v, vpath, param_registry);
      if (excl.is_zero()) schema_error(vpath, "exclusion polynomial is zero");
      alg.add_exclusion(names[p], excl);
    }
  }

  const json& brackets = doc.contains("brackets") ? doc.at("brackets") : empty;
  if (!brackets.is_array()) schema_error("$.brackets", "expected an array");
  std::map<std::pair<std::size_t, std::size_t>, LieAlgebra::Bracket> seen;
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string path = "$.brackets[" + std::to_string(b) + "]";
    const auto& entry = brackets[b];
    if (!entry.is_object()) schema_error(path, "expected an object");
    for (const auto& [key, value] : entry.items()) {
      if (key != "i" && key != "j" && key != "terms") schema_error(path + "." + key, "unknown field");
    }
    const auto i = index_field(entry, "i", path, dim);
    const auto j = index_field(entry, "j", path, dim);
    if (i == j) schema_error(path, "bracket of an element with itself");
    if (!entry.contains("terms") || !entry.at("terms").is_object()) schema_error(path + ".terms", "expected an object");
    LieAlgebra::Bracket terms;
    for (const auto& [key, value] : entry.at("terms").items()) {
      const std::string tpath = path + ".terms." + key;
      if (key.empty() || key.size() > 6 || key.find_first_not_of("0123456789") != std::string::npos) {
        schema_error(tpath, "expected a basis index key");
      }
      const std::size_t k = std::stoul(key);
      if (k < 1 || k > dim) schema_error(tpath, "index " + key + " out of range 1.." + std::to_string(dim));
      Polynomial c = coefficient_field(value, tpath, param_registry).rebase(alg.registry());
      if (i > j) c = -c;
      if (!c.is_zero()) terms.emplace(k, std::move(c));
    }
    const auto pair = std::make_pair(std::min(i, j), std::max(i, j));
    if (auto it = seen.find(pair); it != seen.end()) {
      if (it->second != terms) schema_error(path, "conflicting duplicate bracket");
      continue;
    }
    seen.emplace(pair, terms);
    for (const auto& [k, c] : terms) alg.add_bracket_term(pair.first, pair.second, k, c);
  }
  return alg;
}

LieAlgebra parse_structured(const SourceDoc& doc) {
  json parsed;
  try {
    parsed = json::parse(doc.text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_structured(parsed);
}

LieAlgebra parse(const SourceDoc& doc) {
  return doc.format == SourceFormat::structured ? parse_structured(doc) : parse_text(doc);
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

std::string term_text(const Polynomial& c, std::size_t k) {
  const std::string e = "e" + std::to_string(k);
  if (c.is_constant()) {
    const Rational v = c.constant_value();
    if (v == 1) return e;
    if (v == -1) return "-" + e;
    return v.get_str() + "*" + e;
  }
  if (c.term_count() == 1) {
    // Single monomial: the display form already reads as a product.
    return c.to_string() + "*" + e;
  }
  return "(" + c.to_string() + ")*" + e;
}

}  // namespace

std::string emit_text(const LieAlgebra& alg) {
  std::ostringstream out;
  out << "dim " << alg.dimension() << '\n';
  for (const auto& p : alg.params()) {
    out << "param " << p.name;
    const Polynomial var = alg.param(p.name);
    for (const auto& e : p.exclusions) out << " != " << (var - e).to_string();
    out << '\n';
  }
  for (const auto& [key, bracket] : alg.brackets()) {
    out << "[e" << key.first << ",e" << key.second << "] = ";
    bool first = true;
    for (const auto& [k, c] : bracket) {
      std::string t = term_text(c, k);
      if (first) {
        out << t;
      } else if (t.front() == '-') {
        out << " - " << t.substr(1);
      } else {
        out << " + " << t;
      }
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

json emit_structured(const LieAlgebra& alg) {
  json doc;
  doc["dim"] = alg.dimension();
  doc["params"] = json::array();
  for (const auto& p : alg.params()) {
    json entry = {{"name", p.name}};
    if (p.exclusions.size() == 1) {
      entry["nonzero"] = p.exclusions.front().to_string();
    } else if (!p.exclusions.empty()) {
      entry["nonzero"] = json::array();
      for (const auto& e : p.exclusions) entry["nonzero"].push_back(e.to_string());
    }
    doc["params"].push_back(std::move(entry));
  }
  doc["brackets"] = json::array();
  for (const auto& [key, bracket] : alg.brackets()) {
    json terms = json::object();
    for (const auto& [k, c] : bracket) terms[std::to_string(k)] = c.to_string();
    doc["brackets"].push_back({{"i", key.first}, {"j", key.second}, {"terms", std::move(terms)}});
  }
  return doc;
}

}  // namespace jk

#include "ffdyn/expr_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

struct Node {
  enum class Kind { Number, T, Z, Var, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  std::size_t pos = 0;
  Integer value;
  int index = 0;
  unsigned exponent = 0;
  std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

constexpr unsigned kMaxExponent = 100000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Node::Kind kind, std::size_t pos, NodePtr a, NodePtr b) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->pos = pos;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        left = binary(Node::Kind::Add, at, std::move(left), term());
      } else if (accept('-')) {
        left = binary(Node::Kind::Sub, at, std::move(left), term());
      } else {
        return left;
      }
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        left = binary(Node::Kind::Mul, at, std::move(left), unary());
      } else if (accept('/')) {
        left = binary(Node::Kind::Div, at, std::move(left), unary());
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Neg;
      n->pos = at;
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (!accept('^')) return base;
      skip_space();
      const Integer e = integer();
      if (e > kMaxExponent) {
        pos_ = at;
        fail("exponent too large");
      }
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Pow;
      n->pos = at;
      n->exponent = static_cast<unsigned>(e.get_ui());
      n->lhs = std::move(base);
      base = std::move(n);
    }
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  NodePtr primary() {
    skip_space();
    auto n = std::make_unique<Node>();
    n->pos = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      n->kind = Node::Kind::Number;
      n->value = integer();
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const bool ident_follows = pos_ + 1 < text_.size() &&
                               std::isalpha(static_cast<unsigned char>(text_[pos_ + 1]));
    if (c == 't' && !ident_follows) {
      ++pos_;
      n->kind = Node::Kind::T;
      return n;
    }
    if (c == 'z' && !ident_follows) {
      ++pos_;
      n->kind = Node::Kind::Z;
      return n;
    }
    if (c == 'T') {
      ++pos_;
      const Integer i = integer();
      if (i < 1 || i > 64) {
        pos_ = n->pos;
        fail("variable index out of range");
      }
      n->kind = Node::Kind::Var;
      n->index = static_cast<int>(i.get_si());
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// --- evaluation in K ---

FieldElement eval_field(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Number: return FieldElement(Rational(n.value));
    case Node::Kind::T: return FieldElement(Polynomial::t());
    case Node::Kind::Z: throw ParseError("map context required", n.pos);
    case Node::Kind::Var: throw ParseError("form variable not allowed here", n.pos);
    case Node::Kind::Neg: return -eval_field(*n.lhs);
    case Node::Kind::Add: return eval_field(*n.lhs) + eval_field(*n.rhs);
    case Node::Kind::Sub: return eval_field(*n.lhs) - eval_field(*n.rhs);
    case Node::Kind::Mul: return eval_field(*n.lhs) * eval_field(*n.rhs);
    case Node::Kind::Div: {
      const FieldElement den = eval_field(*n.rhs);
      if (den.is_zero()) throw ParseError("division by zero", n.pos);
      return eval_field(*n.lhs) / den;
    }
    case Node::Kind::Pow: return eval_field(*n.lhs).pow(static_cast<int>(n.exponent));
  }
  throw std::logic_error("bad node");
}

// --- evaluation in K(z) as an unreduced fraction over k[t][z] ---

struct Fraction {
  ZPolynomial num;
  ZPolynomial den;
};

Fraction eval_map(const Node& n) {
  const ZPolynomial one(Polynomial(1));
  switch (n.kind) {
    case Node::Kind::Number: return {ZPolynomial(Polynomial(Rational(n.value))), one};
    case Node::Kind::T: return {ZPolynomial(Polynomial::t()), one};
    case Node::Kind::Z: return {ZPolynomial::z(), one};
    case Node::Kind::Var: throw ParseError("form variable not allowed here", n.pos);
    case Node::Kind::Neg: {
      Fraction a = eval_map(*n.lhs);
      return {-a.num, a.den};
    }
    case Node::Kind::Add:
    case Node::Kind::Sub: {
      const Fraction a = eval_map(*n.lhs);
      Fraction b = eval_map(*n.rhs);
      if (n.kind == Node::Kind::Sub) b.num = -b.num;
      if (a.den == b.den) return {a.num + b.num, a.den};
      return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    case Node::Kind::Mul: {
      const Fraction a = eval_map(*n.lhs);
      const Fraction b = eval_map(*n.rhs);
      return {a.num * b.num, a.den * b.den};
    }
    case Node::Kind::Div: {
      const Fraction a = eval_map(*n.lhs);
      const Fraction b = eval_map(*n.rhs);
      if (b.num.is_zero()) throw ParseError("division by zero", n.pos);
      return {a.num * b.den, a.den * b.num};
    }
    case Node::Kind::Pow: {
      const Fraction a = eval_map(*n.lhs);
      return {a.num.pow(n.exponent), a.den.pow(n.exponent)};
    }
  }
  throw std::logic_error("bad node");
}

// --- evaluation as a polynomial in T1..Tk over K ---

using Exponents = std::vector<int>;
using MPoly = std::map<Exponents, FieldElement>;

void mp_add_term(MPoly& p, Exponents e, const FieldElement& c) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  auto [it, fresh] = p.emplace(std::move(e), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  } else if (c.is_zero()) {
    p.erase(it);
  }
}

MPoly mp_mul(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      mp_add_term(out, std::move(e), ca * cb);
    }
  }
  return out;
}

MPoly mp_constant(const FieldElement& c) {
  MPoly out;
  mp_add_term(out, {}, c);
  return out;
}

bool mp_is_constant(const MPoly& p) {
  return p.empty() || (p.size() == 1 && p.begin()->first.empty());
}

MPoly eval_form(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Number: return mp_constant(FieldElement(Rational(n.value)));
    case Node::Kind::T: return mp_constant(FieldElement(Polynomial::t()));
    case Node::Kind::Z: throw ParseError("z not allowed in a form", n.pos);
    case Node::Kind::Var: {
      MPoly out;
      Exponents e(static_cast<std::size_t>(n.index), 0);
      e.back() = 1;
      mp_add_term(out, std::move(e), FieldElement(1));
      return out;
    }
    case Node::Kind::Neg: return mp_mul(mp_constant(FieldElement(-1)), eval_form(*n.lhs));
    case Node::Kind::Add:
    case Node::Kind::Sub: {
      MPoly out = eval_form(*n.lhs);
      const FieldElement sign(n.kind == Node::Kind::Sub ? -1 : 1);
      for (const auto& [e, c] : eval_form(*n.rhs)) mp_add_term(out, e, sign * c);
      return out;
    }
    case Node::Kind::Mul: return mp_mul(eval_form(*n.lhs), eval_form(*n.rhs));
    case Node::Kind::Div: {
      const MPoly b = eval_form(*n.rhs);
      if (!mp_is_constant(b)) throw ParseError("form variables in a denominator", n.pos);
      if (b.empty()) throw ParseError("division by zero", n.pos);
      return mp_mul(eval_form(*n.lhs), mp_constant(b.begin()->second.inverse()));
    }
    case Node::Kind::Pow: {
      const MPoly base = eval_form(*n.lhs);
      MPoly out = mp_constant(FieldElement(1));
      for (unsigned i = 0; i < n.exponent; ++i) out = mp_mul(out, base);
      return out;
    }
  }
  throw std::logic_error("bad node");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// --- printing ---

struct Term {
  Rational coefficient;
  std::string monomial;  // empty for constants
};

std::string join_terms(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& term = terms[i];
    const bool negative = term.coefficient < 0;
    const Rational mag = negative ? Rational(-term.coefficient) : term.coefficient;
    if (i == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (term.monomial.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += term.monomial;
    } else {
      out += to_string(mag) + "*" + term.monomial;
    }
  }
  return out;
}

std::string power_text(const char* var, int k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return std::string(var) + "^" + std::to_string(k);
}

void append_poly_terms(const Polynomial& p, const std::string& suffix, std::vector<Term>* out) {
  for (int j = p.degree(); j >= 0; --j) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    std::string mono = power_text("t", j);
    if (!suffix.empty()) mono = mono.empty() ? suffix : mono + "*" + suffix;
    out->push_back({c, mono});
  }
}

}  // namespace

FieldElement SplitMultilinearForm::evaluate(const std::vector<FieldElement>& values) const {
  FieldElement total = constant;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    FieldElement term = coefficients[i];
    for (int j : blocks[i]) term *= values.at(static_cast<std::size_t>(j - 1));
    total += term;
  }
  return total;
}

FieldElement parse_field_elem(std::string_view text) {
  return eval_field(*Parser(text).parse());
}

RationalMap parse_rational_map(std::string_view text) {
  const Fraction f = eval_map(*Parser(text).parse());
  RationalMap phi = normalize_map(f.num, f.den);
  if (phi.degree() < 1) throw std::invalid_argument("constant map");
  return phi;
}

ProjectivePoint parse_point(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "inf") return ProjectivePoint::infinity();
  return ProjectivePoint::affine(parse_field_elem(text));
}

Place parse_place(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "inf") return Place::infinity();
  const FieldElement x = parse_field_elem(text);
  if (!x.is_polynomial()) throw std::invalid_argument("place must be a polynomial in t");
  return Place::finite(x.num());
}

PlaceSet parse_places(std::string_view text) {
  std::vector<Place> out;
  std::size_t start = 0;
  if (trim(text).empty()) return PlaceSet();
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (trim(piece).empty()) throw ParseError("empty place", start);
    try {
      out.push_back(parse_place(piece));
    } catch (const ParseError& e) {
      throw ParseError("bad place", start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return PlaceSet(std::move(out));
}

SplitMultilinearForm parse_split_form(std::string_view text) {
  const MPoly p = eval_form(*Parser(text).parse());
  SplitMultilinearForm form;
  std::set<int> seen;
  for (const auto& [e, c] : p) {
    if (e.empty()) {
      form.constant = c;
      continue;
    }
    std::vector<int> block;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 1) throw std::invalid_argument("form is not linear in T" + std::to_string(i + 1));
      if (e[i] == 1) {
        const int var = static_cast<int>(i) + 1;
        if (!seen.insert(var).second) {
          throw std::invalid_argument("T" + std::to_string(var) + " appears in two monomials");
        }
        block.push_back(var);
      }
    }
    form.blocks.push_back(std::move(block));
    form.coefficients.push_back(c);
  }
  if (seen.empty()) throw std::invalid_argument("form has no variables");
  form.arity = *seen.rbegin();
  if (static_cast<int>(seen.size()) != form.arity) {
    throw std::invalid_argument("form variables must be T1..T" + std::to_string(form.arity));
  }
  return form;
}

Rational parse_rational(std::string_view text) {
  const std::string s(trim(text));
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  const std::size_t digits_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  bool ok = i > digits_start;
  if (ok && i < s.size()) {
    ok = s[i] == '/';
    const std::size_t den_start = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    ok = ok && i > den_start && i == s.size();
  }
  if (!ok) throw std::invalid_argument("expected a rational p/q, got '" + s + "'");
  Rational q(s[0] == '+' ? s.substr(1) : s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& p) {
  std::vector<Term> terms;
  append_poly_terms(p, "", &terms);
  return join_terms(terms);
}

std::string to_string(const FieldElement& x) {
  if (x.is_polynomial()) return to_string(x.num());
  return "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
}

std::string to_string(const ZPolynomial& p) {
  std::vector<Term> terms;
  for (int i = p.degree(); i >= 0; --i) {
    append_poly_terms(p.coefficient(static_cast<std::size_t>(i)), power_text("z", i), &terms);
  }
  return join_terms(terms);
}

std::string to_string(const RationalMap& phi) {
  if (phi.G() == ZPolynomial(Polynomial(1))) return to_string(phi.F());
  return "(" + to_string(phi.F()) + ")/(" + to_string(phi.G()) + ")";
}

std::string to_string(const ProjectivePoint& P) {
  if (P.is_infinity()) return "inf";
  if (P.x1().degree() == 0) return to_string(P.x0());
  return "(" + to_string(P.x0()) + ")/(" + to_string(P.x1()) + ")";
}

std::string to_string(const Place& v) {
  return v.is_infinite() ? "inf" : to_string(v.polynomial());
}

std::string to_string(const PlaceSet& S) {
  std::string out;
  for (const auto& v : S) {
    if (!out.empty()) out += ", ";
    out += to_string(v);
  }
  return out;
}

std::string to_string(const SplitMultilinearForm& form) {
  std::string out;
  for (std::size_t i = 0; i < form.blocks.size(); ++i) {
    std::string mono;
    for (int j : form.blocks[i]) mono += (mono.empty() ? "T" : "*T") + std::to_string(j);
    const FieldElement& c = form.coefficients[i];
    if (!out.empty()) out += " + ";
    if (c == FieldElement(1)) {
      out += mono;
    } else {
      out += "(" + to_string(c) + ")*" + mono;
    }
  }
  if (!form.constant.is_zero()) out += " + (" + to_string(form.constant) + ")";
  return out;
}

}  // namespace ffdyn

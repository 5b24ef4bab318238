#include "dlfd/ast.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace dlfd {

namespace {

constexpr std::array<std::string_view, 5> kReserved = {"id", "all", "fd", "Top", "Bot"};

}  // namespace

bool is_reserved_word(std::string_view s) {
  return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end();
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char ch : s.substr(1)) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_' && c != '\'') return false;
  }
  return !is_reserved_word(s);
}

PathExpr PathExpr::of(std::initializer_list<const char*> names) {
  PathExpr p;
  for (const char* n : names) p.steps.emplace_back(n);
  return p;
}

// ---------------------------------------------------------------------------
// Concept

struct Concept::Node {
  Kind kind;
  ConceptName name;
  FeatureName feature;
  std::vector<Concept> kids;
};

Concept Concept::primitive(ConceptName name) {
  return Concept(std::make_shared<const Node>(Node{Kind::primitive, std::move(name), {}, {}}));
}

Concept Concept::conj(Concept a, Concept b) {
  return Concept(std::make_shared<const Node>(Node{Kind::conj, {}, {}, {std::move(a), std::move(b)}}));
}

Concept Concept::neg(Concept a) {
  return Concept(std::make_shared<const Node>(Node{Kind::neg, {}, {}, {std::move(a)}}));
}

Concept Concept::all(FeatureName f, Concept a) {
  return Concept(std::make_shared<const Node>(Node{Kind::all, {}, std::move(f), {std::move(a)}}));
}

Concept Concept::disj(Concept a, Concept b) {
  return Concept(std::make_shared<const Node>(Node{Kind::disj, {}, {}, {std::move(a), std::move(b)}}));
}

Concept Concept::top() {
  static const auto node = std::make_shared<const Node>(Node{Kind::top, {}, {}, {}});
  return Concept(node);
}

Concept Concept::bot() {
  static const auto node = std::make_shared<const Node>(Node{Kind::bot, {}, {}, {}});
  return Concept(node);
}

Concept Concept::conj_of(const std::vector<Concept>& parts) {
  if (parts.empty()) return top();
  Concept acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = conj(acc, parts[k]);
  return acc;
}

Concept Concept::disj_of(const std::vector<Concept>& parts) {
  if (parts.empty()) return bot();
  Concept acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = disj(acc, parts[k]);
  return acc;
}

Concept::Kind Concept::kind() const { return node_->kind; }

bool Concept::is_sugar() const {
  return kind() == Kind::disj || kind() == Kind::top || kind() == Kind::bot;
}

bool Concept::is_sugar_free() const {
  switch (kind()) {
    case Kind::primitive:
      return true;
    case Kind::conj:
      return left().is_sugar_free() && right().is_sugar_free();
    case Kind::neg:
    case Kind::all:
      return operand().is_sugar_free();
    default:
      return false;
  }
}

std::size_t Concept::depth() const {
  switch (kind()) {
    case Kind::conj:
    case Kind::disj:
      return 1 + std::max(left().depth(), right().depth());
    case Kind::neg:
    case Kind::all:
      return 1 + operand().depth();
    default:
      return 0;
  }
}

const ConceptName& Concept::name() const {
  if (kind() != Kind::primitive) throw std::logic_error("Concept::name on non-primitive");
  return node_->name;
}

const FeatureName& Concept::feature() const {
  if (kind() != Kind::all) throw std::logic_error("Concept::feature on non-restriction");
  return node_->feature;
}

const Concept& Concept::left() const {
  if (kind() != Kind::conj && kind() != Kind::disj) throw std::logic_error("Concept::left on non-binary");
  return node_->kids[0];
}

const Concept& Concept::right() const {
  if (kind() != Kind::conj && kind() != Kind::disj) throw std::logic_error("Concept::right on non-binary");
  return node_->kids[1];
}

const Concept& Concept::operand() const {
  if (kind() != Kind::neg && kind() != Kind::all) throw std::logic_error("Concept::operand on non-unary");
  return node_->kids[0];
}

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Concept::Kind::primitive:
      return a.name() == b.name();
    case Concept::Kind::conj:
    case Concept::Kind::disj:
      return a.left() == b.left() && a.right() == b.right();
    case Concept::Kind::neg:
      return a.operand() == b.operand();
    case Concept::Kind::all:
      return a.feature() == b.feature() && a.operand() == b.operand();
    default:
      return true;
  }
}

// ---------------------------------------------------------------------------
// RhsConcept

struct RhsConcept::Node {
  Kind kind;
  std::vector<Concept> plain;  // exactly one element for Kind::plain
  std::vector<RhsConcept> kids;
  std::vector<Pfd> pfd;  // exactly one element for Kind::pfd
};

RhsConcept RhsConcept::plain(Concept c) {
  return RhsConcept(std::make_shared<const Node>(Node{Kind::plain, {std::move(c)}, {}, {}}));
}

RhsConcept RhsConcept::conj(RhsConcept a, RhsConcept b) {
  if (a.kind() == Kind::plain && b.kind() == Kind::plain) {
    return plain(Concept::conj(a.plain_concept(), b.plain_concept()));
  }
  return RhsConcept(std::make_shared<const Node>(Node{Kind::conj, {}, {std::move(a), std::move(b)}, {}}));
}

RhsConcept RhsConcept::pfd(Concept over, std::vector<PathExpr> lhs, PathExpr rhs) {
  if (lhs.empty()) throw std::invalid_argument("PFD requires at least one left-hand path");
  return RhsConcept(std::make_shared<const Node>(
      Node{Kind::pfd, {}, {}, {Pfd{std::move(over), std::move(lhs), std::move(rhs)}}}));
}

RhsConcept::Kind RhsConcept::kind() const { return node_->kind; }

const Concept& RhsConcept::plain_concept() const {
  if (kind() != Kind::plain) throw std::logic_error("RhsConcept::plain_concept on non-plain");
  return node_->plain[0];
}

const RhsConcept& RhsConcept::left() const {
  if (kind() != Kind::conj) throw std::logic_error("RhsConcept::left on non-conjunction");
  return node_->kids[0];
}

const RhsConcept& RhsConcept::right() const {
  if (kind() != Kind::conj) throw std::logic_error("RhsConcept::right on non-conjunction");
  return node_->kids[1];
}

const Pfd& RhsConcept::pfd() const {
  if (kind() != Kind::pfd) throw std::logic_error("RhsConcept::pfd on non-PFD");
  return node_->pfd[0];
}

bool RhsConcept::contains_pfd() const {
  switch (kind()) {
    case Kind::plain:
      return false;
    case Kind::pfd:
      return true;
    case Kind::conj:
      return left().contains_pfd() || right().contains_pfd();
  }
  return false;
}

std::vector<RhsConcept> RhsConcept::conjuncts() const {
  if (kind() != Kind::conj) return {*this};
  auto out = left().conjuncts();
  auto rest = right().conjuncts();
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

bool operator==(const RhsConcept& a, const RhsConcept& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case RhsConcept::Kind::plain:
      return a.plain_concept() == b.plain_concept();
    case RhsConcept::Kind::conj:
      return a.left() == b.left() && a.right() == b.right();
    case RhsConcept::Kind::pfd:
      return a.pfd() == b.pfd();
  }
  return false;
}

ConstraintClass classify_axiom(const Axiom& a) {
  return a.rhs.contains_pfd() ? ConstraintClass::pfd_constraint : ConstraintClass::simple_constraint;
}

// ---------------------------------------------------------------------------
// Signatures

void Signature::merge(const Signature& other) {
  concepts.insert(other.concepts.begin(), other.concepts.end());
  features.insert(other.features.begin(), other.features.end());
  max_path_len = std::max(max_path_len, other.max_path_len);
}

namespace {

void collect(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case Concept::Kind::primitive:
      sig.concepts.insert(c.name());
      break;
    case Concept::Kind::conj:
    case Concept::Kind::disj:
      collect(c.left(), sig);
      collect(c.right(), sig);
      break;
    case Concept::Kind::neg:
      collect(c.operand(), sig);
      break;
    case Concept::Kind::all:
      sig.features.insert(c.feature());
      collect(c.operand(), sig);
      break;
    case Concept::Kind::top:
    case Concept::Kind::bot:
      break;
  }
}

void collect(const PathExpr& p, Signature& sig) {
  sig.features.insert(p.steps.begin(), p.steps.end());
  sig.max_path_len = std::max(sig.max_path_len, p.length());
}

void collect(const RhsConcept& r, Signature& sig) {
  switch (r.kind()) {
    case RhsConcept::Kind::plain:
      collect(r.plain_concept(), sig);
      break;
    case RhsConcept::Kind::conj:
      collect(r.left(), sig);
      collect(r.right(), sig);
      break;
    case RhsConcept::Kind::pfd:
      collect(r.pfd().over, sig);
      for (const auto& p : r.pfd().lhs) collect(p, sig);
      collect(r.pfd().rhs, sig);
      break;
  }
}

}  // namespace

Signature signature_of(const Concept& c) {
  Signature sig;
  collect(c, sig);
  return sig;
}

Signature signature_of(const RhsConcept& c) {
  Signature sig;
  collect(c, sig);
  return sig;
}

Signature signature_of(const Axiom& a) {
  Signature sig;
  collect(a.lhs, sig);
  collect(a.rhs, sig);
  return sig;
}

Signature signature_of(const Terminology& t) {
  Signature sig;
  for (const auto& a : t.axioms) {
    collect(a.lhs, sig);
    collect(a.rhs, sig);
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength: `|` < `&` < prefix operators < atoms.
constexpr int kOr = 1;
constexpr int kAnd = 2;
constexpr int kUnary = 3;
constexpr int kAtom = 4;

std::string wrap(std::string s, int prec, int min_prec) {
  return prec < min_prec ? "(" + s + ")" : s;
}

std::string render_concept(const Concept& c, int min_prec) {
  switch (c.kind()) {
    case Concept::Kind::primitive:
      return c.name().value;
    case Concept::Kind::top:
      return "Top";
    case Concept::Kind::bot:
      return "Bot";
    case Concept::Kind::neg:
      return wrap("~" + render_concept(c.operand(), kUnary), kUnary, min_prec);
    case Concept::Kind::all:
      return wrap("all " + c.feature().value + " . " + render_concept(c.operand(), kUnary), kUnary, min_prec);
    case Concept::Kind::conj:
      return wrap(render_concept(c.left(), kAnd) + " & " + render_concept(c.right(), kUnary), kAnd, min_prec);
    case Concept::Kind::disj:
      return wrap(render_concept(c.left(), kOr) + " | " + render_concept(c.right(), kAnd), kOr, min_prec);
  }
  return {};
}

std::string render_rhs(const RhsConcept& r, int min_prec) {
  switch (r.kind()) {
    case RhsConcept::Kind::plain:
      return render_concept(r.plain_concept(), min_prec);
    case RhsConcept::Kind::conj:
      return wrap(render_rhs(r.left(), kAnd) + " & " + render_rhs(r.right(), kUnary), kAnd, min_prec);
    case RhsConcept::Kind::pfd: {
      const Pfd& p = r.pfd();
      std::string out = "fd(" + render_concept(p.over, 0) + " : ";
      for (std::size_t k = 0; k < p.lhs.size(); ++k) {
        if (k) out += ", ";
        out += render(p.lhs[k]);
      }
      out += " -> " + render(p.rhs) + ")";
      return wrap(out, kAtom, min_prec);
    }
  }
  return {};
}

}  // namespace

std::string render(const PathExpr& p) {
  if (p.is_identity()) return "id";
  std::string out;
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    if (k) out += '.';
    out += p.steps[k].value;
  }
  return out;
}

std::string render(const Concept& c) { return render_concept(c, 0); }

std::string render(const RhsConcept& c) { return render_rhs(c, 0); }

std::string render(const Axiom& a) { return render(a.lhs) + " <= " + render(a.rhs) + ";"; }

std::string render_terminology(const Terminology& t) {
  std::string out;
  for (const auto& a : t.axioms) {
    out += render(a);
    out += '\n';
  }
  return out;
}

}  // namespace dlfd

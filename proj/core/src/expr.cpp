// SPDX-License-Identifier: Apache-2.0
#include "algc/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <utility>

namespace algc {

namespace {

FieldNodePtr make_node(FieldNode n) { return std::make_shared<const FieldNode>(std::move(n)); }

FieldNodePtr const_node(double v) {
  FieldNode n;
  n.op = FieldOp::kConst;
  n.number = v;
  return make_node(std::move(n));
}

FieldNodePtr binary_node(FieldOp op, FieldNodePtr l, FieldNodePtr r) {
  FieldNode n;
  n.op = op;
  n.lhs = std::move(l);
  n.rhs = std::move(r);
  return make_node(std::move(n));
}

bool node_is_const(const FieldNodePtr& n) { return n && n->op == FieldOp::kConst; }
bool node_is_const(const FieldNodePtr& n, double v) {
  return node_is_const(n) && n->number == v;
}

void require(const ScalarField& f, const char* who) {
  if (!f) throw Error(std::string(who) + ": empty field");
}

}  // namespace

JetMatrixInverse::JetMatrixInverse(int size, std::vector<ScalarField> entries)
    : k_(size), entries_(std::move(entries)) {
  if (k_ <= 0 || entries_.size() != static_cast<std::size_t>(k_) * k_)
    throw DimensionError("JetMatrixInverse: entry count does not match size");
  for (const auto& e : entries_) require(e, "JetMatrixInverse");
}

const ScalarField& JetMatrixInverse::entry(int i, int j) const {
  return entries_[static_cast<std::size_t>(i) * k_ + j];
}

ScalarField ScalarField::constant(double value) {
  return ScalarField(const_node(value));
}

ScalarField ScalarField::coordinate(int index) {
  FieldNode n;
  n.op = FieldOp::kCoord;
  n.a = index;
  return ScalarField(make_node(std::move(n)));
}

bool ScalarField::is_constant() const { return node_is_const(root_); }
bool ScalarField::is_constant(double value) const { return node_is_const(root_, value); }

Jet2 ScalarField::eval(EvalCache& cache) const { return cache.eval(*this); }

Jet2 ScalarField::eval(std::span<const double> point) const {
  EvalCache cache(std::vector<double>(point.begin(), point.end()));
  return cache.eval(*this);
}

ScalarField operator+(const ScalarField& f, const ScalarField& g) {
  require(f, "operator+");
  require(g, "operator+");
  if (node_is_const(f.node()) && node_is_const(g.node()))
    return ScalarField::constant(f.node()->number + g.node()->number);
  if (node_is_const(f.node(), 0.0)) return g;
  if (node_is_const(g.node(), 0.0)) return f;
  return ScalarField::wrap(binary_node(FieldOp::kAdd, f.node(), g.node()));
}

ScalarField operator-(const ScalarField& f, const ScalarField& g) {
  require(f, "operator-");
  require(g, "operator-");
  if (node_is_const(f.node()) && node_is_const(g.node()))
    return ScalarField::constant(f.node()->number - g.node()->number);
  if (node_is_const(g.node(), 0.0)) return f;
  if (node_is_const(f.node(), 0.0)) return -g;
  return ScalarField::wrap(binary_node(FieldOp::kSub, f.node(), g.node()));
}

ScalarField operator*(const ScalarField& f, const ScalarField& g) {
  require(f, "operator*");
  require(g, "operator*");
  if (node_is_const(f.node()) && node_is_const(g.node()))
    return ScalarField::constant(f.node()->number * g.node()->number);
  if (node_is_const(f.node(), 0.0) || node_is_const(g.node(), 0.0))
    return ScalarField::constant(0.0);
  if (node_is_const(f.node(), 1.0)) return g;
  if (node_is_const(g.node(), 1.0)) return f;
  return ScalarField::wrap(binary_node(FieldOp::kMul, f.node(), g.node()));
}

ScalarField operator/(const ScalarField& f, const ScalarField& g) {
  require(f, "operator/");
  require(g, "operator/");
  if (node_is_const(g.node(), 1.0)) return f;
  if (node_is_const(f.node()) && node_is_const(g.node()) && g.node()->number != 0.0)
    return ScalarField::constant(f.node()->number / g.node()->number);
  return ScalarField::wrap(binary_node(FieldOp::kDiv, f.node(), g.node()));
}

ScalarField operator-(const ScalarField& f) {
  require(f, "negate");
  if (node_is_const(f.node())) return ScalarField::constant(-f.node()->number);
  if (f.node()->op == FieldOp::kNeg) return ScalarField::wrap(f.node()->lhs);
  FieldNode n;
  n.op = FieldOp::kNeg;
  n.lhs = f.node();
  return ScalarField::wrap(make_node(std::move(n)));
}

ScalarField operator*(double s, const ScalarField& f) {
  return ScalarField::constant(s) * f;
}
ScalarField operator*(const ScalarField& f, double s) { return s * f; }

ScalarField pow_int(const ScalarField& f, int exponent) {
  require(f, "pow_int");
  if (exponent < 0) throw Error("pow_int: negative exponent");
  if (exponent == 0) return ScalarField::constant(1.0);
  if (exponent == 1) return f;
  if (node_is_const(f.node()))
    return ScalarField::constant(std::pow(f.node()->number, exponent));
  FieldNode n;
  n.op = FieldOp::kPow;
  n.a = exponent;
  n.lhs = f.node();
  return ScalarField::wrap(make_node(std::move(n)));
}

namespace {
ScalarField call_field(FieldFunc fn, const ScalarField& f) {
  require(f, "call");
  FieldNode n;
  n.op = FieldOp::kCall;
  n.func = fn;
  n.lhs = f.node();
  return ScalarField::wrap(make_node(std::move(n)));
}
}  // namespace

ScalarField sin(const ScalarField& f) {
  if (f.is_constant()) return ScalarField::constant(std::sin(f.node()->number));
  return call_field(FieldFunc::kSin, f);
}
ScalarField cos(const ScalarField& f) {
  if (f.is_constant()) return ScalarField::constant(std::cos(f.node()->number));
  return call_field(FieldFunc::kCos, f);
}
ScalarField exp(const ScalarField& f) {
  if (f.is_constant()) return ScalarField::constant(std::exp(f.node()->number));
  return call_field(FieldFunc::kExp, f);
}
ScalarField log(const ScalarField& f) {
  if (f.is_constant() && f.node()->number > 0.0)
    return ScalarField::constant(std::log(f.node()->number));
  return call_field(FieldFunc::kLog, f);
}
ScalarField sqrt(const ScalarField& f) {
  if (f.is_constant() && f.node()->number > 0.0)
    return ScalarField::constant(std::sqrt(f.node()->number));
  return call_field(FieldFunc::kSqrt, f);
}

ScalarField partial(const ScalarField& f, int coord) {
  require(f, "partial");
  if (f.is_constant()) return ScalarField::constant(0.0);
  if (f.node()->op == FieldOp::kCoord)
    return ScalarField::constant(f.node()->a == coord ? 1.0 : 0.0);
  FieldNode n;
  n.op = FieldOp::kPartial;
  n.a = coord;
  n.lhs = f.node();
  return ScalarField::wrap(make_node(std::move(n)));
}

std::shared_ptr<const JetMatrixInverse> make_jet_inverse(int size,
                                                         std::vector<ScalarField> entries) {
  return std::make_shared<const JetMatrixInverse>(size, std::move(entries));
}

ScalarField inverse_entry(std::shared_ptr<const JetMatrixInverse> inv, int i, int j) {
  if (!inv) throw Error("inverse_entry: null matrix");
  if (i < 0 || j < 0 || i >= inv->size() || j >= inv->size())
    throw DimensionError("inverse_entry: index out of range");
  FieldNode n;
  n.op = FieldOp::kInvEntry;
  n.a = i;
  n.b = j;
  n.inverse = std::move(inv);
  return ScalarField::wrap(make_node(std::move(n)));
}

EvalCache::EvalCache(std::vector<double> point) : point_(std::move(point)) {}

Jet2 EvalCache::eval(const ScalarField& f) {
  if (!f) throw Error("eval: empty field");
  const Jet2& j = eval_node(f.node());
  if (!j.finite()) throw DomainError("non-finite result in field evaluation");
  return j;
}

const Jet2& EvalCache::eval_node(const FieldNodePtr& np) {
  auto it = memo_.find(np);
  if (it != memo_.end()) return it->second;

  const FieldNode* n = np.get();
  Jet2 out;
  const int dim = this->dim();
  switch (n->op) {
    case FieldOp::kConst:
      out = Jet2::constant(n->number, dim);
      break;
    case FieldOp::kCoord:
      if (n->a < 0 || n->a >= dim)
        throw DimensionError("coordinate index out of range for evaluation point");
      out = Jet2::variable(point_[n->a], n->a, dim);
      break;
    case FieldOp::kAdd:
      out = eval_node(n->lhs) + eval_node(n->rhs);
      break;
    case FieldOp::kSub:
      out = eval_node(n->lhs) - eval_node(n->rhs);
      break;
    case FieldOp::kMul:
      out = eval_node(n->lhs) * eval_node(n->rhs);
      break;
    case FieldOp::kDiv:
      out = eval_node(n->lhs) / eval_node(n->rhs);
      break;
    case FieldOp::kNeg:
      out = -eval_node(n->lhs);
      break;
    case FieldOp::kPow:
      out = pow_int(eval_node(n->lhs), n->a);
      break;
    case FieldOp::kCall: {
      const Jet2& x = eval_node(n->lhs);
      switch (n->func) {
        case FieldFunc::kSin: out = sin(x); break;
        case FieldFunc::kCos: out = cos(x); break;
        case FieldFunc::kExp: out = exp(x); break;
        case FieldFunc::kLog: out = log(x); break;
        case FieldFunc::kSqrt: out = sqrt(x); break;
      }
      break;
    }
    case FieldOp::kPartial: {
      // Order-2 truncation: the value and gradient of ∂_a f are exact, the
      // Hessian of a derived field is not representable and stays zero.
      const Jet2& x = eval_node(n->lhs);
      out = Jet2(dim);
      if (n->a < 0 || n->a >= dim)
        throw DimensionError("partial: coordinate index out of range");
      out.set_value(x.grad(n->a));
      for (int i = 0; i < dim; ++i) out.set_grad(i, x.hess(n->a, i));
      break;
    }
    case FieldOp::kInvEntry: {
      const std::vector<Jet2>& inv = eval_inverse(n->inverse);
      out = inv[static_cast<std::size_t>(n->a) * n->inverse->size() + n->b];
      break;
    }
  }
  return memo_.emplace(np, std::move(out)).first->second;
}

const std::vector<Jet2>& EvalCache::eval_inverse(
    const std::shared_ptr<const JetMatrixInverse>& mp) {
  auto it = inverse_memo_.find(mp);
  if (it != inverse_memo_.end()) return it->second;

  const JetMatrixInverse* m = mp.get();
  const int k = m->size();
  std::vector<Jet2> a(static_cast<std::size_t>(k) * k);
  std::vector<Jet2> inv(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      a[i * k + j] = eval_node(m->entry(i, j).node());
      inv[i * k + j] = Jet2::constant(i == j ? 1.0 : 0.0, dim());
    }

  constexpr double kPivotThreshold = 1e-10;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int row = col + 1; row < k; ++row)
      if (std::fabs(a[row * k + col].value()) > std::fabs(a[piv * k + col].value()))
        piv = row;
    if (std::fabs(a[piv * k + col].value()) < kPivotThreshold) {
      std::string where = "(";
      for (std::size_t i = 0; i < point_.size(); ++i)
        where += (i ? ", " : "") + std::to_string(point_[i]);
      where += ")";
      throw SingularMatrixError("singular value-part matrix at point " + where);
    }
    if (piv != col)
      for (int j = 0; j < k; ++j) {
        std::swap(a[piv * k + j], a[col * k + j]);
        std::swap(inv[piv * k + j], inv[col * k + j]);
      }
    const Jet2 pivot_inv = reciprocal(a[col * k + col]);
    for (int j = 0; j < k; ++j) {
      a[col * k + j] = a[col * k + j] * pivot_inv;
      inv[col * k + j] = inv[col * k + j] * pivot_inv;
    }
    for (int row = 0; row < k; ++row) {
      if (row == col) continue;
      const Jet2 factor = a[row * k + col];
      if (factor.value() == 0.0 && factor.max_abs() == 0.0) continue;
      for (int j = 0; j < k; ++j) {
        a[row * k + j] = a[row * k + j] - factor * a[col * k + j];
        inv[row * k + j] = inv[row * k + j] - factor * inv[col * k + j];
      }
    }
  }
  return inverse_memo_.emplace(mp, std::move(inv)).first->second;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> coords)
      : text_(text), coords_(coords) {}

  ScalarField run() {
    ScalarField f = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarField parse_expr() {
    ScalarField f = parse_term();
    for (;;) {
      if (accept('+'))
        f = ScalarField::wrap(binary_node(FieldOp::kAdd, f.node(), parse_term().node()));
      else if (accept('-'))
        f = ScalarField::wrap(binary_node(FieldOp::kSub, f.node(), parse_term().node()));
      else
        return f;
    }
  }

  ScalarField parse_term() {
    ScalarField f = parse_factor();
    for (;;) {
      if (accept('*'))
        f = ScalarField::wrap(binary_node(FieldOp::kMul, f.node(), parse_factor().node()));
      else if (accept('/'))
        f = ScalarField::wrap(binary_node(FieldOp::kDiv, f.node(), parse_factor().node()));
      else
        return f;
    }
  }

  ScalarField parse_factor() {
    if (accept('-')) {
      ScalarField inner = parse_factor();
      // negative literals fold to constants so that printing and reparsing
      // a tree reproduces it node for node
      if (inner.node()->op == FieldOp::kConst)
        return ScalarField::constant(-inner.node()->number);
      FieldNode n;
      n.op = FieldOp::kNeg;
      n.lhs = inner.node();
      return ScalarField::wrap(make_node(std::move(n)));
    }
    return parse_power();
  }

  ScalarField parse_power() {
    ScalarField base = parse_atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) throw ParseError("expected non-negative integer exponent", start);
      int exponent = 0;
      for (std::size_t i = start; i < pos_; ++i) exponent = exponent * 10 + (text_[i] - '0');
      FieldNode n;
      n.op = FieldOp::kPow;
      n.a = exponent;
      n.lhs = base.node();
      return ScalarField::wrap(make_node(std::move(n)));
    }
    return base;
  }

  ScalarField parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    if (c == '(') {
      ++pos_;
      ScalarField f = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  ScalarField parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' begins an identifier, not an exponent
      }
    }
    const std::string slice(text_.substr(start, pos_ - start));
    return ScalarField::wrap(const_node(std::stod(slice)));
  }

  ScalarField parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    static constexpr std::pair<std::string_view, FieldFunc> kFuncs[] = {
        {"sin", FieldFunc::kSin}, {"cos", FieldFunc::kCos}, {"exp", FieldFunc::kExp},
        {"log", FieldFunc::kLog}, {"sqrt", FieldFunc::kSqrt}};
    for (const auto& [fname, fn] : kFuncs) {
      if (name == fname) {
        if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
        ScalarField arg = parse_expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        FieldNode n;
        n.op = FieldOp::kCall;
        n.func = fn;
        n.lhs = arg.node();
        return ScalarField::wrap(make_node(std::move(n)));
      }
    }
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (name == coords_[i]) return ScalarField::coordinate(static_cast<int>(i));
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse(std::string_view text, std::span<const std::string> coords) {
  return Parser(text, coords).run();
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void render(const FieldNode* n, std::span<const std::string> coords, std::string& out) {
  switch (n->op) {
    case FieldOp::kConst:
      out += format_number(n->number);
      break;
    case FieldOp::kCoord:
      if (n->a >= 0 && n->a < static_cast<int>(coords.size()))
        out += coords[n->a];
      else
        out += "x" + std::to_string(n->a);
      break;
    case FieldOp::kAdd:
    case FieldOp::kSub:
    case FieldOp::kMul:
    case FieldOp::kDiv: {
      const char* sign = n->op == FieldOp::kAdd   ? " + "
                         : n->op == FieldOp::kSub ? " - "
                         : n->op == FieldOp::kMul ? " * "
                                                  : " / ";
      out += '(';
      render(n->lhs.get(), coords, out);
      out += sign;
      render(n->rhs.get(), coords, out);
      out += ')';
      break;
    }
    case FieldOp::kNeg:
      out += "(-";
      render(n->lhs.get(), coords, out);
      out += ')';
      break;
    case FieldOp::kPow:
      out += '(';
      render(n->lhs.get(), coords, out);
      out += ")^" + std::to_string(n->a);
      break;
    case FieldOp::kCall: {
      static constexpr const char* kNames[] = {"sin", "cos", "exp", "log", "sqrt"};
      out += kNames[static_cast<int>(n->func)];
      out += '(';
      render(n->lhs.get(), coords, out);
      out += ')';
      break;
    }
    case FieldOp::kPartial:
      out += "D" + std::to_string(n->a) + "(";
      render(n->lhs.get(), coords, out);
      out += ')';
      break;
    case FieldOp::kInvEntry:
      out += "inv" + std::to_string(n->a) + std::to_string(n->b) + "(...)";
      break;
  }
}

}  // namespace

std::string to_string(const ScalarField& f, std::span<const std::string> coords) {
  if (!f) return "<empty>";
  std::string out;
  render(f.node().get(), coords, out);
  return out;
}

bool structurally_equal(const ScalarField& f, const ScalarField& g) {
  if (!f || !g) return static_cast<bool>(f) == static_cast<bool>(g);
  struct Cmp {
    static bool eq(const FieldNode* a, const FieldNode* b) {
      if (a == b) return true;
      if (a->op != b->op) return false;
      switch (a->op) {
        case FieldOp::kConst: return a->number == b->number;
        case FieldOp::kCoord: return a->a == b->a;
        case FieldOp::kPow:
          return a->a == b->a && eq(a->lhs.get(), b->lhs.get());
        case FieldOp::kCall:
          return a->func == b->func && eq(a->lhs.get(), b->lhs.get());
        case FieldOp::kNeg:
        case FieldOp::kPartial:
          return a->a == b->a && eq(a->lhs.get(), b->lhs.get());
        case FieldOp::kInvEntry: {
          if (a->a != b->a || a->b != b->b) return false;
          const auto *ma = a->inverse.get(), *mb = b->inverse.get();
          if (ma == mb) return true;
          if (ma->size() != mb->size()) return false;
          for (int i = 0; i < ma->size(); ++i)
            for (int j = 0; j < ma->size(); ++j)
              if (!eq(ma->entry(i, j).node().get(), mb->entry(i, j).node().get())) return false;
          return true;
        }
        default:
          return eq(a->lhs.get(), b->lhs.get()) && eq(a->rhs.get(), b->rhs.get());
      }
    }
  };
  return Cmp::eq(f.node().get(), g.node().get());
}

// ---------------------------------------------------------------------------
// Domain box, probe points, finite differences
// ---------------------------------------------------------------------------

bool DomainBox::contains(std::span<const double> p, double margin) const {
  if (p.size() != lower.size()) return false;
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (p[i] < lower[i] + margin || p[i] > upper[i] - margin) return false;
  return true;
}

std::vector<double> DomainBox::center() const {
  std::vector<double> c(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
  return c;
}

std::vector<double> DomainBox::sample(std::mt19937_64& rng, double margin) const {
  std::vector<double> p(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    std::uniform_real_distribution<double> dist(lower[i] + margin, upper[i] - margin);
    p[i] = dist(rng);
  }
  return p;
}

std::vector<std::vector<double>> probe_points(const DomainBox& box, int count) {
  std::vector<std::vector<double>> pts;
  pts.push_back(box.center());
  std::mt19937_64 rng(0xa1c0ull);
  const double margin_scale = 0.05;
  for (int i = 1; i < count; ++i) {
    std::vector<double> p(box.lower.size());
    for (std::size_t a = 0; a < box.lower.size(); ++a) {
      const double m = margin_scale * (box.upper[a] - box.lower[a]);
      std::uniform_real_distribution<double> dist(box.lower[a] + m, box.upper[a] - m);
      p[a] = dist(rng);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

FdReport fd_check(const ScalarField& f, const std::vector<double>& p, double h,
                  const DomainBox* box) {
  const int n = static_cast<int>(p.size());
  auto value_at = [&](const std::vector<double>& q) {
    if (box && !box->contains(q))
      throw DomainError("fd_check: stencil point outside the domain box");
    EvalCache cache(q);
    return cache.value(f);
  };

  EvalCache at_p(p);
  const Jet2 jet = at_p.eval(f);

  FdReport report;
  std::vector<double> q = p;
  for (int a = 0; a < n; ++a) {
    q[a] = p[a] + h;
    const double fp = value_at(q);
    q[a] = p[a] - h;
    const double fm = value_at(q);
    q[a] = p[a];
    const double d = (fp - fm) / (2.0 * h);
    report.grad_residual = std::max(report.grad_residual, std::fabs(d - jet.grad(a)));
    const double dd = (fp - 2.0 * value_at(p) + fm) / (h * h);
    report.hess_residual = std::max(report.hess_residual, std::fabs(dd - jet.hess(a, a)));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto shifted = [&](double da, double db) {
        std::vector<double> s = p;
        s[a] += da;
        s[b] += db;
        return value_at(s);
      };
      const double dd =
          (shifted(h, h) - shifted(h, -h) - shifted(-h, h) + shifted(-h, -h)) / (4.0 * h * h);
      report.hess_residual = std::max(report.hess_residual, std::fabs(dd - jet.hess(a, b)));
    }
  return report;
}

}  // namespace algc

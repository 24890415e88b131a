// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "algc/jet.hpp"

namespace algc {

class ScalarField;
class EvalCache;

enum class FieldOp : unsigned char {
  kConst,
  kCoord,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kPow,      // integer exponent >= 0
  kCall,     // sin, cos, exp, log, sqrt
  kPartial,  // coordinate derivative of another field
  kInvEntry  // entry of a pointwise jet-ring matrix inverse
};

enum class FieldFunc : unsigned char { kSin, kCos, kExp, kLog, kSqrt };

struct FieldNode;
using FieldNodePtr = std::shared_ptr<const FieldNode>;

/// Square matrix of scalar fields inverted pointwise over the jet ring
/// (Gauss-Jordan with partial pivoting on the value parts). Entries of the
/// inverse are exposed as fields so that anything built on top of them can
/// be differentiated again.
class JetMatrixInverse {
 public:
  JetMatrixInverse(int size, std::vector<ScalarField> entries);
  int size() const { return k_; }
  const ScalarField& entry(int i, int j) const;

 private:
  friend class EvalCache;
  int k_;
  std::vector<ScalarField> entries_;  // row-major k×k
};

struct FieldNode {
  FieldOp op{};
  double number = 0.0;   // kConst
  int a = 0;             // kCoord/kPartial: coordinate; kPow: exponent; kInvEntry: row
  int b = 0;             // kInvEntry: column
  FieldFunc func{};      // kCall
  FieldNodePtr lhs, rhs;
  std::shared_ptr<const JetMatrixInverse> inverse;  // kInvEntry
};

/// Immutable scalar field over a coordinate chart, represented as a shared
/// expression DAG. Primitive nodes (parsed expressions) evaluate to exact
/// order-2 jets; a kPartial node drops one order, so fields derived through
/// it carry an exact value and gradient but a truncated (zero) Hessian.
/// Every identity in the library needs at most one further derivative of a
/// derived field, which keeps all evaluated residuals exact.
class ScalarField {
 public:
  ScalarField() = default;  // empty; evaluating throws

  static ScalarField constant(double value);
  static ScalarField coordinate(int index);

  const FieldNodePtr& node() const { return root_; }
  explicit operator bool() const { return root_ != nullptr; }

  bool is_constant() const;
  bool is_constant(double value) const;

  /// Evaluate at the cache's point, sharing work with every other field
  /// evaluated through the same cache.
  Jet2 eval(EvalCache& cache) const;

  /// Convenience: one-shot evaluation at a point.
  Jet2 eval(std::span<const double> point) const;

  static ScalarField wrap(FieldNodePtr node) { return ScalarField(std::move(node)); }

 private:
  explicit ScalarField(FieldNodePtr root) : root_(std::move(root)) {}
  FieldNodePtr root_;
};

// Field arithmetic. Light constant folding keeps the DAGs of composite
// operators lean (identity anchors and sparse structure functions fold to
// nothing). Folding never happens inside the parser, so parsed trees keep
// their written shape.
ScalarField operator+(const ScalarField& f, const ScalarField& g);
ScalarField operator-(const ScalarField& f, const ScalarField& g);
ScalarField operator*(const ScalarField& f, const ScalarField& g);
ScalarField operator/(const ScalarField& f, const ScalarField& g);
ScalarField operator-(const ScalarField& f);
ScalarField operator*(double s, const ScalarField& f);
ScalarField operator*(const ScalarField& f, double s);
ScalarField pow_int(const ScalarField& f, int exponent);
ScalarField sin(const ScalarField& f);
ScalarField cos(const ScalarField& f);
ScalarField exp(const ScalarField& f);
ScalarField log(const ScalarField& f);
ScalarField sqrt(const ScalarField& f);

/// Coordinate derivative ∂_a f as a field (order-2 truncation applies).
ScalarField partial(const ScalarField& f, int coord);

std::shared_ptr<const JetMatrixInverse> make_jet_inverse(int size,
                                                         std::vector<ScalarField> entries);
ScalarField inverse_entry(std::shared_ptr<const JetMatrixInverse> inv, int i, int j);

/// Per-point evaluation context: memoizes every DAG node and every matrix
/// inversion at its point. The cache shares ownership of the nodes it has
/// seen, so memo entries stay valid even for fields built on the fly. Create
/// one per point; caches are independent, so concurrent evaluation uses one
/// cache per thread.
class EvalCache {
 public:
  explicit EvalCache(std::vector<double> point);

  const std::vector<double>& point() const { return point_; }
  int dim() const { return static_cast<int>(point_.size()); }

  Jet2 eval(const ScalarField& f);
  double value(const ScalarField& f) { return eval(f).value(); }

 private:
  friend class ScalarField;
  const Jet2& eval_node(const FieldNodePtr& n);
  const std::vector<Jet2>& eval_inverse(const std::shared_ptr<const JetMatrixInverse>& m);

  std::vector<double> point_;
  std::unordered_map<FieldNodePtr, Jet2> memo_;
  std::unordered_map<std::shared_ptr<const JetMatrixInverse>, std::vector<Jet2>>
      inverse_memo_;
};

/// Parse an expression over the named coordinates.
///
/// Grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" integer)?
///   atom   := number | ident | func "(" expr ")" | "(" expr ")"
///   func   := "sin"|"cos"|"exp"|"log"|"sqrt"
///
/// Whitespace is insignificant; numbers are decimal with optional fraction
/// and exponent; "^" takes a non-negative integer literal only.
ScalarField parse(std::string_view text, std::span<const std::string> coords);

/// Render a field as parseable text (fully parenthesized). For trees
/// produced by parse(), parse(to_string(t)) reproduces t node for node.
/// Derived nodes (partials, inverse entries) render in a diagnostic form
/// that is not part of the grammar.
std::string to_string(const ScalarField& f, std::span<const std::string> coords);

bool structurally_equal(const ScalarField& f, const ScalarField& g);

/// Rectangular sampling domain; fixtures exclude singular loci by data.
struct DomainBox {
  std::vector<double> lower, upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(std::span<const double> p, double margin = 0.0) const;
  std::vector<double> center() const;
  std::vector<double> sample(std::mt19937_64& rng, double margin = 0.0) const;
};

/// Deterministic probe points used by constructors to validate symmetry
/// properties of input data.
std::vector<std::vector<double>> probe_points(const DomainBox& box, int count = 3);

struct FdReport {
  double grad_residual = 0.0;
  double hess_residual = 0.0;
};

/// Compare the jet gradient/Hessian of f at p against central finite
/// differences with step h. When a box is given, every stencil point must
/// lie inside it.
FdReport fd_check(const ScalarField& f, const std::vector<double>& p, double h,
                  const DomainBox* box = nullptr);

}  // namespace algc

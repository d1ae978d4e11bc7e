#pragma once

#include "diffkit/ratfun.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace diffkit {

enum class FieldKind { Rationals, RationalFunctions, SeriesFraction };

/// Exact fields answer Zero/NonZero; tower fields may only know "zero up to
/// the available precision".
enum class ZeroTest { Zero, NonZero, ZeroToPrecision };
enum class Comparison { Equal, Unequal, EqualToPrecision };

class DiffFieldCtx;
class DiffScalar;
struct SeriesFraction;
using CtxPtr = std::shared_ptr<const DiffFieldCtx>;

/// First non-vanishing bracket [delta_i, delta_j](g). Indices are 1-based as
/// printed; `generator` is the generator's printed name.
struct CommutationWitness;

/// An element of a differential coefficient field. Immutable; carries its context.
class DiffScalar {
public:
  DiffScalar() = default;
  DiffScalar(CtxPtr ctx, Rational q);
  DiffScalar(CtxPtr ctx, RatFun f);
  DiffScalar(CtxPtr ctx, std::shared_ptr<const SeriesFraction> s);

  const CtxPtr& ctx() const noexcept { return ctx_; }
  bool valid() const noexcept { return ctx_ != nullptr; }
  FieldKind kind() const;

  ZeroTest zero_test() const;
  /// Exact zero test. For tower scalars that are only zero to precision this
  /// throws PrecisionSemanticsRequired unless the context opted in.
  bool is_zero() const;
  bool is_one() const;
  /// Set when the value is a rational constant (any kind).
  std::optional<Rational> as_rational() const;

  const Rational* rational() const { return std::get_if<Rational>(&v_); }
  const RatFun* ratfun() const { return std::get_if<RatFun>(&v_); }
  const SeriesFraction* series() const;

  DiffScalar operator-() const;
  DiffScalar operator+(const DiffScalar& o) const;
  DiffScalar operator-(const DiffScalar& o) const;
  DiffScalar operator*(const DiffScalar& o) const;
  DiffScalar operator/(const DiffScalar& o) const;
  DiffScalar& operator+=(const DiffScalar& o) { return *this = *this + o; }
  DiffScalar& operator-=(const DiffScalar& o) { return *this = *this - o; }
  DiffScalar& operator*=(const DiffScalar& o) { return *this = *this * o; }
  DiffScalar operator*(const Rational& q) const;
  DiffScalar inverse() const;
  DiffScalar pow(long k) const;

  /// delta_i (0-based) of this context.
  DiffScalar derive(std::size_t i) const;

  Comparison compare(const DiffScalar& o) const;
  /// Strict: goes through is_zero() on the difference.
  bool operator==(const DiffScalar& o) const;

  /// Reinterpret in another context over the same field (e.g. a different
  /// derivation family), or lift from a subfield.
  DiffScalar in(const CtxPtr& target) const;

  std::string to_string() const;

private:
  CtxPtr ctx_;
  std::variant<std::monostate, Rational, RatFun, std::shared_ptr<const SeriesFraction>> v_;
};

struct CommutationWitness {
  std::size_t i = 0, j = 0;
  std::string generator;
  DiffScalar value;
};

/// A field with m commuting derivations: Q (all derivations zero), Q(u_1..u_p)
/// with a derivation table, or a truncated Laurent level K((t_1..t_m)) over a
/// base context.
class DiffFieldCtx : public std::enable_shared_from_this<DiffFieldCtx> {
public:
  /// table[j][i] = delta_i(u_{j+1}).
  using Table = std::vector<std::vector<RatFun>>;

  static CtxPtr rationals(std::size_t m);
  /// Throws CommutationError when the table does not define commuting derivations.
  static CtxPtr rational_functions(std::size_t p, std::size_t m, Table table);
  /// delta_i(u_j) = [i == j] (Kronecker table; any p and m).
  static CtxPtr partials(std::size_t p, std::size_t m);
  /// One truncated level over `base`: derivations are base.delta_i applied to
  /// coefficients plus d/dt_i. `names` has one entry per derivation.
  static CtxPtr tower(CtxPtr base, std::vector<std::string> names, unsigned truncation,
                      bool to_precision_semantics = false);

  /// Same field, different (validated) derivations. RationalFunctions only.
  CtxPtr with_derivations(Table table) const;
  /// Copy whose zero-to-precision answers count as zero instead of refusing.
  CtxPtr with_precision_semantics() const;

  FieldKind kind() const noexcept { return kind_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t num_params() const noexcept { return p_; }
  const Table& table() const noexcept { return table_; }
  const CtxPtr& base() const noexcept { return base_; }
  unsigned truncation() const noexcept { return truncation_; }
  const std::vector<std::string>& level_names() const noexcept { return names_; }
  bool exact() const noexcept { return kind_ != FieldKind::SeriesFraction; }
  bool to_precision_semantics() const noexcept { return to_precision_; }
  /// Number of tower levels above the innermost exact field.
  std::size_t depth() const noexcept;

  /// Structural field equality (ignores derivations).
  bool same_field(const DiffFieldCtx& other) const;
  /// True when `sub` is this field or one of the tower bases (structurally).
  bool contains_field(const DiffFieldCtx& sub) const;

  DiffScalar zero() const;
  DiffScalar one() const;
  DiffScalar constant(const Rational& q) const;
  /// u_{j+1}; also reachable through tower levels.
  DiffScalar param(std::size_t j) const;
  /// The level variable t_{k+1} of this tower level.
  DiffScalar level_var(std::size_t k) const;
  /// Looks up a printed generator name (`u3`, or a tower level name).
  std::optional<DiffScalar> generator(const std::string& name) const;
  /// Lift a scalar of a subfield (base level, Q) into this field.
  DiffScalar embed(const DiffScalar& a) const;

  /// delta_i (0-based) of this context applied to a scalar of this field.
  DiffScalar derive(std::size_t i, const DiffScalar& a) const;

  /// Generators the derivations are determined by, with printed names.
  std::vector<std::pair<std::string, DiffScalar>> generators() const;

  std::string describe() const;

  struct Private {};
  explicit DiffFieldCtx(Private) {}

private:
  FieldKind kind_ = FieldKind::Rationals;
  std::size_t m_ = 0;
  std::size_t p_ = 0;
  Table table_;
  Table columns_;  // columns_[i][j] = delta_i(u_{j+1})
  CtxPtr base_;
  unsigned truncation_ = 0;
  std::vector<std::string> names_;
  bool to_precision_ = false;
};

/// Builds Q(u_1..u_p) with delta_i(u_j) = images[j][i]; images must be
/// rational-function scalars in p parameters.
CtxPtr make_rational_fn_field(std::size_t p, std::size_t m,
                              const std::vector<std::vector<DiffScalar>>& images);

/// Checks [delta_i, delta_j](g) = 0 on every generator g (recursively through
/// tower bases). Returns the first violation.
std::optional<CommutationWitness> validate_commutation(const DiffFieldCtx& ctx);

CtxPtr make_tower(CtxPtr base, std::vector<std::string> level_vars, unsigned truncation);

}  // namespace diffkit

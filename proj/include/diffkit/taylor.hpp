#pragma once

#include "diffkit/charset.hpp"
#include "diffkit/series.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace diffkit {

/// A ring homomorphism phi from the differential field A (optionally with
/// differential indeterminates x_1..x_n) into B. It need not commute with the
/// derivations; B's own derivations play the role of Omega.
class PointMap {
public:
  /// With no images set and B over the same field as A, phi is the identity.
  PointMap(CtxPtr source, CtxPtr target);

  /// phi(u_{j+1}) for a rational-function source.
  PointMap& set_param(std::size_t j, const DiffScalar& image);
  /// phi(delta^xi x_i).
  PointMap& set_jet(const RankedVar& v, const DiffScalar& value);
  /// Fallback for jet symbols without an explicit value.
  PointMap& set_jet_rule(std::function<std::optional<DiffScalar>(const RankedVar&)> rule);
  /// Relations the map is promised to respect; checked by `check_relations`.
  PointMap& add_relation(const DiffPoly& r);

  const CtxPtr& source() const noexcept { return source_; }
  const CtxPtr& target() const noexcept { return target_; }

  /// Throws PoleError when a denominator maps to zero and UndefinedGenerator
  /// for a parameter or jet symbol without an image.
  DiffScalar apply(const DiffScalar& a) const;
  DiffScalar apply(const DiffPoly& f) const;
  DiffScalar jet(const RankedVar& v) const;

  /// First supplied relation that does not map to zero.
  std::optional<DiffPoly> check_relations() const;

private:
  CtxPtr source_, target_;
  std::vector<std::optional<DiffScalar>> params_;
  std::map<RankedVar, DiffScalar, VarGreater> jets_;
  std::function<std::optional<DiffScalar>(const RankedVar&)> rule_;
  std::vector<DiffPoly> relations_;
  bool identity_ = false;
};

/// T^phi(a) = sum_alpha phi(delta^alpha a)/alpha! t^alpha, truncated at N.
TruncSeries taylor(const PointMap& phi, const DiffScalar& a, unsigned N);
TruncSeries taylor(const PointMap& phi, const DiffPoly& a, unsigned N);

/// The twisted Taylor morphism: coefficient b_alpha is
/// (1/alpha!) sum_{beta <= alpha} (-1)^{|alpha|-|beta|} binom(alpha, beta) Omega^{alpha-beta} phi(delta^beta a),
/// with Omega the derivations of `omega` (default: phi's target).
TruncSeries twisted_taylor(const PointMap& phi, const DiffScalar& a, unsigned N, const DiffFieldCtx* omega = nullptr);
TruncSeries twisted_taylor(const PointMap& phi, const DiffPoly& a, unsigned N, const DiffFieldCtx* omega = nullptr);

/// T^ev for the family sign*Delta + d/dt: coefficient (1/alpha!) ev((sign*delta + d/dt)^alpha f).
/// Delta is `family` (default: the series context).
TruncSeries taylor_ev(int sign, const TruncSeries& f, const DiffFieldCtx* family = nullptr);

/// Solves an explicit system v_f = g_f from values on the free jet
/// coordinates. `init` must cover exactly the symbols of order <= N that lie
/// above no leader. Returns the twisted Taylor series of x_1..x_n.
std::vector<TruncSeries> series_solve(const CharSet& lambda,
                                      const std::map<RankedVar, DiffScalar, VarGreater>& init, unsigned N);

/// Jet values computed by series_solve (exposed for inspection).
std::map<RankedVar, DiffScalar, VarGreater> solve_jets(const CharSet& lambda,
                                                       const std::map<RankedVar, DiffScalar, VarGreater>& init,
                                                       unsigned N);

/// f evaluated at x_i = solution[i], delta^xi x_i = (Delta + d/dt)^xi solution[i],
/// coefficients embedded as constant series.
TruncSeries substitute_series(const DiffPoly& f, const std::vector<TruncSeries>& solution);

}  // namespace diffkit

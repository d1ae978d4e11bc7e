#include "diffkit/mindex.hpp"

#include "diffkit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace diffkit {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::Commutation: return "CommutationError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::PrecisionSemanticsRequired: return "PrecisionSemanticsRequired";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorKind::NotAutoreduced: return "NotAutoreduced";
    case ErrorKind::OrderExceeded: return "OrderExceeded";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::UndefinedGenerator: return "UndefinedGenerator";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::MissingInitial: return "MissingInitial";
    case ErrorKind::NotExplicit: return "NotExplicit";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WitnessNotOnX: return "WitnessNotOnX";
    case ErrorKind::IntegrabilityError: return "IntegrabilityError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ArityError: return "ArityError";
  }
  return "Error";
}

Integer factorial(unsigned long k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

MultiIndex MultiIndex::unit(std::size_t m, std::size_t k) {
  MultiIndex out(m);
  out.e_.at(k) = 1;
  return out;
}

unsigned MultiIndex::order() const noexcept {
  return std::accumulate(e_.begin(), e_.end(), 0u);
}

bool MultiIndex::is_zero() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](unsigned v) { return v == 0; });
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (size() != other.size()) throw Error(ErrorKind::Usage, "multi-index length mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k)
    if (e_[k] > other.e_[k]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw Error(ErrorKind::Usage, "multi-index length mismatch");
  MultiIndex out(*this);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] += other.e_[k];
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.leq(*this)) throw Error(ErrorKind::Usage, "multi-index subtraction below zero");
  MultiIndex out(*this);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] -= other.e_[k];
  return out;
}

bool GradedLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  return a < b;
}

namespace {

void enumerate_exact(std::size_t m, unsigned total, std::size_t pos, MultiIndex& cur,
                     std::vector<MultiIndex>& out) {
  if (pos + 1 == m) {
    cur[pos] = total;
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  // Ascending lex: the leading entry grows slowest.
  for (unsigned v = 0; v <= total; ++v) {
    cur[pos] = v;
    enumerate_exact(m, total - v, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_up_to(std::size_t m, unsigned r) {
  std::vector<MultiIndex> out;
  if (m == 0) {
    out.emplace_back(0);
    return out;
  }
  MultiIndex cur(m);
  for (unsigned total = 0; total <= r; ++total) enumerate_exact(m, total, 0, cur, out);
  return out;
}

bool RankedVar::is_derivative_of(const RankedVar& base) const {
  return var == base.var && base.index.leq(index);
}

bool RankedVar::is_proper_derivative_of(const RankedVar& base) const {
  return is_derivative_of(base) && !(index == base.index);
}

std::strong_ordering orderly_cmp(const RankedVar& a, const RankedVar& b) {
  if (a.m() != b.m())
    throw Error(ErrorKind::Usage, "ranked variables over different numbers of derivations");
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  if (auto c = a.var <=> b.var; c != 0) return c;
  return a.index <=> b.index;
}

std::vector<RankedVar> gamma_set(unsigned n, unsigned r, std::size_t m) {
  std::vector<RankedVar> out;
  const auto indices = indices_up_to(m, r);
  out.reserve(indices.size() * n);
  // indices_up_to is grouped by order and lex inside each order, so emitting
  // (order, var, lex) keeps the orderly ranking.
  std::size_t begin = 0;
  while (begin < indices.size()) {
    const unsigned ord = indices[begin].order();
    std::size_t end = begin;
    while (end < indices.size() && indices[end].order() == ord) ++end;
    for (unsigned i = 1; i <= n; ++i)
      for (std::size_t k = begin; k < end; ++k) out.emplace_back(indices[k], i);
    begin = end;
  }
  return out;
}

Integer mi_binom(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Usage, "multi-index length mismatch");
  Integer out = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (b[k] > a[k]) return 0;
    out *= binomial(a[k], b[k]);
  }
  return out;
}

Integer mi_factorial(const MultiIndex& a) {
  Integer out = 1;
  for (std::size_t k = 0; k < a.size(); ++k) out *= factorial(a[k]);
  return out;
}

std::string derivative_name(const std::string& base, const MultiIndex& xi) {
  const auto& e = xi.exponents();
  const unsigned ord = xi.order();
  if (ord == 0) return base;
  if (ord == 1) {
    const auto k = std::find(e.begin(), e.end(), 1u) - e.begin();
    return "d" + std::to_string(k + 1) + "(" + base + ")";
  }
  std::string out = "D[";
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(e[k]);
  }
  return out + "](" + base + ")";
}

std::string to_string(const RankedVar& v, char letter) {
  return derivative_name(std::string(1, letter) + std::to_string(v.var), v.index);
}

}  // namespace diffkit

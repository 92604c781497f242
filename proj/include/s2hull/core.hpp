#pragma once

// Domain types shared by every module: the lifted point, extended reals for
// closed perspective fractions, tolerances and the error type.

#include <array>
#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace s2hull {

enum class ErrorCode {
  NegativeDenominator,
  NegativeNumerator,
  InfiniteArithmetic,
  NonFinite,
  NotInAmbientBox,
  InvalidTolerances,
  InfeasibleWitness,
  EmptyFeasibleSet,
  RegionHasNoClosedWitness,
  InputOutsideCtilde,
  DegenerateGradient,
  NotOnBoundary,
  StrictDomainViolated,
  PreconditionViolated,
  UnexpectedRegion,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeDenominator: return "NegativeDenominator";
    case ErrorCode::NegativeNumerator: return "NegativeNumerator";
    case ErrorCode::InfiniteArithmetic: return "InfiniteArithmetic";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotInAmbientBox: return "NotInAmbientBox";
    case ErrorCode::InvalidTolerances: return "InvalidTolerances";
    case ErrorCode::InfeasibleWitness: return "InfeasibleWitness";
    case ErrorCode::EmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorCode::RegionHasNoClosedWitness: return "RegionHasNoClosedWitness";
    case ErrorCode::InputOutsideCtilde: return "InputOutsideCtilde";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::StrictDomainViolated: return "StrictDomainViolated";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnexpectedRegion: return "UnexpectedRegion";
  }
  return "Unknown";
}

class HullError : public std::runtime_error {
 public:
  HullError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Tolerance policy. Strict comparisons `a > b` are evaluated as
/// `a > b + eq`, non-strict `a >= b` as `a >= b - eq`.
struct Tolerances {
  double eq = 1e-9;      ///< equality / boundary band
  double mem = 1e-8;     ///< membership slack
  double oracle = 1e-6;  ///< oracle objective slack

  void validate() const {
    if (!(eq > 0.0) || !(mem > 0.0) || !(oracle > 0.0))
      throw HullError(ErrorCode::InvalidTolerances, "tolerances must be strictly positive");
    if (!(eq <= mem && mem <= oracle))
      throw HullError(ErrorCode::InvalidTolerances, "require eq <= mem <= oracle");
  }
};

/// A real number or +infinity. Produced by the closed fractions only; any
/// arithmetic other than comparison on the infinite value throws.
class ExtReal {
 public:
  constexpr ExtReal(double v = 0.0) : value_(v), infinite_(false) {}  // NOLINT(implicit)

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  double value() const {
    if (infinite_) throw HullError(ErrorCode::InfiniteArithmetic, "value() on +inf");
    return value_;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ + b.value_);
  }

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

  std::string to_string() const {
    if (infinite_) return "+inf";
    return std::to_string(value_);
  }

 private:
  double value_;
  bool infinite_;
};

/// Point (x1, x2, X11, X12, X22, z1, z2) of the lifted space.
struct HullPoint {
  double x1 = 0, x2 = 0;
  double X11 = 0, X12 = 0, X22 = 0;
  double z1 = 0, z2 = 0;

  static constexpr std::size_t kDim = 7;
  static constexpr std::array<std::string_view, kDim> kNames = {"x1",  "x2",  "X11", "X12",
                                                                 "X22", "z1",  "z2"};

  std::array<double, kDim> as_array() const { return {x1, x2, X11, X12, X22, z1, z2}; }

  static HullPoint from_array(const std::array<double, kDim>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
  }

  bool is_finite() const {
    for (double v : as_array())
      if (!std::isfinite(v)) return false;
    return true;
  }

  friend bool operator==(const HullPoint&, const HullPoint&) = default;
};

inline HullPoint lerp(const HullPoint& a, const HullPoint& b, double t) {
  auto va = a.as_array(), vb = b.as_array();
  std::array<double, HullPoint::kDim> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - t) * va[i] + t * vb[i];
  return HullPoint::from_array(out);
}

/// Closed perspective of u^2 / v.
inline ExtReal persp_sq(double u, double v, const Tolerances& tol = {}) {
  if (v < -tol.eq) throw HullError(ErrorCode::NegativeDenominator, "persp_sq: v < 0");
  if (v > 0.0) return ExtReal(u * u / v);
  if (std::abs(u) <= tol.eq) return ExtReal(0.0);
  return ExtReal::infinity();
}

/// Closed perspective of u v / w for u, v >= 0.
inline ExtReal persp_prod(double u, double v, double w, const Tolerances& tol = {}) {
  if (w < -tol.eq) throw HullError(ErrorCode::NegativeDenominator, "persp_prod: w < 0");
  if (u < -tol.eq || v < -tol.eq)
    throw HullError(ErrorCode::NegativeNumerator, "persp_prod: u or v < 0");
  if (w > 0.0) return ExtReal(u * v / w);
  if (std::abs(u * v) <= tol.eq) return ExtReal(0.0);
  return ExtReal::infinity();
}

namespace detail {

struct Band {
  double tol;
  bool gt(double a, double b) const { return a > b + tol; }
  bool ge(double a, double b) const { return a >= b - tol; }
  bool lt(double a, double b) const { return a < b - tol; }
  bool le(double a, double b) const { return a <= b + tol; }
};

inline double sq(double v) { return v * v; }

// `bound` may be +inf, in which case nothing finite clears it.
inline bool at_least(double lhs, const ExtReal& bound, double slack) {
  return bound.is_finite() && lhs >= bound.value() - slack;
}

}  // namespace detail

/// Throws unless every coordinate is finite and inside the ambient box
/// x >= 0, X11, X22, X12 >= 0, z in [0,1]^2 (within the eq band).
inline void validate_domain(const HullPoint& p, const Tolerances& tol = {}) {
  if (!p.is_finite()) throw HullError(ErrorCode::NonFinite, "point has non-finite coordinates");
  const double t = tol.eq;
  if (p.x1 < -t || p.x2 < -t || p.X11 < -t || p.X22 < -t || p.X12 < -t || p.z1 < -t ||
      p.z2 < -t || p.z1 > 1.0 + t || p.z2 > 1.0 + t)
    throw HullError(ErrorCode::NotInAmbientBox, "point outside ambient box");
}

inline bool in_domain(const HullPoint& p, const Tolerances& tol = {}) {
  try {
    validate_domain(p, tol);
    return true;
  } catch (const HullError&) {
    return false;
  }
}

/// Relaxation: perspective inequalities plus X - x x^T PSD on the 2x2 block.
inline bool in_relaxation_Ctilde(const HullPoint& p, const Tolerances& tol = {}) {
  validate_domain(p, tol);
  using detail::sq;
  const double m = tol.mem;
  if (!detail::at_least(p.X11, persp_sq(p.x1, p.z1, tol), m)) return false;
  if (!detail::at_least(p.X22, persp_sq(p.x2, p.z2, tol), m)) return false;
  const double a = p.X11 - sq(p.x1), b = p.X22 - sq(p.x2);
  if (a < -m || b < -m) return false;
  return a * b >= sq(p.X12 - p.x1 * p.x2) - m;
}

/// The simple outer set: perspective inequalities and X12 >= 0.
inline bool in_relaxation_Cbar(const HullPoint& p, const Tolerances& tol = {}) {
  if (!in_domain(p, tol)) return false;
  return detail::at_least(p.X11, persp_sq(p.x1, p.z1, tol), tol.mem) &&
         detail::at_least(p.X22, persp_sq(p.x2, p.z2, tol), tol.mem);
}

}  // namespace s2hull

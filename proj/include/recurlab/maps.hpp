#pragma once

#include <cmath>
#include <string>
#include <string_view>

namespace recurlab {

enum class MapKind { Doubling, ClassicMP, ParamMP };

std::string_view to_string(MapKind kind);
// Accepts the CLI spellings: doubling, classic-mp, param-mp.
MapKind parse_map_kind(std::string_view text);

/// Two-branch interval map with an optional indifferent fixed point at 0.
///
/// Every kind is an instance of one family:
///   T(x) = x + a x^z          on [0, c)
///   T(x) = (x - c) / (1 - c)  on [c, 1)
/// with a = (1 - c) / c^z so that the left branch maps [0, c] onto [0, 1].
/// The doubling map is the member z = 1, c = 1/2 (a = 1); ClassicMP fixes
/// c = 1/2, giving a = 2^(z-1).
///
/// Symbol 1 is the right atom I_1 = [c, 1); it is the reference set A used by
/// the occupation times everywhere in the library.
class MapSpec {
 public:
  static MapSpec doubling();
  static MapSpec classic_mp(double z);
  static MapSpec param_mp(double z, double c);

  MapKind kind() const noexcept { return kind_; }
  double z() const noexcept { return z_; }
  double c() const noexcept { return c_; }
  double a() const noexcept { return a_; }

  // True when z >= 2: the absolutely continuous invariant measure is infinite.
  bool infinite_measure() const noexcept { return kind_ != MapKind::Doubling && z_ >= 2.0; }

  double eval(double x) const;
  double derivative(double x) const;
  int symbol(double x) const;

  // Unchecked variants for inner loops; x must lie in [0, 1).
  int symbol_unchecked(double x) const noexcept { return x < c_ ? 0 : 1; }
  double eval_unchecked(double x) const noexcept {
    return x < c_ ? x + left_increment(x) : right_branch(x);
  }
  double derivative_unchecked(double x) const noexcept {
    return x < c_ ? 1.0 + a_ * z_ * power(x, z_ - 1.0) : 1.0 / (1.0 - c_);
  }
  double left_increment(double x) const noexcept { return a_ * power(x, z_); }

  // x^e, by repeated multiplication for small integral exponents so that the
  // orbit engine and eval() agree bit for bit.
  static double power(double x, double e) noexcept;

  bool operator==(const MapSpec&) const = default;

 private:
  MapSpec(MapKind kind, double z, double c);

  double right_branch(double x) const noexcept;

  MapKind kind_;
  double z_;
  double c_;
  double a_;
};

}  // namespace recurlab

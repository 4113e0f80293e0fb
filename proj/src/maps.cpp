#include "recurlab/maps.hpp"

#include <limits>

#include "recurlab/errors.hpp"

namespace recurlab {

namespace {

constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

void check_unit(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("point " + std::to_string(x) + " is outside [0,1)");
  }
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Doubling:
      return "doubling";
    case MapKind::ClassicMP:
      return "classic-mp";
    case MapKind::ParamMP:
      return "param-mp";
  }
  return "unknown";
}

MapKind parse_map_kind(std::string_view text) {
  if (text == "doubling") return MapKind::Doubling;
  if (text == "classic-mp") return MapKind::ClassicMP;
  if (text == "param-mp") return MapKind::ParamMP;
  throw DomainError("unknown map kind '" + std::string(text) +
                    "' (expected doubling, classic-mp or param-mp)");
}

MapSpec::MapSpec(MapKind kind, double z, double c) : kind_(kind), z_(z), c_(c) {
  if (kind != MapKind::Doubling && !(std::isfinite(z) && z > 1.0)) {
    throw DomainError("exponent z must satisfy z > 1 (got " + std::to_string(z) + ")");
  }
  if (!(c > 0.0 && c < 1.0)) {
    throw DomainError("split point c must lie in (0,1) (got " + std::to_string(c) + ")");
  }
  a_ = (1.0 - c) / power(c, z);
}

MapSpec MapSpec::doubling() { return MapSpec(MapKind::Doubling, 1.0, 0.5); }

MapSpec MapSpec::classic_mp(double z) { return MapSpec(MapKind::ClassicMP, z, 0.5); }

MapSpec MapSpec::param_mp(double z, double c) { return MapSpec(MapKind::ParamMP, z, c); }

double MapSpec::power(double x, double e) noexcept {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 3.0) return x * x * x;
  if (e == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  if (e == 5.0) {
    const double x2 = x * x;
    return x2 * x2 * x;
  }
  return std::pow(x, e);
}

double MapSpec::right_branch(double x) const noexcept {
  const double y = (x - c_) / (1.0 - c_);
  return y < 1.0 ? y : kBelowOne;
}

double MapSpec::eval(double x) const {
  check_unit(x);
  return eval_unchecked(x);
}

double MapSpec::derivative(double x) const {
  check_unit(x);
  return derivative_unchecked(x);
}

int MapSpec::symbol(double x) const {
  check_unit(x);
  return symbol_unchecked(x);
}

}  // namespace recurlab

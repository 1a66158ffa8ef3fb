#ifndef ROBINFLOW_ROBIN_SYMBOL_HPP
#define ROBINFLOW_ROBIN_SYMBOL_HPP

#include <cmath>
#include <map>

namespace robinflow {

// Equivariant Robin data: a real sequence n -> tau_n on the circle modes.
struct RobinSymbol {
  enum class Kind { zero, constant, affine, table };

  Kind kind = Kind::zero;
  double c = 0;                 // constant term
  double a = 0;                 // slope for affine tau_n = a|n| + c
  std::map<int, double> values; // explicit table
  Kind fallback_kind = Kind::zero; // rule for table misses
  double fallback_c = 0;
  double fallback_a = 0;

  double operator()(int n) const {
    switch (kind) {
      case Kind::zero: return 0.0;
      case Kind::constant: return c;
      case Kind::affine: return a * std::abs(n) + c;
      case Kind::table: {
        auto it = values.find(n);
        if (it != values.end()) return it->second;
        if (fallback_kind == Kind::constant) return fallback_c;
        if (fallback_kind == Kind::affine) return fallback_a * std::abs(n) + fallback_c;
        return 0.0;
      }
    }
    return 0.0;
  }

  // growth order t with |tau_n| <= C (1+|n|)^t
  double order() const {
    switch (kind) {
      case Kind::zero: return 0.0;
      case Kind::constant: return 0.0;
      case Kind::affine: return a == 0.0 ? 0.0 : 1.0;
      case Kind::table: {
        double base = (fallback_kind == Kind::affine && fallback_a != 0.0) ? 1.0 : 0.0;
        return base;
      }
    }
    return 0.0;
  }

  static RobinSymbol zero() { return {}; }
  static RobinSymbol constant(double value) {
    RobinSymbol s;
    s.kind = Kind::constant;
    s.c = value;
    return s;
  }
  static RobinSymbol affine(double slope, double value) {
    RobinSymbol s;
    s.kind = Kind::affine;
    s.a = slope;
    s.c = value;
    return s;
  }
  static RobinSymbol table(std::map<int, double> vals) {
    return table(std::move(vals), RobinSymbol{});
  }
  static RobinSymbol table(std::map<int, double> vals, RobinSymbol fallback) {
    RobinSymbol s;
    s.kind = Kind::table;
    s.values = std::move(vals);
    s.fallback_kind = fallback.kind == Kind::table ? Kind::zero : fallback.kind;
    s.fallback_c = fallback.c;
    s.fallback_a = fallback.a;
    return s;
  }

  // tau shifted by t (per-mode constant shift)
  RobinSymbol shifted(double t) const {
    RobinSymbol s = *this;
    if (s.kind == Kind::table) {
      for (auto& [n, v] : s.values) v += t;
      s.fallback_c += t;
    } else if (s.kind == Kind::zero) {
      s = constant(t);
    } else {
      s.c += t;
    }
    return s;
  }
};

} // namespace robinflow

#endif

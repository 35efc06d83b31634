#pragma once

// declarative specification of the closed matrix groups T <= GL_d(Z_ell)
// the artifact works with, plus the canonical textual form used by the cli

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ordscan/bigint.hpp"
#include "ordscan/resmatrix.hpp"

namespace ordscan {

enum class SpecKind {
  GL2Full,
  CartanSplit,
  CartanNonsplit,
  CartanNormalizerSplit,
  CartanNormalizerNonsplit,
  GSp,
  SplitTorusPair,  // scalar 2x2 action of the unit group (xyz = 1 torus pair)
  BigTorusS3,      // (S3 x units) acting on a rank-2 module, ell = 2
  ScalarUnits,     // d = 1
  Generated,
};

struct IntMatrix {
  int d = 2;
  std::array<i64, 16> a{};
  ResidueMatrix reduce(u64 ell, unsigned n) const {
    ResidueMatrix m(d, ell, n);
    for (int i = 0; i < d * d; ++i) {
      i64 v = a[(size_t)i] % (i64)m.mod;
      if (v < 0) v += (i64)m.mod;
      m.a[(size_t)i] = (u64)v;
    }
    return m;
  }
};

struct GroupSpec {
  SpecKind kind = SpecKind::GL2Full;
  u64 ell = 2;
  // cartan nonsplit parameters: x^2 + c x + d irreducible mod ell
  u64 cns_c = 0, cns_d = 0;
  unsigned gsp_g = 2;
  // generated specs: integer matrix generators, stated at base level gen_level
  unsigned gen_level = 1;
  std::vector<IntMatrix> generators;

  int dim() const {
    switch (kind) {
      case SpecKind::ScalarUnits:
        return 1;
      case SpecKind::GSp:
        return (int)(2 * gsp_g);
      case SpecKind::Generated:
        return generators.empty() ? 2 : generators.front().d;
      default:
        return 2;
    }
  }

  // |T_n| for the named specs (closed-form orders)
  Int order_at_level(unsigned n) const;

  std::string to_string() const;
  static GroupSpec parse(const std::string& text, u64 ell);
};

// x^2 + cx + d irreducible over F_ell
bool quadratic_irreducible(u64 c, u64 d, u64 ell);

}  // namespace ordscan

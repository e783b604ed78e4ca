#include "braidwalk/burau.hpp"

namespace braidwalk {

namespace {

Laurent lint(long long c) { return Laurent(Laurent::Int(c)); }
Laurent lmono(long long c, long long e) {
  return Laurent::monomial(Laurent::Int(c), e);
}

}  // namespace

BurauMatrix BurauMatrix::identity() {
  BurauMatrix r;
  r.m[0][0] = lint(1);
  r.m[1][1] = lint(1);
  return r;
}

BurauMatrix operator*(const BurauMatrix& a, const BurauMatrix& b) {
  BurauMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
  return r;
}

BurauMatrix burau(Gen g) {
  BurauMatrix r;
  switch (g) {
    case Gen::A:
      r.m = {{{lmono(-1, 1), lint(1)}, {lint(0), lint(1)}}};
      return r;
    case Gen::AInv:
      r.m = {{{lmono(-1, -1), lmono(1, -1)}, {lint(0), lint(1)}}};
      return r;
    case Gen::B:
      r.m = {{{lint(1), lint(0)}, {lmono(1, 1), lmono(-1, 1)}}};
      return r;
    case Gen::BInv:
      r.m = {{{lint(1), lint(0)}, {lint(1), lmono(-1, -1)}}};
      return r;
  }
  throw DomainError("burau: bad generator");
}

BurauMatrix burau(std::span<const Gen> word) {
  BurauMatrix r = BurauMatrix::identity();
  for (Gen g : word) r = r * burau(g);
  return r;
}

BurauMatrix burau(const GarsideNormalForm& x) {
  if (x.context().k != 3)
    throw DomainError("burau: only defined for the three-strand families");
  BurauMatrix r = BurauMatrix::identity();
  for (Letter l : x.letters()) r = r * burau(l == 0 ? Gen::A : Gen::B);
  const BurauMatrix d =
      burau(Gen::A) * burau(Gen::B) * burau(Gen::A);
  const BurauMatrix dinv =
      burau(Gen::AInv) * burau(Gen::BInv) * burau(Gen::AInv);
  long long e = x.delta_exp();
  for (; e > 0; --e) r = r * d;
  for (; e < 0; ++e) r = r * dinv;
  return r;
}

bool burau_equal_mod_center(const BurauMatrix& a, const BurauMatrix& b) {
  // Find the shift from the first entry that is nonzero in either matrix.
  long long shift = 0;
  bool found = false;
  for (int i = 0; i < 2 && !found; ++i)
    for (int j = 0; j < 2 && !found; ++j) {
      const bool az = a.m[i][j].is_zero();
      const bool bz = b.m[i][j].is_zero();
      if (az != bz) return false;
      if (!az) {
        shift = a.m[i][j].low() - b.m[i][j].low();
        found = true;
      }
    }
  if (!found) return true;
  if (shift % 3 != 0) return false;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(a.m[i][j] == b.m[i][j].shifted(shift))) return false;
  return true;
}

}  // namespace braidwalk

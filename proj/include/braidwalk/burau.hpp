#pragma once

#include <array>
#include <span>

#include "braidwalk/group.hpp"
#include "braidwalk/laurent.hpp"

namespace braidwalk {

// Reduced Burau representation of B3, used as an independent equality
// oracle for the normal-form arithmetic.  It is faithful on B3, and
// faithful modulo the center after identifying matrices that differ by a
// power of t^3 (the image of Delta^2 is t^3 times the identity).
struct BurauMatrix {
  std::array<std::array<Laurent, 2>, 2> m;

  static BurauMatrix identity();
  friend BurauMatrix operator*(const BurauMatrix& a, const BurauMatrix& b);
  friend bool operator==(const BurauMatrix& a, const BurauMatrix& b) = default;
};

BurauMatrix burau(Gen g);
BurauMatrix burau(std::span<const Gen> word);
BurauMatrix burau(const GarsideNormalForm& x);

// Equality in B3 modulo the center: a = b iff burau(a) = t^{3m} burau(b).
bool burau_equal_mod_center(const BurauMatrix& a, const BurauMatrix& b);

}  // namespace braidwalk

#pragma once

#include <optional>
#include <vector>

#include "grassfold/rational.hpp"

namespace grassfold {

// Integer-coefficient polynomial in one variable, low degree first.
struct IntPoly {
    std::vector<Intz> c;

    int degree() const;
    bool operator==(const IntPoly& o) const;
};

IntPoly poly_const(long v);
IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
// Adds s * (-t)^k, the shape every Whitney/Moebius summand takes.
void poly_add_signed_power(IntPoly& p, const Intz& s, int k);

// Writes p as prod(1 + b_i t) with positive integers b_i (sorted ascending),
// if such a factorization exists over Z.
std::optional<std::vector<int>> factor_one_plus_bt(const IntPoly& p);

}  // namespace grassfold

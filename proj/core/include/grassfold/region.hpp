#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "grassfold/rational.hpp"

namespace grassfold {

// Polynomial over Q in n variables; no zero coefficients.
struct PolyQ {
    int n = 0;
    std::map<std::vector<unsigned>, Rat> terms;  // exponent vector -> coefficient

    bool zero() const { return terms.empty(); }
};

PolyQ poly_make(int n, const std::vector<std::pair<std::vector<unsigned>, Rat>>& terms);

struct RegionSpec {
    int n = 0;
    Rat K;  // > 1
    Rat C;  // > 0, certified lower bound for |f| on D_n(K)
};

// The constructive bound: recurse on the leading coefficient in the last
// variable, bound the roots, and push K up until the region clears them.
RegionSpec find_K(const PolyQ& f);

// --- certified exponential bounds -------------------------------------------

struct RatInterval {
    Rat lo, hi;
};

// ln r enclosed to ~2^-prec_bits; requires r > 0.
RatInterval ln_bounds(const Rat& r, long prec_bits);

// value = mant * 2^exp2; exp2 may be astronomically large, which is how the
// doubly-exponential region coordinates stay representable.
struct Dyadic {
    Intz mant;
    Intz exp2;
};

struct DyInterval {
    Dyadic lo, hi;
};

DyInterval exp_bounds(const Rat& t, long prec_bits);  // e^t

Dyadic dyadic_from_rat(const Rat& r, long prec_bits, bool round_up);
Rat dyadic_to_rat(const Dyadic& d);  // throws budget_exhausted when exp2 is huge
int cmp_rat_dyadic(const Rat& r, const Dyadic& d);  // sign of r - d, exact

DyInterval di_add(const DyInterval& a, const DyInterval& b, long prec);
DyInterval di_mul(const DyInterval& a, const DyInterval& b, long prec);
DyInterval di_neg(const DyInterval& a);
DyInterval di_pow(const DyInterval& a, unsigned e, long prec);
DyInterval di_from_rat(const Rat& r, long prec);

// --- region membership -------------------------------------------------------

// Exact decision for rational points: t_1 >= K is an exact comparison and
// each t_j >= K e^{t_{j-1}} is decided with certified bounds refined until
// strict (equality cannot occur for rational data unless t_{j-1} = 0).
bool region_contains(const std::vector<Rat>& pt, const RegionSpec& spec);

// Face compatibility A_i(D^p_q(K)) in D^p_{q-1}(K), checked on sampled
// chain points t_0 = K + u_0, t_j = exp(t_{j-1} + c_j) with c_j a rational
// upper bound of ln K plus a positive offset. Membership and the deletion
// conditions are certified symbolically from e^x >= 1 + x plus exact
// rational comparisons, so the doubly-exponential coordinates never need to
// be materialized.
bool region_face_check(int p, int q, const Rat& K, int samples, uint64_t seed);

struct WitnessReport {
    int samples = 0;
    bool violation = false;      // |f| provably below C at some sample
    bool all_certified = true;   // every sample cleared C with certainty
    Rat min_lower_bound;         // least certified lower bound of |f| seen
};

// Evaluates |f| at pseudo-random region points with interval arithmetic.
WitnessReport region_witness(const PolyQ& f, const RegionSpec& spec, int samples, uint64_t seed);

}  // namespace grassfold

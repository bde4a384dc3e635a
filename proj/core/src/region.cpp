#include "grassfold/region.hpp"

#include <algorithm>

#include "grassfold/errors.hpp"
#include "grassfold/rng.hpp"

namespace grassfold {

PolyQ poly_make(int n, const std::vector<std::pair<std::vector<unsigned>, Rat>>& terms) {
    PolyQ f;
    f.n = n;
    for (const auto& [e, c] : terms) {
        if (int(e.size()) != n) throw malformed_input("exponent vector length mismatch");
        if (c == 0) continue;
        f.terms[e] += c;
        if (f.terms[e] == 0) f.terms.erase(e);
    }
    return f;
}

// --- find_K -------------------------------------------------------------------

namespace {

unsigned total_degree(const std::vector<unsigned>& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

Intz ceil_rat(const Rat& r) {
    Intz q = r.get_num() / r.get_den();
    if (q * r.get_den() < r.get_num()) q += 1;
    return q;
}

Intz isqrt_ceil(const Intz& v) {
    Intz r = sqrt(v);
    if (r * r < v) r += 1;
    return r;
}

// coefficients of f as a polynomial in its last variable
std::vector<PolyQ> last_var_coeffs(const PolyQ& f) {
    unsigned d = 0;
    for (const auto& [e, c] : f.terms) d = std::max(d, e[f.n - 1]);
    std::vector<PolyQ> a(d + 1);
    for (auto& p : a) p.n = f.n - 1;
    for (const auto& [e, c] : f.terms) {
        std::vector<unsigned> r(e.begin(), e.end() - 1);
        a[e[f.n - 1]].terms[r] = c;
    }
    return a;
}

}  // namespace

RegionSpec find_K(const PolyQ& f) {
    if (f.zero()) throw precondition_error("find_K: zero polynomial");
    if (f.n == 0) {
        Rat c = rat_abs(f.terms.begin()->second);
        return RegionSpec{0, Rat(2), c};
    }
    std::vector<PolyQ> a = last_var_coeffs(f);
    int d = int(a.size()) - 1;
    if (d == 0) {
        RegionSpec inner = find_K(a[0]);
        return RegionSpec{f.n, inner.K, inner.C};
    }
    RegionSpec inner = find_K(a[d]);
    Rat kp = inner.K, cp = inner.C;

    // coefficient mass and degrees of the lower coefficients
    Rat mass = 0;
    unsigned l0 = 0;
    for (int j = 0; j < d; ++j) {
        Rat mj = 0;
        for (const auto& [e, c] : a[j].terms) {
            mj += rat_abs(c);
            l0 = std::max(l0, total_degree(e));
        }
        mass = std::max(mass, mj);
    }

    if (f.n == 1) {
        // region is just t_1 >= K; clear the root bound 1 + mass/|a_d| by one
        Rat bound = 1 + mass / cp;
        Rat k = Rat(ceil_rat(bound)) + 1;
        if (k < 2) k = 2;
        if (k < kp) k = kp;
        return RegionSpec{1, k, cp};
    }

    // For x in D_{n-1}(K) we have 1 < K <= t_1 <= ... <= t_{n-1}, so each
    // |a_j(x)| <= mass * t_{n-1}^{l0} and the root bound is
    //   1 + mass/C' * t_{n-1}^{l0}.
    // With e^t > t^{l0+1}/(l0+1)! the choice K^2 >= (l0+1)!(2 + mass/C')
    // gives K e^{t} >= 2 + (mass/C') t^{l0} for all t >= K, hence
    // y - |root| >= 1 on the region.
    Intz fact = 1;
    for (unsigned i = 2; i <= l0 + 1; ++i) fact *= i;
    Rat target = Rat(fact) * (2 + mass / cp);
    Intz k2 = isqrt_ceil(ceil_rat(target));
    Rat k = Rat(k2) + 1;
    if (k < 2) k = 2;
    if (k < kp) k = kp;
    return RegionSpec{f.n, k, cp};
}

// --- dyadic arithmetic ---------------------------------------------------------

namespace {

long bitlen(const Intz& v) {
    if (v == 0) return 0;
    return long(mpz_sizeinbase(v.get_mpz_t(), 2));
}

// directed right-shift: floor for down, ceil for up
Intz shift_right_directed(const Intz& m, long k, bool up) {
    if (k <= 0) return m << (-k);
    Intz q;
    if (up)
        mpz_cdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), (mp_bitcnt_t)k);
    else
        mpz_fdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), (mp_bitcnt_t)k);
    return q;
}

}  // namespace

Dyadic dyadic_from_rat(const Rat& r, long prec_bits, bool round_up) {
    if (r == 0) return Dyadic{0, 0};
    Intz num = r.get_num(), den = r.get_den();
    long shift = prec_bits + bitlen(den) - bitlen(num) + 4;
    Intz scaled;
    if (shift >= 0)
        scaled = num << shift;
    else
        scaled = shift_right_directed(num, -shift, round_up);
    Intz q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    if (round_up && rem != 0) q += 1;
    return Dyadic{q, Intz(-shift)};
}

Rat dyadic_to_rat(const Dyadic& d) {
    if (d.mant == 0) return Rat(0);
    if (d.exp2 > 2000000 || d.exp2 < -2000000)
        throw budget_exhausted("dyadic exponent too large to materialize");
    long e = long(d.exp2.get_si());
    Rat r(d.mant);
    if (e >= 0) {
        Intz p = Intz(1) << e;
        return r * Rat(p);
    }
    Intz p = Intz(1) << (-e);
    return r / Rat(p);
}

int cmp_rat_dyadic(const Rat& r, const Dyadic& d) {
    // sign of r - mant*2^exp2, exact
    if (d.mant == 0) return r > 0 ? 1 : (r < 0 ? -1 : 0);
    int sr = (r > 0) - (r < 0);
    int sd = (d.mant > 0) - (d.mant < 0);
    if (sr != sd) return sr > sd ? 1 : -1;
    // same sign: compare magnitudes via log2 windows first
    Intz lr = bitlen(r.get_num()) - bitlen(r.get_den());  // log2|r| within 1
    Intz ld = d.exp2 + bitlen(d.mant);
    if (lr + 2 < ld) return sd > 0 ? -1 : 1;
    if (ld + 2 < lr) return sd > 0 ? 1 : -1;
    // close: exponent small enough to materialize
    Rat dr = dyadic_to_rat(d);
    int c = cmp(r, dr);
    return c;
}

namespace {

Dyadic dy_round(const Dyadic& d, long prec, bool up) {
    long bl = bitlen(d.mant);
    if (bl <= prec + 8) return d;
    long k = bl - prec;
    Dyadic out;
    out.mant = shift_right_directed(d.mant, k, up);  // floor for down, ceil for up
    out.exp2 = d.exp2 + k;
    return out;
}

Dyadic dy_add(const Dyadic& a, const Dyadic& b, long prec, bool up) {
    if (a.mant == 0) return dy_round(b, prec, up);
    if (b.mant == 0) return dy_round(a, prec, up);
    Intz top_a = a.exp2 + bitlen(a.mant);
    Intz top_b = b.exp2 + bitlen(b.mant);
    Intz top = top_a > top_b ? top_a : top_b;
    Intz target_z = top - (prec + 8);
    auto shifted = [&](const Dyadic& d) -> Intz {
        Intz kz = d.exp2 - target_z;
        if (kz >= 0) {
            long k = long(kz.get_si());
            return d.mant << k;
        }
        Intz neg = -kz;
        if (neg > bitlen(d.mant) + 2) {
            // contributes less than one ulp; keep a directed crumb
            if (d.mant > 0) return up ? Intz(1) : Intz(0);
            return up ? Intz(0) : Intz(-1);
        }
        long k = long(neg.get_si());
        return shift_right_directed(d.mant, k, up);
    };
    Dyadic out;
    out.mant = shifted(a) + shifted(b);
    out.exp2 = target_z;
    return dy_round(out, prec, up);
}

Dyadic dy_mul(const Dyadic& a, const Dyadic& b, long prec, bool up) {
    Dyadic out;
    out.mant = a.mant * b.mant;
    out.exp2 = a.exp2 + b.exp2;
    return dy_round(out, prec, up);
}

int dy_cmp(const Dyadic& a, const Dyadic& b) {
    // sign of a - b, exact
    if (a.mant == 0 && b.mant == 0) return 0;
    int sa = (a.mant > 0) - (a.mant < 0);
    int sb = (b.mant > 0) - (b.mant < 0);
    if (sa != sb) return sa > sb ? 1 : -1;
    Intz la = a.exp2 + bitlen(a.mant);
    Intz lb = b.exp2 + bitlen(b.mant);
    int s = sa != 0 ? sa : sb;
    if (la + 2 < lb) return -s;
    if (lb + 2 < la) return s;
    // align: the gap is bounded by the mantissa sizes now
    Intz gap = a.exp2 - b.exp2;
    if (gap >= 0) {
        long k = long(gap.get_si());
        Intz am = a.mant << k;
        return cmp(am, b.mant) > 0 ? 1 : (cmp(am, b.mant) < 0 ? -1 : 0);
    }
    long k = long(Intz(-gap).get_si());
    Intz bm = b.mant << k;
    return cmp(a.mant, bm) > 0 ? 1 : (cmp(a.mant, bm) < 0 ? -1 : 0);
}

}  // namespace

DyInterval di_from_rat(const Rat& r, long prec) {
    return DyInterval{dyadic_from_rat(r, prec, false), dyadic_from_rat(r, prec, true)};
}

DyInterval di_add(const DyInterval& a, const DyInterval& b, long prec) {
    return DyInterval{dy_add(a.lo, b.lo, prec, false), dy_add(a.hi, b.hi, prec, true)};
}

DyInterval di_neg(const DyInterval& a) {
    return DyInterval{Dyadic{-a.hi.mant, a.hi.exp2}, Dyadic{-a.lo.mant, a.lo.exp2}};
}

DyInterval di_mul(const DyInterval& a, const DyInterval& b, long prec) {
    // four products, take extremes
    Dyadic c[4] = {dy_mul(a.lo, b.lo, prec, false), dy_mul(a.lo, b.hi, prec, false),
                   dy_mul(a.hi, b.lo, prec, false), dy_mul(a.hi, b.hi, prec, false)};
    Dyadic d[4] = {dy_mul(a.lo, b.lo, prec, true), dy_mul(a.lo, b.hi, prec, true),
                   dy_mul(a.hi, b.lo, prec, true), dy_mul(a.hi, b.hi, prec, true)};
    Dyadic lo = c[0], hi = d[0];
    for (int i = 1; i < 4; ++i) {
        if (dy_cmp(c[i], lo) < 0) lo = c[i];
        if (dy_cmp(d[i], hi) > 0) hi = d[i];
    }
    return DyInterval{lo, hi};
}

DyInterval di_pow(const DyInterval& a, unsigned e, long prec) {
    DyInterval r{Dyadic{1, 0}, Dyadic{1, 0}};
    DyInterval base = a;
    while (e) {
        if (e & 1) r = di_mul(r, base, prec);
        base = di_mul(base, base, prec);
        e >>= 1;
    }
    return r;
}

// --- ln and exp ---------------------------------------------------------------

namespace {

// atanh series with explicit rational remainder; |x| < 1/2
RatInterval atanh_bounds(const Rat& x, long prec_bits) {
    Rat x2 = x * x;
    Rat term = x;
    Rat sum = 0;
    Rat eps = Rat(1) / Rat(Intz(1) << prec_bits);
    int k = 0;
    for (;;) {
        sum += term / (2 * k + 1);
        term *= x2;
        ++k;
        Rat rem = term / ((2 * k + 1) * (1 - x2));
        if (rem < eps) {
            return RatInterval{sum, sum + rem};
        }
        if (k > 10000) throw budget_exhausted("atanh series did not converge");
    }
}

RatInterval ln2_bounds(long prec_bits) {
    RatInterval a = atanh_bounds(Rat(1, 3), prec_bits + 2);
    return RatInterval{2 * a.lo, 2 * a.hi};
}

// exp on [0, ~1.4] by exact Taylor with remainder
RatInterval small_exp_bounds(const Rat& u, long prec_bits) {
    if (u < 0) throw precondition_error("small_exp_bounds: negative argument");
    Rat term = 1, sum = 0;
    Rat eps = Rat(1) / Rat(Intz(1) << prec_bits);
    for (int k = 1; k < 4000; ++k) {
        sum += term;
        term = term * u / k;
        // remainder <= term * 1/(1 - u/(k+1)) once k+1 > u
        if (k > 2 && term < eps) {
            Rat rem = term * Rat(k + 1) / (Rat(k + 1) - u);
            return RatInterval{sum, sum + rem};
        }
    }
    throw budget_exhausted("exp series did not converge");
}

}  // namespace

RatInterval ln_bounds(const Rat& r, long prec_bits) {
    if (r <= 0) throw precondition_error("ln_bounds: argument must be positive");
    // normalize r = m * 2^e with m in [1, 2)
    long e = bitlen(r.get_num()) - bitlen(r.get_den()) - 1;
    Rat m = r;
    if (e >= 0)
        m /= Rat(Intz(1) << e);
    else
        m *= Rat(Intz(1) << (-e));
    if (m >= 2) {
        m /= 2;
        e += 1;
    }
    if (m < 1) {
        m *= 2;
        e -= 1;
    }
    Rat x = (m - 1) / (m + 1);
    RatInterval at = atanh_bounds(x, prec_bits + 4);
    RatInterval l2 = ln2_bounds(prec_bits + 4);
    Rat lo = 2 * at.lo, hi = 2 * at.hi;
    if (e >= 0) {
        lo += e * l2.lo;
        hi += e * l2.hi;
    } else {
        lo += e * l2.hi;
        hi += e * l2.lo;
    }
    return RatInterval{lo, hi};
}

DyInterval exp_bounds(const Rat& t, long prec_bits) {
    if (t == 0) return DyInterval{Dyadic{1, 0}, Dyadic{1, 0}};
    if (t < 0) {
        // e^t = 1 / e^{-t}; invert with directed rational endpoints
        DyInterval pos = exp_bounds(-t, prec_bits + 8);
        Rat lo = dyadic_to_rat(pos.lo), hi = dyadic_to_rat(pos.hi);
        return DyInterval{dyadic_from_rat(1 / hi, prec_bits, false),
                          dyadic_from_rat(1 / lo, prec_bits, true)};
    }
    if (t > Rat(Intz(1) << 200)) throw budget_exhausted("exp argument too large");
    // e^t = 2^k * 2^{f}, k = floor(t / ln 2)
    long extra = std::max<long>(16, bitlen(ceil_rat(t)) + 8);
    RatInterval l2 = ln2_bounds(prec_bits + extra);
    Rat s_lo = t / l2.hi, s_hi = t / l2.lo;
    Intz k = s_lo.get_num() / s_lo.get_den();  // floor for positive
    Rat f_lo = s_lo - Rat(k), f_hi = s_hi - Rat(k);
    // 2^f = e^{f ln 2}
    Rat u_lo = f_lo * l2.lo, u_hi = f_hi * l2.hi;
    if (u_lo < 0) u_lo = 0;
    RatInterval g_lo = small_exp_bounds(u_lo, prec_bits + 4);
    RatInterval g_hi = small_exp_bounds(u_hi, prec_bits + 4);
    Dyadic lo = dyadic_from_rat(g_lo.lo, prec_bits, false);
    Dyadic hi = dyadic_from_rat(g_hi.hi, prec_bits, true);
    lo.exp2 += k;
    hi.exp2 += k;
    return DyInterval{lo, hi};
}

// --- region membership ----------------------------------------------------------

bool region_contains(const std::vector<Rat>& pt, const RegionSpec& spec) {
    if (int(pt.size()) != spec.n) throw precondition_error("region_contains: dimension mismatch");
    if (spec.n == 0) return true;
    if (pt[0] < spec.K) return false;
    for (int j = 1; j < spec.n; ++j) {
        const Rat& prev = pt[j - 1];
        if (prev == 0) {
            if (pt[j] < spec.K) return false;
            continue;
        }
        bool decided = false;
        for (long prec = 96; prec <= 4096 && !decided; prec *= 2) {
            DyInterval e = exp_bounds(prev, prec);
            Rat scaled = pt[j] / spec.K;
            if (cmp_rat_dyadic(scaled, e.hi) >= 0) {
                decided = true;  // inside for this coordinate
            } else if (cmp_rat_dyadic(scaled, e.lo) < 0) {
                return false;
            }
        }
        if (!decided)
            throw budget_exhausted("region_contains: could not separate from the boundary");
    }
    return true;
}

bool region_face_check(int p, int q, const Rat& K, int samples, uint64_t seed) {
    if (!(K > 1)) throw precondition_error("region_face_check: K must exceed 1");
    int n = p + q + 1;  // coordinates t_0 .. t_{p+q}
    Rng rng(Rng::mix(seed, "region_face"));
    RatInterval lk = ln_bounds(K, 128);
    Rat lnk_up = lk.hi;  // rational upper bound for ln K

    for (int s = 0; s < samples; ++s) {
        // chain sample: t_0 = K + u_0 and t_j = exp(t_{j-1} + c_j), where
        // c_j = lnk_up + eps_j > ln K. The coordinates are exact reals; all
        // membership and deletion conditions below reduce to rational
        // comparisons through e^x >= 1 + x.
        Rat u0 = Rat(rng.integer(0, 12), 4);
        Rat t0 = K + u0;
        std::vector<Rat> c(n);
        for (int j = 1; j < n; ++j) c[j] = lnk_up + Rat(rng.integer(1, 64), 65536);

        // membership: t_0 >= K, and t_j >= K e^{t_{j-1}} iff c_j >= ln K
        if (t0 < K) return false;
        for (int j = 1; j < n; ++j)
            if (!(c[j] > lk.hi)) return false;

        // deleting coordinate i leaves one new adjacent pair to check
        for (int i = 0; i < n; ++i) {
            if (i == n - 1) continue;  // prefix of a chain is a chain
            if (i == 0) {
                // new first coordinate: t_1 >= 1 + t_0 + c_1 must clear K
                if (!(1 + t0 + c[1] >= K)) return false;
                continue;
            }
            // need t_{i+1} >= K e^{t_{i-1}}. Since c_{i+1} > ln K it
            // suffices that t_i >= t_{i-1}, and t_i >= 1 + t_{i-1} + c_i.
            if (!(1 + c[i] >= 0)) return false;
        }
    }
    return true;
}

// --- witness sampling -------------------------------------------------------------

namespace {

DyInterval eval_poly(const PolyQ& f, const std::vector<DyInterval>& x, long prec) {
    DyInterval acc{Dyadic{0, 0}, Dyadic{0, 0}};
    for (const auto& [e, coef] : f.terms) {
        DyInterval term = di_from_rat(coef, prec);
        for (int v = 0; v < f.n; ++v) {
            if (e[v] == 0) continue;
            term = di_mul(term, di_pow(x[v], e[v], prec), prec);
        }
        acc = di_add(acc, term, prec);
    }
    return acc;
}

}  // namespace

WitnessReport region_witness(const PolyQ& f, const RegionSpec& spec, int samples, uint64_t seed) {
    WitnessReport rep;
    rep.samples = samples;
    bool have_min = false;
    Rng rng(Rng::mix(seed, "region_witness"));
    long prec = 192;
    for (int s = 0; s < samples; ++s) {
        // t_0 = K + u; t_j = K * upper(e^{t_{j-1}}) + u_j. Coordinates are
        // kept as exact rationals while they materialize; the last coordinate
        // may only exist as a dyadic with a huge exponent.
        std::vector<DyInterval> x(spec.n);
        Rat prev = spec.K + Rat(rng.integer(0, 24), 8);
        x.at(0) = di_from_rat(prev, prec);
        bool have_exact = true;
        for (int j = 1; j < spec.n; ++j) {
            Rat uj = Rat(rng.integer(0, 24), 8);
            if (!have_exact)
                throw budget_exhausted("region_witness: coordinates beyond materializable depth");
            DyInterval e = exp_bounds(prev, prec);
            try {
                Rat up = dyadic_to_rat(e.hi);
                prev = spec.K * up + uj;
                x.at(j) = di_from_rat(prev, prec);
            } catch (const budget_exhausted&) {
                have_exact = false;  // fine for the last coordinate
                DyInterval kk = di_from_rat(spec.K, prec);
                x.at(j) = di_add(di_mul(kk, DyInterval{e.hi, e.hi}, prec),
                                 di_from_rat(uj, prec), prec);
            }
        }
        DyInterval val = eval_poly(f, x, prec);
        // |val| interval
        Dyadic alo, ahi;
        if (val.lo.mant >= 0) {
            alo = val.lo;
            ahi = val.hi;
        } else if (val.hi.mant <= 0) {
            alo = Dyadic{-val.hi.mant, val.hi.exp2};
            ahi = Dyadic{-val.lo.mant, val.lo.exp2};
        } else {
            alo = Dyadic{0, 0};
            ahi = (dy_cmp(Dyadic{-val.lo.mant, val.lo.exp2}, val.hi) > 0)
                      ? Dyadic{-val.lo.mant, val.lo.exp2}
                      : val.hi;
        }
        if (cmp_rat_dyadic(spec.C, ahi) > 0) {
            rep.violation = true;  // |f| certainly below C here
        } else if (cmp_rat_dyadic(spec.C, alo) > 0) {
            rep.all_certified = false;  // undecided at this precision
        }
        Rat lower;
        try {
            lower = dyadic_to_rat(alo);
        } catch (const budget_exhausted&) {
            lower = Rat(Intz(1) << 62);  // astronomically large lower bound
        }
        if (!have_min || lower < rep.min_lower_bound) {
            rep.min_lower_bound = lower;
            have_min = true;
        }
    }
    return rep;
}

}  // namespace grassfold

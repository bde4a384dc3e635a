#include "grassfold/poly.hpp"

#include <algorithm>

namespace grassfold {

static void trim(IntPoly& p) {
    while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
}

int IntPoly::degree() const { return int(c.size()) - 1; }

bool IntPoly::operator==(const IntPoly& o) const { return c == o.c; }

IntPoly poly_const(long v) {
    IntPoly p;
    if (v != 0) p.c.push_back(Intz(v));
    return p;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    trim(r);
    return r;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.c.empty() || b.c.empty()) return IntPoly{};
    IntPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Intz(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    trim(r);
    return r;
}

void poly_add_signed_power(IntPoly& p, const Intz& s, int k) {
    if (p.c.size() <= size_t(k)) p.c.resize(k + 1, Intz(0));
    if (k % 2 == 0)
        p.c[k] += s;
    else
        p.c[k] -= s;
    trim(p);
}

// Divides p by (1 + b t) exactly; returns quotient if the remainder is 0.
static std::optional<IntPoly> divide_linear(const IntPoly& p, long b) {
    if (p.c.empty()) return std::nullopt;
    // synthetic division from the top: p = q * (1 + b t) + r
    std::vector<Intz> q(p.c.size() - 1, Intz(0));
    Intz carry = 0;
    for (int i = int(p.c.size()) - 1; i >= 1; --i) {
        Intz num = p.c[i] - carry;
        if (num % b != 0) return std::nullopt;
        q[i - 1] = num / b;
        carry = q[i - 1];
    }
    if (p.c[0] - carry != 0) return std::nullopt;
    IntPoly out{std::move(q)};
    trim(out);
    return out;
}

std::optional<std::vector<int>> factor_one_plus_bt(const IntPoly& p) {
    if (p.c.empty() || p.c[0] != 1) return std::nullopt;
    IntPoly cur = p;
    std::vector<int> bs;
    while (cur.degree() > 0) {
        // candidate b divides the leading coefficient of the remaining factor
        long limit = 0;
        if (cur.c.back() >= 0 && cur.c.back().fits_slong_p()) limit = cur.c.back().get_si();
        if (limit <= 0) return std::nullopt;
        bool found = false;
        for (long b = 1; b <= limit; ++b) {
            if (cur.c.back() % b != 0) continue;
            if (auto q = divide_linear(cur, b)) {
                bs.push_back(int(b));
                cur = *q;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    if (!(cur.c.size() == 1 && cur.c[0] == 1)) return std::nullopt;
    std::sort(bs.begin(), bs.end());
    return bs;
}

}  // namespace grassfold

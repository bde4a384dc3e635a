#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library's computation paths: determinants by
// cofactor expansion, ranks by scanning minors, Poincare polynomials by
// Whitney's subset sum.

#include <vector>

#include "grassfold/arrangement.hpp"
#include "grassfold/rng.hpp"
#include "grassfold/script.hpp"
#include "grassfold/templates.hpp"

namespace gftest {

using namespace grassfold;

// --- fixtures (plane coordinates from the paper's figures) -------------------

inline Configuration figure2_points() {
    return plane_config({{80, 150}, {30, 50}, {130, 50}, {80, 100}, {180, 100}});
}

inline Configuration figure1_points() {
    return plane_config({{80, 150}, {30, 50}, {130, 50}, {80, 100}, {180, 100}, {30, 130}});
}

// the triple point of figure 1: lines x0x2, x1x3, x4x5 meet here
inline ProjPoint figure1_triple_point() {
    return make_point({Rat(1), Rat(290, 3), Rat(350, 3)});
}

inline Configuration figure4_points(bool degenerate) {
    Rat h = degenerate ? Rat(100) : Rat(125);
    return plane_config({{50, 50},
                         {50, 150},
                         {150, 150},
                         {150, 50},
                         {20, h},
                         {180, h},
                         {100, 35},
                         {100, 165}});
}

// figure 4 as base-derived templates over special witnesses;
// left (T1): lines x0x2, x1x3, x6x7 concurrent; right (T2): x4x5 too
inline ScriptedTemplate figure4_template(bool degenerate) {
    return base_template(3, 4, figure4_points(degenerate));
}

inline Configuration figure5_left_points() {
    return plane_config(
        {{50, 50}, {50, 150}, {150, 150}, {150, 50}, {100, 40}, {100, 160}});
}

inline ScriptedTemplate figure5_left_template() {
    Configuration w = figure5_left_points();
    LinearConfiguration h;
    h.ambient = 2;
    h.insert(span_of(w, {0, 2}));
    h.insert(span_of(w, {1, 3}));
    h.insert(span_of(w, {4, 5}));
    return make_raw(3, 2, h, w);
}

inline ScriptedTemplate figure5_right_template() {
    Configuration w = figure5_left_points();
    Configuration w7 = insert_point(w, 6, make_point({Rat(1), Rat(0), Rat(100)}));
    LinearConfiguration h;
    h.ambient = 2;
    h.insert(span_of(w7, {0, 2}));
    h.insert(span_of(w7, {1, 3}));
    h.insert(span_of(w7, {4, 5}));
    for (int j = 0; j < 6; ++j) h.insert(span_of(w7, {j, 6}));
    return make_raw(3, 3, h, w7);
}

// figure 3 (left) = figure 6 (left): the ten derived lines plus the join of
// x4 with the vertex of x0x2 and x1x3
inline ScriptedTemplate figure6_left_template() {
    DerivationScript s;
    ScriptStep step;
    step.base = ElementRef::meet_of({ElementRef::span({0, 2}), ElementRef::span({1, 3})});
    step.points = {4};
    s.steps.push_back(step);
    return make_scripted(3, 1, s, figure2_points());
}

inline ScriptedTemplate figure6_right_template() {
    Configuration w = plane_config({{80, 150}, {30, 50}, {80, 100}, {180, 100}});
    return base_template(3, 0, w);
}

// --- independent oracles -------------------------------------------------------

inline Rat det_cofactor(const ExactMatrix& m) {
    int n = m.rows();
    if (n == 0) return Rat(1);
    if (n == 1) return m.at(0, 0);
    Rat sum = 0;
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        ExactMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Rat term = m.at(0, j) * det_cofactor(minor);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

// rank via nonzero minors, largest size first
inline int rank_minors(const ExactMatrix& m) {
    int maxk = std::min(m.rows(), m.cols());
    for (int k = maxk; k >= 1; --k) {
        std::vector<int> ri(k), ci(k);
        for (int i = 0; i < k; ++i) ri[i] = i;
        bool found = false;
        for (;;) {
            for (int i = 0; i < k; ++i) ci[i] = i;
            for (;;) {
                ExactMatrix sq(k, k);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) sq.at(a, b) = m.at(ri[a], ci[b]);
                if (det_cofactor(sq) != 0) {
                    found = true;
                    break;
                }
                int t = k - 1;
                while (t >= 0 && ci[t] == m.cols() - k + t) --t;
                if (t < 0) break;
                ++ci[t];
                for (int i = t + 1; i < k; ++i) ci[i] = ci[i - 1] + 1;
            }
            if (found) break;
            int t = k - 1;
            while (t >= 0 && ri[t] == m.rows() - k + t) --t;
            if (t < 0) break;
            ++ri[t];
            for (int i = t + 1; i < k; ++i) ri[i] = ri[i - 1] + 1;
        }
        if (found) return k;
    }
    return 0;
}

// Whitney's theorem: pi(t) = sum over subsets S of hyperplanes of
// (-1)^{|S|} (-t)^{codim meet(S)}
inline IntPoly poincare_whitney(const LinearConfiguration& h) {
    std::vector<Subspace> hyps = h.hyperplanes();
    int m = h.ambient;
    IntPoly pi;
    size_t total = size_t(1) << hyps.size();
    for (size_t mask = 0; mask < total; ++mask) {
        Subspace cur = whole_space(m);
        int bits = 0;
        for (size_t i = 0; i < hyps.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            cur = meet(cur, hyps[i]);
            ++bits;
        }
        poly_add_signed_power(pi, Intz(bits % 2 == 0 ? 1 : -1), m - cur.dim());
    }
    return pi;
}

// braid arrangement x_i = x_j in C^n, presented projectively in P^{n-1}
inline LinearConfiguration braid_projective(int n) {
    LinearConfiguration h;
    h.ambient = n - 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // kernel of x_i - x_j: rows = basis of the hyperplane
            ExactMatrix rows(n - 1, n);
            int r = 0;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                if (k == i) {
                    rows.at(r, i) = 1;
                    rows.at(r, j) = 1;
                } else {
                    rows.at(r, k) = 1;
                }
                ++r;
            }
            h.insert(subspace_from_rows(rows));
        }
    return h;
}

inline LinearConfiguration boolean_projective(int n) {
    LinearConfiguration h;
    h.ambient = n - 1;
    for (int i = 0; i < n; ++i) {
        ExactMatrix rows(n - 1, n);
        int r = 0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            rows.at(r++, k) = 1;
        }
        h.insert(subspace_from_rows(rows));
    }
    return h;
}

inline Configuration random_general_position(int p, int n, Rng& rng, long height = 50) {
    for (;;) {
        std::vector<std::vector<Rat>> coords;
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> v(p);
            v[0] = 1;
            for (int i = 1; i < p; ++i) v[i] = rng.rational(height);
            coords.push_back(v);
        }
        Configuration c = config_from_coords(p - 1, coords);
        if (in_general_position(c, p)) return c;
    }
}

inline ExactMatrix random_invertible(int n, Rng& rng, long height = 20) {
    for (;;) {
        ExactMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j) = rng.rational(height);
        if (det(g) != 0) return g;
    }
}

}  // namespace gftest

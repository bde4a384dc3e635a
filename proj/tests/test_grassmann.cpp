#include <doctest.h>

#include "grassfold/errors.hpp"
#include "grassfold/grassmann.hpp"
#include "helpers.hpp"

using namespace grassfold;
using namespace gftest;

namespace {

GrassPoint lift_plane_config(const Configuration& c) {
    ExactMatrix m(3, c.size());
    for (int j = 0; j < c.size(); ++j)
        for (int i = 0; i < 3; ++i) m.at(i, j) = c.points[j].coords[i];
    return GrassPoint{3, c.size() - 4, m};
}

}  // namespace

TEST_CASE("is_generic basics") {
    ExactMatrix rep(2, 4);
    rep.at(0, 0) = 1;
    rep.at(1, 1) = 1;
    rep.at(0, 2) = 1;  // column 2 equals column 0
    rep.at(0, 3) = 1;
    rep.at(1, 3) = 2;
    CHECK(!is_generic(rep, 2));

    CHECK(is_generic(vandermonde(rat_vec({0, 1, 2, 3, 4}), 3), 3));

    ExactMatrix zc(2, 3);
    zc.at(0, 0) = 1;
    zc.at(1, 1) = 1;  // third column all zero
    CHECK(!is_generic(zc, 2));
}

TEST_CASE("normal form fixes the gauge") {
    // already normal: identity + ones + one free column
    ExactMatrix m(2, 4);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    m.at(0, 2) = 1;
    m.at(1, 2) = 1;
    m.at(0, 3) = 1;
    m.at(1, 3) = 3;
    GrassPoint v{2, 1, m};
    CHECK(normal_form(v).m == m);

    // left GL action and column scaling wash out
    ExactMatrix g(2, 2);
    g.at(0, 0) = 2;
    g.at(1, 1) = 1;
    ExactMatrix moved = mat_mul(g, m);
    for (int i = 0; i < 2; ++i) moved.at(i, 2) *= 5;
    CHECK(normal_form(GrassPoint{2, 1, moved}).m == m);
}

TEST_CASE("normal form is invariant under random gauges") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        GrassPoint v = random_generic_point(3, 2, rng, 20, 64);
        GrassPoint nf = normal_form(v);
        ExactMatrix g = random_invertible(3, rng, 6);
        ExactMatrix moved = mat_mul(g, v.m);
        for (int j = 0; j < moved.cols(); ++j) {
            Rat s = rng.nonzero_rational(6);
            for (int i = 0; i < moved.rows(); ++i) moved.at(i, j) *= s;
        }
        CHECK(normal_form(GrassPoint{3, 2, moved}).m == nf.m);
    }
}

TEST_CASE("point_config matches genericity with general position") {
    Rng rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        ExactMatrix m(3, 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) m.at(i, j) = rng.rational(4);
        bool zero_col = false;
        for (int j = 0; j < 6; ++j) {
            bool all = true;
            for (int i = 0; i < 3; ++i)
                if (m.at(i, j) != 0) all = false;
            if (all) zero_col = true;
        }
        if (zero_col) continue;
        GrassPoint v{3, 2, m};
        CHECK(is_generic(m, 3) == in_general_position(point_config(v), 3));
    }
}

TEST_CASE("normal form point config: p=3 q=0 is the standard frame") {
    Rng rng(53);
    GrassPoint v = random_generic_point(3, 0, rng, 10, 64);
    Configuration c = point_config(v);
    CHECK(c.points[0] == make_point({Rat(1), Rat(0), Rat(0)}));
    CHECK(c.points[3] == make_point({Rat(1), Rat(1), Rat(1)}));
}

TEST_CASE("vandermonde section lies on the moment curve and is generic") {
    GrassPoint v = vandermonde_section(rat_vec({0, 1, 2, 3}), 3);
    CHECK(v.q == 0);
    CHECK(is_generic(v.m, 3));
    // moment curve: points (1 : t : t^2) satisfy x0 x2 = x1^2
    Configuration c = point_config(v);
    for (const auto& pt : c.points) {
        Rat lhs = pt.coords[0] * pt.coords[2];
        Rat rhs = pt.coords[1] * pt.coords[1];
        CHECK(lhs == rhs);
    }
    CHECK_THROWS_AS(vandermonde_section(rat_vec({1, 1, 2, 3}), 3), degenerate_input);
}

TEST_CASE("face maps delete points and satisfy the simplicial identity") {
    Rng rng(54);
    for (int trial = 0; trial < 100; ++trial) {
        int p = int(rng.integer(1, 3));
        int q = int(rng.integer(2, 3));  // two deletions need q >= 2
        GrassPoint v = random_generic_point(p, q, rng, 12, 64);
        int n = p + q + 1;
        int i = int(rng.integer(0, n - 2));
        int j = int(rng.integer(i + 1, n - 1));
        GrassPoint a = face_map(face_map(v, j), i);
        GrassPoint b = face_map(face_map(v, i), j - 1);
        CHECK(a.m == b.m);
        CHECK(is_generic(a.m, p));
    }
    GrassPoint v0 = random_generic_point(2, 0, rng, 12, 64);
    CHECK_THROWS_AS(face_map(v0, 0), precondition_error);
}

TEST_CASE("face maps commute with point deletion") {
    Rng rng(55);
    GrassPoint v = random_generic_point(3, 2, rng, 15, 64);
    for (int i = 0; i < 6; ++i) {
        Configuration lhs = point_config(face_map(v, i));
        Configuration rhs = delete_point(point_config(v), i);
        CHECK(lhs.points == rhs.points);
    }
}

TEST_CASE("dual face map on the vandermonde section stays on the curve") {
    // projecting the rational normal curve from one of its points gives the
    // rational normal curve one dimension down: the Y-level data agree
    std::vector<Rat> t = rat_vec({0, 1, 2, 3, 4, 6});
    GrassPoint v = vandermonde_section(t, 3);  // shape (3, 2)
    for (int i : {0, 3, 5}) {
        GrassPoint b = dual_face_map(v, i);
        CHECK(b.p == 2);
        CHECK(b.q == 2);
        std::vector<Rat> td;
        for (int j = 0; j < int(t.size()); ++j)
            if (j != i) td.push_back(t[j]);
        GrassPoint w = normal_form(vandermonde_section(td, 2));
        CHECK(b.m == w.m);
    }
}

TEST_CASE("dual face map commutes with renormalization") {
    Rng rng(56);
    GrassPoint v = random_generic_point(3, 1, rng, 9, 64);
    ExactMatrix g = random_invertible(3, rng, 5);
    GrassPoint moved{3, 1, mat_mul(g, v.m)};
    for (int i = 0; i < 5; ++i) {
        CHECK(dual_face_map(v, i).m == dual_face_map(moved, i).m);
    }
}

TEST_CASE("stratum membership distinguishes the triple point exactly") {
    ScriptedTemplate fig1 = base_template(3, 2, figure1_points());
    GrassPoint special = lift_plane_config(figure1_points());
    CHECK(stratum_member(special, fig1));
    CHECK(closure_member(special, fig1) == Tri::holds);

    Configuration perturbed = plane_config(
        {{80, 150}, {30, 50}, {130, 50}, {80, 100}, {180, 100}, {30, 131}});
    GrassPoint off = lift_plane_config(perturbed);
    CHECK(!stratum_member(off, fig1));
    CHECK(closure_member(off, fig1) == Tri::fails);

    // a generic vandermonde point also misses the closure
    GrassPoint vdm = vandermonde_section(rat_vec({0, 1, 2, 5, 9, 11}), 3);
    CHECK(closure_member(vdm, fig1) == Tri::fails);
}

TEST_CASE("in_constructible_open and intersection as concatenation") {
    ScriptedTemplate fig1 = base_template(3, 2, figure1_points());
    ConstructibleSet empty{3, 2, {}};
    GrassPoint special = lift_plane_config(figure1_points());
    CHECK(in_constructible_open(special, empty));

    ConstructibleSet u{3, 2, {fig1}};
    CHECK(!in_constructible_open(special, u));
    GrassPoint vdm = vandermonde_section(rat_vec({0, 1, 2, 5, 9, 11}), 3);
    CHECK(in_constructible_open(vdm, u));

    // intersection = concatenated exclusion lists, tested extensionally
    ScriptedTemplate gen = base_template(3, 2, point_config(vdm));
    ConstructibleSet u2{3, 2, {fig1, gen}};
    CHECK(in_constructible_open(vdm, u2) ==
          (in_constructible_open(vdm, u) && in_constructible_open(vdm, ConstructibleSet{3, 2, {gen}})));
}

TEST_CASE("prop cont at the grassmannian level") {
    Rng rng(57);
    ScriptedTemplate st = base_template(3, 1, figure2_points());
    int i = 2;
    ScriptedTemplate up = coface_A(st, i, 13);
    for (int trial = 0; trial < 20; ++trial) {
        GrassPoint v = random_generic_point(3, 2, rng, 2048, 64);
        CHECK(stratum_member(v, up) == stratum_member(face_map(v, i), st));
    }
}

TEST_CASE("closure monotonicity under A^i A_i") {
    ScriptedTemplate fig1 = base_template(3, 2, figure1_points());
    for (int i : {0, 2, 5}) {
        ScriptedTemplate comp = coface_A(face_A(fig1, i), i, 17);
        GrassPoint special = lift_plane_config(figure1_points());
        CHECK(stratum_member(special, fig1));
        CHECK(closure_member(special, comp) == Tri::holds);
    }
}

TEST_CASE("vandermonde images avoid the triple-point stratum") {
    Rng rng(58);
    ScriptedTemplate fig1 = base_template(3, 2, figure1_points());
    int fails = 0, total = 0;
    while (total < 50) {
        std::vector<Rat> t;
        while (int(t.size()) < 6) {
            Rat v = rng.rational(40);
            if (std::find(t.begin(), t.end(), v) == t.end()) t.push_back(v);
        }
        GrassPoint v = vandermonde_section(t, 3);
        ++total;
        if (closure_member(v, fig1) == Tri::fails) ++fails;
    }
    CHECK(fails >= 49);
}

TEST_CASE("search_u at p=1 and p=2 verifies end to end") {
    SearchBudget b;
    b.samples = 4;
    UCertificate c1 = search_u(1, b, 1234);
    CHECK(c1.completed);
    VerifyReport r1 = verify_certificate(c1);
    CHECK(r1.ok);

    UCertificate c2 = search_u(2, b, 1234);
    CHECK(c2.completed);
    for (const auto& lv : c2.levels)
        CHECK(lv.excluded.empty());  // arrangements of points in P^1 never degenerate
    VerifyReport r2 = verify_certificate(c2);
    if (!r2.ok)
        for (auto& f : r2.failures) MESSAGE(f);
    CHECK(r2.ok);
}

TEST_CASE("search_u at p=3 excludes triple-point degenerations") {
    SearchBudget b;
    b.max_q = 2;
    b.samples = 4;
    UCertificate c = search_u(3, b, 99);
    REQUIRE(c.completed);
    REQUIRE(c.levels.size() == 3);
    CHECK(c.levels[1].excluded.empty());
    CHECK(c.levels[2].excluded.size() == 3);
    // each excluded template is a triple-point degeneration: some unmarked
    // rank-0 element lies under three rank-1 elements
    for (const auto& ex : c.levels[2].excluded) {
        bool triple = false;
        for (int e = 0; e < ex.tmpl.n_elements; ++e) {
            if (ex.tmpl.rank[e] != 0) continue;
            int covers = 0;
            for (auto& [a, bb] : ex.tmpl.order)
                if (a == e) ++covers;
            if (covers >= 3) triple = true;
        }
        CHECK(triple);
    }
    VerifyReport r = verify_certificate(c);
    if (!r.ok)
        for (auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok);

    // tampering is detected: swap in a point lying on an excluded stratum
    UCertificate bad = c;
    if (!bad.levels[2].member_samples.empty()) {
        bad.levels[2].member_samples[0] = lift_plane_config(c.levels[2].excluded[0].witness);
        CHECK(!verify_certificate(bad).ok);
    }
    // and an edited exponent list is caught
    UCertificate bad2 = c;
    bad2.levels[2].exponents.back() += 1;
    CHECK(!verify_certificate(bad2).ok);
}

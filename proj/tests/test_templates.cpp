#include <doctest.h>

#include "grassfold/errors.hpp"
#include "helpers.hpp"

using namespace grassfold;
using namespace gftest;

namespace {

// random relabeling of a poset; canonical codes must agree
RankedPoset shuffled(const RankedPoset& p, Rng& rng) {
    int n = p.n;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.integer(0, i)]);
    RankedPoset out;
    out.n = n;
    out.rank.resize(n);
    out.leq.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        out.rank[perm[i]] = p.rank[i];
        for (int j = 0; j < n; ++j) out.leq[perm[i]][perm[j]] = p.leq[i][j];
    }
    out.marking.resize(p.marking.size());
    for (size_t j = 0; j < p.marking.size(); ++j) out.marking[j] = perm[p.marking[j]];
    return out;
}

ScriptedTemplate generic_template(int p, int q, uint64_t seed) {
    Rng rng(seed);
    return base_template(p, q, random_general_position(p, p + q + 1, rng));
}

}  // namespace

TEST_CASE("canonical code is invariant under relabeling") {
    Rng rng(41);
    LinearConfiguration h = base_derived(figure1_points());
    RankedPoset p = poset_of(h, figure1_points());
    MarkedTemplate t = canonicalize(p);
    for (int trial = 0; trial < 8; ++trial) {
        RankedPoset s = shuffled(p, rng);
        CHECK(canonicalize(s).code == t.code);
    }
}

TEST_CASE("markings not related by an automorphism give different codes") {
    // one line with two marked points on it, plus a marked point off the line
    Configuration c = plane_config({{0, 0}, {1, 1}, {5, 0}});
    LinearConfiguration h;
    h.ambient = 2;
    h.insert(span_of(c, {0, 1}));
    for (int j = 0; j < 3; ++j) h.insert(subspace_of_point(c.points[j]));
    MarkedTemplate t = template_of(h, c);
    CHECK(t.n_elements == 4);

    // swapping the two on-line marks is an automorphism: same code
    Configuration swapped01;
    swapped01.ambient = 2;
    swapped01.points = {c.points[1], c.points[0], c.points[2]};
    CHECK(template_of(h, swapped01).code == t.code);

    // swapping an on-line mark with the off-line mark is not: new code
    Configuration swapped02;
    swapped02.ambient = 2;
    swapped02.points = {c.points[2], c.points[1], c.points[0]};
    CHECK(template_of(h, swapped02).code != t.code);
}

TEST_CASE("antichain code depends only on the number of points") {
    auto antichain = [](int k, int shift) -> MarkedTemplate {
        RankedPoset p;
        p.n = k;
        p.rank.assign(k, 0);
        p.leq.assign(k, std::vector<bool>(k, false));
        for (int i = 0; i < k; ++i) p.leq[i][i] = true;
        p.marking.resize(k);
        for (int i = 0; i < k; ++i) p.marking[i] = (i + shift) % k;
        return canonicalize(p);
    };
    CHECK(antichain(4, 0).code == antichain(4, 1).code);
    CHECK(antichain(4, 0).code != antichain(5, 0).code);
}

TEST_CASE("projectively equivalent configurations share a template") {
    Rng rng(42);
    Configuration c = figure1_points();
    LinearConfiguration h = base_derived(c);
    std::string code = template_of(h, c).code;
    for (int trial = 0; trial < 5; ++trial) {
        ExactMatrix g = random_invertible(3, rng);
        Configuration tc = apply_transform(g, c);
        CHECK(template_of(base_derived(tc), tc).code == code);
    }
}

TEST_CASE("figure 1 template has an unmarked triple point") {
    Configuration c = figure1_points();
    MarkedTemplate t = template_of(base_derived(c), c);
    // find a rank-0 element with exactly three covers that carries no mark
    bool found = false;
    for (int e = 0; e < t.n_elements; ++e) {
        if (t.rank[e] != 0) continue;
        bool marked = false;
        for (int m : t.marking)
            if (m == e) marked = true;
        if (marked) continue;
        int covers = 0;
        for (auto& [a, b] : t.order)
            if (a == e) ++covers;
        if (covers == 3) found = true;
    }
    CHECK(found);
}

TEST_CASE("scripts replay, degenerate elsewhere, and reject malformed data") {
    // empty script reproduces the base configuration
    Configuration c = figure2_points();
    ReplayResult rr = evaluate_script(DerivationScript{}, c);
    REQUIRE(rr.ok);
    CHECK(rr.config.subspaces == base_derived(c).subspaces);

    // the figure 3 script adds one line on figure 2's points
    ScriptedTemplate fig3 = figure6_left_template();
    ReplayResult r3 = evaluate_script(*fig3.script, c);
    REQUIRE(r3.ok);
    CHECK(r3.config.hyperplanes().size() == 11);

    // the same script degenerates on a configuration without the vertex in
    // the right position: the join of the vertex with x4 stays a line, so
    // instead check a script demanding a triple point
    DerivationScript needs_triple;
    ScriptStep st;
    st.base = ElementRef::meet_of({ElementRef::span({0, 2}), ElementRef::span({1, 3}),
                                   ElementRef::span({4, 5})});
    st.points = {0};
    needs_triple.steps.push_back(st);
    Configuration perturbed = plane_config(
        {{80, 150}, {30, 50}, {130, 50}, {80, 100}, {180, 100}, {30, 131}});
    ReplayResult bad = evaluate_script(needs_triple, perturbed);
    CHECK(!bad.ok);
    ReplayResult good = evaluate_script(needs_triple, figure1_points());
    CHECK(good.ok);

    // malformed: reference to a future step
    DerivationScript malformed;
    ScriptStep bad_step;
    bad_step.base = ElementRef::step(3);
    bad_step.points = {0};
    malformed.steps.push_back(bad_step);
    CHECK_THROWS_AS(evaluate_script(malformed, c), malformed_input);
}

TEST_CASE("realizes: witness yes, perturbed no") {
    ScriptedTemplate fig1 = base_template(3, 2, figure1_points());
    CHECK(realizes(figure1_points(), fig1));
    Configuration perturbed = plane_config(
        {{80, 150}, {30, 50}, {130, 50}, {80, 100}, {180, 100}, {30, 131}});
    CHECK(!realizes(perturbed, fig1));
    // and vice versa: the generic template is not realized by figure 1
    ScriptedTemplate gen = base_template(3, 2, perturbed);
    CHECK(!realizes(figure1_points(), gen));
    CHECK(realizes(perturbed, gen));
}

TEST_CASE("figure 4: both templates realize their witnesses; closures nest") {
    ScriptedTemplate t1 = figure4_template(false);
    ScriptedTemplate t2 = figure4_template(true);
    CHECK(t1.tmpl.code != t2.tmpl.code);
    CHECK(realizes(figure4_points(false), t1));
    CHECK(realizes(figure4_points(true), t2));
    CHECK(!realizes(figure4_points(true), t1));

    // stratum membership implies closure membership
    CHECK(closure_holds(figure4_points(false), t1) == Tri::holds);
    CHECK(closure_holds(figure4_points(true), t2) == Tri::holds);
    // T2 degenerates T1: its points satisfy T1's closed conditions
    CHECK(closure_holds(figure4_points(true), t1) == Tri::holds);
    // but not conversely
    CHECK(closure_holds(figure4_points(false), t2) == Tri::fails);
}

TEST_CASE("closure conditions of the triple-point template") {
    ScriptedTemplate fig1 = base_template(3, 2, figure1_points());
    CHECK(closure_holds(figure1_points(), fig1) == Tri::holds);
    Configuration perturbed = plane_config(
        {{80, 150}, {30, 50}, {130, 50}, {80, 100}, {180, 100}, {30, 131}});
    CHECK(closure_holds(perturbed, fig1) == Tri::fails);
    // generic points satisfy the generic template's closure everywhere
    ScriptedTemplate gen = base_template(3, 2, perturbed);
    CHECK(closure_holds(figure1_points(), gen) == Tri::holds);
}

TEST_CASE("coface A on figure 5 reproduces the paper's seven-marked template") {
    ScriptedTemplate left = figure5_left_template();
    ScriptedTemplate right = figure5_right_template();
    ScriptedTemplate computed = coface_A(left, 6);
    CHECK(computed.p == 3);
    CHECK(computed.q == 3);
    CHECK(computed.tmpl.code == right.tmpl.code);
}

TEST_CASE("face A on figure 6 reproduces the paper's reduced template") {
    ScriptedTemplate left = figure6_left_template();
    ScriptedTemplate right = figure6_right_template();
    ScriptedTemplate computed = face_A(left, 2);
    CHECK(computed.p == 3);
    CHECK(computed.q == 0);
    CHECK(computed.tmpl.code == right.tmpl.code);
}

TEST_CASE("face of a generic template is generic") {
    ScriptedTemplate gen = generic_template(3, 2, 101);
    ScriptedTemplate f = face_A(gen, 3);
    ScriptedTemplate expect = base_template(3, 1, delete_point(gen.witness, 3));
    CHECK(f.tmpl.code == expect.tmpl.code);

    ScriptedTemplate fb = face_B(gen, 1);
    Configuration z = project_from_point(gen.witness, 1);
    ScriptedTemplate expect_b = base_template(2, 2, z);
    CHECK(fb.tmpl.code == expect_b.tmpl.code);
}

TEST_CASE("face_B of figure 2's template from x4 is four distinct marks in P^1") {
    ScriptedTemplate fig2 = base_template(3, 1, figure2_points());
    ScriptedTemplate b = face_B(fig2, 4);
    CHECK(b.p == 2);
    CHECK(b.q == 1);
    // four distinct points of P^1: an antichain of four marked elements
    CHECK(b.tmpl.n_elements == 4);
    for (int r : b.tmpl.rank) CHECK(r == 0);
}

TEST_CASE("section identity A_i(A^i T) = T") {
    std::vector<ScriptedTemplate> regression{
        generic_template(2, 1, 201), generic_template(3, 1, 202),
        generic_template(3, 2, 203), base_template(3, 2, figure1_points()),
        figure6_left_template()};
    for (const auto& st : regression) {
        for (int i : {0, st.marks() / 2, st.marks()}) {
            ScriptedTemplate up = coface_A(st, i, 7);
            ScriptedTemplate back = face_A(up, i);
            CHECK(back.tmpl.code == st.tmpl.code);
        }
    }
}

TEST_CASE("section identity B_i(B^i T) = T") {
    // the dual coface raises p; completions in P^3 blow up combinatorially,
    // so the regression set keeps the lifted shapes small
    std::vector<ScriptedTemplate> regression{generic_template(2, 1, 211),
                                             generic_template(2, 2, 212),
                                             generic_template(3, 0, 213)};
    for (const auto& st : regression) {
        for (int i : {0, st.marks()}) {
            ScriptedTemplate up = coface_B(st, i, 7);
            ScriptedTemplate back = face_B(up, i);
            CHECK(back.tmpl.code == st.tmpl.code);
        }
    }
}

TEST_CASE("strict simplicial identity A_i A_j = A_{j-1} A_i for i < j") {
    Rng rng(44);
    for (int trial = 0; trial < 6; ++trial) {
        ScriptedTemplate st =
            trial % 2 == 0 ? generic_template(3, 2, 300 + trial)
                           : base_template(3, 2, figure1_points());
        int n = st.marks();
        int i = int(rng.integer(0, n - 2));
        int j = int(rng.integer(i + 1, n - 1));
        ScriptedTemplate lhs = face_A(face_A(st, j), i);
        ScriptedTemplate rhs = face_A(face_A(st, i), j - 1);
        CHECK(lhs.tmpl.code == rhs.tmpl.code);
    }
}

TEST_CASE("pullback identity: realization commutes with the coface") {
    Rng rng(45);
    ScriptedTemplate st = base_template(3, 1, figure2_points());
    int i = 3;
    ScriptedTemplate up = coface_A(st, i, 9);
    int hits = 0;
    for (int trial = 0; trial < 25; ++trial) {
        Configuration x = random_general_position(3, 6, rng, 30);
        bool lhs = realizes(x, up);
        bool rhs = realizes(delete_point(x, i), st);
        CHECK(lhs == rhs);
        if (rhs) ++hits;
    }
    // witness-based samples exercise the `true` branch
    for (int trial = 0; trial < 5; ++trial) {
        Configuration x = up.witness;
        CHECK(realizes(delete_point(x, i), st) == realizes(x, up));
        if (realizes(x, up)) ++hits;
    }
    CHECK(hits > 0);
}

TEST_CASE("trivial templates behave under the degenerate shapes") {
    ScriptedTemplate t = trivial_template(2);
    CHECK(t.p == 1);
    CHECK(t.q == 2);
    ScriptedTemplate up = coface_A(t, 0);
    CHECK(up.q == 3);
    ScriptedTemplate down = face_A(up, 0);
    CHECK(down.tmpl.code == t.tmpl.code);
    // B^i from the point line: a generic template one dimension up
    ScriptedTemplate b = coface_B(t, 1, 3);
    CHECK(b.p == 2);
    CHECK(b.q == 2);
    ScriptedTemplate back = face_B(b, 1);
    CHECK(back.tmpl.code == t.tmpl.code);
}

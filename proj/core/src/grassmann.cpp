#include "grassfold/grassmann.hpp"

#include <algorithm>
#include <set>

#include "grassfold/errors.hpp"
#include "grassfold/rng.hpp"

namespace grassfold {

bool is_generic(const ExactMatrix& m, int p) {
    if (m.rows() != p) throw precondition_error("is_generic: row count differs from p");
    int n = m.cols();
    if (n < p) return false;
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    for (;;) {
        ExactMatrix sq(p, p);
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) sq.at(r, c) = m.at(r, idx[c]);
        if (det(sq) == 0) return false;
        int k = p - 1;
        while (k >= 0 && idx[k] == n - p + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < p; ++i) idx[i] = idx[i - 1] + 1;
    }
    return true;
}

GrassPoint normal_form(const GrassPoint& v) {
    int p = v.p, n = v.m.cols();
    if (!is_generic(v.m, p)) throw precondition_error("normal_form: point is not generic");
    // left-multiply by the inverse of the first p columns
    ExactMatrix aug(p, p + n);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) aug.at(i, j) = v.m.at(i, j);
        for (int j = 0; j < n; ++j) aug.at(i, p + j) = v.m.at(i, j);
    }
    RrefResult rr = rref(aug);
    ExactMatrix w(p, n);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < n; ++j) w.at(i, j) = rr.reduced.at(i, p + j);
    // row scaling makes column p all ones; column scaling restores the basis
    for (int i = 0; i < p; ++i) {
        Rat d = w.at(i, p);
        for (int j = 0; j < n; ++j) w.at(i, j) /= d;
    }
    for (int j = 0; j < p; ++j) w.at(j, j) = 1;
    for (int j = p + 1; j < n; ++j) {
        Rat f = w.at(0, j);
        for (int i = 0; i < p; ++i) w.at(i, j) /= f;
    }
    return GrassPoint{v.p, v.q, std::move(w)};
}

Configuration point_config(const GrassPoint& v) {
    Configuration c;
    c.ambient = v.p - 1;
    for (int j = 0; j < v.m.cols(); ++j) {
        std::vector<Rat> col(v.p);
        for (int i = 0; i < v.p; ++i) col[i] = v.m.at(i, j);
        c.points.push_back(make_point(std::move(col)));
    }
    return c;
}

GrassPoint face_map(const GrassPoint& v, int i) {
    if (v.q < 1) throw precondition_error("face_map needs q >= 1");
    if (i < 0 || i >= v.m.cols()) throw precondition_error("face_map: index out of range");
    ExactMatrix m(v.p, v.m.cols() - 1);
    for (int r = 0; r < v.p; ++r) {
        int cc = 0;
        for (int c = 0; c < v.m.cols(); ++c) {
            if (c == i) continue;
            m.at(r, cc++) = v.m.at(r, c);
        }
    }
    return GrassPoint{v.p, v.q - 1, std::move(m)};
}

GrassPoint dual_face_map(const GrassPoint& v, int i) {
    if (v.p < 2) throw precondition_error("dual_face_map needs p >= 2");
    Configuration c = point_config(v);
    Configuration z = project_from_point(c, i);  // throws degenerate_input on coincidence
    ExactMatrix m(v.p - 1, z.size());
    for (int j = 0; j < z.size(); ++j)
        for (int r = 0; r < v.p - 1; ++r) m.at(r, j) = z.points[j].coords[r];
    if (!is_generic(m, v.p - 1)) throw degenerate_input("dual_face_map: projected point not generic");
    return normal_form(GrassPoint{v.p - 1, v.q, std::move(m)});
}

GrassPoint vandermonde_section(const std::vector<Rat>& t, int p) {
    for (size_t a = 0; a < t.size(); ++a)
        for (size_t b = 0; b < a; ++b)
            if (t[a] == t[b]) throw degenerate_input("vandermonde_section: repeated parameter");
    if (int(t.size()) < p) throw precondition_error("vandermonde_section: too few parameters");
    GrassPoint v{p, int(t.size()) - p - 1, vandermonde(t, p)};
    return v;
}

bool stratum_member(const GrassPoint& v, const ScriptedTemplate& st) {
    if (v.p != st.p || v.q != st.q) throw precondition_error("stratum_member: shape mismatch");
    return realizes(point_config(v), st);
}

Tri closure_member(const GrassPoint& v, const ScriptedTemplate& st) {
    if (v.p != st.p || v.q != st.q) throw precondition_error("closure_member: shape mismatch");
    return closure_holds(point_config(v), st);
}

bool in_constructible_open(const GrassPoint& v, const ConstructibleSet& u) {
    if (v.p != u.p || v.q != u.q) throw precondition_error("constructible set: shape mismatch");
    for (const auto& st : u.excluded) {
        Tri r = closure_member(v, st);
        if (r == Tri::indeterminate)
            throw degenerate_input("indeterminate closure evaluation");
        if (r == Tri::holds) return false;
    }
    return true;
}

GrassPoint random_generic_point(int p, int q, Rng& rng, long height, int max_attempts) {
    int n = p + q + 1;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ExactMatrix m(p, n);
        for (int j = 0; j < p && j < n; ++j) m.at(j, j) = 1;
        if (p < n)
            for (int i = 0; i < p; ++i) m.at(i, p) = 1;
        for (int j = p + 1; j < n; ++j) {
            m.at(0, j) = 1;
            for (int i = 1; i < p; ++i) m.at(i, j) = rng.rational(height);
        }
        if (is_generic(m, p)) return GrassPoint{p, q, std::move(m)};
    }
    throw budget_exhausted("random_generic_point: sampling budget exhausted");
}

// --- search ------------------------------------------------------------------

namespace {

std::vector<int> chain_exponents(const std::vector<FiberStage>& chain) {
    std::vector<int> out;
    for (const auto& st : chain)
        if (st.fiber_points > 0) out.push_back(st.fiber_points);
    if (!chain.empty()) {
        int last = int(chain.back().induced.subspaces.size());
        if (last > 0) out.push_back(last);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntPoly exponent_product(const std::vector<int>& bs) {
    IntPoly prod = poly_const(1);
    for (int b : bs) {
        IntPoly f;
        f.c = {Intz(1), Intz(b)};
        prod = poly_mul(prod, f);
    }
    return prod;
}

// Random point on a subspace, avoiding degeneracies via the caller's checks.
ProjPoint random_point_on(const Subspace& s, Rng& rng, long height) {
    int rows = s.basis.rows();
    for (;;) {
        std::vector<Rat> coeff(rows);
        bool nz = false;
        for (auto& c : coeff) {
            c = rng.rational(height);
            if (c != 0) nz = true;
        }
        if (!nz) continue;
        std::vector<Rat> pt(s.basis.cols(), Rat(0));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < s.basis.cols(); ++c) pt[c] += coeff[r] * s.basis.at(r, c);
        bool zero = std::all_of(pt.begin(), pt.end(), [](const Rat& x) { return x == 0; });
        if (!zero) return make_point(std::move(pt));
    }
}

struct FiberProxy {
    GrassPoint base;
    Configuration x;
    FiberCompletionResult completion;
    std::string code;
};

FiberProxy fiber_proxy(int p, int q_base, Rng& rng, const SearchBudget& budget) {
    FiberProxy fp;
    fp.base = random_generic_point(p, q_base, rng, budget.height, budget.max_attempts);
    fp.x = point_config(fp.base);
    LinearConfiguration hw = base_derived(fp.x);
    fp.completion = fiber_type_completion(fp.x, hw, DerivationScript{});
    fp.code = template_of(fp.completion.config, fp.x).code;
    return fp;
}

}  // namespace

UCertificate search_u(int p, const SearchBudget& budget_in, uint64_t seed) {
    if (p < 1) throw precondition_error("search_u: p must be positive");
    SearchBudget budget = budget_in;
    if (budget.max_q < 0) budget.max_q = p;
    UCertificate cert;
    cert.p = p;
    cert.seed = seed;
    cert.budget = budget;

    ULevel level0;
    level0.q = 0;
    level0.trivial = true;
    cert.levels.push_back(level0);

    for (int q = 1; q <= budget.max_q; ++q) {
        ULevel level;
        level.q = q;
        if (p == 1) {
            level.trivial = true;
            cert.levels.push_back(level);
            continue;
        }
        Rng rng(Rng::mix(seed, "level." + std::to_string(q)));

        // generic-point proxy: resample until `agree` consecutive fiber
        // completions share a template code
        std::vector<FiberProxy> agreeing;
        for (int attempt = 0; attempt < budget.max_attempts; ++attempt) {
            FiberProxy fp = fiber_proxy(p, q - 1, rng, budget);
            if (!agreeing.empty() && agreeing.back().code != fp.code) agreeing.clear();
            agreeing.push_back(std::move(fp));
            if (int(agreeing.size()) >= budget.agree) break;
        }
        if (int(agreeing.size()) < budget.agree) {
            cert.completed = false;
            cert.failure_level = q;
            cert.levels.push_back(level);
            break;
        }
        const FiberProxy& proxy = agreeing.back();
        for (const auto& fp : agreeing) level.base_samples.push_back(fp.base);

        level.fiber_template =
            make_scripted(p, q - 1, proxy.completion.script, proxy.x);
        FiberTypeResult ft = is_fiber_type(proxy.completion.config, proxy.x.points);
        if (!ft.ok) throw degenerate_input("fiber-type completion failed verification");
        level.chain = ft.chain;
        level.poincare = poincare_polynomial(proxy.completion.config);
        level.exponents = chain_exponents(ft.chain);
        if (!(exponent_product(level.exponents) == level.poincare))
            throw degenerate_input("chain exponents disagree with the Poincare polynomial");

        // exclusions: the new point incident with a step hyperplane
        ReplayResult rr = evaluate_script(proxy.completion.script, proxy.x);
        DerivationScript shifted = reindex_script_insert(proxy.completion.script, 0, false);
        for (size_t k = 0; k < rr.step_hyperplanes.size(); ++k) {
            const Subspace& hp = rr.step_hyperplanes[k];
            std::string prev_code;
            std::optional<ScriptedTemplate> stable;
            for (int attempt = 0; attempt < budget.max_attempts; ++attempt) {
                ProjPoint pt = random_point_on(hp, rng, budget.height);
                Configuration x2 = insert_point(proxy.x, 0, pt);
                if (!in_general_position(x2, p)) continue;
                ReplayResult r2 = evaluate_script(shifted, x2);
                if (!r2.ok) continue;
                ScriptedTemplate cand;
                cand.p = p;
                cand.q = q;
                cand.script = shifted;
                cand.witness = x2;
                cand.tmpl = template_of(r2.config, x2);
                if (!prev_code.empty() && cand.tmpl.code == prev_code) {
                    stable = cand;
                    break;
                }
                prev_code = cand.tmpl.code;
            }
            if (!stable) {
                cert.completed = false;
                cert.failure_level = q;
                break;
            }
            level.excluded.push_back(*stable);
        }
        if (!cert.completed) {
            cert.levels.push_back(level);
            break;
        }

        // pull back lower-level exclusions through every coface, so the face
        // compatibility A_i(U_q) <= U_{q-1} holds by construction
        for (const auto& lower : cert.levels[q - 1].excluded) {
            for (int i = 0; i <= p + q; ++i) {
                level.excluded.push_back(coface_A(lower, i, Rng::mix(seed, "pullback")));
            }
        }
        std::set<std::string> seen;
        std::vector<ScriptedTemplate> dedup;
        for (auto& st : level.excluded) {
            if (seen.insert(st.tmpl.code).second) dedup.push_back(std::move(st));
        }
        level.excluded = std::move(dedup);

        // sample points of U_q
        ConstructibleSet uq{p, q, level.excluded};
        for (int s = 0; s < budget.samples; ++s) {
            for (int attempt = 0; attempt < budget.max_attempts; ++attempt) {
                GrassPoint v = random_generic_point(p, q, rng, budget.height, budget.max_attempts);
                if (in_constructible_open(v, uq)) {
                    level.member_samples.push_back(v);
                    break;
                }
            }
        }
        cert.levels.push_back(level);
    }

    // face compatibility records
    if (cert.completed && p >= 2) {
        for (int q = 1; q < int(cert.levels.size()); ++q) {
            Rng rng(Rng::mix(seed, "facecheck." + std::to_string(q)));
            ConstructibleSet uq{p, q, cert.levels[q].excluded};
            ConstructibleSet ulo{p, q - 1, cert.levels[q - 1].excluded};
            for (int i = 0; i <= p + q; ++i) {
                for (int s = 0; s < std::max(1, budget.samples / 4); ++s) {
                    GrassPoint v =
                        random_generic_point(p, q, rng, budget.height, budget.max_attempts);
                    if (!in_constructible_open(v, uq)) continue;
                    GrassPoint w = face_map(v, i);
                    if (!in_constructible_open(w, ulo))
                        throw degenerate_input("face compatibility violated by a sample");
                    cert.face_checks.push_back(FaceCheckRecord{q, i, v});
                }
            }
        }
    }
    return cert;
}

VerifyReport verify_certificate(const UCertificate& cert) {
    VerifyReport rep;
    int p = cert.p;
    if (int(cert.levels.size()) == 0) {
        rep.fail("certificate has no levels");
        return rep;
    }
    for (int q = 0; q < int(cert.levels.size()); ++q) {
        const ULevel& level = cert.levels[q];
        std::string tag = "level " + std::to_string(q) + ": ";
        if (level.q != q) rep.fail(tag + "level index mismatch");
        if (level.trivial) continue;
        if (q == 0) continue;

        if (!level.fiber_template) {
            if (cert.completed) rep.fail(tag + "missing fiber template");
            continue;
        }
        const ScriptedTemplate& ft = *level.fiber_template;
        if (!ft.scripted()) {
            rep.fail(tag + "fiber template has no script");
            continue;
        }
        if (!realizes(ft.witness, ft)) rep.fail(tag + "fiber witness fails to realize");
        LinearConfiguration hft = realized_config(ft);
        if (!replay_fiber_chain(hft, level.chain)) rep.fail(tag + "fiber chain does not replay");
        if (!(poincare_polynomial(hft) == level.poincare))
            rep.fail(tag + "stored Poincare polynomial mismatch");
        std::vector<int> expo = level.exponents;
        std::sort(expo.begin(), expo.end());
        IntPoly prod = poly_const(1);
        for (int b : expo) {
            IntPoly f;
            f.c = {Intz(1), Intz(b)};
            prod = poly_mul(prod, f);
        }
        if (!(prod == level.poincare)) rep.fail(tag + "exponents do not factor the polynomial");

        for (size_t s = 0; s < level.base_samples.size(); ++s) {
            const GrassPoint& b = level.base_samples[s];
            if (b.p != p || b.q != q - 1) {
                rep.fail(tag + "base sample shape mismatch");
                continue;
            }
            Configuration x = point_config(b);
            try {
                LinearConfiguration hw = base_derived(x);
                FiberCompletionResult fc = fiber_type_completion(x, hw, DerivationScript{});
                if (template_of(fc.config, x).code != ft.tmpl.code)
                    rep.fail(tag + "base sample " + std::to_string(s) +
                             " has different fiber combinatorics");
            } catch (const std::exception& e) {
                rep.fail(tag + "base sample " + std::to_string(s) + ": " + e.what());
            }
        }
        for (size_t k = 0; k < level.excluded.size(); ++k) {
            const ScriptedTemplate& ex = level.excluded[k];
            if (ex.p != p || ex.q != q) {
                rep.fail(tag + "excluded template shape mismatch");
                continue;
            }
            if (ex.scripted() && !realizes(ex.witness, ex))
                rep.fail(tag + "excluded template " + std::to_string(k) +
                         " witness fails to realize");
        }
        ConstructibleSet uq{p, q, level.excluded};
        for (size_t s = 0; s < level.member_samples.size(); ++s) {
            try {
                if (!in_constructible_open(level.member_samples[s], uq))
                    rep.fail(tag + "member sample " + std::to_string(s) + " not in the open set");
            } catch (const std::exception& e) {
                rep.fail(tag + "member sample " + std::to_string(s) + ": " + e.what());
            }
        }
    }
    for (size_t r = 0; r < cert.face_checks.size(); ++r) {
        const FaceCheckRecord& fc = cert.face_checks[r];
        std::string tag = "face check " + std::to_string(r) + ": ";
        if (fc.q < 1 || fc.q >= int(cert.levels.size())) {
            rep.fail(tag + "bad level");
            continue;
        }
        ConstructibleSet uq{p, fc.q, cert.levels[fc.q].excluded};
        ConstructibleSet ulo{p, fc.q - 1, cert.levels[fc.q - 1].excluded};
        try {
            if (!in_constructible_open(fc.sample, uq)) rep.fail(tag + "sample not in U_q");
            GrassPoint w = face_map(fc.sample, fc.i);
            if (!in_constructible_open(w, ulo)) rep.fail(tag + "face image leaves U_{q-1}");
        } catch (const std::exception& e) {
            rep.fail(tag + e.what());
        }
    }
    return rep;
}

}  // namespace grassfold

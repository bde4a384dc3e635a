#include "grassfold/templates.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

#include "grassfold/errors.hpp"
#include "grassfold/rng.hpp"

namespace grassfold {

RankedPoset poset_of(const LinearConfiguration& h, const Configuration& marking) {
    IntersectionPoset ip = intersection_poset(h);
    RankedPoset rp;
    rp.n = int(ip.elements.size());
    rp.rank = ip.rank;
    rp.leq = ip.leq;
    rp.marking.resize(marking.size());
    for (int j = 0; j < marking.size(); ++j) {
        int idx = ip.index_of(subspace_of_point(marking.points[j]));
        if (idx < 0)
            throw precondition_error("marked point " + std::to_string(j) +
                                     " is not an element of the configuration");
        rp.marking[j] = idx;
    }
    return rp;
}

MarkedTemplate template_of(const LinearConfiguration& h, const Configuration& marking) {
    return canonicalize(poset_of(h, marking));
}

ScriptedTemplate make_scripted(int p, int q, const DerivationScript& script,
                               const Configuration& witness) {
    if (witness.ambient != p - 1 || witness.size() != p + q + 1)
        throw precondition_error("witness does not match shape");
    ReplayResult rr = evaluate_script(script, witness);
    if (!rr.ok) throw degenerate_input("script does not replay on the witness: " + rr.diagnostic);
    ScriptedTemplate st;
    st.p = p;
    st.q = q;
    st.script = script;
    st.witness = witness;
    st.tmpl = template_of(rr.config, witness);
    return st;
}

ScriptedTemplate make_raw(int p, int q, const LinearConfiguration& config,
                          const Configuration& witness) {
    if (witness.ambient != p - 1 || witness.size() != p + q + 1)
        throw precondition_error("witness does not match shape");
    LinearConfiguration h = config;
    for (const auto& pt : witness.points) h.insert(subspace_of_point(pt));
    h = complete(h);
    ScriptedTemplate st;
    st.p = p;
    st.q = q;
    st.witness = witness;
    st.raw_config = h;
    st.tmpl = template_of(h, witness);
    return st;
}

LinearConfiguration realized_config(const ScriptedTemplate& st) {
    if (!st.scripted()) return *st.raw_config;
    ReplayResult rr = evaluate_script(*st.script, st.witness);
    if (!rr.ok) throw precondition_error("stored witness no longer replays");
    return rr.config;
}

bool realizes(const Configuration& x, const ScriptedTemplate& st) {
    if (!st.scripted()) throw precondition_error("realizes needs a scripted template");
    if (x.ambient != st.p - 1 || x.size() != st.marks())
        throw precondition_error("realizes: shape mismatch");
    if (!in_general_position(x, st.p)) return false;
    ReplayResult rr = evaluate_script(*st.script, x);
    if (!rr.ok) return false;
    return template_of(rr.config, x).code == st.tmpl.code;
}

ScriptedTemplate trivial_template(int q) {
    Configuration w;
    w.ambient = 0;
    for (int j = 0; j < q + 2; ++j) w.points.push_back(make_point({Rat(1)}));
    LinearConfiguration h;
    h.ambient = 0;
    h.insert(subspace_of_point(w.points[0]));
    return make_raw(1, q, h, w);
}

ScriptedTemplate base_template(int p, int q, const Configuration& witness) {
    return make_scripted(p, q, DerivationScript{}, witness);
}

// --- generated subposet (Def. of the face operator) -------------------------

namespace {

using Bits = std::vector<uint64_t>;

Bits make_bits(int n) { return Bits((n + 63) / 64, 0); }
void bit_set(Bits& b, int i) { b[i / 64] |= (uint64_t(1) << (i % 64)); }
bool bit_get(const Bits& b, int i) { return (b[i / 64] >> (i % 64)) & 1; }
Bits bit_and(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}
bool bits_empty(const Bits& b) {
    for (uint64_t w : b)
        if (w) return false;
    return true;
}
std::vector<int> bits_list(const Bits& b) {
    std::vector<int> out;
    for (size_t w = 0; w < b.size(); ++w)
        for (int k = 0; k < 64; ++k)
            if ((b[w] >> k) & 1) out.push_back(int(w) * 64 + k);
    return out;
}

struct PosetBits {
    int n;
    std::vector<Bits> up, down;  // up[i]: everything >= i; down[i]: everything <= i

    explicit PosetBits(const RankedPoset& p) : n(p.n) {
        up.assign(n, make_bits(n));
        down.assign(n, make_bits(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (p.leq[i][j]) {
                    bit_set(up[i], j);
                    bit_set(down[j], i);
                }
    }

    int unique_minimal(const Bits& set) const {
        int found = -1;
        for (int u : bits_list(set)) {
            Bits below = bit_and(set, down[u]);
            std::vector<int> l = bits_list(below);
            if (l.size() == 1 && l[0] == u) {
                if (found >= 0) return -1;
                found = u;
            }
        }
        return found;
    }

    int unique_maximal(const Bits& set) const {
        int found = -1;
        for (int u : bits_list(set)) {
            Bits above = bit_and(set, up[u]);
            std::vector<int> l = bits_list(above);
            if (l.size() == 1 && l[0] == u) {
                if (found >= 0) return -1;
                found = u;
            }
        }
        return found;
    }
};

// Smallest subset containing the kept marks, closed under least upper
// bounds with marked subsets and under greatest lower bounds.
std::vector<int> generated_subposet(const RankedPoset& p, const std::vector<int>& keep_marks) {
    PosetBits pb(p);
    int n = p.n;
    std::vector<bool> in_q(n, false);
    std::vector<int> seeds;
    for (int j : keep_marks) seeds.push_back(p.marking[j]);
    for (int s : seeds) in_q[s] = true;

    // up-set intersections of every nonempty subset of seed marks
    int k = int(seeds.size());
    std::vector<Bits> upS;
    upS.reserve(size_t(1) << k);
    upS.push_back(make_bits(n));  // placeholder for the empty mask
    for (uint32_t mask = 1; mask < (uint32_t(1) << k); ++mask) {
        Bits b;
        bool first = true;
        for (int t = 0; t < k; ++t) {
            if (!(mask >> t & 1)) continue;
            b = first ? pb.up[seeds[t]] : bit_and(b, pb.up[seeds[t]]);
            first = false;
        }
        upS.push_back(std::move(b));
    }

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (in_q[i]) members.push_back(i);
        for (uint32_t mask = 1; mask < (uint32_t(1) << k); ++mask) {
            const Bits& base = upS[mask];
            if (bits_empty(base)) continue;
            int u = pb.unique_minimal(base);
            if (u >= 0 && !in_q[u]) {
                in_q[u] = true;
                changed = true;
            }
            for (int v : members) {
                Bits cand = bit_and(base, pb.up[v]);
                if (bits_empty(cand)) continue;
                int w = pb.unique_minimal(cand);
                if (w >= 0 && !in_q[w]) {
                    in_q[w] = true;
                    changed = true;
                }
            }
        }
        for (size_t a = 0; a < members.size(); ++a)
            for (size_t b = 0; b < a; ++b) {
                Bits cand = bit_and(pb.down[members[a]], pb.down[members[b]]);
                if (bits_empty(cand)) continue;
                int g = pb.unique_maximal(cand);
                if (g >= 0 && !in_q[g]) {
                    in_q[g] = true;
                    changed = true;
                }
            }
    }
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (in_q[i]) out.push_back(i);
    return out;
}

ProjPoint random_point(Rng& rng, int ambient, long height) {
    std::vector<Rat> c(ambient + 1);
    for (;;) {
        bool nonzero = false;
        for (auto& v : c) {
            v = rng.rational(height);
            if (v != 0) nonzero = true;
        }
        if (nonzero) return make_point(c);
    }
}

}  // namespace

// --- operators ---------------------------------------------------------------

ScriptedTemplate face_A(const ScriptedTemplate& st, int i) {
    if (st.q < 1) throw precondition_error("face_A needs q >= 1");
    if (i < 0 || i >= st.marks()) throw precondition_error("face index out of range");
    if (st.p == 1) return trivial_template(st.q - 1);

    LinearConfiguration hw = realized_config(st);
    RankedPoset rp = poset_of(hw, st.witness);
    IntersectionPoset ip = intersection_poset(hw);

    std::vector<int> keep;
    for (int j = 0; j < st.marks(); ++j)
        if (j != i) keep.push_back(j);
    std::vector<int> q_idx = generated_subposet(rp, keep);

    LinearConfiguration sub;
    sub.ambient = hw.ambient;
    for (int e : q_idx) sub.insert(ip.elements[e]);
    Configuration y = delete_point(st.witness, i);

    auto script = derive_script(y, sub);
    if (script) return make_scripted(st.p, st.q - 1, *script, y);
    ScriptedTemplate out;
    out.p = st.p;
    out.q = st.q - 1;
    out.witness = y;
    out.raw_config = sub;
    out.tmpl = template_of(sub, y);
    return out;
}

ScriptedTemplate face_B(const ScriptedTemplate& st, int i) {
    if (st.p < 2) throw precondition_error("face_B needs p >= 2");
    if (i < 0 || i >= st.marks()) throw precondition_error("face index out of range");
    if (st.p == 2) return trivial_template(st.q);

    LinearConfiguration hw = realized_config(st);
    const ProjPoint& center = st.witness.points[i];
    for (int j = 0; j < st.witness.size(); ++j)
        if (j != i && st.witness.points[j] == center)
            throw degenerate_input("face_B: witness degenerate for projection");
    PointProjection pr = make_projection(center);
    LinearConfiguration induced;
    induced.ambient = hw.ambient - 1;
    for (const auto& s : hw.subspaces) {
        if (s.dim() < 1 || !contains_point(s, center)) continue;
        induced.insert(project_subspace(pr, s));
    }
    Configuration z = project_from_point(st.witness, i);

    auto script = derive_script(z, induced);
    if (script) return make_scripted(st.p - 1, st.q, *script, z);
    ScriptedTemplate out;
    out.p = st.p - 1;
    out.q = st.q;
    out.witness = z;
    out.raw_config = induced;
    out.tmpl = template_of(induced, z);
    return out;
}

ScriptedTemplate coface_A(const ScriptedTemplate& st, int i, uint64_t seed) {
    if (i < 0 || i > st.marks()) throw precondition_error("coface index out of range");
    if (st.p == 1) return trivial_template(st.q + 1);
    int amb = st.p - 1;
    Rng rng(Rng::mix(seed, "cofaceA." + std::to_string(i) + "." + st.tmpl.code));

    std::optional<DerivationScript> script2;
    LinearConfiguration hw;
    RankedPoset rp;
    IntersectionPoset ip;
    if (st.scripted()) {
        script2 = reindex_script_insert(*st.script, i, false);
    } else {
        hw = *st.raw_config;
        rp = poset_of(hw, st.witness);
        ip = intersection_poset(hw);
    }

    std::string prev_code;
    for (int trial = 0; trial < 32; ++trial) {
        ProjPoint pt = random_point(rng, amb, 40 + 10 * trial);
        Configuration x2 = insert_point(st.witness, i, pt);
        if (!in_general_position(x2, st.p)) continue;
        ScriptedTemplate cand;
        if (st.scripted()) {
            ReplayResult rr = evaluate_script(*script2, x2);
            if (!rr.ok) continue;
            cand.p = st.p;
            cand.q = st.q + 1;
            cand.script = script2;
            cand.witness = x2;
            cand.tmpl = template_of(rr.config, x2);
        } else {
            // poset rule: new mark plus joins of marked least upper bounds
            LinearConfiguration h2 = hw;
            Subspace np = subspace_of_point(pt);
            h2.insert(np);
            int nm = st.marks();
            for (uint32_t mask = 1; mask < (uint32_t(1) << nm); ++mask) {
                std::vector<int> els;
                for (int t = 0; t < nm; ++t)
                    if (mask >> t & 1) els.push_back(rp.marking[t]);
                int u = poset_lub(rp, els);
                if (u < 0) continue;
                Subspace j = join(ip.elements[u], np);
                if (j.dim() == amb - 1) h2.insert(j);
            }
            h2 = complete(h2);
            cand.p = st.p;
            cand.q = st.q + 1;
            cand.witness = x2;
            cand.raw_config = h2;
            cand.tmpl = template_of(h2, x2);
        }
        if (!prev_code.empty() && cand.tmpl.code == prev_code) return cand;
        prev_code = cand.tmpl.code;
    }
    throw degenerate_input("coface_A: no stable generic extension found");
}

ScriptedTemplate coface_B(const ScriptedTemplate& st, int i, uint64_t seed) {
    if (i < 0 || i > st.marks()) throw precondition_error("coface index out of range");
    int amb = st.p;  // new ambient dimension
    Rng rng(Rng::mix(seed, "cofaceB." + std::to_string(i) + "." + st.tmpl.code));

    auto embed = [&](const ProjPoint& p) {
        std::vector<Rat> c = p.coords;
        c.push_back(Rat(0));
        return make_point(std::move(c));
    };
    auto embed_sub = [&](const Subspace& s) {
        ExactMatrix m(s.basis.rows(), s.basis.cols() + 1);
        for (int r = 0; r < s.basis.rows(); ++r)
            for (int c = 0; c < s.basis.cols(); ++c) m.at(r, c) = s.basis.at(r, c);
        return subspace_from_rows(m);
    };

    std::optional<DerivationScript> script2;
    LinearConfiguration hw;
    if (st.scripted()) {
        script2 = reindex_script_insert(*st.script, i, true);
    } else {
        hw = *st.raw_config;
    }

    std::string prev_code;
    for (int trial = 0; trial < 32; ++trial) {
        long h = 30 + 10 * trial;
        std::vector<Rat> cc(amb + 1);
        for (int t = 0; t < amb; ++t) cc[t] = rng.rational(h);
        cc[amb] = 1;
        ProjPoint center = make_point(cc);
        Configuration x2;
        x2.ambient = amb;
        std::vector<ProjPoint> lifts;
        for (const auto& pt : st.witness.points) {
            Rat lam = rng.nonzero_rational(h);
            std::vector<Rat> v = embed(pt).coords;
            for (int t = 0; t <= amb; ++t) v[t] += lam * center.coords[t];
            lifts.push_back(make_point(std::move(v)));
        }
        for (int j = 0; j < int(lifts.size()); ++j) {
            if (j == i) x2.points.push_back(center);
            x2.points.push_back(lifts[j]);
        }
        if (i == int(lifts.size())) x2.points.push_back(center);
        if (!in_general_position(x2, st.p + 1)) continue;

        ScriptedTemplate cand;
        if (script2) {
            ReplayResult rr = evaluate_script(*script2, x2);
            if (!rr.ok) continue;
            cand.p = st.p + 1;
            cand.q = st.q;
            cand.script = script2;
            cand.witness = x2;
            cand.tmpl = template_of(rr.config, x2);
        } else {
            // cones of every element of the witness configuration
            LinearConfiguration h2;
            h2.ambient = amb;
            Subspace cs = subspace_of_point(center);
            for (const auto& s : hw.subspaces) {
                Subspace cone = join(embed_sub(s), cs);
                if (cone.dim() <= amb - 1) h2.insert(cone);
            }
            for (const auto& pt : x2.points) h2.insert(subspace_of_point(pt));
            h2 = complete(h2);
            cand.p = st.p + 1;
            cand.q = st.q;
            cand.witness = x2;
            cand.raw_config = h2;
            cand.tmpl = template_of(h2, x2);
        }
        if (!prev_code.empty() && cand.tmpl.code == prev_code) return cand;
        prev_code = cand.tmpl.code;
    }
    throw degenerate_input("coface_B: no stable generic lift found");
}

// --- closure conditions ------------------------------------------------------

namespace {

struct Expr {
    enum class K { span, join, meet };
    K k = K::span;
    std::vector<int> marks;  // span: points; join: the adjoined X
    std::vector<int> args;   // join: single base; meet: operands
    int wdim = -2;
};

struct Conditions {
    std::vector<Expr> pool;
    std::vector<std::pair<int, int>> on;  // (mark index, expr id): point lies on element
    bool valid = true;
};

int expr_span(Conditions& c, std::vector<int> marks, int wdim) {
    Expr e;
    e.k = Expr::K::span;
    std::sort(marks.begin(), marks.end());
    e.marks = std::move(marks);
    e.wdim = wdim;
    c.pool.push_back(std::move(e));
    return int(c.pool.size()) - 1;
}

Conditions build_conditions(const ScriptedTemplate& st) {
    Conditions cond;
    const Configuration& w = st.witness;
    LinearConfiguration config;
    std::vector<Subspace> step_hyps;
    std::vector<int> step_exprs;

    if (st.scripted()) {
        ReplayResult rr = evaluate_script(*st.script, w);
        if (!rr.ok) {
            cond.valid = false;
            return cond;
        }
        config = rr.config;
        step_hyps = rr.step_hyperplanes;
        // expressions for the steps, in order
        std::function<int(const ElementRef&)> of_ref = [&](const ElementRef& r) -> int {
            switch (r.kind) {
                case ElementRef::Kind::span:
                    return expr_span(cond, r.span_marks, span_of(w, r.span_marks).dim());
                case ElementRef::Kind::step:
                    return step_exprs[r.step_index];
                case ElementRef::Kind::meet: {
                    Expr e;
                    e.k = Expr::K::meet;
                    Subspace acc;
                    bool first = true;
                    for (const auto& a : r.meet_args) {
                        e.args.push_back(of_ref(a));
                        Subspace s = resolve_ref(a, w, step_hyps);
                        acc = first ? s : meet(acc, s);
                        first = false;
                    }
                    e.wdim = acc.dim();
                    cond.pool.push_back(std::move(e));
                    return int(cond.pool.size()) - 1;
                }
            }
            return -1;
        };
        for (size_t k = 0; k < st.script->steps.size(); ++k) {
            const ScriptStep& s = st.script->steps[k];
            Expr e;
            e.k = Expr::K::join;
            e.args.push_back(of_ref(s.base));
            e.marks = s.points;
            e.wdim = step_hyps[k].dim();
            cond.pool.push_back(std::move(e));
            step_exprs.push_back(int(cond.pool.size()) - 1);
        }
    } else {
        config = *st.raw_config;
    }

    int amb = config.ambient;
    auto marks_on = [&](const Subspace& s) {
        std::vector<int> out;
        for (int j = 0; j < w.size(); ++j)
            if (contains_point(s, w.points[j])) out.push_back(j);
        return out;
    };

    // one expression per element
    std::map<int, int> elem_expr;  // element index -> expr id
    std::vector<int> hyp_expr(config.subspaces.size(), -1);
    for (size_t idx = 0; idx < config.subspaces.size(); ++idx) {
        const Subspace& s = config.subspaces[idx];
        if (s.dim() != amb - 1) continue;
        int eid = -1;
        for (size_t k = 0; k < step_hyps.size(); ++k)
            if (step_hyps[k] == s) {
                eid = step_exprs[k];
                break;
            }
        if (eid < 0) {
            std::vector<int> mk = marks_on(s);
            if (mk.empty() || !(span_of(w, mk) == s)) {
                cond.valid = false;  // hyperplane with no intrinsic description
                return cond;
            }
            eid = expr_span(cond, mk, s.dim());
        }
        hyp_expr[idx] = eid;
        elem_expr[int(idx)] = eid;
    }
    for (size_t idx = 0; idx < config.subspaces.size(); ++idx) {
        const Subspace& s = config.subspaces[idx];
        if (s.dim() == amb - 1) continue;
        std::vector<int> covers;
        Subspace acc = whole_space(amb);
        for (size_t j = 0; j < config.subspaces.size(); ++j) {
            if (hyp_expr[j] < 0) continue;
            if (sub_contains(config.subspaces[j], s)) {
                covers.push_back(hyp_expr[j]);
                acc = meet(acc, config.subspaces[j]);
            }
        }
        if (!covers.empty() && acc == s) {
            Expr e;
            e.k = Expr::K::meet;
            e.args = covers;
            e.wdim = s.dim();
            cond.pool.push_back(std::move(e));
            elem_expr[int(idx)] = int(cond.pool.size()) - 1;
            continue;
        }
        std::vector<int> mk = marks_on(s);
        if (!mk.empty() && span_of(w, mk) == s) {
            elem_expr[int(idx)] = expr_span(cond, mk, s.dim());
            continue;
        }
        cond.valid = false;
        return cond;
    }

    for (auto& [idx, eid] : elem_expr) {
        for (int j : marks_on(config.subspaces[idx])) cond.on.emplace_back(j, eid);
    }
    return cond;
}

}  // namespace

Tri closure_holds(const Configuration& x, const ScriptedTemplate& st) {
    if (x.ambient != st.p - 1 || x.size() != st.marks())
        throw precondition_error("closure_holds: shape mismatch");
    Conditions cond = build_conditions(st);
    if (!cond.valid) return Tri::indeterminate;

    std::vector<Subspace> value(cond.pool.size());
    std::vector<bool> done(cond.pool.size(), false);
    std::function<const Subspace&(int)> ev = [&](int id) -> const Subspace& {
        if (done[id]) return value[id];
        const Expr& e = cond.pool[id];
        Subspace v;
        switch (e.k) {
            case Expr::K::span:
                v = span_of(x, e.marks);
                break;
            case Expr::K::join:
                v = join(ev(e.args[0]), span_of(x, e.marks));
                break;
            case Expr::K::meet: {
                bool first = true;
                for (int a : e.args) {
                    v = first ? ev(a) : meet(v, ev(a));
                    first = false;
                }
                break;
            }
        }
        value[id] = std::move(v);
        done[id] = true;
        return value[id];
    };

    for (int id = 0; id < int(cond.pool.size()); ++id) {
        const Expr& e = cond.pool[id];
        int d = ev(id).dim();
        if (e.k == Expr::K::meet) {
            if (d < e.wdim) return Tri::fails;
        } else {
            if (d > e.wdim) return Tri::fails;
        }
    }
    for (auto& [j, eid] : cond.on) {
        if (!contains_point(ev(eid), x.points[j])) return Tri::fails;
    }
    return Tri::holds;
}

}  // namespace grassfold

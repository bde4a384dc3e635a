#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassfold/poset.hpp"
#include "grassfold/script.hpp"

namespace grassfold {

// Marked template of a complete linear configuration: intersection poset,
// projective dimensions as ranks, configuration points as marks. Every
// marked point must be a rank-0 element of h.
MarkedTemplate template_of(const LinearConfiguration& h, const Configuration& marking);

// A template together with the data that makes it computable: a derivation
// script witnessing membership in the derived set (when one exists) and a
// rational witness configuration. "Raw" templates carry an explicit witness
// configuration instead of a script; they support the face/coface operators
// and closure tests but not script replay.
struct ScriptedTemplate {
    int p = 0, q = 0;
    MarkedTemplate tmpl;
    std::optional<DerivationScript> script;
    Configuration witness;
    std::optional<LinearConfiguration> raw_config;  // set iff !script

    bool scripted() const { return script.has_value(); }
    int marks() const { return p + q + 1; }
};

// Builds a scripted template by replaying `script` on `witness`.
ScriptedTemplate make_scripted(int p, int q, const DerivationScript& script,
                               const Configuration& witness);
// Raw template from an explicit marked linear configuration. The marked
// points are inserted as elements if absent; the configuration is completed.
ScriptedTemplate make_raw(int p, int q, const LinearConfiguration& config,
                          const Configuration& witness);

// The witness's realized configuration (replay for scripted, stored for raw).
LinearConfiguration realized_config(const ScriptedTemplate& st);

// true iff the script replays on x without degeneracy and the resulting
// marked template equals st's. Requires a scripted template.
bool realizes(const Configuration& x, const ScriptedTemplate& st);

// --- face and coface operators --------------------------------------------

// A^i: insert a generic new point at index i; at the poset level this adds
// the new mark and the joins of the old marked spans with it, completed.
// Shape (p, q) -> (p, q+1).
ScriptedTemplate coface_A(const ScriptedTemplate& st, int i, uint64_t seed = 0);
// B^i: lift along a new projection center at index i. Shape (p,q) -> (p+1,q).
ScriptedTemplate coface_B(const ScriptedTemplate& st, int i, uint64_t seed = 0);
// A_i: restrict to the subposet generated by the remaining marks.
// Shape (p, q) -> (p, q-1), q >= 1.
ScriptedTemplate face_A(const ScriptedTemplate& st, int i);
// B_i: project the witness from mark i and take the induced arrangement.
// Shape (p, q) -> (p-1, q), p >= 2.
ScriptedTemplate face_B(const ScriptedTemplate& st, int i);

// --- closure conditions -----------------------------------------------------
//
// The incidence equalities a template imposes, evaluated on an arbitrary
// configuration: span and join expressions may not exceed their witness
// dimension, meets may not fall below it, and marked points must stay on
// the elements carrying them. These are the closed conditions cutting out
// the Zariski closure of the stratum; the open non-degeneracy conditions
// are deliberately ignored.

enum class Tri { holds, fails, indeterminate };

Tri closure_holds(const Configuration& x, const ScriptedTemplate& st);

// --- helpers ---------------------------------------------------------------

// The one-element template every configuration over P^0 carries.
ScriptedTemplate trivial_template(int q);

// Base-derived template of a witness configuration (empty script).
ScriptedTemplate base_template(int p, int q, const Configuration& witness);

// Ranked poset of a complete configuration with marking indices.
RankedPoset poset_of(const LinearConfiguration& h, const Configuration& marking);

}  // namespace grassfold

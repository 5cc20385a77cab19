#ifndef FLTS_FRAGMENTS_HPP
#define FLTS_FRAGMENTS_HPP

#include <string>
#include <string_view>

#include "flts/syntax.hpp"

namespace flts {

// The four sublanguages with characterization results. fedPDL/fedKDelta are
// the existential fragments (no box, implication only with a constant
// antecedent); fpdPDL/fpdK are the positive fragments (box allowed, over
// restricted programs); the K variants admit only bare actions as programs.
enum class Fragment { FedKDelta, FedPdl, FpdK, FpdPdl };

// Accepts "fedKDelta", "fedPDL", "fpdK", "fpdPDL".
Fragment fragment_from_name(std::string_view name);
std::string fragment_name(Fragment f);

struct FragmentReport {
    bool in_fdpdl = true;  // every formula is one
    bool in_fedpdl = false;
    bool in_fedkdelta = false;
    bool in_fpdpdl = false;
    bool in_fpdk = false;

    bool in(Fragment f) const;
};

struct ProgramFragmentReport {
    bool is_action = false;    // a bare action; the only programs of the K fragments
    bool in_fedpdl = false;    // usable under a diamond of fedPDL
    bool in_fpedpdl = false;   // existential-side program of fpdPDL
    bool in_fpudpdl = false;   // universal-side program of fpdPDL
};

// Structural recursion over the grammar; nodes reached through several parents
// are classified once (trees are DAGs).
FragmentReport classify(const Formula& f);
ProgramFragmentReport classify_program(const Program& a);

}  // namespace flts

#endif

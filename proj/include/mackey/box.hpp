#pragma once

#include "mackey/gset.hpp"
#include "mackey/hom.hpp"

namespace mackey {

struct BoxDiagnostics {
    // False when the final cohomological quotient changed the inductive result.
    bool cohomological_before_quotient = true;
};

// Box product over Z of two cohomological functors, built level by level.
MackeyFunctor box(const MackeyFunctor& m, const MackeyFunctor& n, BoxDiagnostics* diag = nullptr);
// Number of box computations (process-wide) whose cohomological quotient was nontrivial.
long box_nontrivial_quotient_count();

// Level k is Hom(M, N_{G/C_{p^k}}).
MackeyFunctor internal_hom(const MackeyFunctor& m, const MackeyFunctor& n);

}  // namespace mackey

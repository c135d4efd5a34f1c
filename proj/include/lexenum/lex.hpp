#pragma once

#include "lexenum/lexleq.hpp"
#include "lexenum/model.hpp"

namespace lexenum {

// Generalised arc consistency for a single lex constraint. Every value
// without a supporting assignment inside the current domains is removed and
// recorded on the trail; the propagator re-runs itself until it removes
// nothing more. Works for any LexLeq, repeated variables included.
PropagateResult propagate_lex_gac(const LexLeq& c, std::vector<Domain>& domains,
                                  Trail& trail);

// Satisfiability of c within the given domains, with at most one variable
// pinned to a single value (pin_var = -1 pins nothing). Exact, polynomial.
bool lex_satisfiable(const LexLeq& c, const std::vector<Domain>& domains,
                     int pin_var, int pin_value);

} // namespace lexenum

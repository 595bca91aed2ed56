#pragma once

// Property checks shared by the unit tests and the acceptance runner.

#include <string>

namespace props {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome ring_axioms();
Outcome invert_roundtrip();
Outcome dissection_reconstruction();
Outcome huff_equals_subst_extract();
Outcome negate_q_parity();
Outcome backend_agreement();
Outcome pentagonal_matches_naive();
Outcome theta_support();
Outcome degree_zero_divisors();

} // namespace props

#pragma once

// Independent check values for curve invariants: Igusa-Clebsch integral
// invariants computed straight from the symmetric-function definitions over
// known roots. Brute-force expansion, no shared code with the library's
// transvectant path.

#include "g2uds/field.hpp"

#include <vector>

namespace g2uds::oracle {

struct IclValues {
    Fp2 I2, I4, I6, I10;
};

// Sextic with the six given roots and leading coefficient.
IclValues icl_from_sextic_roots(const FieldTower& T, const std::vector<Fp2>& roots,
                                const Fp2& lead);

// Quintic lead*(x - r1)...(x - r5): handled as the sextic binary form with a
// root at infinity, moved to finite position by a determinant-1 substitution
// (which leaves the integral invariants unchanged).
IclValues icl_from_quintic_roots(const FieldTower& T, const std::vector<Fp2>& roots,
                                 const Fp2& lead);

} // namespace g2uds::oracle

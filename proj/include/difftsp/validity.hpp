#pragma once

#include <string>

#include "difftsp/edgeset.hpp"

namespace difftsp {

/// Outcome of the valid-pair predicate. When `valid` is false, `clause`
/// names the first violated condition (1, 2 or 3) and `detail` carries a
/// human-readable witness.
struct ValidityReport {
    bool valid = true;
    int clause = 0;
    std::string detail;

    explicit operator bool() const { return valid; }
};

/// Checks the three validity conditions for a pair of spanning 2-matchings:
///   (1) S and T are spanning 2-matchings and T is acyclic;
///   (2) every vertex of degree 2 in both S and T has identical incident
///       edge sets in S and T;
///   (3) no cycle of S has exactly the vertex set of a path of T.
ValidityReport is_valid_pair(const EdgeSet& s, const EdgeSet& t, const Instance& inst);
ValidityReport is_valid_pair(const EdgeSet& s, const EdgeSet& t, int n);

}  // namespace difftsp

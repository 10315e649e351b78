#pragma once

#include <optional>
#include <string>

#include "difftsp/matching.hpp"
#include "difftsp/pathcover.hpp"

namespace difftsp {

/// The tour-extension edge sets of the even-case construction, with the
/// labels the audits need.
struct EvenExtension {
    EdgeSet a1, a2, b1, b2;
    PairLabels labels;
    int case_b = 0;      ///< which of the four structural cases built B1/B2
    int k = 0;           ///< number of shared S-side paths
    int d = 0;           ///< number of shared T-side paths
    int x1 = -1, y1 = -1;  ///< oriented endpoints of the first shared S-path
};

/// A1/A2 from the shared paths of S1,S2: the first shared path is the one
/// containing the smallest vertex, oriented so that
/// l(p2,x1) + l(p3,y1) <= l(p2,y1) + l(p3,x1) (ties toward smaller x1).
/// Fills a1, a2, k, x1, y1 and labels of `ext`.
void build_A(const FourCoversResult& covers, const Instance& inst, EvenExtension& ext);

/// B1/B2 by the four-case analysis on the paths of T1 cap T2.
/// Fills b1, b2, case_b, d of `ext`.
void build_B(const FourCoversResult& covers, const Instance& inst, EvenExtension& ext);

EvenExtension build_even_extension(const FourCoversResult& covers, const Instance& inst);

/// One named check of an audit.
struct AuditCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AuditReport {
    bool ok = true;
    std::vector<AuditCheck> checks;
    Weight union_length = 0;      ///< l(C)
    Weight exchanged_length = 0;  ///< l(H) (even) or l(H)+l(H') (odd)

    void add(const std::string& name, bool pass, const std::string& detail = "");
};

/// Verifies the union C = A1 u A2 u B1 u B2: pairwise disjointness, C is a
/// 2-factor with one or two cycles, and the exchange tour H with
/// l(H) >= l(C). Failure signals an implementation bug, not bad input.
AuditReport audit_union(const EvenExtension& ext, const Instance& inst);

struct TourResult {
    EdgeSet tour;
    Weight length = 0;
    std::vector<Weight> candidates;    ///< lengths of every candidate tour
    bool optimal_factor = false;       ///< the minimum 2-factor was already a tour
    std::string algorithm;             ///< "even" | "odd" | "exact"
    std::vector<int> winning_guess;    ///< odd case: the v1..v4 that produced the tour
};

/// Everything one even-case run produces; enough to audit and report.
struct EvenRun {
    EdgeSet s, t;  ///< minimum 2-factor and 1-factor
    std::optional<FourCoversResult> covers;
    std::optional<EvenExtension> ext;
    std::vector<EdgeSet> tours;  ///< the four candidates (construction order)
    TourResult result;
};

/// Full even-case audit: audit_union plus the candidate/tour checks and the
/// exact candidate-sum identity.
AuditReport audit_even_run(const EvenRun& run, const Instance& inst);

EvenRun solve_even(const Instance& inst);

/// The even-case algorithm. Requires even n >= 4. The output tour satisfies
/// 4*l(result) <= 3*opt + wor.
TourResult tour_even(const Instance& inst);

}  // namespace difftsp

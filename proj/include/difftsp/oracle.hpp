#pragma once

#include <functional>
#include <string>
#include <vector>

#include "difftsp/edgeset.hpp"

namespace difftsp {

/// Exact rational with int64 numerator/denominator, normalized (gcd 1,
/// denominator positive).
struct Rational {
    Weight num = 0;
    Weight den = 1;

    Rational() = default;
    Rational(Weight n, Weight d);

    auto operator<=>(const Rational&) const = default;
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Exact ratio comparison: a >= p/q.
bool ratio_at_least(const Rational& a, Weight p, Weight q);

/// The differential picture of one solved instance:
/// rho = (wor - apx) / (wor - opt), by convention 1 when wor == opt.
struct DiffReport {
    Weight opt = 0;
    Weight wor = 0;
    Weight apx = 0;
    Rational rho{1, 1};
};

/// Throws PreconditionError unless opt <= apx <= wor.
Rational differential_ratio(Weight opt, Weight wor, Weight apx);
DiffReport make_diff_report(Weight opt, Weight wor, Weight apx);

enum class Objective { Min, Max };

struct ExactTour {
    Weight length = 0;
    std::vector<int> tour;  ///< canonical vertex sequence
};

/// Exact shortest or longest tour via the subset dynamic program with fixed
/// start vertex 0. Deterministic reconstruction (smallest vertex wins ties).
/// Requires 3 <= n <= cap; n over cap raises ResourceGuardError (the cap is
/// an explicit memory guard: the table has n*2^n entries).
ExactTour exact_tour(const Instance& inst, Objective objective, int cap = 20);

enum class StructureKind { Tours, PerfectMatchings, TwoFactors };

/// Complete duplicate-free enumeration in canonical order, streamed to `fn`.
/// Size guards: n <= 10 for tours and perfect matchings, n <= 8 for
/// 2-factors (ResourceGuardError beyond, overridable via `cap_override`).
void enumerate_structures(int n, StructureKind kind, const std::function<void(const EdgeSet&)>& fn,
                          bool cap_override = false);

/// Convenience: materialized enumeration.
std::vector<EdgeSet> enumerate_structures(int n, StructureKind kind, bool cap_override = false);

/// Minimum total length over an enumerated family; InfeasibleError when the
/// family is empty under `accept`.
Weight brute_force_min(const Instance& inst, StructureKind kind,
                       const std::function<bool(const EdgeSet&)>& accept = nullptr);

}  // namespace difftsp

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "difftsp/instance.hpp"

namespace difftsp {

/// Native instance format: JSON object {name, n, scale, weights} where
/// weights is the strict lower triangle, row i listing w(i,0..i-1).
/// parse(serialize(parse(x))) == parse(x) and serialize(parse(y)) == y for
/// every y this writer produced.
Instance parse_instance_json(const std::string& text);
std::string serialize_instance_json(const Instance& inst);

/// TSPLIB subset: TYPE TSP, EDGE_WEIGHT_TYPE EXPLICIT, EDGE_WEIGHT_FORMAT
/// FULL_MATRIX or LOWER_DIAG_ROW, integer entries. Everything else is
/// rejected rather than approximated.
Instance parse_tsplib(const std::string& text);

/// Content-sniffing loader: JSON when the first non-space byte is '{',
/// TSPLIB otherwise. MalformedInputError carries line/column on JSON errors.
Instance load_instance_file(const std::string& path);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Machine-readable run report (schema 1). Serialization order is fixed;
/// reruns with identical inputs are byte-identical except wall_ms.
struct RunReport {
    std::string instance;
    int n = 0;
    std::string algorithm;  ///< even | odd | exact
    Weight apx = 0;
    std::vector<int> tour;
    std::vector<Weight> candidates;
    std::optional<Weight> opt;
    std::optional<Weight> wor;
    std::optional<std::string> rho;
    std::optional<std::string> guarantee;    ///< the checked inequality, instantiated
    std::optional<bool> guarantee_pass;
    std::optional<bool> audit_ok;
    std::vector<std::string> audit_failures;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

std::string serialize_run_report(const RunReport& report);

}  // namespace difftsp

#pragma once

#include <cstdint>
#include <string>

#include "difftsp/instance.hpp"

namespace difftsp {

/// Weight distribution of a generated instance:
///   uniform:LO:HI    independent integers in [LO, HI]
///   euclidean:BOX    rounded distances of integer points in [0, BOX]^2
///   onetwo           every length 1 or 2
struct DistSpec {
    enum class Kind { Uniform, Euclidean, OneTwo };
    Kind kind = Kind::Uniform;
    Weight lo = 0;
    Weight hi = 100;
    Weight box = 1000;

    /// Parses the CLI syntax above; MalformedInputError on anything else.
    static DistSpec parse(const std::string& text);
    std::string str() const;
};

/// Deterministic for a fixed (n, dist, seed).
Instance generate_instance(int n, const DistSpec& dist, std::uint64_t seed, std::string name = "");

}  // namespace difftsp

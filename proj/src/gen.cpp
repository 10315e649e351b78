#include "difftsp/gen.hpp"

#include <cmath>
#include <vector>

#include "difftsp/rng.hpp"

namespace difftsp {

DistSpec DistSpec::parse(const std::string& text) {
    auto split = [&] {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (;;) {
            const std::size_t colon = text.find(':', start);
            parts.push_back(text.substr(start, colon - start));
            if (colon == std::string::npos) return parts;
            start = colon + 1;
        }
    };
    const std::vector<std::string> parts = split();
    auto as_weight = [&](const std::string& s) -> Weight {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw MalformedInputError("bad number '" + s + "' in distribution spec '" + text + "'");
        }
    };

    DistSpec d;
    if (parts[0] == "uniform" && parts.size() == 3) {
        d.kind = Kind::Uniform;
        d.lo = as_weight(parts[1]);
        d.hi = as_weight(parts[2]);
        if (d.lo < 0 || d.hi < d.lo) throw MalformedInputError("uniform bounds must satisfy 0 <= LO <= HI");
        return d;
    }
    if (parts[0] == "euclidean" && parts.size() == 2) {
        d.kind = Kind::Euclidean;
        d.box = as_weight(parts[1]);
        if (d.box < 1 || d.box > 1'000'000'000) throw MalformedInputError("euclidean box must be in [1, 1e9]");
        return d;
    }
    if (parts[0] == "onetwo" && parts.size() == 1) {
        d.kind = Kind::OneTwo;
        return d;
    }
    throw MalformedInputError("unknown distribution spec '" + text +
                              "' (expected uniform:LO:HI, euclidean:BOX or onetwo)");
}

std::string DistSpec::str() const {
    switch (kind) {
        case Kind::Uniform:
            return "uniform:" + std::to_string(lo) + ":" + std::to_string(hi);
        case Kind::Euclidean:
            return "euclidean:" + std::to_string(box);
        case Kind::OneTwo:
            return "onetwo";
    }
    return "?";
}

Instance generate_instance(int n, const DistSpec& dist, std::uint64_t seed, std::string name) {
    if (n < 3) throw PreconditionError("generate_instance needs n >= 3");
    if (name.empty()) name = dist.str() + "-n" + std::to_string(n) + "-s" + std::to_string(seed);

    Rng rng(seed);
    std::vector<Weight> w(static_cast<std::size_t>(n) * n, 0);
    auto set = [&](int u, int v, Weight x) {
        w[static_cast<std::size_t>(u) * n + v] = x;
        w[static_cast<std::size_t>(v) * n + u] = x;
    };

    switch (dist.kind) {
        case DistSpec::Kind::Uniform:
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) set(u, v, rng.uniform(dist.lo, dist.hi));
            break;
        case DistSpec::Kind::OneTwo:
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) set(u, v, rng.uniform(1, 2));
            break;
        case DistSpec::Kind::Euclidean: {
            std::vector<std::pair<Weight, Weight>> pts(n);
            for (auto& [x, y] : pts) {
                x = rng.uniform(0, dist.box);
                y = rng.uniform(0, dist.box);
            }
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    const Weight dx = pts[u].first - pts[v].first;
                    const Weight dy = pts[u].second - pts[v].second;
                    // dx^2+dy^2 <= 2e18 fits; values <= 2^53 keep the double
                    // conversion exact, so llround(sqrt) is reproducible.
                    set(u, v, std::llround(std::sqrt(static_cast<double>(dx * dx + dy * dy))));
                }
            break;
        }
    }
    return Instance(n, std::move(w), std::move(name));
}

}  // namespace difftsp

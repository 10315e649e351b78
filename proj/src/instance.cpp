#include "difftsp/instance.hpp"

#include <tuple>
#include <utility>

namespace difftsp {

Instance::Instance(int n, std::vector<Weight> weights, std::string name, int scale)
    : n_(n), scale_(scale), max_weight_(0), weights_(std::move(weights)), name_(std::move(name)) {
    if (n_ < 2) throw MalformedInputError("instance needs at least 2 vertices, got " + std::to_string(n_));
    if (weights_.size() != static_cast<std::size_t>(n_) * n_)
        throw MalformedInputError("weight matrix size mismatch: expected " + std::to_string(n_) + "x" +
                                  std::to_string(n_));
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            const Weight w = weight(u, v);
            if (w != weight(v, u))
                throw MalformedInputError("asymmetric weights at (" + std::to_string(u) + "," + std::to_string(v) +
                                          ")");
            if (w < 0)
                throw MalformedInputError("negative weight at (" + std::to_string(u) + "," + std::to_string(v) + ")");
            if (w > kMaxEdgeWeight)
                throw MalformedInputError("weight at (" + std::to_string(u) + "," + std::to_string(v) +
                                          ") exceeds the supported maximum");
            max_weight_ = std::max(max_weight_, w);
        }
        weights_[static_cast<std::size_t>(u) * n_ + u] = 0;  // diagonal unused
    }
}

Instance Instance::from_edges(int n, const std::vector<std::tuple<int, int, Weight>>& edges, Weight fill,
                              std::string name) {
    std::vector<Weight> w(static_cast<std::size_t>(n) * n, fill);
    for (int v = 0; v < n; ++v) w[static_cast<std::size_t>(v) * n + v] = 0;
    for (const auto& [u, v, len] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw MalformedInputError("bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        w[static_cast<std::size_t>(u) * n + v] = len;
        w[static_cast<std::size_t>(v) * n + u] = len;
    }
    return Instance(n, std::move(w), std::move(name));
}

void Instance::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw MalformedInputError("vertex index " + std::to_string(v) + " out of range [0," + std::to_string(n_) +
                                  ")");
}

}  // namespace difftsp

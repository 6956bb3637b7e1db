#include "neuronav/observation.hpp"

#include <cmath>

#include "neuronav/error.hpp"

namespace neuronav {

namespace {

std::vector<double> wall_distance(const GraphSpec& spec, State s) {
    if (!spec.maze) throw EncodingError("WallDistance requires a maze-compiled graph");
    const auto& maze = spec.maze->maze;
    const Cell origin = spec.maze->cells.at(s);
    std::vector<double> out(kMazeActions);
    for (std::size_t d = 0; d < kMazeActions; ++d) {
        Cell c = origin;
        int steps = 0;
        do {
            c = neighbor(c, static_cast<Direction>(d));
            ++steps;
        } while (maze.is_free(c));
        out[d] = static_cast<double>(steps);
    }
    return out;
}

std::vector<double> synthetic(const SyntheticFeature& f, State s) {
    if (f.dim == 0) throw EncodingError("SyntheticFeature dimension must be positive");
    Rng rng = Rng(f.seed).split(s);
    std::vector<double> v(f.dim);
    double norm2 = 0.0;
    while (norm2 == 0.0) {
        for (auto& x : v) {
            x = 2.0 * rng.uniform() - 1.0;
            norm2 += x * x;
        }
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

}  // namespace

std::vector<double> observe(const GraphSpec& spec, State s, const ObservationEncoding& enc) {
    if (s >= spec.n_states) throw ContractError("observe: state out of range");
    return std::visit(
        [&](const auto& e) -> std::vector<double> {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, OneHot>) {
                std::vector<double> v(spec.n_states, 0.0);
                v[s] = 1.0;
                return v;
            } else if constexpr (std::is_same_v<E, WallDistance>) {
                return wall_distance(spec, s);
            } else {
                return synthetic(e, s);
            }
        },
        enc);
}

std::size_t observation_size(const GraphSpec& spec, const ObservationEncoding& enc) {
    if (std::holds_alternative<OneHot>(enc)) return spec.n_states;
    if (std::holds_alternative<WallDistance>(enc)) {
        if (!spec.maze) throw EncodingError("WallDistance requires a maze-compiled graph");
        return kMazeActions;
    }
    return std::get<SyntheticFeature>(enc).dim;
}

}  // namespace neuronav

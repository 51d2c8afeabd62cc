#include "pmns/lattice.hpp"

#include <stdexcept>

namespace pmns {

std::vector<WaveVector> enumerate_lattice(const LatticeSpec& spec) {
    if (spec.N < 1) throw std::invalid_argument("enumerate_lattice: N must be >= 1 (empty lattice)");
    int N = spec.N;
    std::vector<WaveVector> out;
    out.reserve(std::size_t(2 * N + 1) * (2 * N + 1) * (2 * N + 1) - 1);
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                out.push_back({a, b, c});
            }
    return out;
}

std::vector<WaveVector> shell_points(int l) {
    if (l < 1) throw std::invalid_argument("shell_points: shell index must be >= 1");
    std::vector<WaveVector> out;
    out.reserve(std::size_t(24) * l * l + 2);
    for (int a = -l; a <= l; ++a)
        for (int b = -l; b <= l; ++b)
            for (int c = -l; c <= l; ++c) {
                WaveVector k{a, b, c};
                if (k.sup_norm() == l) out.push_back(k);
            }
    return out;
}

}  // namespace pmns

// Walk every vertex of the three-coordinate feasible cone at a given ratio
// and show the exact coordinates, multipliers, and majorization margins.
//
//   ./vertex_tour [p/q]      (default ratio 1/2)

#include <cstdio>
#include <string>

#include "phasemaj/theorems.hpp"

using namespace phasemaj;

int main(int argc, char** argv) {
    BigRational a(1, 2);
    if (argc > 1) {
        a = BigRational(argv[1], 10);
        a.canonicalize();
    }

    std::printf("cone vertices for n = 3 at a = %s\n\n", a.get_str().c_str());
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<char> zeroed = {static_cast<char>(mask & 1), static_cast<char>((mask >> 1) & 1),
                                    static_cast<char>((mask >> 2) & 1)};
        ConeVertexResult r = cone_vertex({3, a, zeroed});

        std::string pattern;
        for (char z : zeroed) pattern += z ? '0' : 'l';
        std::printf("  %s   lambda = (", pattern.c_str());
        for (size_t k = 0; k < r.lambdas.size(); ++k)
            std::printf("%s%s", k ? ", " : "", r.lambdas[k].get_str().c_str());
        std::printf(")\n        vertex = (");
        for (size_t k = 0; k < r.vertex.size(); ++k)
            std::printf("%s%s", k ? ", " : "", r.vertex[k].get_str().c_str());
        std::printf(")\n        majorized by the base vector: %s, margin %s in %zu transfers\n\n",
                    r.majorization.holds ? "yes" : "NO",
                    r.majorization.min_margin.get_str().c_str(), r.transfers.size());
    }
    return 0;
}

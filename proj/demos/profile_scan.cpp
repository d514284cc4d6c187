// Certify a Fock mixture's radial profile and compare it against the vacuum:
// nonnegativity certificate, phase-space entropy, and the majorization
// verdict on a refining grid.
//
//   ./profile_scan            (the half-half mixture of the two lowest states)
//   ./profile_scan 4          (uniform mixture of states 0..4)

#include <cstdio>
#include <cstdlib>

#include "phasemaj/fockspace.hpp"
#include "phasemaj/majorize.hpp"

using namespace phasemaj;

int main(int argc, char** argv) {
    unsigned top = argc > 1 ? static_cast<unsigned>(std::strtoul(argv[1], nullptr, 10)) : 1;

    FockMixture mix = FockMixture::uniform(top);
    RadialProfile prof = mixture_radial(mix);
    RadialProfile vac = fock_radial(0);

    std::printf("uniform mixture of states 0..%u\n", top);
    std::printf("  polynomial degree %zu, dirac weight %s\n", prof.fn.poly.coeffs.size() - 1,
                prof.fn.dirac_weight.get_str().c_str());

    NonnegCertificate cert = certify_nonnegative(prof);
    std::printf("  nonnegative on the half-line: %s (%d distinct positive roots, %s)\n",
                cert.nonneg ? "yes" : "NO", cert.distinct_positive_roots, cert.method.c_str());
    if (!cert.nonneg) return 1;

    EntropyResult h = wigner_entropy(prof);
    EntropyResult h0 = wigner_entropy(vac);
    std::printf("  entropy %.9f (vacuum %.9f)\n", h.entropy, h0.entropy);

    MajorizationVerdict v = majorizes_continuous(vac, prof, {});
    std::printf("  vacuum majorizes it: %s (min margin %.3g over %zu refinement rounds)\n",
                v.holds ? "yes" : "NO", v.min_margin, v.rounds.size());
    return v.holds ? 0 : 1;
}

#pragma once

#include <stdexcept>
#include <string>

namespace phasemaj {

#define PHASEMAJ_ERROR(Name)                      \
    struct Name : std::runtime_error {            \
        using std::runtime_error::runtime_error;  \
    }

PHASEMAJ_ERROR(NonZeroDirac);      // deconvolution requires a Dirac-free input
PHASEMAJ_ERROR(DiracAtPoint);      // pointwise evaluation at the location of a Dirac
PHASEMAJ_ERROR(NotNormalized);     // mixture weights must be nonnegative and sum to 1
PHASEMAJ_ERROR(BoundExceeded);     // configured combinatorial bound exceeded
PHASEMAJ_ERROR(IdentityViolation); // an exact identity failed to hold
PHASEMAJ_ERROR(NotMajorized);      // decomposition asked for a pair that fails majorization
PHASEMAJ_ERROR(TailTooHeavy);      // no truncation point meets the tail-mass budget
PHASEMAJ_ERROR(Unstable);          // verdict flipped between the last two refinement rounds
PHASEMAJ_ERROR(NegativeInput);     // functional requires a certified-nonnegative input
PHASEMAJ_ERROR(NegativeWigner);    // entropy of a profile that takes negative values
PHASEMAJ_ERROR(TheoremViolation);  // a verified-theorem check failed; never expected
PHASEMAJ_ERROR(ConstructionFailure);    // vertex slicing drove a coordinate negative
PHASEMAJ_ERROR(EntryConditionsFailed);  // decomposition kernel fails the entry conditions
PHASEMAJ_ERROR(SuffixConditionFailed);  // discretized kernel left the feasible cone
PHASEMAJ_ERROR(ConvergenceViolation);   // refinement failed to improve the error metric

#undef PHASEMAJ_ERROR

}  // namespace phasemaj

/*
   Copyright 2026 The rops authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ROPS_REFUTE_HPP
#define ROPS_REFUTE_HPP

#include "rops/decompose.hpp"

namespace rops {

enum class Sum2Verdict { refuted_not_sum2, inconclusive, expressible_witness };

struct Sum2Result {
    Sum2Verdict verdict;
    ConditionReport report;
    std::optional<Decomposition> certificate;
    /// reals semantics: expressible over the reals, but the certificate
    /// coefficients are irrational.
    bool expressible_over_reals_only = false;
};

/// Decides what can be decided about membership of a 4-variate multilinear
/// polynomial in the sum-of-two-ROPs class:
///   - if none of the structural conditions C1'/C2'/C3' holds, membership
///     is refuted;
///   - if a two-summand certificate can be produced (symmetric table,
///     f-family construction, or reconstructed disjoint forms), it is
///     returned verified;
///   - otherwise inconclusive (C1'/C2' are necessary, not sufficient).
Sum2Result refute_sum2(const Poly& g);

}  // namespace rops

#endif

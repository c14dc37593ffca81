// Copyright 2026 The rdmkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "rdmkit/core/maps.hpp"
#include "rdmkit/core/rdm.hpp"
#include "rdmkit/core/wedge.hpp"

namespace rdmkit {

/// Connected (cumulant) decomposition of the low-order marginals, all in
/// pair normalization.  d3 and d4 default to absent, which means zero: the
/// truncation underlying the reconstruction formulas below.
struct CumulantSet {
    AntisymTensor d1;
    AntisymTensor d2;
    std::optional<AntisymTensor> d3;
    std::optional<AntisymTensor> d4;
};

/// Split a 2-RDM into its cumulant pieces.  The 1-RDM is recovered from the
/// contraction identity, so a single consistent 2-RDM is the only input.
///   delta1 = D1,   delta2 = D2_pair - delta1 ^ delta1.
[[nodiscard]] inline CumulantSet cumulants_from_marginals(const TwoRDM& d2, std::size_t n) {
    CumulantSet c;
    c.d1 = from_one_rdm(contract_d2_to_d1(d2, n));
    c.d2 = from_two_rdm_pair(d2);
    wedge_accumulate(c.d2, c.d1, c.d1, -1.0);
    return c;
}

struct ReconstructedMarginals {
    AntisymTensor d3;
    AntisymTensor d4;
};

/// Reconstruct the 3- and 4-particle marginals from a 2-RDM alone by setting
/// the third and fourth cumulants to zero:
///   D3 = delta1^3 + 3 delta2 ^ delta1,
///   D4 = delta1^4 + 6 delta2 ^ delta1 ^ delta1 + 3 delta2 ^ delta2,
/// wedge powers throughout.  Exact on single determinants, where every
/// cumulant beyond delta1 vanishes.  Asks for n >= 4 because a 4-particle
/// marginal of a smaller system is identically zero and almost certainly a
/// caller bug; use cumulants_from_marginals for the split itself.
[[nodiscard]] inline ReconstructedMarginals cumulant_reconstruct(const TwoRDM& d2,
                                                                 std::size_t n) {
    if (n < 3) throw std::invalid_argument("cumulant_reconstruct: need n >= 3");
    if (n < 4) throw std::invalid_argument("cumulant_reconstruct: need n >= 4 for the 4-marginal");
    const CumulantSet c = cumulants_from_marginals(d2, n);
    const std::size_t r = d2.r;

    const AntisymTensor pair1 = wedge(c.d1, c.d1);

    ReconstructedMarginals out{AntisymTensor(r, 3), AntisymTensor(r, 4)};
    wedge_accumulate(out.d3, pair1, c.d1, 1.0);
    wedge_accumulate(out.d3, c.d2, c.d1, 3.0);

    wedge_accumulate(out.d4, pair1, pair1, 1.0);
    wedge_accumulate(out.d4, c.d2, pair1, 6.0);
    wedge_accumulate(out.d4, c.d2, c.d2, 3.0);
    return out;
}

/// Rank-3 part only; valid from n = 3 and much cheaper than the full pair.
[[nodiscard]] inline AntisymTensor cumulant_reconstruct_d3(const TwoRDM& d2, std::size_t n) {
    if (n < 3) throw std::invalid_argument("cumulant_reconstruct_d3: need n >= 3");
    const CumulantSet c = cumulants_from_marginals(d2, n);
    AntisymTensor d3(d2.r, 3);
    const AntisymTensor pair1 = wedge(c.d1, c.d1);
    wedge_accumulate(d3, pair1, c.d1, 1.0);
    wedge_accumulate(d3, c.d2, c.d1, 3.0);
    return d3;
}

}  // namespace rdmkit

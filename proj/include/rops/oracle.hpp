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

#ifndef ROPS_ORACLE_HPP
#define ROPS_ORACLE_HPP

#include <cstddef>
#include <string>

#include "rops/rof.hpp"

namespace rops {

/// Packed coefficient vector of a multilinear polynomial over F_p: the
/// digit at monomial mask m (base p) is the coefficient of that monomial.
using RopFingerprint = unsigned __int128;

struct OracleBuildOptions {
    int max_n = 5;                                   // overridable resource guard
    std::size_t max_elements = std::size_t{1} << 26; // total stored fingerprints
    int threads = 1;
};

struct SumCertificate {
    std::vector<Poly> summands;
};

/// Ground-truth set of all read-once polynomials over F_p on up to n
/// variables, built by dynamic programming over variable subsets: the
/// polynomials with exact support S are the affine closure of all
/// pointwise combinations f * g and f + g over exact-support partitions of
/// S, plus the single-leaf polynomials. Frozen as sorted fingerprint
/// vectors per subset, so queries are deterministic binary searches.
class RopSet {
   public:
    static RopSet build(const FieldCtx& ctx, int nvars, const OracleBuildOptions& opt = {});

    /// Build with a disk cache: loads a valid cache file if present, else
    /// builds and saves. Cache files are keyed by (p, n) and checksummed.
    static RopSet build_cached(const FieldCtx& ctx, int nvars, const std::string& cache_dir,
                               const OracleBuildOptions& opt = {});
    static std::string cache_file_name(std::int64_t p, int nvars);
    static std::optional<RopSet> load(const std::string& path);
    void save(const std::string& path) const;

    const FieldCtx& ctx() const noexcept { return ctx_; }
    int nvars() const noexcept { return nvars_; }
    std::size_t total_size() const;
    const std::vector<RopFingerprint>& proper(VarMask mask) const;

    /// Membership of g in the ROP class (k = 1 of sum_membership).
    bool contains(const Poly& g) const;

    /// Is g a sum of at most k read-once polynomials? Returns the summands
    /// on success. k = 2 is a linear scan with lookups; k >= 3 recurses
    /// with early exit.
    std::optional<SumCertificate> sum_membership(const Poly& g, int k) const;

    RopFingerprint fingerprint(const Poly& g) const;
    Poly poly_of(RopFingerprint fp) const;

    /// Search for an explicit ROF whose expansion is the given member;
    /// used to spot-check that stored fingerprints are genuine.
    std::optional<Rof> reconstruct_witness(RopFingerprint fp) const;

   private:
    RopSet(FieldCtx ctx, int nvars) : ctx_(ctx), nvars_(nvars) {}

    FieldCtx ctx_;
    int nvars_;
    std::vector<std::vector<RopFingerprint>> proper_;
};

/// Exhaustive comparison, over all (a, b, c) in F_p^3, of the condition
/// system's verdict for a*(x1x2+x3x4)+b*(x1x3+x2x4)+c*(x1x4+x2x3) against
/// oracle ground truth for membership in the sum-of-two class.
struct FFamilyCrossCheck {
    std::int64_t p = 0;
    int total = 0;
    int expressible = 0;
    struct Disagreement {
        std::int64_t a, b, c;
        bool conditions_refute;
        bool oracle_member;
    };
    std::vector<Disagreement> disagreements;
};

FFamilyCrossCheck cross_check_f_family(const RopSet& rs);

}  // namespace rops

#endif

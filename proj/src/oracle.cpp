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

#include "rops/oracle.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "rops/analyze.hpp"

namespace rops {

namespace {

using u128 = unsigned __int128;
using Digits = std::array<std::uint8_t, 64>;

constexpr std::uint64_t kCacheMagic = 0x524F505345543031ull;  // "ROPSET01"
constexpr std::uint32_t kCacheVersion = 1;

struct FpCodec {
    std::int64_t p = 0;
    int ndigits = 0;
    std::array<u128, 65> pw{};

    FpCodec(std::int64_t p_, int nvars) : p(p_), ndigits(1 << nvars) {
        if (ndigits > 64) throw ResourceGuardError("fingerprints support at most 6 variables");
        pw[0] = 1;
        for (int i = 1; i <= ndigits; ++i) {
            u128 next = pw[i - 1] * static_cast<u128>(p);
            if (next / static_cast<u128>(p) != pw[i - 1])
                throw ResourceGuardError("fingerprint space exceeds 128 bits for this (p, n)");
            pw[i] = next;
        }
    }

    void unpack(u128 fp, Digits& out) const {
        for (int i = 0; i < ndigits; ++i) {
            out[i] = static_cast<std::uint8_t>(fp % p);
            fp /= p;
        }
    }
    u128 pack(const Digits& d) const {
        u128 fp = 0;
        for (int i = ndigits - 1; i >= 0; --i) fp = fp * static_cast<u128>(p) + d[i];
        return fp;
    }
    VarMask support(const Digits& d) const {
        VarMask m = 0;
        for (int i = 1; i < ndigits; ++i)
            if (d[i]) m |= static_cast<VarMask>(i);
        return m;
    }

    void sub(const Digits& a, const Digits& b, Digits& out) const {
        for (int i = 0; i < ndigits; ++i) {
            int v = a[i] - b[i];
            out[i] = static_cast<std::uint8_t>(v < 0 ? v + p : v);
        }
    }
    /// Product of polynomials with disjoint supports inside maskA / maskB.
    void mul_disjoint(const Digits& f, VarMask maskA, const Digits& g, VarMask maskB, Digits& out) const {
        out.fill(0);
        VarMask sa = maskA;
        while (true) {
            if (f[sa]) {
                int fa = f[sa];
                VarMask sb = maskB;
                while (true) {
                    if (g[sb]) out[sa | sb] = static_cast<std::uint8_t>((out[sa | sb] + fa * g[sb]) % p);
                    if (sb == 0) break;
                    sb = (sb - 1) & maskB;
                }
            }
            if (sa == 0) break;
            sa = (sa - 1) & maskA;
        }
    }
};

/// Append-only fingerprint collector with periodic sort-unique compaction
/// and a hard size guard.
class DedupBuffer {
   public:
    DedupBuffer(std::size_t guard, std::size_t compact_at = std::size_t{1} << 22)
        : guard_(guard), compact_at_(compact_at) {}

    void push(u128 v) {
        items_.push_back(v);
        if (items_.size() >= watermark_) compact();
    }
    std::vector<u128> freeze() {
        compact();
        return std::move(items_);
    }
    void merge_from(DedupBuffer& other) {
        other.compact();
        items_.insert(items_.end(), other.items_.begin(), other.items_.end());
        compact();
    }

   private:
    void compact() {
        std::sort(items_.begin(), items_.end());
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
        if (items_.size() > guard_)
            throw ResourceGuardError("fingerprint set exceeded the resource guard: " + std::to_string(items_.size()) +
                                     " > " + std::to_string(guard_));
        watermark_ = std::max(compact_at_, items_.size() * 2);
    }

    std::vector<u128> items_;
    std::size_t guard_;
    std::size_t compact_at_;
    std::size_t watermark_ = std::size_t{1} << 22;
};

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t read_u64(const std::uint8_t* d) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(d[i]) << (8 * i);
    return v;
}

/// Representatives of proper[mask] modulo constant shift (constant digit
/// forced to zero).
std::vector<u128> shift_reps(const FpCodec& cod, const std::vector<u128>& set) {
    std::vector<u128> out;
    out.reserve(set.size() / cod.p + 1);
    for (u128 fp : set) {
        out.push_back(fp - static_cast<u128>(static_cast<std::uint8_t>(fp % cod.p)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Representatives modulo nonzero scaling (first nonzero digit forced to 1).
std::vector<u128> scale_reps(const FpCodec& cod, const std::vector<u128>& set) {
    std::vector<u128> out;
    out.reserve(set.size() / std::max<std::int64_t>(cod.p - 1, 1) + 1);
    Digits d{};
    for (u128 fp : set) {
        cod.unpack(fp, d);
        int lead = -1;
        for (int i = 0; i < cod.ndigits; ++i)
            if (d[i]) {
                lead = i;
                break;
            }
        if (lead < 0) {
            out.push_back(0);
            continue;
        }
        // scale by the inverse of the leading digit
        std::int64_t inv = 1;
        for (std::int64_t cand = 1; cand < cod.p; ++cand)
            if (cand * d[lead] % cod.p == 1) {
                inv = cand;
                break;
            }
        Digits s{};
        for (int i = 0; i < cod.ndigits; ++i) s[i] = static_cast<std::uint8_t>(d[i] * inv % cod.p);
        out.push_back(cod.pack(s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::string RopSet::cache_file_name(std::int64_t p, int nvars) {
    return "ropset_p" + std::to_string(p) + "_n" + std::to_string(nvars) + ".bin";
}

RopSet RopSet::build(const FieldCtx& ctx, int nvars, const OracleBuildOptions& opt) {
    if (!ctx.is_prime()) throw InvalidArgumentError("the oracle enumerates over prime fields only");
    std::int64_t p = ctx.modulus();
    if (p != 2 && p != 3 && p != 5) throw ResourceGuardError("oracle enumeration supports p in {2, 3, 5}");
    if (nvars < 1) throw InvalidArgumentError("oracle needs at least one variable");
    if (nvars > opt.max_n)
        throw ResourceGuardError("oracle build guarded at n <= " + std::to_string(opt.max_n) +
                                 " (override with the max-n option)");

    FpCodec cod(p, nvars);
    RopSet rs(ctx, nvars);
    const VarMask full = (VarMask{1} << nvars) - 1;
    rs.proper_.assign(full + 1, {});

    std::size_t stored = 0;
    auto guard_left = [&] {
        return opt.max_elements > stored ? opt.max_elements - stored : std::size_t{0};
    };

    // Constants and single leaves.
    for (std::int64_t c = 0; c < p; ++c) rs.proper_[0].push_back(static_cast<u128>(c));
    for (int v = 0; v < nvars; ++v) {
        VarMask m = VarMask{1} << v;
        std::vector<u128>& out = rs.proper_[m];
        for (std::int64_t a = 1; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b) out.push_back(cod.pw[m] * static_cast<u128>(a) + static_cast<u128>(b));
        std::sort(out.begin(), out.end());
    }
    stored += rs.proper_[0].size() + static_cast<std::size_t>(nvars) * (p - 1) * p;

    // Larger supports, in mask order (all strict submasks are ready first).
    for (VarMask mask = 1; mask <= full; ++mask) {
        if (popcount_mask(mask) < 2) continue;

        int threads = std::max(opt.threads, 1);
        std::vector<DedupBuffer> buffers;
        buffers.reserve(threads);
        for (int t = 0; t < threads; ++t) buffers.emplace_back(guard_left());

        struct Job {
            VarMask a, b;
        };
        std::vector<Job> jobs;
        for (VarMask a = (mask - 1) & mask; a > 0; a = (a - 1) & mask) {
            VarMask b = mask ^ a;
            if (a < b) jobs.push_back({a, b});
        }

        auto run_chunk = [&](int tid) {
            Digits df{}, dg{}, prod{};
            DedupBuffer& buf = buffers[tid];
            for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
                const Job& job = jobs[ji];
                const std::vector<u128>& setB = rs.proper_[job.b];

                // Sums: shift representatives of A against all of B.
                std::vector<u128> sreps = shift_reps(cod, rs.proper_[job.a]);
                for (std::size_t fi = tid; fi < sreps.size(); fi += threads) {
                    cod.unpack(sreps[fi], df);
                    for (u128 g : setB) {
                        cod.unpack(g, dg);
                        Digits sum;
                        for (int i = 0; i < cod.ndigits; ++i)
                            sum[i] = static_cast<std::uint8_t>((df[i] + dg[i]) % p);
                        buf.push(cod.pack(sum));
                    }
                }

                // Products (+ constant offsets): scale representatives of A
                // against all of B.
                std::vector<u128> mreps = scale_reps(cod, rs.proper_[job.a]);
                for (std::size_t fi = tid; fi < mreps.size(); fi += threads) {
                    cod.unpack(mreps[fi], df);
                    for (u128 g : setB) {
                        cod.unpack(g, dg);
                        cod.mul_disjoint(df, job.a, dg, job.b, prod);
                        // Offset through every constant digit; clear the units
                        // digit first so the addition cannot carry.
                        u128 base = cod.pack(prod);
                        base -= base % static_cast<u128>(p);
                        for (std::int64_t c = 0; c < p; ++c) buf.push(base + static_cast<u128>(c));
                    }
                }
            }
        };

        if (threads == 1) {
            run_chunk(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(run_chunk, t);
            for (auto& th : pool) th.join();
        }
        for (int t = 1; t < threads; ++t) buffers[0].merge_from(buffers[t]);
        rs.proper_[mask] = buffers[0].freeze();
        stored += rs.proper_[mask].size();
        if (stored > opt.max_elements)
            throw ResourceGuardError("oracle set exceeded the resource guard: " + std::to_string(stored) +
                                     " fingerprints");
    }
    return rs;
}

RopSet RopSet::build_cached(const FieldCtx& ctx, int nvars, const std::string& cache_dir,
                            const OracleBuildOptions& opt) {
    namespace fs = std::filesystem;
    fs::path path = fs::path(cache_dir) / cache_file_name(ctx.modulus(), nvars);
    if (auto cached = load(path.string())) return std::move(*cached);
    RopSet rs = build(ctx, nvars, opt);
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    rs.save(path.string());
    return rs;
}

void RopSet::save(const std::string& path) const {
    std::vector<std::uint8_t> body;
    append_u64(body, static_cast<std::uint64_t>(ctx_.modulus()));
    append_u64(body, static_cast<std::uint64_t>(nvars_));
    for (const auto& set : proper_) {
        append_u64(body, set.size());
        for (u128 fp : set) {
            append_u64(body, static_cast<std::uint64_t>(fp));
            append_u64(body, static_cast<std::uint64_t>(fp >> 64));
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file '" + path + "'");
    std::vector<std::uint8_t> header;
    append_u64(header, kCacheMagic);
    append_u64(header, kCacheVersion);
    out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    std::vector<std::uint8_t> tail;
    append_u64(tail, fnv1a(body.data(), body.size()));
    out.write(reinterpret_cast<const char*>(tail.data()), static_cast<std::streamsize>(tail.size()));
    if (!out) throw IoError("failed writing cache file '" + path + "'");
}

std::optional<RopSet> RopSet::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 40) return std::nullopt;
    if (read_u64(bytes.data()) != kCacheMagic) return std::nullopt;
    if (read_u64(bytes.data() + 8) != kCacheVersion) return std::nullopt;
    const std::uint8_t* body = bytes.data() + 16;
    std::size_t body_len = bytes.size() - 24;
    if (read_u64(bytes.data() + bytes.size() - 8) != fnv1a(body, body_len)) return std::nullopt;

    std::int64_t p = static_cast<std::int64_t>(read_u64(body));
    int nvars = static_cast<int>(read_u64(body + 8));
    if (nvars < 1 || nvars > 6) return std::nullopt;
    RopSet rs(FieldCtx::prime(p), nvars);
    const std::size_t nmasks = std::size_t{1} << nvars;
    rs.proper_.assign(nmasks, {});
    std::size_t off = 16;
    for (std::size_t m = 0; m < nmasks; ++m) {
        if (off + 8 > body_len) return std::nullopt;
        std::uint64_t count = read_u64(body + off);
        off += 8;
        if (off + 16 * count > body_len) return std::nullopt;
        auto& set = rs.proper_[m];
        set.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            u128 lo = read_u64(body + off), hi = read_u64(body + off + 8);
            set.push_back(lo | (hi << 64));
            off += 16;
        }
    }
    if (off != body_len) return std::nullopt;
    return rs;
}

std::size_t RopSet::total_size() const {
    std::size_t n = 0;
    for (const auto& s : proper_) n += s.size();
    return n;
}

const std::vector<RopFingerprint>& RopSet::proper(VarMask mask) const {
    if (mask >= proper_.size()) throw InvalidArgumentError("mask outside the oracle's variable range");
    return proper_[mask];
}

RopFingerprint RopSet::fingerprint(const Poly& g) const {
    if (!(g.ctx() == ctx_)) throw FieldMismatchError("polynomial from a different field");
    if (!g.is_multilinear()) throw NotMultilinearError("oracle fingerprints are for multilinear polynomials");
    FpCodec cod(ctx_.modulus(), nvars_);
    Digits d{};
    d.fill(0);
    for (const auto& [m, c] : g.terms()) {
        VarMask mask = 0;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m[k]) {
                if (static_cast<int>(k) >= nvars_)
                    throw WrongArityError("polynomial uses variables beyond the oracle's range");
                mask |= VarMask{1} << k;
            }
        d[mask] = static_cast<std::uint8_t>(c.residue());
    }
    return cod.pack(d);
}

Poly RopSet::poly_of(RopFingerprint fp) const {
    FpCodec cod(ctx_.modulus(), nvars_);
    Digits d{};
    cod.unpack(fp, d);
    Poly out(ctx_, nvars_);
    for (int m = 0; m < cod.ndigits; ++m)
        if (d[m]) out.add_term_mask(static_cast<VarMask>(m), ctx_.from_int(d[m]));
    return out;
}

bool RopSet::contains(const Poly& g) const { return sum_membership(g, 1).has_value(); }

std::optional<SumCertificate> RopSet::sum_membership(const Poly& g, int k) const {
    if (k < 1) throw InvalidArgumentError("sum_membership needs k >= 1");
    FpCodec cod(ctx_.modulus(), nvars_);
    Digits dg{};
    cod.unpack(fingerprint(g), dg);

    std::vector<u128> chosen;
    std::function<bool(const Digits&, int)> search = [&](const Digits& target, int budget) -> bool {
        VarMask support = cod.support(target);
        u128 packed = cod.pack(target);
        if (budget == 1) {
            const auto& set = proper_[support];
            if (std::binary_search(set.begin(), set.end(), packed)) {
                chosen.push_back(packed);
                return true;
            }
            return false;
        }
        Digits ds{}, rest{};
        for (VarMask mask = 0; mask < proper_.size(); ++mask) {
            for (u128 s : proper_[mask]) {
                cod.unpack(s, ds);
                cod.sub(target, ds, rest);
                if (search(rest, budget - 1)) {
                    chosen.push_back(s);
                    return true;
                }
            }
        }
        return false;
    };

    if (!search(dg, k)) return std::nullopt;
    SumCertificate cert;
    for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) cert.summands.push_back(poly_of(*it));
    return cert;
}

std::optional<Rof> RopSet::reconstruct_witness(RopFingerprint fp) const {
    FpCodec cod(ctx_.modulus(), nvars_);
    const std::int64_t p = ctx_.modulus();

    std::function<std::optional<Rof>(u128)> rec = [&](u128 target) -> std::optional<Rof> {
        Digits d{};
        cod.unpack(target, d);
        VarMask mask = cod.support(d);
        if (!std::binary_search(proper_[mask].begin(), proper_[mask].end(), target)) return std::nullopt;
        if (mask == 0) return Rof::leaf(1, ctx_.zero(), ctx_.from_int(d[0]));
        if (popcount_mask(mask) == 1) {
            int var = 1;
            while (!mask_contains(mask, var)) ++var;
            return Rof::leaf(var, ctx_.from_int(d[mask]), ctx_.from_int(d[0]));
        }

        Digits q{}, df{}, dgd{}, prod{};
        for (std::int64_t a = 1; a < p; ++a) {
            std::int64_t inv_a = 1;
            while (inv_a * a % p != 1) ++inv_a;
            for (std::int64_t b = 0; b < p; ++b) {
                // target = a*(f op g) + b
                for (int i = 0; i < cod.ndigits; ++i) {
                    int v = d[i] - (i == 0 ? static_cast<int>(b) : 0);
                    if (v < 0) v += p;
                    q[i] = static_cast<std::uint8_t>(v * inv_a % p);
                }
                for (VarMask A = (mask - 1) & mask; A > 0; A = (A - 1) & mask) {
                    VarMask B = mask ^ A;
                    if (A > B) continue;
                    // Sum split: f is q's part supported inside A, up to a
                    // constant; mixed monomials must be absent for the
                    // lookups to succeed.
                    for (std::int64_t c = 0; c < p; ++c) {
                        df.fill(0);
                        bool mixed = false;
                        for (int i = 1; i < cod.ndigits; ++i) {
                            if (!q[i]) continue;
                            if ((static_cast<VarMask>(i) & ~A) == 0)
                                df[i] = q[i];
                            else if ((static_cast<VarMask>(i) & ~B) != 0)
                                mixed = true;
                        }
                        if (mixed) break;
                        df[0] = static_cast<std::uint8_t>(c);
                        Digits dgs{};
                        cod.sub(q, df, dgs);
                        u128 fpk = cod.pack(df), gpk = cod.pack(dgs);
                        if (cod.support(df) != A || cod.support(dgs) != B) continue;
                        auto fr = rec(fpk);
                        if (!fr) continue;
                        auto gr = rec(gpk);
                        if (!gr) continue;
                        return Rof::node(Rof::Op::add, ctx_.from_int(a), ctx_.from_int(b), *fr, *gr);
                    }
                    // Product split: try every f with exact support A.
                    for (u128 f : proper_[A]) {
                        cod.unpack(f, df);
                        // g = q / f by matching against a reference monomial.
                        int ref = -1;
                        for (int i = 0; i < cod.ndigits; ++i)
                            if (df[i]) {
                                ref = i;
                                break;
                            }
                        if (ref < 0) continue;
                        std::int64_t inv_ref = 1;
                        while (inv_ref * df[ref] % p != 1) ++inv_ref;
                        dgd.fill(0);
                        VarMask sb = B;
                        while (true) {
                            dgd[sb] = static_cast<std::uint8_t>(q[ref | sb] * inv_ref % p);
                            if (sb == 0) break;
                            sb = (sb - 1) & B;
                        }
                        cod.mul_disjoint(df, A, dgd, B, prod);
                        if (prod != q) continue;
                        u128 gpk = cod.pack(dgd);
                        if (cod.support(dgd) != B) continue;
                        auto fr = rec(f);
                        if (!fr) continue;
                        auto gr = rec(gpk);
                        if (!gr) continue;
                        return Rof::node(Rof::Op::mul, ctx_.from_int(a), ctx_.from_int(b), *fr, *gr);
                    }
                }
            }
        }
        return std::nullopt;
    };
    return rec(fp);
}

FFamilyCrossCheck cross_check_f_family(const RopSet& rs) {
    if (rs.nvars() != 4) throw InvalidArgumentError("cross check needs an oracle on exactly 4 variables");
    const FieldCtx& ctx = rs.ctx();
    std::int64_t p = ctx.modulus();
    FFamilyCrossCheck out;
    out.p = p;
    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t b = 0; b < p; ++b) {
            for (std::int64_t c = 0; c < p; ++c) {
                ConditionReport rep =
                    f_family_conditions(ctx.from_int(a), ctx.from_int(b), ctx.from_int(c));
                bool refuted = *rep.c1 && *rep.c2 && *rep.c3;
                Poly g = gen_f_family(ctx.from_int(a), ctx.from_int(b), ctx.from_int(c));
                bool member = rs.sum_membership(g, 2).has_value();
                ++out.total;
                if (member) ++out.expressible;
                if (refuted == member) out.disagreements.push_back({a, b, c, refuted, member});
            }
        }
    }
    return out;
}

}  // namespace rops

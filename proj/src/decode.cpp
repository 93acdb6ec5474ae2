#include "boolecc/decode.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <map>

namespace boolecc {

DenseTable to_dense(const CompactTable& ct) {
    DenseTable t;
    t.n = ct.n;
    t.group = GroupSpec::cyclic(ct.m);
    t.values.reserve(ct.values.size());
    for (auto v : ct.values) t.values.push_back(GroupValue::from_int(t.group, v));
    return t;
}

std::optional<CompactTable> to_compact(const DenseTable& t) {
    if (t.group->kind() != GroupSpec::Kind::cyclic) return std::nullopt;
    if (t.group->modulus() < 2 || t.group->modulus() > 255) return std::nullopt;
    CompactTable ct;
    ct.n = t.n;
    ct.m = static_cast<std::uint32_t>(t.group->modulus());
    ct.values.reserve(t.values.size());
    for (const auto& v : t.values)
        ct.values.push_back(static_cast<std::uint8_t>(v.as_int()));
    return ct;
}

namespace {

// decimal-string order on residues, matching GroupValue::canonical()
bool canonical_less_u32(std::uint32_t a, std::uint32_t b) {
    char sa[12], sb[12];
    auto ra = std::to_chars(sa, sa + sizeof sa, a);
    auto rb = std::to_chars(sb, sb + sizeof sb, b);
    return std::string_view(sa, ra.ptr - sa) < std::string_view(sb, rb.ptr - sb);
}

std::uint32_t plurality_u32(const std::vector<std::uint32_t>& counts) {
    std::uint32_t best = 0;
    for (std::uint32_t v = 1; v < counts.size(); ++v) {
        if (counts[v] > counts[best] ||
            (counts[v] == counts[best] && canonical_less_u32(v, best)))
            best = v;
    }
    return best;
}

struct GroupValueLess {
    bool operator()(const GroupValue& a, const GroupValue& b) const { return a.compare(b) < 0; }
};

GroupValue plurality_map(const std::map<GroupValue, std::uint64_t, GroupValueLess>& counts) {
    const GroupValue* best = nullptr;
    std::uint64_t best_count = 0;
    std::string best_key;
    for (const auto& [v, c] : counts) {
        if (!best || c > best_count) {
            best = &v;
            best_count = c;
            best_key = v.canonical();
        } else if (c == best_count) {
            std::string k = v.canonical();
            if (k < best_key) { best = &v; best_key = std::move(k); }
        }
    }
    return *best;
}

void validate_table(const DenseTable& f) {
    if (f.values.size() != (size_t(1) << f.n))
        throw std::invalid_argument("table must have 2^n entries");
}

Monomial mask_to_monomial(std::uint64_t mask, std::uint32_t n) {
    Monomial m;
    for (std::uint32_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) m.push_back(i);
    return m;
}

// next mask with the same popcount (Gosper)
std::uint64_t next_combination(std::uint64_t v) {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

bool dist_within(std::uint64_t mismatches, std::uint32_t n, const Rat& radius) {
    return Rat(Int(mismatches), Int(1) << n) <= radius;
}

bool dist_strictly_within(std::uint64_t mismatches, std::uint32_t n, const Rat& radius) {
    return Rat(Int(mismatches), Int(1) << n) < radius;
}

}  // namespace

std::optional<MultilinearPoly> unique_decode(const DenseTable& f, int d) {
    validate_table(f);
    if (d < 0 || static_cast<std::uint32_t>(d) > f.n)
        throw std::invalid_argument("degree out of range");
    if (auto ct = to_compact(f)) return unique_decode_compact(*ct, d, f.group);

    const std::uint64_t full = (f.n == 64) ? ~0ULL : (1ULL << f.n) - 1;
    std::vector<GroupValue> work = f.values;
    MultilinearPoly result(f.n, d, f.group);

    for (int deg = d; deg >= 1; --deg) {
        std::vector<std::pair<std::uint64_t, GroupValue>> found;
        std::uint64_t imask = (1ULL << deg) - 1;
        for (; imask <= full; imask = next_combination(imask)) {
            if (std::popcount(imask) != deg) break;  // overflow guard
            std::map<GroupValue, std::uint64_t, GroupValueLess> counts;
            const std::uint64_t comp = full ^ imask;
            std::uint64_t a = comp;
            for (;;) {
                // c_{I,a} = sum_{J subseteq I} (-1)^{|I \ J|} f(1_J o a)
                GroupValue c = GroupValue::zero(f.group);
                std::uint64_t j = imask;
                for (;;) {
                    bool negate = ((deg - std::popcount(j)) & 1) != 0;
                    const GroupValue& v = work[j | a];
                    c = negate ? c.sub(v) : c.add(v);
                    if (j == 0) break;
                    j = (j - 1) & imask;
                }
                counts[c]++;
                if (a == 0) break;
                a = (a - 1) & comp;
            }
            GroupValue c = plurality_map(counts);
            if (!c.is_zero()) found.emplace_back(imask, std::move(c));
            if (imask == full) break;
        }
        for (const auto& [mask, c] : found) {
            result.set_coeff(mask_to_monomial(mask, f.n), c);
            // subtract c * x^I from the working table
            std::uint64_t x = mask;
            for (;;) {
                work[x] = work[x].sub(c);
                if (x == full) break;
                x = (x + 1) | mask;
            }
        }
    }
    {
        std::map<GroupValue, std::uint64_t, GroupValueLess> counts;
        for (const auto& v : work) counts[v]++;
        GroupValue c0 = plurality_map(counts);
        if (!c0.is_zero()) result.set_coeff({}, c0);
    }

    // verification pass: accept only strictly inside the unique decoding radius
    std::uint64_t bad = 0;
    {
        DenseTable rt = tabulate(result, f.n);
        for (size_t i = 0; i < f.values.size(); ++i)
            if (rt.values[i] != f.values[i]) ++bad;
    }
    if (!dist_strictly_within(bad, f.n, Rat(1, Int(1) << (d + 1)))) return std::nullopt;
    return result;
}

std::optional<MultilinearPoly> unique_decode_compact(const CompactTable& f, int d,
                                                     const GroupSpecPtr& group) {
    const std::uint32_t m = f.m;
    if (f.values.size() != (size_t(1) << f.n))
        throw std::invalid_argument("table must have 2^n entries");
    const std::uint64_t full = (1ULL << f.n) - 1;
    std::vector<std::uint32_t> work(f.values.begin(), f.values.end());
    std::vector<std::pair<std::uint64_t, std::uint32_t>> coeffs;

    std::vector<std::uint32_t> counts(m);
    for (int deg = d; deg >= 1; --deg) {
        std::vector<std::pair<std::uint64_t, std::uint32_t>> found;
        std::uint64_t imask = (1ULL << deg) - 1;
        for (; imask <= full; imask = next_combination(imask)) {
            if (std::popcount(imask) != deg) break;
            std::fill(counts.begin(), counts.end(), 0);
            const std::uint64_t comp = full ^ imask;
            std::uint64_t a = comp;
            for (;;) {
                std::uint32_t c = 0;
                std::uint64_t j = imask;
                for (;;) {
                    const std::uint32_t v = work[j | a];
                    c = ((deg - std::popcount(j)) & 1) ? c + m - v : c + v;
                    if (j == 0) break;
                    j = (j - 1) & imask;
                }
                counts[c % m]++;
                if (a == 0) break;
                a = (a - 1) & comp;
            }
            std::uint32_t c = plurality_u32(counts);
            if (c != 0) found.emplace_back(imask, c);
            if (imask == full) break;
        }
        for (const auto& [mask, c] : found) {
            coeffs.emplace_back(mask, c);
            std::uint64_t x = mask;
            for (;;) {
                work[x] = (work[x] + m - c) % m;
                if (x == full) break;
                x = (x + 1) | mask;
            }
        }
    }
    {
        std::fill(counts.begin(), counts.end(), 0);
        for (auto v : work) counts[v]++;
        std::uint32_t c0 = plurality_u32(counts);
        if (c0 != 0) coeffs.emplace_back(0, c0);
    }

    // verification: zeta-transform the coefficients back to values
    std::vector<std::uint32_t> vals(f.values.size(), 0);
    for (const auto& [mask, c] : coeffs) vals[mask] = (vals[mask] + c) % m;
    for (std::uint32_t b = 0; b < f.n; ++b) {
        const std::uint64_t bit = 1ULL << b;
        for (std::uint64_t x = 0; x < vals.size(); ++x)
            if (x & bit) vals[x] = (vals[x] + vals[x ^ bit]) % m;
    }
    std::uint64_t bad = 0;
    for (size_t i = 0; i < vals.size(); ++i)
        if (vals[i] != f.values[i]) ++bad;
    if (!dist_strictly_within(bad, f.n, Rat(1, Int(1) << (d + 1)))) return std::nullopt;

    MultilinearPoly result(f.n, d, group);
    for (const auto& [mask, c] : coeffs)
        result.set_coeff(mask_to_monomial(mask, f.n), GroupValue::from_int(group, c));
    return result;
}

std::vector<CompactAffine> wht_affine_list(const CompactTable& f, const Rat& radius) {
    if (f.m != 2) throw std::invalid_argument("wht strategy needs modulus 2");
    const size_t size = size_t(1) << f.n;
    if (f.values.size() != size) throw std::invalid_argument("table must have 2^n entries");
    // values after p butterfly passes are bounded by 2^p, so the first
    // passes run in int16 (twice the SIMD width), the rest in int32; the
    // restrict split lets the butterflies vectorize
    std::vector<std::int32_t> w(size);
    {
        auto butterfly16 = [](std::int16_t* __restrict__ lo, std::int16_t* __restrict__ hi,
                              size_t count) {
            for (size_t t = 0; t < count; ++t) {
                const std::int16_t a = lo[t], b = hi[t];
                lo[t] = static_cast<std::int16_t>(a + b);
                hi[t] = static_cast<std::int16_t>(a - b);
            }
        };
        // radix-4: two passes (len, 2 len) fused into one memory sweep
        auto fused16 = [](std::int16_t* __restrict__ p0, std::int16_t* __restrict__ p1,
                          std::int16_t* __restrict__ p2, std::int16_t* __restrict__ p3,
                          size_t count) {
            for (size_t t = 0; t < count; ++t) {
                const std::int16_t ab = static_cast<std::int16_t>(p0[t] + p1[t]);
                const std::int16_t amb = static_cast<std::int16_t>(p0[t] - p1[t]);
                const std::int16_t cd = static_cast<std::int16_t>(p2[t] + p3[t]);
                const std::int16_t cmd = static_cast<std::int16_t>(p2[t] - p3[t]);
                p0[t] = static_cast<std::int16_t>(ab + cd);
                p1[t] = static_cast<std::int16_t>(amb + cmd);
                p2[t] = static_cast<std::int16_t>(ab - cd);
                p3[t] = static_cast<std::int16_t>(amb - cmd);
            }
        };
        auto butterfly32 = [](std::int32_t* __restrict__ lo, std::int32_t* __restrict__ hi,
                              size_t count) {
            for (size_t t = 0; t < count; ++t) {
                const std::int32_t a = lo[t], b = hi[t];
                lo[t] = a + b;
                hi[t] = a - b;
            }
        };
        auto sweep16 = [&](std::int16_t* base, size_t span, size_t from_len, size_t to_len) {
            size_t len = from_len;
            while (len < to_len) {
                if (len << 1 < to_len) {
                    for (size_t i = 0; i < span; i += len << 2)
                        fused16(base + i, base + i + len, base + i + 2 * len, base + i + 3 * len,
                                len);
                    len <<= 2;
                } else {
                    for (size_t i = 0; i < span; i += len << 1)
                        butterfly16(base + i, base + i + len, len);
                    len <<= 1;
                }
            }
        };
        std::vector<std::int16_t> w16(size);
        for (size_t x = 0; x < size; ++x) w16[x] = f.values[x] ? -1 : 1;
        // the first passes act within contiguous blocks; run each block to
        // completion while it is cache resident, then finish globally
        const size_t max16 = std::min<size_t>(size, size_t(1) << 14);  // int16-safe passes
        const size_t block = std::min<size_t>(max16, size_t(1) << 13);
        for (size_t i = 0; i < size; i += block) sweep16(&w16[i], block, 1, block);
        sweep16(w16.data(), size, block, max16);
        for (size_t x = 0; x < size; ++x) w[x] = w16[x];
        for (size_t len = max16; len < size; len <<= 1)
            for (size_t i = 0; i < size; i += len << 1)
                butterfly32(&w[i], &w[i + len], len);
    }
    // agreement of (slope S, c0) with the table is (2^n + (-1)^{c0} W[S]) / 2;
    // mismatches <= radius * 2^n as a pure integer comparison
    std::vector<CompactAffine> out;
    const std::int64_t sz = static_cast<std::int64_t>(size);
    std::int64_t max_mism = -1;
    {
        Int t = numerator(radius) * (Int(1) << f.n) / denominator(radius);
        if (t >= 0) max_mism = static_cast<std::int64_t>(std::min(Int(sz), t));
    }
    // mism = (2^n - |signed agreement offset|) / 2 in disguise; scan both c0
    const std::int64_t min_w = sz - 2 * max_mism;  // keep iff (+-)W[S] >= min_w
    for (size_t s = 0; s < size; ++s) {
        if (w[s] >= min_w)
            out.push_back(CompactAffine{s, 0, static_cast<std::uint64_t>((sz - w[s]) / 2)});
        if (-w[s] >= min_w)
            out.push_back(CompactAffine{s, 1, static_cast<std::uint64_t>((sz + w[s]) / 2)});
    }
    std::sort(out.begin(), out.end(), [&](const CompactAffine& a, const CompactAffine& b) {
        if (a.mismatches != b.mismatches) return a.mismatches < b.mismatches;
        // canonical serialization order of the corresponding polynomials
        auto z2 = GroupSpec::cyclic(2);
        return affine_to_poly(a, f.n, z2).canonical() < affine_to_poly(b, f.n, z2).canonical();
    });
    return out;
}

MultilinearPoly affine_to_poly(const CompactAffine& a, std::uint32_t n, const GroupSpecPtr& z2) {
    MultilinearPoly p(n, std::min<std::uint32_t>(1, n), z2);
    GroupValue one = GroupValue::from_int(z2, 1);
    if (a.c0) p.set_coeff({}, one);
    for (std::uint32_t i = 0; i < n; ++i)
        if ((a.slope >> i) & 1) p.set_coeff({i}, one);
    return p;
}

namespace {

struct ScoredPoly {
    Rat dist;
    std::string key;
    MultilinearPoly poly;
};

std::vector<MultilinearPoly> finish(std::vector<ScoredPoly>& hits) {
    std::sort(hits.begin(), hits.end(), [](const ScoredPoly& a, const ScoredPoly& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.key < b.key;
    });
    std::vector<MultilinearPoly> out;
    out.reserve(hits.size());
    for (auto& h : hits) out.push_back(std::move(h.poly));
    return out;
}

// strategy (b): degree-1 coefficient-candidate assembly, sound and complete
// for radius = 1/2 - eps' since any close codeword's slope survives the
// per-coordinate 2*eps' edge-frequency filter
std::vector<MultilinearPoly> degree1_assembly(const DenseTable& f, const Rat& radius,
                                              const ListDecodeConfig& cfg) {
    const Rat eps_prime = Rat(1, 2) - radius;
    if (eps_prime <= 0) throw budget_exceeded_error("assembly strategy needs radius < 1/2");
    const std::uint32_t n = f.n;
    const std::uint64_t size = std::uint64_t(1) << n;
    const std::uint64_t edges = size / 2;
    const Rat freq_floor = 2 * eps_prime;

    std::uint32_t cap = cfg.per_coord_cap;
    if (cap == 0) {
        Rat inv = 1 / freq_floor;
        Int c = numerator(inv) / denominator(inv);
        if (c * denominator(inv) != numerator(inv)) c += 1;
        cap = static_cast<std::uint32_t>(c);
    }

    std::vector<std::vector<GroupValue>> candidates(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::map<GroupValue, std::uint64_t, GroupValueLess> counts;
        const std::uint64_t bit = 1ULL << i;
        for (std::uint64_t x = 0; x < size; ++x) {
            if (x & bit) continue;
            counts[f.values[x | bit].sub(f.values[x])]++;
        }
        std::vector<std::pair<GroupValue, std::uint64_t>> ranked(counts.begin(), counts.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first.canonical() < b.first.canonical();
        });
        for (const auto& [v, c] : ranked) {
            if (Rat(Int(c), Int(edges)) < freq_floor) break;
            if (candidates[i].size() >= cap) break;
            candidates[i].push_back(v);
        }
    }

    std::vector<ScoredPoly> hits;
    std::vector<GroupValue> slope(n, GroupValue::zero(f.group));
    std::uint64_t visited = 0;

    auto leaf = [&]() {
        // for this slope, every close constant c0 satisfies
        // count{x : f(x) - slope(x) = c0} >= (1 - radius) * 2^n
        std::map<GroupValue, std::uint64_t, GroupValueLess> counts;
        for (std::uint64_t x = 0; x < size; ++x) {
            GroupValue s = GroupValue::zero(f.group);
            for (std::uint32_t i = 0; i < n; ++i)
                if ((x >> i) & 1 && !slope[i].is_zero()) s = s.add(slope[i]);
            counts[f.values[x].sub(s)]++;
        }
        for (const auto& [c0, agree] : counts) {
            const std::uint64_t mism = size - agree;
            if (!dist_within(mism, n, radius)) continue;
            MultilinearPoly p(n, std::min<std::uint32_t>(1, n), f.group);
            if (!c0.is_zero()) p.set_coeff({}, c0);
            for (std::uint32_t i = 0; i < n; ++i)
                if (!slope[i].is_zero()) p.set_coeff({i}, slope[i]);
            hits.push_back({Rat(Int(mism), Int(size)), p.canonical(), std::move(p)});
        }
    };

    auto rec = [&](auto&& self, std::uint32_t i) -> void {
        if (++visited > cfg.assembly_budget)
            throw budget_exceeded_error("assembly budget exceeded");
        if (i == n) { leaf(); return; }
        for (const auto& c : candidates[i]) {
            slope[i] = c;
            self(self, i + 1);
        }
        slope[i] = GroupValue::zero(f.group);
    };
    rec(rec, 0);
    return finish(hits);
}

std::vector<GroupValue> group_elements(const GroupSpecPtr& spec, std::uint64_t budget) {
    auto size = spec->size();
    if (!size || *size > budget) throw budget_exceeded_error("group too large to enumerate");
    switch (spec->kind()) {
        case GroupSpec::Kind::cyclic: {
            std::vector<GroupValue> out;
            for (Int v = 0; v < spec->modulus(); ++v)
                out.push_back(GroupValue::from_int(spec, v));
            return out;
        }
        case GroupSpec::Kind::product: {
            std::vector<GroupValue> out{GroupValue::tuple(spec, [&] {
                std::vector<GroupValue> zs;
                for (const auto& p : spec->parts()) zs.push_back(GroupValue::zero(p));
                return zs;
            }())};
            out.clear();
            std::vector<std::vector<GroupValue>> parts;
            for (const auto& p : spec->parts()) parts.push_back(group_elements(p, budget));
            std::vector<size_t> idx(parts.size(), 0);
            for (;;) {
                std::vector<GroupValue> comp;
                for (size_t i = 0; i < parts.size(); ++i) comp.push_back(parts[i][idx[i]]);
                out.push_back(GroupValue::tuple(spec, std::move(comp)));
                size_t i = 0;
                while (i < idx.size() && ++idx[i] == parts[i].size()) idx[i++] = 0;
                if (i == idx.size()) break;
            }
            return out;
        }
        default:
            throw budget_exceeded_error("infinite group cannot be enumerated");
    }
}

}  // namespace

std::vector<MultilinearPoly> brute_force_list(const DenseTable& f, int d, const Rat& radius,
                                              const ListDecodeConfig& cfg) {
    validate_table(f);
    std::vector<GroupValue> elems = group_elements(f.group, cfg.enum_budget);
    const std::uint64_t g = elems.size();

    std::vector<Monomial> monomials;
    {
        const std::uint64_t full = (1ULL << f.n) - 1;
        for (std::uint64_t mask = 0; mask <= full; ++mask)
            if (std::popcount(mask) <= d) monomials.push_back(mask_to_monomial(mask, f.n));
        std::sort(monomials.begin(), monomials.end(), MonomialLess{});
    }

    // budget: g^#monomials candidate polynomials
    {
        Int total = 1;
        for (size_t i = 0; i < monomials.size(); ++i) {
            total *= g;
            if (total > cfg.enum_budget) throw budget_exceeded_error("enumeration budget exceeded");
        }
    }

    const std::uint64_t size = std::uint64_t(1) << f.n;
    std::vector<ScoredPoly> hits;
    std::vector<size_t> idx(monomials.size(), 0);
    for (;;) {
        MultilinearPoly p(f.n, d, f.group);
        for (size_t i = 0; i < monomials.size(); ++i)
            if (!elems[idx[i]].is_zero()) p.set_coeff(monomials[i], elems[idx[i]]);
        std::uint64_t mism = 0;
        {
            DenseTable pt = tabulate(p, f.n);
            for (std::uint64_t x = 0; x < size; ++x)
                if (pt.values[x] != f.values[x]) ++mism;
        }
        if (dist_within(mism, f.n, radius))
            hits.push_back({Rat(Int(mism), Int(size)), p.canonical(), std::move(p)});
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == g) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return finish(hits);
}

std::vector<MultilinearPoly> list_decode(const DenseTable& f, int d, const Rat& radius,
                                         const ListDecodeConfig& cfg) {
    validate_table(f);
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");

    // strategy ladder; WHT and assembly are independent of the brute-force
    // oracle, so equivalence tests compare distinct routes
    if (d == 1 && f.group->kind() == GroupSpec::Kind::cyclic && f.group->modulus() == 2) {
        auto ct = to_compact(f);
        std::vector<CompactAffine> forms = wht_affine_list(*ct, radius);
        std::vector<MultilinearPoly> out;
        out.reserve(forms.size());
        for (const auto& a : forms) out.push_back(affine_to_poly(a, f.n, f.group));
        return out;
    }
    if (d == 1 && radius < Rat(1, 2)) return degree1_assembly(f, radius, cfg);
    return brute_force_list(f, d, radius, cfg);
}

}  // namespace boolecc

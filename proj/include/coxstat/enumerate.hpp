#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxstat/element.hpp"

namespace coxstat {

namespace detail {

inline std::uint64_t factorial_u64(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r; // callers guarantee n <= 20
}

inline std::vector<std::int32_t> unrank_permutation(int n, std::uint64_t idx) {
    std::vector<std::int32_t> avail(n);
    for (int i = 0; i < n; ++i) avail[i] = i + 1;
    std::vector<std::int32_t> img(n);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t f = factorial_u64(n - 1 - i);
        const auto d = static_cast<std::size_t>(idx / f);
        idx %= f;
        img[i] = avail[d];
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return img;
}

inline std::uint64_t rank_permutation(const std::vector<std::int32_t>& img) {
    const int n = static_cast<int>(img.size());
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (img[j] < img[i]) ++smaller;
        r += static_cast<std::uint64_t>(smaller) * factorial_u64(n - 1 - i);
    }
    return r;
}

} // namespace detail

/// Complete table of one irreducible factor. A/B/D/I2 use closed-form
/// ranking (nothing stored); exceptional factors hold the BFS-enumerated
/// matrices plus per-element length, descent count, inverse index and
/// two-sided descent value.
struct FactorTable {
    IrreducibleType type;
    std::uint64_t order = 1;

    std::vector<ReflMatrix> elems;
    std::vector<std::int32_t> lengths;
    std::vector<std::int32_t> descents;
    std::vector<std::uint32_t> inverses;
    std::vector<std::int32_t> tvalues;
    std::unordered_map<ReflMatrix, std::uint32_t, ReflMatrixHash> index;

    bool stored() const { return is_exceptional(type.family); }

    Component element_at(std::uint64_t i) const {
        switch (type.family) {
            case Family::A: return APerm{detail::unrank_permutation(type.parameter + 1, i)};
            case Family::B: {
                const int p = type.parameter;
                const std::uint64_t mask = i & ((1ULL << p) - 1);
                auto img = detail::unrank_permutation(p, i >> p);
                for (int j = 0; j < p; ++j)
                    if ((mask >> j) & 1) img[j] = -img[j];
                return BPerm{std::move(img)};
            }
            case Family::D: {
                const int p = type.parameter;
                const std::uint64_t free = i & ((1ULL << (p - 1)) - 1);
                const std::uint64_t mask = (free << 1) | (static_cast<std::uint64_t>(std::popcount(free)) & 1);
                auto img = detail::unrank_permutation(p, i >> (p - 1));
                for (int j = 0; j < p; ++j)
                    if ((mask >> j) & 1) img[j] = -img[j];
                return DPerm{std::move(img)};
            }
            case Family::I2: {
                const std::int32_t m = type.parameter;
                if (i == 0) return Dihedral{m, 0, 0};
                if (i == static_cast<std::uint64_t>(2 * m - 1)) return Dihedral{m, m, 0};
                const auto k = static_cast<std::int32_t>((i + 1) / 2);
                const auto side = static_cast<std::int8_t>(i % 2 == 1 ? 0 : 1);
                return Dihedral{m, k, side};
            }
            default: return elems.at(i);
        }
    }

    std::uint64_t index_of(const Component& c) const {
        switch (type.family) {
            case Family::A: return detail::rank_permutation(std::get<APerm>(c).img);
            case Family::B: {
                const auto& v = std::get<BPerm>(c).img;
                std::uint64_t mask = 0;
                std::vector<std::int32_t> abs(v.size());
                for (std::size_t j = 0; j < v.size(); ++j) {
                    abs[j] = v[j] < 0 ? -v[j] : v[j];
                    if (v[j] < 0) mask |= 1ULL << j;
                }
                return (detail::rank_permutation(abs) << v.size()) | mask;
            }
            case Family::D: {
                const auto& v = std::get<DPerm>(c).img;
                std::uint64_t mask = 0;
                std::vector<std::int32_t> abs(v.size());
                for (std::size_t j = 0; j < v.size(); ++j) {
                    abs[j] = v[j] < 0 ? -v[j] : v[j];
                    if (v[j] < 0) mask |= 1ULL << j;
                }
                const std::uint64_t free = mask >> 1;
                if (((static_cast<std::uint64_t>(std::popcount(free)) ^ mask) & 1) != 0)
                    throw Error("odd sign parity in a D-factor component");
                return (detail::rank_permutation(abs) << (v.size() - 1)) | free;
            }
            case Family::I2: {
                const auto& d = std::get<Dihedral>(c);
                if (d.k == 0) return 0;
                if (d.k == d.m) return static_cast<std::uint64_t>(2 * d.m - 1);
                return static_cast<std::uint64_t>(2 * d.k - 1 + d.side);
            }
            default: {
                auto it = index.find(std::get<ReflMatrix>(c));
                if (it == index.end()) throw Error("matrix is not an element of this group");
                return it->second;
            }
        }
    }

    std::int32_t t_at(std::uint64_t i) const {
        if (stored()) return tvalues[i];
        return two_sided_descent(GroupElement{{element_at(i)}});
    }

    std::vector<std::uint64_t> length_histogram() const {
        std::vector<std::uint64_t> h;
        auto bump = [&](int l) {
            if (static_cast<std::size_t>(l) >= h.size()) h.resize(l + 1, 0);
            ++h[l];
        };
        if (stored()) {
            for (auto l : lengths) bump(l);
        } else {
            for (std::uint64_t i = 0; i < order; ++i) bump(detail::component_length(element_at(i)));
        }
        return h;
    }
};

/// Breadth-first enumeration of an exceptional group over its Cayley graph,
/// dedup by exact matrix. Fills lengths (= BFS depth), inverse indices and
/// two-sided descent values.
inline std::shared_ptr<const FactorTable> build_exceptional_table(Family f) {
    auto tbl = std::make_shared<FactorTable>();
    tbl->type = make_irreducible(f);
    const auto& rd = reflection_data(f);
    const int r = rd.rank;

    std::vector<std::uint32_t> parent_of, gen_of;
    tbl->elems.push_back(refl_identity(f));
    tbl->lengths.push_back(0);
    parent_of.push_back(0);
    gen_of.push_back(0);
    tbl->index.emplace(tbl->elems[0], 0);

    for (std::size_t head = 0; head < tbl->elems.size(); ++head) {
        const ReflMatrix cur = tbl->elems[head]; // copy: the vector reallocates
        const std::int32_t l = tbl->lengths[head];
        for (int i = 0; i < r; ++i) {
            ReflMatrix next = cur;
            refl_mul_gen_right(next, i);
            if (tbl->index.find(next) != tbl->index.end()) continue;
            const auto id = static_cast<std::uint32_t>(tbl->elems.size());
            tbl->index.emplace(next, id);
            tbl->elems.push_back(std::move(next));
            tbl->lengths.push_back(l + 1);
            parent_of.push_back(static_cast<std::uint32_t>(head));
            gen_of.push_back(static_cast<std::uint32_t>(i));
        }
    }
    tbl->order = tbl->elems.size();
    if (BigInt(tbl->order) != tbl->type.order())
        throw Error(std::string("enumeration of ") + tbl->type.name() + " found wrong order");

    // inverse indices in BFS order: w = u s  =>  w^{-1} = s u^{-1}, and
    // u^{-1} is at a strictly smaller length, hence already resolved
    std::vector<ReflMatrix> gens;
    for (int i = 0; i < r; ++i) gens.push_back(refl_generator(f, i));
    tbl->inverses.assign(tbl->order, 0);
    for (std::uint64_t i = 1; i < tbl->order; ++i) {
        const ReflMatrix inv = refl_mul(gens[gen_of[i]], tbl->elems[tbl->inverses[parent_of[i]]]);
        tbl->inverses[i] = tbl->index.at(inv);
    }

    tbl->descents.resize(tbl->order);
    tbl->tvalues.resize(tbl->order);
    for (std::uint64_t i = 0; i < tbl->order; ++i)
        tbl->descents[i] = refl_descent_count(tbl->elems[i]);
    for (std::uint64_t i = 0; i < tbl->order; ++i)
        tbl->tvalues[i] = tbl->descents[i] + tbl->descents[tbl->inverses[i]];
    return tbl;
}

inline std::shared_ptr<const FactorTable> build_factor_table(const IrreducibleType& t, std::uint64_t cap) {
    if (t.order() > cap)
        throw OrderExceedsCap("factor " + t.name() + " has order " + t.order().str() +
                              " exceeding cap " + std::to_string(cap));
    if (is_exceptional(t.family)) return build_exceptional_table(t.family);
    auto tbl = std::make_shared<FactorTable>();
    tbl->type = t;
    tbl->order = t.order().convert_to<std::uint64_t>();
    return tbl;
}

// ---------------------------------------------------------------------------
// on-disk cache of exceptional tables (binary, versioned)

namespace detail {

inline constexpr char table_magic[8] = {'C', 'S', 'T', 'A', 'B', 'L', 'E', '1'};

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};

} // namespace detail

inline void save_factor_table(const FactorTable& tbl, const std::string& path) {
    if (!tbl.stored()) throw Error("only exceptional tables are cached on disk");
    std::unique_ptr<std::FILE, detail::FileCloser> f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot write table cache: " + path);
    auto put = [&](const void* p, std::size_t n) {
        if (std::fwrite(p, 1, n, f.get()) != n) throw IoError("short write: " + path);
    };
    put(detail::table_magic, 8);
    const std::uint8_t fam = static_cast<std::uint8_t>(tbl.type.family);
    const std::uint8_t rank = static_cast<std::uint8_t>(tbl.type.rank());
    put(&fam, 1);
    put(&rank, 1);
    const std::uint64_t count = tbl.order;
    put(&count, 8);
    std::vector<std::int32_t> buf;
    buf.reserve(static_cast<std::size_t>(rank) * rank * 2);
    for (const auto& m : tbl.elems) {
        buf.clear();
        for (const auto& g : m.m) {
            buf.push_back(static_cast<std::int32_t>(g.a));
            buf.push_back(static_cast<std::int32_t>(g.b));
        }
        put(buf.data(), buf.size() * sizeof(std::int32_t));
    }
    put(tbl.lengths.data(), tbl.lengths.size() * sizeof(std::int32_t));
    put(tbl.inverses.data(), tbl.inverses.size() * sizeof(std::uint32_t));
}

inline std::shared_ptr<const FactorTable> load_factor_table(const std::string& path) {
    std::unique_ptr<std::FILE, detail::FileCloser> f(std::fopen(path.c_str(), "rb"));
    if (!f) return nullptr;
    auto get = [&](void* p, std::size_t n) {
        if (std::fread(p, 1, n, f.get()) != n) throw IoError("truncated table cache: " + path);
    };
    char magic[8];
    get(magic, 8);
    for (int i = 0; i < 8; ++i)
        if (magic[i] != detail::table_magic[i]) return nullptr; // stale or foreign file
    std::uint8_t fam = 0, rank = 0;
    get(&fam, 1);
    get(&rank, 1);
    std::uint64_t count = 0;
    get(&count, 8);

    auto tbl = std::make_shared<FactorTable>();
    tbl->type = make_irreducible(static_cast<Family>(fam));
    if (tbl->type.rank() != rank || BigInt(count) != tbl->type.order())
        throw IoError("table cache does not match its type: " + path);
    tbl->order = count;
    const int r = rank;
    std::vector<std::int32_t> buf(static_cast<std::size_t>(r) * r * 2);
    tbl->elems.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        get(buf.data(), buf.size() * sizeof(std::int32_t));
        ReflMatrix m;
        m.family = tbl->type.family;
        m.m.resize(static_cast<std::size_t>(r) * r);
        for (std::size_t k = 0; k < m.m.size(); ++k) m.m[k] = GoldenInt{buf[2 * k], buf[2 * k + 1]};
        tbl->index.emplace(m, static_cast<std::uint32_t>(i));
        tbl->elems.push_back(std::move(m));
    }
    tbl->lengths.resize(count);
    get(tbl->lengths.data(), count * sizeof(std::int32_t));
    tbl->inverses.resize(count);
    get(tbl->inverses.data(), count * sizeof(std::uint32_t));
    if (tbl->index.size() != count) throw IoError("duplicate matrices in table cache: " + path);

    tbl->descents.resize(count);
    tbl->tvalues.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        tbl->descents[i] = refl_descent_count(tbl->elems[i]);
    for (std::uint64_t i = 0; i < count; ++i)
        tbl->tvalues[i] = tbl->descents[i] + tbl->descents[tbl->inverses[i]];
    return tbl;
}

/// Registry of prebuilt exceptional tables, shared across sampling and
/// exact-law computation; optionally backed by an on-disk cache directory.
class ExceptionalTables {
  public:
    std::shared_ptr<const FactorTable> find(Family f) const {
        auto it = tables_.find(f);
        return it == tables_.end() ? nullptr : it->second;
    }

    const FactorTable& require(Family f) const {
        auto p = find(f);
        if (!p) throw TableMissing(std::string("no element table for ") + family_name(f));
        return *p;
    }

    void put(std::shared_ptr<const FactorTable> tbl) { tables_[tbl->type.family] = std::move(tbl); }

    /// Get-or-build. With a nonempty cache_dir, tries
    /// <cache_dir>/<name>.table first and saves after building.
    std::shared_ptr<const FactorTable> ensure(Family f, std::uint64_t cap, const std::string& cache_dir = "") {
        if (auto p = find(f)) return p;
        const IrreducibleType t = make_irreducible(f);
        if (t.order() > cap)
            throw TableMissing("table for " + t.name() + " not available and its order " +
                               t.order().str() + " exceeds cap " + std::to_string(cap));
        std::shared_ptr<const FactorTable> tbl;
        const std::string path = cache_dir.empty() ? "" : cache_dir + "/" + t.name() + ".table";
        if (!path.empty()) tbl = load_factor_table(path);
        if (!tbl) {
            tbl = build_exceptional_table(f);
            if (!path.empty()) save_factor_table(*tbl, path);
        }
        put(tbl);
        return find(f);
    }

  private:
    std::map<Family, std::shared_ptr<const FactorTable>> tables_;
};

// ---------------------------------------------------------------------------

/// All elements of a product group, addressable by index. Factors are mixed
/// radix, first factor most significant; storage is per factor, so memory is
/// the sum (not the product) of factor table sizes.
struct ElementTable {
    CoxeterGroup group;
    std::vector<std::shared_ptr<const FactorTable>> factors;
    std::uint64_t size = 1;

    GroupElement at(std::uint64_t i) const {
        GroupElement e;
        e.parts.resize(factors.size());
        for (std::size_t f = factors.size(); f-- > 0;) {
            const std::uint64_t o = factors[f]->order;
            e.parts[f] = factors[f]->element_at(i % o);
            i /= o;
        }
        return e;
    }

    std::uint64_t index_of(const GroupElement& e) const {
        if (e.parts.size() != factors.size()) throw GroupMismatch("element has wrong factor count");
        std::uint64_t i = 0;
        for (std::size_t f = 0; f < factors.size(); ++f)
            i = i * factors[f]->order + factors[f]->index_of(e.parts[f]);
        return i;
    }
};

inline ElementTable enumerate(const CoxeterGroup& g, std::uint64_t cap, ExceptionalTables* reuse = nullptr) {
    const BigInt order = g.order();
    if (order > cap)
        throw OrderExceedsCap("group " + g.name() + " has order " + order.str() +
                              " exceeding cap " + std::to_string(cap));
    ElementTable t;
    t.group = g;
    t.size = order.convert_to<std::uint64_t>();
    for (const auto& f : g.factors) {
        if (is_exceptional(f.family) && reuse) {
            t.factors.push_back(reuse->ensure(f.family, cap));
        } else {
            t.factors.push_back(build_factor_table(f, cap));
        }
    }
    return t;
}

} // namespace coxstat

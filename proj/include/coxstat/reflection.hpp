#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "coxstat/coxeter.hpp"
#include "coxstat/golden.hpp"

namespace coxstat {

/// Generator action data for the reflection representation of an exceptional
/// type, in the basis of simple roots: s_i(alpha_j) = alpha_j - a(i,j) alpha_i.
/// For the crystallographic types (F4, E6, E7, E8) a(i,j) is the integer
/// Cartan matrix; for H3/H4 the 5-bond contributes -phi, so entries live in
/// Z[phi]. Either way every group element is an exact integer(-pair) matrix.
struct ReflectionData {
    Family family;
    int rank = 0;
    std::vector<GoldenInt> cartan;              // row-major rank x rank
    std::vector<std::vector<GoldenInt>> posroots; // coordinates of positive roots

    const GoldenInt& a(int i, int j) const { return cartan[static_cast<std::size_t>(i) * rank + j]; }
};

namespace detail {

inline std::vector<GoldenInt> cartan_from_coxeter(const CoxeterMatrix& cm) {
    // bond m=2 -> 0, m=3 -> -1, m=4 -> the asymmetric -1/-2 pair (handled by
    // the caller), m=5 -> -phi
    std::vector<GoldenInt> a(static_cast<std::size_t>(cm.rank) * cm.rank, golden_zero());
    for (int i = 0; i < cm.rank; ++i) {
        for (int j = 0; j < cm.rank; ++j) {
            if (i == j) { a[static_cast<std::size_t>(i) * cm.rank + j] = GoldenInt{2, 0}; continue; }
            switch (cm.at(i, j)) {
                case 2: break;
                case 3: a[static_cast<std::size_t>(i) * cm.rank + j] = GoldenInt{-1, 0}; break;
                case 5: a[static_cast<std::size_t>(i) * cm.rank + j] = GoldenInt{0, -1}; break;
                default: throw Error("unsupported bond in reflection data");
            }
        }
    }
    return a;
}

inline std::vector<std::vector<GoldenInt>> close_positive_roots(const ReflectionData& rd) {
    // closure of the simple roots under the simple reflections, keeping the
    // positive ones; roots are compared by exact coordinates
    struct VecHash {
        std::size_t operator()(const std::vector<GoldenInt>& v) const noexcept {
            std::size_t h = 0xcbf29ce484222325ULL;
            std::hash<GoldenInt> hg;
            for (const auto& g : v) h = (h ^ hg(g)) * 0x100000001b3ULL;
            return h;
        }
    };
    const int r = rd.rank;
    std::unordered_map<std::vector<GoldenInt>, bool, VecHash> seen;
    std::vector<std::vector<GoldenInt>> queue;
    for (int i = 0; i < r; ++i) {
        std::vector<GoldenInt> e(r, golden_zero());
        e[i] = golden_one();
        seen.emplace(e, true);
        queue.push_back(std::move(e));
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto root = queue[head];
        for (int i = 0; i < r; ++i) {
            // s_i(root) = root - <sum_j a(i,j) c_j> e_i
            GoldenInt pairing = golden_zero();
            for (int j = 0; j < r; ++j) pairing = pairing + rd.a(i, j) * root[j];
            auto img = root;
            img[i] = img[i] - pairing;
            bool positive = true;
            for (const auto& c : img)
                if (c.sign() < 0) { positive = false; break; }
            if (!positive) continue;
            if (seen.emplace(img, true).second) queue.push_back(std::move(img));
        }
    }
    return queue;
}

} // namespace detail

/// Reflection data per exceptional family, built once and cached.
inline const ReflectionData& reflection_data(Family f) {
    static const std::unordered_map<int, ReflectionData>* cache = [] {
        auto* m = new std::unordered_map<int, ReflectionData>();
        for (Family fam : {Family::H3, Family::H4, Family::F4, Family::E6, Family::E7, Family::E8}) {
            const IrreducibleType t = make_irreducible(fam);
            ReflectionData rd;
            rd.family = fam;
            rd.rank = t.rank();
            if (fam == Family::F4) {
                // long roots 0,1; short roots 2,3; the 4-bond is asymmetric
                rd.cartan.assign(16, golden_zero());
                auto set = [&](int i, int j, std::int64_t v) { rd.cartan[static_cast<std::size_t>(i) * 4 + j] = GoldenInt{v, 0}; };
                for (int i = 0; i < 4; ++i) set(i, i, 2);
                set(0, 1, -1); set(1, 0, -1);
                set(1, 2, -1); set(2, 1, -2);
                set(2, 3, -1); set(3, 2, -1);
            } else {
                rd.cartan = detail::cartan_from_coxeter(coxeter_matrix(t));
            }
            rd.posroots = detail::close_positive_roots(rd);
            m->emplace(static_cast<int>(fam), std::move(rd));
        }
        return m;
    }();
    auto it = cache->find(static_cast<int>(f));
    if (it == cache->end()) throw Error("reflection data exists for exceptional families only");
    return it->second;
}

/// Group element of an exceptional factor: exact matrix in the reflection
/// representation, columns = images of the simple roots.
struct ReflMatrix {
    Family family = Family::H3;
    std::vector<GoldenInt> m; // row-major rank x rank

    int rank() const { return reflection_data(family).rank; }
    const GoldenInt& at(int i, int j, int r) const { return m[static_cast<std::size_t>(i) * r + j]; }
    GoldenInt& at(int i, int j, int r) { return m[static_cast<std::size_t>(i) * r + j]; }

    friend bool operator==(const ReflMatrix& x, const ReflMatrix& y) {
        return x.family == y.family && x.m == y.m;
    }
};

inline ReflMatrix refl_identity(Family f) {
    const auto& rd = reflection_data(f);
    ReflMatrix e;
    e.family = f;
    e.m.assign(static_cast<std::size_t>(rd.rank) * rd.rank, golden_zero());
    for (int i = 0; i < rd.rank; ++i) e.at(i, i, rd.rank) = golden_one();
    return e;
}

inline bool refl_is_identity(const ReflMatrix& x) {
    const int r = x.rank();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (!(x.at(i, j, r) == (i == j ? golden_one() : golden_zero()))) return false;
    return true;
}

inline ReflMatrix refl_mul(const ReflMatrix& x, const ReflMatrix& y) {
    if (x.family != y.family) throw GroupMismatch("reflection matrices from different groups");
    const int r = x.rank();
    ReflMatrix z;
    z.family = x.family;
    z.m.assign(static_cast<std::size_t>(r) * r, golden_zero());
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const GoldenInt xik = x.at(i, k, r);
            if (xik.is_zero()) continue;
            for (int j = 0; j < r; ++j) z.at(i, j, r) = z.at(i, j, r) + xik * y.at(k, j, r);
        }
    return z;
}

/// In-place right multiplication by the simple reflection s_i:
/// column_j -= a(i,j) * column_i for every j.
inline void refl_mul_gen_right(ReflMatrix& x, int i) {
    const auto& rd = reflection_data(x.family);
    const int r = rd.rank;
    std::vector<GoldenInt> col(r);
    for (int k = 0; k < r; ++k) col[k] = x.at(k, i, r);
    for (int j = 0; j < r; ++j) {
        const GoldenInt aij = rd.a(i, j);
        if (aij.is_zero()) continue;
        for (int k = 0; k < r; ++k) x.at(k, j, r) = x.at(k, j, r) - aij * col[k];
    }
}

inline ReflMatrix refl_generator(Family f, int i) {
    ReflMatrix g = refl_identity(f);
    refl_mul_gen_right(g, i);
    return g;
}

/// w has a right descent at i iff w(alpha_i) is a negative root, i.e. the
/// i-th column is nonpositive.
inline bool refl_descent(const ReflMatrix& x, int i) {
    const int r = x.rank();
    for (int k = 0; k < r; ++k)
        if (x.at(k, i, r).sign() > 0) return false;
    return true;
}

inline int refl_descent_count(const ReflMatrix& x) {
    int c = 0;
    for (int i = 0; i < x.rank(); ++i)
        if (refl_descent(x, i)) ++c;
    return c;
}

/// Coxeter length: the number of positive roots mapped to negative roots.
inline int refl_length(const ReflMatrix& x) {
    const auto& rd = reflection_data(x.family);
    const int r = rd.rank;
    int len = 0;
    for (const auto& root : rd.posroots) {
        // first nonzero coordinate of x * root decides the sign
        for (int i = 0; i < r; ++i) {
            GoldenInt c = golden_zero();
            for (int j = 0; j < r; ++j) c = c + x.at(i, j, r) * root[j];
            const int s = c.sign();
            if (s != 0) {
                if (s < 0) ++len;
                break;
            }
        }
    }
    return len;
}

/// Inverse via the group's finiteness: the smallest k with w^k = e gives
/// w^{-1} = w^{k-1}. Element orders are tiny compared to |W|.
inline ReflMatrix refl_inverse(const ReflMatrix& x) {
    if (refl_is_identity(x)) return x;
    ReflMatrix prev = x;
    ReflMatrix cur = refl_mul(x, x);
    while (!refl_is_identity(cur)) {
        prev = cur;
        cur = refl_mul(cur, x);
    }
    return prev;
}

struct ReflMatrixHash {
    std::size_t operator()(const ReflMatrix& x) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL ^ static_cast<std::size_t>(x.family);
        std::hash<GoldenInt> hg;
        for (const auto& g : x.m) h = (h ^ hg(g)) * 0x100000001b3ULL;
        return h;
    }
};

} // namespace coxstat

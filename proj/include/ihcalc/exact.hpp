#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ihcalc/core.hpp"

namespace ih {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Coefficient ring selector carried by presentations and reports.
struct RingInfo {
    enum Kind { Z, Q, Fp } kind = Z;
    uint64_t p = 0;  // modulus when kind == Fp

    std::string str() const;
    static RingInfo parse(const std::string& s);  // "z", "q", "f2", "f17", ...
    bool is_field() const { return kind != Z; }
    friend bool operator==(const RingInfo& a, const RingInfo& b) {
        return a.kind == b.kind && (a.kind != Fp || a.p == b.p);
    }
};

// --- coefficient operations --------------------------------------------------
// Generic elimination code is parameterized on a small ops object. Fp carries
// its modulus at runtime; Z and Q are stateless.

struct ZOps {
    using value = Int;
    static value zero() { return 0; }
    static value one() { return 1; }
    static bool is_zero(const value& a) { return a == 0; }
    static value neg(const value& a) { return -a; }
    static value add(const value& a, const value& b) { return a + b; }
    static value sub(const value& a, const value& b) { return a - b; }
    static value mul(const value& a, const value& b) { return a * b; }
};

struct QOps {
    using value = Rational;
    static value zero() { return 0; }
    static value one() { return 1; }
    static bool is_zero(const value& a) { return a == 0; }
    static value neg(const value& a) { return -a; }
    static value add(const value& a, const value& b) { return a + b; }
    static value sub(const value& a, const value& b) { return a - b; }
    static value mul(const value& a, const value& b) { return a * b; }
    static value inv(const value& a) { return 1 / a; }
    static value div(const value& a, const value& b) { return a / b; }
    static value from_int(const Int& n) { return Rational(n); }
};

struct FpOps {
    using value = uint64_t;
    uint64_t p = 0;  // a default-constructed instance must be reassigned before use

    FpOps() = default;
    explicit FpOps(uint64_t prime) : p(prime) {}
    value zero() const { return 0; }
    value one() const { return 1 % p; }
    bool is_zero(value a) const { return a == 0; }
    value neg(value a) const { return a == 0 ? 0 : p - a; }
    value add(value a, value b) const { return (a + b) % p; }
    value sub(value a, value b) const { return (a + p - b) % p; }
    value mul(value a, value b) const {
        return static_cast<value>((static_cast<unsigned __int128>(a) * b) % p);
    }
    value inv(value a) const;
    value div(value a, value b) const { return mul(a, inv(b)); }
    value from_int(const Int& n) const {
        Int r = n % Int(p);
        if (r < 0) r += p;
        return r.convert_to<uint64_t>();
    }
};

// --- sparse columns ----------------------------------------------------------

template <class T>
using SparseVec = std::map<int, T>;  // row -> value, zero entries absent

// Sparse matrix stored column-wise; rows are plain indices.
template <class T>
struct SparseMat {
    int rows = 0;
    std::vector<SparseVec<T>> cols;

    int ncols() const { return static_cast<int>(cols.size()); }
    void set(int r, int c, T v) {
        if (!(v == T{})) cols[c][r] = std::move(v);
    }
    long nnz() const {
        long n = 0;
        for (auto& c : cols) n += static_cast<long>(c.size());
        return n;
    }
};

using SparseMatZ = SparseMat<Int>;

// y += a * x
template <class Ops>
void axpy(const Ops& ops, const typename Ops::value& a,
          const SparseVec<typename Ops::value>& x, SparseVec<typename Ops::value>& y) {
    if (ops.is_zero(a)) return;
    for (const auto& [r, v] : x) {
        auto it = y.find(r);
        if (it == y.end()) {
            auto nv = ops.mul(a, v);
            if (!ops.is_zero(nv)) y.emplace(r, std::move(nv));
        } else {
            it->second = ops.add(it->second, ops.mul(a, v));
            if (ops.is_zero(it->second)) y.erase(it);
        }
    }
}

// Sparse product A*B (both column-stored).
template <class Ops>
SparseMat<typename Ops::value> sparse_mul(const Ops& ops, const SparseMat<typename Ops::value>& A,
                                          const SparseMat<typename Ops::value>& B) {
    SparseMat<typename Ops::value> C;
    C.rows = A.rows;
    C.cols.resize(B.ncols());
    for (int j = 0; j < B.ncols(); ++j)
        for (const auto& [k, v] : B.cols[j]) axpy(ops, v, A.cols[k], C.cols[j]);
    return C;
}

template <class T>
bool is_zero_mat(const SparseMat<T>& A) {
    for (auto& c : A.cols)
        if (!c.empty()) return false;
    return true;
}

// Convert an integer matrix into ring coefficients.
SparseMat<Rational> to_rational(const SparseMatZ& A);
SparseMat<uint64_t> to_fp(const SparseMatZ& A, const FpOps& ops);

}  // namespace ih

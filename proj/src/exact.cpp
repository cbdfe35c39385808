#include "ihcalc/exact.hpp"

namespace ih {

std::string RingInfo::str() const {
    switch (kind) {
        case Z: return "z";
        case Q: return "q";
        case Fp: return "f" + std::to_string(p);
    }
    return "?";
}

RingInfo RingInfo::parse(const std::string& s) {
    if (s == "z" || s == "Z") return {Z, 0};
    if (s == "q" || s == "Q") return {Q, 0};
    if ((s.size() > 1) && (s[0] == 'f' || s[0] == 'F')) {
        uint64_t p = 0;
        for (size_t i = 1; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') fail(errc::parse_error, "bad ring: " + s);
            p = p * 10 + (s[i] - '0');
        }
        if (p < 2) fail(errc::parse_error, "bad field characteristic: " + s);
        for (uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) fail(errc::parse_error, "field characteristic not prime: " + s);
        return {Fp, p};
    }
    fail(errc::parse_error, "unknown ring: " + s + " (expected z, q or f<p>)");
}

uint64_t FpOps::inv(uint64_t a) const {
    if (a == 0) fail(errc::internal, "Fp: inverse of zero");
    // Extended Euclid on (a, p).
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) fail(errc::internal, "Fp: not invertible");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(p) : t);
}

SparseMat<Rational> to_rational(const SparseMatZ& A) {
    SparseMat<Rational> B;
    B.rows = A.rows;
    B.cols.resize(A.ncols());
    for (int j = 0; j < A.ncols(); ++j)
        for (const auto& [r, v] : A.cols[j]) B.cols[j][r] = Rational(v);
    return B;
}

SparseMat<uint64_t> to_fp(const SparseMatZ& A, const FpOps& ops) {
    SparseMat<uint64_t> B;
    B.rows = A.rows;
    B.cols.resize(A.ncols());
    for (int j = 0; j < A.ncols(); ++j)
        for (const auto& [r, v] : A.cols[j]) {
            uint64_t x = ops.from_int(v);
            if (x != 0) B.cols[j][r] = x;
        }
    return B;
}

}  // namespace ih

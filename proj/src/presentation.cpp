#include "ihcalc/presentation.hpp"

#include <algorithm>

namespace ih {

namespace {

// Ring-specific kernel/span/solve selection.
template <class Ops>
struct RingTraits {
    using T = typename Ops::value;
    static T from_int(const Ops& ops, int n) {
        if constexpr (std::is_same_v<Ops, ZOps>)
            return Int(n);
        else if constexpr (std::is_same_v<Ops, QOps>)
            return Rational(n);
        else
            return ops.from_int(Int(n));
    }
};

// Boundary index table: per degree, per simplex, its facets with signs.
struct BoundaryTable {
    // facets[d][i] = list of (facet index in dim d-1, sign)
    std::vector<std::vector<std::vector<std::pair<int, int>>>> facets;

    static BoundaryTable build(const FilteredComplex& K) {
        BoundaryTable t;
        t.facets.resize(K.top_dim() + 1);
        for (int d = 1; d <= K.top_dim(); ++d) {
            t.facets[d].resize(K.count(d));
            for (int i = 0; i < K.count(d); ++i) {
                const Simplex& s = K.simplices(d)[i];
                auto& out = t.facets[d][i];
                for (size_t drop = 0; drop < s.size(); ++drop) {
                    Simplex f;
                    f.reserve(s.size() - 1);
                    for (size_t j = 0; j < s.size(); ++j)
                        if (j != drop) f.push_back(s[j]);
                    out.push_back({*K.find(f), drop % 2 == 0 ? 1 : -1});
                }
            }
        }
        return t;
    }
};

}  // namespace

template <class Ops>
SparseVec<typename Ops::value> Presentation<Ops>::Degree::solve(
    const Ops& ops, const SparseVec<T>& chain_global) const {
    SparseVec<T> residual = chain_global;
    SparseVec<T> y;
    for (int j = 0; j < rank(); ++j) {
        auto it = residual.find(pivots[j]);
        if (it == residual.end()) continue;
        T q;
        if constexpr (std::is_same_v<Ops, ZOps>) {
            const T& pv = basis[j].at(pivots[j]);
            if (it->second % pv != 0)
                fail(errc::internal, "presentation solve: chain not in module");
            q = it->second / pv;
        } else {
            q = ops.div(it->second, basis[j].at(pivots[j]));
        }
        axpy(ops, ops.neg(q), basis[j], residual);
        if (!ops.is_zero(q)) y[j] = q;
    }
    if (!residual.empty()) fail(errc::internal, "presentation solve: chain not in module");
    return y;
}

namespace {

template <class Ops>
RingInfo ring_info_of(const Ops& ops) {
    if constexpr (std::is_same_v<Ops, ZOps>)
        return RingInfo{RingInfo::Z, 0};
    else if constexpr (std::is_same_v<Ops, QOps>)
        return RingInfo{RingInfo::Q, 0};
    else
        return RingInfo{RingInfo::Fp, ops.p};
}

// Echelonize columns over the ring; pivot rows returned alongside. For Z this
// yields a lattice basis of the span, for fields a vector-space basis.
template <class Ops>
void span_columns(const Ops& ops, int rows, const std::vector<SparseVec<typename Ops::value>>& gens,
                  std::vector<SparseVec<typename Ops::value>>& basis_out,
                  std::vector<int>& pivots_out,
                  std::vector<SparseVec<typename Ops::value>>* combos) {
    if constexpr (std::is_same_v<Ops, ZOps>) {
        ZBasis b = z_column_span(rows, gens, combos);
        basis_out = std::move(b.cols);
        pivots_out = std::move(b.pivot_rows);
    } else {
        FieldBasis<Ops> b = field_column_span(ops, rows, gens, combos);
        basis_out = std::move(b.cols);
        pivots_out = std::move(b.pivot_rows);
    }
}

template <class Ops>
void kernel_columns(const Ops& ops, const SparseMat<typename Ops::value>& A,
                    std::vector<SparseVec<typename Ops::value>>& basis_out,
                    std::vector<int>& pivots_out) {
    if constexpr (std::is_same_v<Ops, ZOps>) {
        ZBasis b = z_kernel(A);
        basis_out = std::move(b.cols);
        pivots_out = std::move(b.pivot_rows);
    } else {
        FieldBasis<Ops> b = field_kernel(ops, A);
        basis_out = std::move(b.cols);
        pivots_out = std::move(b.pivot_rows);
    }
}

template <class Ops>
void verify_dd_zero(const Presentation<Ops>& P) {
    for (int k = 2; k <= P.max_degree(); ++k) {
        auto prod = sparse_mul(P.ops, P.degs[k - 1].d, P.degs[k].d);
        if (!is_zero_mat(prod))
            fail(errc::inconsistent_complex, "d o d != 0 at degree " + std::to_string(k));
    }
}

}  // namespace

template <class Ops>
Presentation<Ops> build_presentation(const Space& X, const Ops& ops, const Perversity* p,
                                     bool tame, const SimplexSubset* domain) {
    using T = typename Ops::value;
    const FilteredComplex& K = X.complex;
    const int D = K.top_dim();

    AdmissibilityTable table = p ? admissibility_table(X, *p) : all_admissible_table(X);
    BoundaryTable bt = BoundaryTable::build(K);

    auto in_domain = [&](int d, int i) { return domain == nullptr || domain->contains(d, i); };
    auto eligible = [&](int d, int i) {
        return in_domain(d, i) && table.admissible[d][i] && (!tame || table.regular[d][i]);
    };
    // Rows whose coordinates must cancel for a chain to stay in the module.
    auto bad = [&](int d, int i) {
        return in_domain(d, i) && (!tame || table.regular[d][i]) && !table.admissible[d][i];
    };

    Presentation<Ops> P;
    P.ops = ops;
    P.ring = ring_info_of(ops);
    P.tame = tame;
    P.label = K.name;
    P.degs.resize(D + 1);

    std::vector<std::vector<int>> ambient(D + 1), bad_cells(D + 1);
    for (int d = 0; d <= D; ++d)
        for (int i = 0; i < K.count(d); ++i) {
            if (eligible(d, i)) ambient[d].push_back(i);
            else if (bad(d, i)) bad_cells[d].push_back(i);
        }

    // Boundary of a global chain, with singular faces dropped in the tame case.
    auto boundary_global = [&](int k, const SparseVec<T>& chain) {
        SparseVec<T> out;
        for (const auto& [idx, coeff] : chain)
            for (const auto& [fidx, sign] : bt.facets[k][idx]) {
                if (tame && !table.regular[k - 1][fidx]) continue;
                T delta = ops.mul(coeff, RingTraits<Ops>::from_int(ops, sign));
                auto it = out.find(fidx);
                if (it == out.end()) {
                    if (!ops.is_zero(delta)) out.emplace(fidx, std::move(delta));
                } else {
                    it->second = ops.add(it->second, delta);
                    if (ops.is_zero(it->second)) out.erase(it);
                }
            }
        return out;
    };

    for (int k = 0; k <= D; ++k) {
        auto& deg = P.degs[k];
        deg.ambient = ambient[k];
        const auto& bad_rows = k > 0 ? bad_cells[k - 1] : std::vector<int>{};
        if (bad_rows.empty()) {
            // Unit basis: the whole admissible span qualifies.
            for (int idx : deg.ambient) {
                SparseVec<T> col;
                col[idx] = ops.one();
                deg.basis.push_back(std::move(col));
                deg.pivots.push_back(idx);
            }
        } else {
            std::map<int, int> bad_compact;
            for (int r : bad_rows) bad_compact[r] = static_cast<int>(bad_compact.size());
            SparseMat<T> M;
            M.rows = static_cast<int>(bad_rows.size());
            M.cols.reserve(ambient[k].size());
            for (int idx : ambient[k]) {
                SparseVec<T> col;
                for (const auto& [fidx, sign] : bt.facets[k][idx]) {
                    auto it = bad_compact.find(fidx);
                    if (it != bad_compact.end())
                        col[it->second] = RingTraits<Ops>::from_int(ops, sign);
                }
                M.cols.push_back(std::move(col));
            }
            std::vector<SparseVec<T>> kb;
            std::vector<int> kp;
            kernel_columns(ops, M, kb, kp);
            // Kernel coordinates are over the compact ambient list; expand to
            // global rows (monotone reindexing keeps the echelon property).
            for (size_t j = 0; j < kb.size(); ++j) {
                SparseVec<T> col;
                for (const auto& [aj, v] : kb[j]) col[ambient[k][aj]] = v;
                deg.basis.push_back(std::move(col));
                deg.pivots.push_back(ambient[k][kp[j]]);
            }
        }
    }

    for (int k = 0; k <= D; ++k) {
        auto& deg = P.degs[k];
        deg.d.rows = k > 0 ? P.degs[k - 1].rank() : 0;
        deg.d.cols.resize(deg.rank());
        if (k == 0) continue;
        for (int j = 0; j < deg.rank(); ++j) {
            SparseVec<T> db = boundary_global(k, deg.basis[j]);
            deg.d.cols[j] = P.degs[k - 1].solve(ops, db);
        }
    }

    verify_dd_zero(P);
    return P;
}

template <class Ops>
Presentation<Ops> build_quotient(const Space& X, const Presentation<Ops>& absolute,
                                 const SimplexSubset& L) {
    using T = typename Ops::value;
    const Ops& ops = absolute.ops;
    const int D = absolute.max_degree();

    Presentation<Ops> Q;
    Q.ops = ops;
    Q.ring = absolute.ring;
    Q.tame = absolute.tame;
    Q.label = absolute.label + " (rel)";
    Q.degs.resize(D + 1);

    auto drop_L = [&](int k, const SparseVec<T>& chain) {
        SparseVec<T> out;
        for (const auto& [idx, v] : chain)
            if (!L.contains(k, idx)) out.emplace(idx, v);
        return out;
    };

    const int nrows = [&] {
        int m = 0;
        for (int d = 0; d <= X.complex.top_dim(); ++d) m = std::max(m, X.complex.count(d));
        return m;
    }();

    for (int k = 0; k <= D; ++k) {
        std::vector<SparseVec<T>> gens;
        gens.reserve(absolute.degs[k].basis.size());
        for (const auto& col : absolute.degs[k].basis) gens.push_back(drop_L(k, col));
        std::vector<SparseVec<T>> combos;
        span_columns(ops, nrows, gens, Q.degs[k].basis, Q.degs[k].pivots, &combos);
        Q.degs[k].lift = std::move(combos);
        for (int idx : absolute.degs[k].ambient)
            if (!L.contains(k, idx)) Q.degs[k].ambient.push_back(idx);
    }

    // Induced differential via lifts: d_rel(col) = drop_L(d(lift)).
    for (int k = 0; k <= D; ++k) {
        auto& deg = Q.degs[k];
        deg.d.rows = k > 0 ? Q.degs[k - 1].rank() : 0;
        deg.d.cols.resize(deg.rank());
        if (k == 0) continue;
        for (int j = 0; j < deg.rank(); ++j) {
            // Lift to the absolute presented coordinates, apply d there.
            SparseVec<T> d_abs;
            for (const auto& [i, c] : deg.lift[j]) axpy(ops, c, absolute.degs[k].d.cols[i], d_abs);
            // Expand to global rows, drop L, solve in the quotient basis.
            SparseVec<T> global;
            for (const auto& [i, c] : d_abs) axpy(ops, c, absolute.degs[k - 1].basis[i], global);
            deg.d.cols[j] = Q.degs[k - 1].solve(ops, drop_L(k - 1, global));
        }
    }

    verify_dd_zero(Q);
    return Q;
}

template <class Ops>
Presentation<Ops> build_sum(const Space& X, const Presentation<Ops>& K1,
                            const Presentation<Ops>& K2) {
    using T = typename Ops::value;
    const Ops& ops = K1.ops;
    const int D = std::max(K1.max_degree(), K2.max_degree());
    if (K1.tame != K2.tame) fail(errc::internal, "build_sum: variant mismatch");

    Presentation<Ops> S;
    S.ops = ops;
    S.ring = K1.ring;
    S.tame = K1.tame;
    S.label = K1.label + " + " + K2.label;
    S.degs.resize(D + 1);

    const int nrows = [&] {
        int m = 0;
        for (int d = 0; d <= X.complex.top_dim(); ++d) m = std::max(m, X.complex.count(d));
        return m;
    }();

    for (int k = 0; k <= D; ++k) {
        std::vector<SparseVec<T>> gens;
        for (int j = 0; j < K1.rank(k); ++j) gens.push_back(K1.degs[k].basis[j]);
        for (int j = 0; j < K2.rank(k); ++j) gens.push_back(K2.degs[k].basis[j]);
        std::vector<SparseVec<T>> combos;
        span_columns(ops, nrows, gens, S.degs[k].basis, S.degs[k].pivots, &combos);
        S.degs[k].lift = std::move(combos);
    }

    // The differential restricts to the sum: d(col) computed through either
    // term's lift (they agree in global coordinates).
    for (int k = 0; k <= D; ++k) {
        auto& deg = S.degs[k];
        deg.d.rows = k > 0 ? S.degs[k - 1].rank() : 0;
        deg.d.cols.resize(deg.rank());
        if (k == 0) continue;
        for (int j = 0; j < deg.rank(); ++j) {
            SparseVec<T> global;
            for (const auto& [g, c] : deg.lift[j]) {
                if (g < K1.rank(k)) {
                    for (const auto& [i, cc] : K1.degs[k].d.cols[g])
                        axpy(ops, ops.mul(c, cc), K1.degs[k - 1].basis[i], global);
                } else {
                    for (const auto& [i, cc] : K2.degs[k].d.cols[g - K1.rank(k)])
                        axpy(ops, ops.mul(c, cc), K2.degs[k - 1].basis[i], global);
                }
            }
            deg.d.cols[j] = S.degs[k - 1].solve(ops, global);
        }
    }

    verify_dd_zero(S);
    return S;
}

template <class Ops>
Presentation<Ops> build_relative_complex(const Space& X, const SimplexSubset& L,
                                         const Perversity& p, const Ops& ops, bool tame) {
    if (!is_full_subcomplex(X.complex, L))
        fail(errc::not_full_subcomplex, "relative complex requires a full subcomplex");
    Presentation<Ops> abs = build_presentation(X, ops, &p, tame);
    return build_quotient(X, abs, L);
}

template <class Ops>
Presentation<Ops> ordinary_presentation(const Space& X, const Ops& ops,
                                        const SimplexSubset* domain) {
    return build_presentation(X, ops, nullptr, false, domain);
}

template <class Ops>
Presentation<Ops> ordinary_relative_presentation(const Space& X, const SimplexSubset& L,
                                                 const Ops& ops) {
    Presentation<Ops> abs = build_presentation(X, ops, nullptr, false);
    return build_quotient(X, abs, L);
}

// Explicit instantiations.
template struct Presentation<ZOps>;
template struct Presentation<QOps>;
template struct Presentation<FpOps>;

#define IH_INSTANTIATE(Ops)                                                                       \
    template Presentation<Ops> build_presentation<Ops>(const Space&, const Ops&,                  \
                                                       const Perversity*, bool,                   \
                                                       const SimplexSubset*);                     \
    template Presentation<Ops> build_quotient<Ops>(const Space&, const Presentation<Ops>&,        \
                                                   const SimplexSubset&);                         \
    template Presentation<Ops> build_sum<Ops>(const Space&, const Presentation<Ops>&,             \
                                              const Presentation<Ops>&);                          \
    template Presentation<Ops> build_relative_complex<Ops>(const Space&, const SimplexSubset&,    \
                                                           const Perversity&, const Ops&, bool);  \
    template Presentation<Ops> ordinary_presentation<Ops>(const Space&, const Ops&,               \
                                                          const SimplexSubset*);                  \
    template Presentation<Ops> ordinary_relative_presentation<Ops>(const Space&,                  \
                                                                   const SimplexSubset&,          \
                                                                   const Ops&);

IH_INSTANTIATE(ZOps)
IH_INSTANTIATE(QOps)
IH_INSTANTIATE(FpOps)
#undef IH_INSTANTIATE

}  // namespace ih

#include "ihcalc/les.hpp"

#include <algorithm>

#include "ihcalc/constructors.hpp"

namespace ih {

namespace {

template <class Ops>
SparseVec<typename Ops::value> mat_apply(const Ops& ops,
                                         const SparseMat<typename Ops::value>& A,
                                         const SparseVec<typename Ops::value>& x) {
    SparseVec<typename Ops::value> out;
    for (const auto& [j, v] : x) axpy(ops, v, A.cols[j], out);
    return out;
}

// Reduce v against an ordered echelonized reducer list; coefficients of
// reducers flagged as homology representatives are collected.
template <class Ops>
SparseVec<typename Ops::value> reduce_against(
    const Ops& ops, const std::vector<SparseVec<typename Ops::value>>& reducers,
    const std::vector<int>& pivots, const std::vector<int>& rep_index,
    SparseVec<typename Ops::value> v, bool* fully_reduced) {
    SparseVec<typename Ops::value> coords;
    for (size_t j = 0; j < reducers.size(); ++j) {
        auto it = v.find(pivots[j]);
        if (it == v.end()) continue;
        auto q = ops.div(it->second, reducers[j].at(pivots[j]));
        axpy(ops, ops.neg(q), reducers[j], v);
        if (rep_index[j] >= 0 && !ops.is_zero(q)) coords[rep_index[j]] = q;
    }
    if (fully_reduced) *fully_reduced = v.empty();
    return coords;
}

}  // namespace

template <class Ops>
SparseVec<typename Ops::value> HomologyWithReps<Ops>::class_coords(
    int k, const SparseVec<T>& cycle) const {
    if (k < 0 || k >= static_cast<int>(degs.size())) {
        if (!cycle.empty()) fail(errc::internal, "class_coords: degree out of range");
        return {};
    }
    const auto& D = degs[k];
    bool ok = false;
    auto coords = reduce_against(ops, D.reducers, D.reducer_pivots, D.rep_index, cycle, &ok);
    if (!ok) fail(errc::internal, "class_coords: chain is not a cycle in the span");
    return coords;
}

template <class Ops>
HomologyWithReps<Ops> homology_with_reps(const Presentation<Ops>& P) {
    static_assert(!std::is_same_v<Ops, ZOps>, "homology with representatives is field-only");
    HomologyWithReps<Ops> H;
    H.ops = P.ops;
    const Ops& ops = P.ops;
    const int D = P.max_degree();
    H.degs.resize(D + 1);

    for (int k = 0; k <= D; ++k) {
        auto& deg = H.degs[k];
        auto insert = [&](SparseVec<typename Ops::value> v, int rep, const SparseVec<typename Ops::value>* orig) {
            // Reduce against existing reducers, then append if independent.
            for (size_t j = 0; j < deg.reducers.size(); ++j) {
                auto it = v.find(deg.reducer_pivots[j]);
                if (it == v.end()) continue;
                auto q = ops.div(it->second, deg.reducers[j].at(deg.reducer_pivots[j]));
                axpy(ops, ops.neg(q), deg.reducers[j], v);
            }
            if (v.empty()) return false;
            deg.reducer_pivots.push_back(v.begin()->first);
            deg.reducers.push_back(std::move(v));
            deg.rep_index.push_back(rep);
            if (rep >= 0 && orig) deg.reps.push_back(*orig);
            return true;
        };

        // Boundaries first.
        if (k + 1 <= D) {
            const auto& dK = P.degs[k + 1].d;
            for (int j = 0; j < dK.ncols(); ++j) insert(dK.cols[j], -1, nullptr);
        }
        // Then cycles; survivors become homology representatives.
        FieldBasis<Ops> cycles = field_kernel(ops, P.degs[k].d);
        for (int j = 0; j < cycles.dim(); ++j) {
            if (insert(cycles.cols[j], deg.h_dim, &cycles.cols[j])) deg.h_dim += 1;
        }
    }
    return H;
}

// --- pair LES -------------------------------------------------------------------

template <class Ops>
LESData<Ops> pair_les(const Space& X, const SimplexSubset& L, const Perversity& p,
                      const Ops& ops, bool tame) {
    using T = typename Ops::value;
    if (!is_full_subcomplex(X.complex, L))
        fail(errc::not_full_subcomplex, "pair_les: L must be a full subcomplex");

    Presentation<Ops> PB = build_presentation(X, ops, &p, tame);
    Presentation<Ops> PA = build_presentation(X, ops, &p, tame, &L);
    Presentation<Ops> PC = build_quotient(X, PB, L);

    auto HA = homology_with_reps(PA);
    auto HB = homology_with_reps(PB);
    auto HC = homology_with_reps(PC);

    const int D = PB.max_degree();

    auto drop_L = [&](int k, const SparseVec<T>& chain) {
        SparseVec<T> out;
        for (const auto& [idx, v] : chain)
            if (!L.contains(k, idx)) out.emplace(idx, v);
        return out;
    };

    // Chain maps in presented coordinates.
    std::vector<SparseMat<T>> f(D + 1), g(D + 1);
    for (int k = 0; k <= D; ++k) {
        f[k].rows = PB.rank(k);
        f[k].cols.resize(PA.rank(k));
        for (int j = 0; j < PA.rank(k); ++j)
            f[k].cols[j] = PB.degs[k].solve(ops, PA.degs[k].basis[j]);
        g[k].rows = PC.rank(k);
        g[k].cols.resize(PB.rank(k));
        for (int j = 0; j < PB.rank(k); ++j)
            g[k].cols[j] = PC.degs[k].solve(ops, drop_L(k, PB.degs[k].basis[j]));
    }

    LESData<Ops> les;
    auto push_module = [&](int dim, const std::string& label) {
        les.dims.push_back(dim);
        les.labels.push_back(label);
    };

    // Leading zero makes the top slot interior.
    push_module(0, "0");
    std::vector<SparseMat<T>> maps;
    maps.push_back({});
    maps.back().rows = HA.dim(D);
    maps.back().cols.resize(0);

    for (int k = D; k >= 0; --k) {
        const std::string sk = std::to_string(k);
        push_module(HA.dim(k), "H_" + sk + "(L)");
        // H_k(L) -> H_k(X)
        SparseMat<T> m1;
        m1.rows = HB.dim(k);
        for (int j = 0; j < HA.dim(k); ++j)
            m1.cols.push_back(HB.class_coords(k, mat_apply(ops, f[k], HA.degs[k].reps[j])));
        maps.push_back(std::move(m1));

        push_module(HB.dim(k), "H_" + sk + "(X)");
        // H_k(X) -> H_k(X,L)
        SparseMat<T> m2;
        m2.rows = HC.dim(k);
        for (int j = 0; j < HB.dim(k); ++j)
            m2.cols.push_back(HC.class_coords(k, mat_apply(ops, g[k], HB.degs[k].reps[j])));
        maps.push_back(std::move(m2));

        push_module(HC.dim(k), "H_" + sk + "(X,L)");
        // Connecting map: lift a relative cycle, take its boundary (supported
        // in L), read the class in H_{k-1}(L).
        SparseMat<T> m3;
        m3.rows = k > 0 ? HA.dim(k - 1) : 0;
        for (int j = 0; j < HC.dim(k); ++j) {
            // Representative in quotient coords -> lift into absolute presented coords.
            SparseVec<T> b;
            for (const auto& [i, c] : HC.degs[k].reps[j]) axpy(ops, c, PC.degs[k].lift[i], b);
            SparseVec<T> db = mat_apply(ops, PB.degs[k].d, b);
            if (k == 0) {
                m3.cols.push_back({});
                continue;
            }
            // Expand to global coordinates and solve inside C(L).
            SparseVec<T> global;
            for (const auto& [i, c] : db) axpy(ops, c, PB.degs[k - 1].basis[i], global);
            SparseVec<T> a = PA.degs[k - 1].solve(ops, global);
            m3.cols.push_back(HA.class_coords(k - 1, a));
        }
        maps.push_back(std::move(m3));
    }
    push_module(0, "0");

    les.maps = std::move(maps);
    return les;
}

// --- Mayer-Vietoris ----------------------------------------------------------------

namespace {

SimplexSubset subset_intersection(const SimplexSubset& A, const SimplexSubset& B) {
    SimplexSubset out;
    out.by_dim.resize(std::max(A.by_dim.size(), B.by_dim.size()));
    for (size_t d = 0; d < out.by_dim.size(); ++d) {
        if (d >= A.by_dim.size() || d >= B.by_dim.size()) continue;
        std::set_intersection(A.by_dim[d].begin(), A.by_dim[d].end(), B.by_dim[d].begin(),
                              B.by_dim[d].end(), std::back_inserter(out.by_dim[d]));
    }
    return out;
}

}  // namespace

template <class Ops>
MVData<Ops> mv_les(const Space& X, const SimplexSubset& K1, const SimplexSubset& K2,
                   const Perversity& p, const Ops& ops, bool tame) {
    using T = typename Ops::value;
    SimplexSubset K12 = subset_intersection(K1, K2);

    Presentation<Ops> P1 = build_presentation(X, ops, &p, tame, &K1);
    Presentation<Ops> P2 = build_presentation(X, ops, &p, tame, &K2);
    Presentation<Ops> P12 = build_presentation(X, ops, &p, tame, &K12);
    Presentation<Ops> PS = build_sum(X, P1, P2);
    Presentation<Ops> PX = build_presentation(X, ops, &p, tame);

    const int D = PX.max_degree();

    // Direct sum presentation of P1 and P2 (block boundary).
    Presentation<Ops> PD;
    PD.ops = ops;
    PD.ring = P1.ring;
    PD.tame = tame;
    PD.degs.resize(D + 1);
    for (int k = 0; k <= D; ++k) {
        auto& deg = PD.degs[k];
        deg.d.rows = (k > 0 ? P1.rank(k - 1) + P2.rank(k - 1) : 0);
        deg.d.cols.resize(P1.rank(k) + P2.rank(k));
        if (k == 0) continue;
        for (int j = 0; j < P1.rank(k); ++j) deg.d.cols[j] = P1.degs[k].d.cols[j];
        for (int j = 0; j < P2.rank(k); ++j) {
            SparseVec<T> col;
            for (const auto& [r, v] : P2.degs[k].d.cols[j]) col[r + P1.rank(k - 1)] = v;
            deg.d.cols[P1.rank(k) + j] = std::move(col);
        }
    }

    auto H12 = homology_with_reps(P12);
    auto HD = homology_with_reps(PD);
    auto HS = homology_with_reps(PS);
    auto HX = homology_with_reps(PX);

    // alpha: C(K12) -> C(K1) (+) C(K2), xi |-> (xi, -xi).
    std::vector<SparseMat<T>> alpha(D + 1), beta(D + 1), inc(D + 1);
    for (int k = 0; k <= D; ++k) {
        alpha[k].rows = P1.rank(k) + P2.rank(k);
        for (int j = 0; j < P12.rank(k); ++j) {
            SparseVec<T> col;
            for (const auto& [r, v] : P1.degs[k].solve(ops, P12.degs[k].basis[j])) col[r] = v;
            for (const auto& [r, v] : P2.degs[k].solve(ops, P12.degs[k].basis[j]))
                col[r + P1.rank(k)] = ops.neg(v);
            alpha[k].cols.push_back(std::move(col));
        }
        // beta: (a, b) |-> a + b into the internal sum.
        beta[k].rows = PS.rank(k);
        for (int j = 0; j < P1.rank(k); ++j)
            beta[k].cols.push_back(PS.degs[k].solve(ops, P1.degs[k].basis[j]));
        for (int j = 0; j < P2.rank(k); ++j)
            beta[k].cols.push_back(PS.degs[k].solve(ops, P2.degs[k].basis[j]));
        // Inclusion of the sum into the full intersection complex.
        inc[k].rows = PX.rank(k);
        for (int j = 0; j < PS.rank(k); ++j)
            inc[k].cols.push_back(PX.degs[k].solve(ops, PS.degs[k].basis[j]));
    }

    MVData<Ops> out;
    // Key MV property: H(sum) -> H(X) is an isomorphism degree-wise.
    out.sum_iso = true;
    for (int k = 0; k <= D; ++k) {
        SparseMat<T> ind;
        ind.rows = HX.dim(k);
        for (int j = 0; j < HS.dim(k); ++j)
            ind.cols.push_back(HX.class_coords(k, mat_apply(ops, inc[k], HS.degs[k].reps[j])));
        if (HS.dim(k) != HX.dim(k) || field_rank(ops, ind) != HX.dim(k)) out.sum_iso = false;
    }

    LESData<Ops>& les = out.les;
    les.dims.push_back(0);
    les.labels.push_back("0");
    std::vector<SparseMat<T>> maps;
    maps.push_back({});
    maps.back().rows = H12.dim(D);

    for (int k = D; k >= 0; --k) {
        const std::string sk = std::to_string(k);
        les.dims.push_back(H12.dim(k));
        les.labels.push_back("H_" + sk + "(K1^K2)");
        SparseMat<T> m1;
        m1.rows = HD.dim(k);
        for (int j = 0; j < H12.dim(k); ++j)
            m1.cols.push_back(HD.class_coords(k, mat_apply(ops, alpha[k], H12.degs[k].reps[j])));
        maps.push_back(std::move(m1));

        les.dims.push_back(HD.dim(k));
        les.labels.push_back("H_" + sk + "(K1)+H_" + sk + "(K2)");
        SparseMat<T> m2;
        m2.rows = HS.dim(k);
        for (int j = 0; j < HD.dim(k); ++j)
            m2.cols.push_back(HS.class_coords(k, mat_apply(ops, beta[k], HD.degs[k].reps[j])));
        maps.push_back(std::move(m2));

        les.dims.push_back(HS.dim(k));
        les.labels.push_back("H_" + sk + "(K1+K2)");
        SparseMat<T> m3;
        m3.rows = k > 0 ? H12.dim(k - 1) : 0;
        for (int j = 0; j < HS.dim(k); ++j) {
            if (k == 0) {
                m3.cols.push_back({});
                continue;
            }
            // Decompose the representative via its stored lift, apply the
            // boundary within C(K1); the result lies in C(K12).
            SparseVec<T> lift;
            for (const auto& [i, c2] : HS.degs[k].reps[j])
                axpy(ops, c2, PS.degs[k].lift[i], lift);
            SparseVec<T> u1;
            for (const auto& [gidx, c] : lift)
                if (gidx < P1.rank(k)) u1.emplace(gidx, c);
            SparseVec<T> d1 = mat_apply(ops, P1.degs[k].d, u1);
            SparseVec<T> global;
            for (const auto& [i, c] : d1) axpy(ops, c, P1.degs[k - 1].basis[i], global);
            SparseVec<T> a = P12.degs[k - 1].solve(ops, global);
            m3.cols.push_back(H12.class_coords(k - 1, a));
        }
        maps.push_back(std::move(m3));
    }
    les.dims.push_back(0);
    les.labels.push_back("0");
    les.maps = std::move(maps);
    return out;
}

template <class Ops>
MVData<Ops> mv_les_with_subdivision(const Space& X, const SimplexSubset& K1,
                                    const SimplexSubset& K2, const Perversity& p, const Ops& ops,
                                    bool tame, int max_subdivisions) {
    const Space* cur = &X;
    Space owned;
    SimplexSubset cK1 = K1, cK2 = K2;
    Perversity cp = p;
    for (int round = 0;; ++round) {
        MVData<Ops> mv = mv_les(*cur, cK1, cK2, cp, ops, tame);
        mv.subdivisions_used = round;
        if (mv.sum_iso || round == max_subdivisions) return mv;
        Space next = Space::analyze(barycentric_subdivide(cur->complex));
        cK1 = subdivide_subset(next, *cur, cK1);
        cK2 = subdivide_subset(next, *cur, cK2);
        cp = subdivision_perversity(next, *cur, cp);
        owned = std::move(next);
        cur = &owned;
    }
}

#define IH_INSTANTIATE_LES(Ops)                                                                \
    template struct HomologyWithReps<Ops>;                                                     \
    template HomologyWithReps<Ops> homology_with_reps<Ops>(const Presentation<Ops>&);          \
    template LESData<Ops> pair_les<Ops>(const Space&, const SimplexSubset&, const Perversity&, \
                                        const Ops&, bool);                                     \
    template MVData<Ops> mv_les<Ops>(const Space&, const SimplexSubset&, const SimplexSubset&, \
                                     const Perversity&, const Ops&, bool);                     \
    template MVData<Ops> mv_les_with_subdivision<Ops>(const Space&, const SimplexSubset&,      \
                                                      const SimplexSubset&, const Perversity&, \
                                                      const Ops&, bool, int);

IH_INSTANTIATE_LES(QOps)
IH_INSTANTIATE_LES(FpOps)
#undef IH_INSTANTIATE_LES

}  // namespace ih

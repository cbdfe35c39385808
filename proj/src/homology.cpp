#include "ihcalc/homology.hpp"

#include <algorithm>

namespace ih {

std::string HomologyGroup::str() const {
    std::string base = ring.kind == RingInfo::Z ? "Z" : (ring.kind == RingInfo::Q ? "Q" : ("F" + std::to_string(ring.p)));
    if (free_rank == 0 && torsion.empty()) return "0";
    std::string out;
    if (free_rank == 1) out = base;
    else if (free_rank > 1) out = base + "^" + std::to_string(free_rank);
    for (const auto& t : torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + t.str();
    }
    return out;
}

bool groups_equal(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b) {
    size_t n = std::max(a.size(), b.size());
    auto get = [](const std::vector<HomologyGroup>& v, size_t i) {
        return i < v.size() ? v[i] : HomologyGroup{};
    };
    for (size_t i = 0; i < n; ++i)
        if (!(get(a, i) == get(b, i))) return false;
    return true;
}

namespace {

template <class Ops>
void check_consistent(const Presentation<Ops>& P) {
    for (int k = 2; k <= P.max_degree(); ++k) {
        auto prod = sparse_mul(P.ops, P.degs[k - 1].d, P.degs[k].d);
        if (!is_zero_mat(prod))
            fail(errc::inconsistent_complex,
                 "homology: d o d != 0 at degree " + std::to_string(k));
    }
}

void apply_reduced(std::vector<HomologyGroup>& groups, bool augmentable) {
    if (groups.empty() || !augmentable) return;
    if (groups[0].free_rank < 1)
        fail(errc::internal, "reduced homology: degree-0 free rank already zero");
    groups[0].free_rank -= 1;
}

}  // namespace

std::vector<HomologyGroup> homology(const Presentation<ZOps>& P, bool reduced) {
    check_consistent(P);
    const int D = P.max_degree();
    // One SNF per boundary matrix, shared between adjacent degrees.
    std::vector<std::vector<Int>> factors(D + 2);
    for (int k = 0; k <= D; ++k) factors[k] = snf_invariant_factors(P.degs[k].d);
    factors[D + 1] = {};

    std::vector<HomologyGroup> out(D + 1);
    for (int k = 0; k <= D; ++k) {
        HomologyGroup g;
        g.ring = P.ring;
        int r_k = snf_rank(factors[k]);
        int r_k1 = k + 1 <= D ? snf_rank(factors[k + 1]) : 0;
        g.free_rank = P.rank(k) - r_k - r_k1;
        if (k + 1 <= D)
            for (const auto& d : factors[k + 1])
                if (d > 1) g.torsion.push_back(d);
        out[k] = std::move(g);
    }
    apply_reduced(out, reduced && P.rank(0) > 0);
    return out;
}

namespace {

template <class Ops>
std::vector<HomologyGroup> field_homology(const Presentation<Ops>& P, bool reduced) {
    check_consistent(P);
    const int D = P.max_degree();
    std::vector<int> rk(D + 2, 0);
    for (int k = 0; k <= D; ++k) rk[k] = field_rank(P.ops, P.degs[k].d);
    std::vector<HomologyGroup> out(D + 1);
    for (int k = 0; k <= D; ++k) {
        out[k].ring = P.ring;
        out[k].free_rank = P.rank(k) - rk[k] - (k + 1 <= D ? rk[k + 1] : 0);
    }
    apply_reduced(out, reduced && P.rank(0) > 0);
    return out;
}

}  // namespace

std::vector<HomologyGroup> homology(const Presentation<QOps>& P, bool reduced) {
    return field_homology(P, reduced);
}
std::vector<HomologyGroup> homology(const Presentation<FpOps>& P, bool reduced) {
    return field_homology(P, reduced);
}

namespace {

template <class Ops>
std::vector<HomologyGroup> run_request(const Space& X, const Perversity* p,
                                       const HomologyRequest& req, const Ops& ops) {
    std::vector<HomologyGroup> groups;
    if (req.relative_to) {
        if (!is_full_subcomplex(X.complex, *req.relative_to))
            fail(errc::not_full_subcomplex, "relative homology requires a full subcomplex");
        Presentation<Ops> abs = build_presentation(X, ops, p, req.tame, req.domain);
        Presentation<Ops> quo = build_quotient(X, abs, *req.relative_to);
        groups = homology(quo, req.reduced);
    } else {
        Presentation<Ops> P = build_presentation(X, ops, p, req.tame, req.domain);
        groups = homology(P, req.reduced);
    }
    return groups;
}

}  // namespace

std::vector<HomologyGroup> compute_homology(const Space& X, const Perversity* p,
                                            const HomologyRequest& req) {
    std::vector<HomologyGroup> groups;
    switch (req.ring.kind) {
        case RingInfo::Z: groups = run_request(X, p, req, ZOps{}); break;
        case RingInfo::Q: groups = run_request(X, p, req, QOps{}); break;
        case RingInfo::Fp: groups = run_request(X, p, req, FpOps{req.ring.p}); break;
    }
    // Pad with zero groups up to the formal dimension.
    int want = std::max(X.complex.formal_dim, X.complex.top_dim());
    while (static_cast<int>(groups.size()) <= want) {
        HomologyGroup g;
        g.ring = req.ring;
        groups.push_back(g);
    }
    return groups;
}

template <class Ops>
ExactnessReport check_exactness(const Ops& ops, const std::vector<int>& dims,
                                const std::vector<SparseMat<typename Ops::value>>& maps) {
    if (maps.size() + 1 != dims.size())
        fail(errc::shape_mismatch, "check_exactness: need one map per adjacent pair");
    for (size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].ncols() != dims[i] || maps[i].rows != dims[i + 1])
            fail(errc::shape_mismatch,
                 "check_exactness: map " + std::to_string(i) + " has shape " +
                     std::to_string(maps[i].rows) + "x" + std::to_string(maps[i].ncols()) +
                     ", expected " + std::to_string(dims[i + 1]) + "x" + std::to_string(dims[i]));
    }
    ExactnessReport rep;
    std::vector<int> ranks(maps.size());
    for (size_t i = 0; i < maps.size(); ++i) ranks[i] = field_rank(ops, maps[i]);
    for (size_t i = 0; i + 1 < maps.size(); ++i) {
        auto comp = sparse_mul(ops, maps[i + 1], maps[i]);
        if (!is_zero_mat(comp)) rep.compositions_vanish = false;
    }
    for (size_t i = 1; i + 1 < dims.size(); ++i) {
        ExactnessSlot slot;
        slot.index = static_cast<int>(i);
        slot.rank_in = ranks[i - 1];
        slot.dim_kernel = dims[i] - ranks[i];
        slot.exact = slot.rank_in == slot.dim_kernel;
        if (!slot.exact) rep.exact = false;
        rep.slots.push_back(slot);
    }
    rep.exact = rep.exact && rep.compositions_vanish;
    return rep;
}

template ExactnessReport check_exactness<QOps>(const QOps&, const std::vector<int>&,
                                               const std::vector<SparseMat<Rational>>&);
template ExactnessReport check_exactness<FpOps>(const FpOps&, const std::vector<int>&,
                                                const std::vector<SparseMat<uint64_t>>&);

}  // namespace ih

#include "ortho/complex.hpp"

#include <cassert>
#include <sstream>

namespace ortho {

void Chain::add_term(const IsotropicSequence& s, std::int64_t coeff) {
    if (coeff == 0) return;
    if (!(s.space() == space_)) throw std::invalid_argument("chain term: space mismatch");
    if (s.length() != degree_) throw std::invalid_argument("chain term: degree mismatch");
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Chain Chain::operator+(const Chain& rhs) const {
    if (!(space_ == rhs.space_) || degree_ != rhs.degree_)
        throw std::invalid_argument("chain sum: degree or space mismatch");
    Chain out = *this;
    for (const auto& [s, m] : rhs.terms_) out.add_term(s, m);
    return out;
}

Chain Chain::operator-(const Chain& rhs) const { return *this + rhs.scaled(-1); }

Chain Chain::scaled(std::int64_t c) const {
    Chain out(space_, degree_);
    if (c == 0) return out;
    for (const auto& [s, m] : terms_) out.add_term(s, m * c);
    return out;
}

Chain apply_d(const Chain& c) {
    if (c.degree() < 1) throw std::invalid_argument("apply_d: degree must be >= 1");
    Chain out(c.space(), c.degree() - 1);
    for (const auto& [s, m] : c.terms())
        for (int i = 1; i <= c.degree(); ++i) out.add_term(s.face(i), i % 2 == 1 ? m : -m);
    return out;
}

std::int64_t augmentation_of_chain(const Chain& c) {
    std::int64_t s = 0;
    for (const auto& [seq, m] : c.terms()) s += m;
    return s;
}

std::string HomologyGroup::str() const {
    std::ostringstream os;
    if (is_trivial()) return "0";
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

BoundaryMatrix boundary_matrix(const HyperbolicSpace& space, int k, std::uint64_t cap) {
    if (k < 1) throw std::invalid_argument("boundary_matrix: k must be >= 1");
    BoundaryMatrix out;
    out.rows = enumerate_iu(space, k - 1, cap);
    out.cols = enumerate_iu(space, k, cap);
    std::map<IsotropicSequence, int> row_index;
    for (int i = 0; i < static_cast<int>(out.rows.size()); ++i) row_index.emplace(out.rows[i], i);
    out.matrix = SparseIntMatrix(static_cast<int>(out.rows.size()), static_cast<int>(out.cols.size()));
    for (int j = 0; j < static_cast<int>(out.cols.size()); ++j) {
        const IsotropicSequence& s = out.cols[j];
        for (int i = 1; i <= k; ++i) {
            auto it = row_index.find(s.face(i));
            assert(it != row_index.end());
            out.matrix.add(it->second, j, i % 2 == 1 ? 1 : -1);
        }
    }
    return out;
}

std::vector<HomologyGroup> homology(const HyperbolicSpace& space, int max_degree, std::uint64_t cap) {
    if (max_degree < 0) throw std::invalid_argument("homology: max_degree must be >= 0");
    // enumerations of degrees 0..max_degree+1 and the matrices between them
    std::vector<std::vector<IsotropicSequence>> bases;
    for (int d = 0; d <= max_degree + 1; ++d) bases.push_back(enumerate_iu(space, d, cap));

    std::vector<SmithResult> snf;  // snf[i] = Smith form of d_{i+1}: C_{i+1} -> C_i
    for (int i = 0; i <= max_degree; ++i) {
        int rows = static_cast<int>(bases[static_cast<std::size_t>(i)].size());
        int cols = static_cast<int>(bases[static_cast<std::size_t>(i) + 1].size());
        SparseIntMatrix m(rows, cols);
        std::map<IsotropicSequence, int> row_index;
        for (int r = 0; r < rows; ++r) row_index.emplace(bases[static_cast<std::size_t>(i)][r], r);
        for (int j = 0; j < cols; ++j) {
            const IsotropicSequence& s = bases[static_cast<std::size_t>(i) + 1][j];
            for (int t = 1; t <= i + 1; ++t) m.add(row_index.at(s.face(t)), j, t % 2 == 1 ? 1 : -1);
        }
        snf.push_back(smith_normal_form(m));
    }

    std::vector<HomologyGroup> out;
    for (int i = 0; i <= max_degree; ++i) {
        std::int64_t n_i = static_cast<std::int64_t>(bases[static_cast<std::size_t>(i)].size());
        std::int64_t r_in = snf[static_cast<std::size_t>(i)].rank();            // rank of d_{i+1}
        std::int64_t r_out = i == 0 ? 0 : snf[static_cast<std::size_t>(i) - 1].rank();  // rank of d_i
        HomologyGroup h;
        h.free_rank = n_i - r_out - r_in;
        h.torsion = snf[static_cast<std::size_t>(i)].invariant_factors_gt1();
        out.push_back(std::move(h));
    }
    return out;
}

Vec fresh_vector(const HyperbolicSpace& space, const std::vector<Vec>& L_basis,
                 const std::vector<std::vector<Vec>>& supports) {
    const RingDesc& ring = space.ring;
    std::size_t max_len = 0;
    for (const auto& s : supports) max_len = std::max(max_len, s.size());
    if (L_basis.size() <= max_len)
        throw std::invalid_argument("fresh_vector: rank(L) must exceed the longest support");
    Mat L = Mat::from_columns(ring, space.dim(), L_basis);
    VectorEnumeration en(ring, static_cast<int>(L_basis.size()));
    for (std::uint64_t i = 0; i < en.size(); ++i) {
        Vec c = en.at(i);
        bool unim = false;
        for (auto x : c)
            if (ring.is_unit(x)) {
                unim = true;
                break;
            }
        if (!unim) continue;
        Vec v = L.apply(c);
        bool ok = true;
        for (const auto& s : supports) {
            std::vector<Vec> ext;
            ext.reserve(s.size() + 1);
            ext.push_back(v);
            for (const auto& w : s) ext.push_back(w);
            Mat E = Mat::from_columns(ring, space.dim(), ext);
            if (residue_rank(E) != static_cast<int>(ext.size())) {
                ok = false;
                break;
            }
        }
        if (ok) return v;
    }
    throw FreshVectorUnavailable("fresh_vector: span exhausted without a valid extension");
}

namespace {

std::vector<std::vector<Vec>> chain_supports(const Chain& c) {
    std::vector<std::vector<Vec>> out;
    for (const auto& [s, m] : c.terms()) out.push_back(s.vectors());
    return out;
}

// all unimodular sequences of length q with vectors in span(basis), in
// coefficient enumeration order; the span is totally isotropic in use
std::vector<IsotropicSequence> enumerate_unimodular_in_span(const HyperbolicSpace& space,
                                                            const std::vector<Vec>& basis, int q,
                                                            std::uint64_t cap) {
    const RingDesc& ring = space.ring;
    Mat B = Mat::from_columns(ring, space.dim(), basis);
    VectorEnumeration en(ring, static_cast<int>(basis.size()), cap);
    std::vector<Vec> span_vectors;
    for (std::uint64_t i = 0; i < en.size(); ++i) {
        Vec c = en.at(i);
        bool unim = false;
        for (auto x : c)
            if (ring.is_unit(x)) {
                unim = true;
                break;
            }
        if (unim) span_vectors.push_back(B.apply(c));
    }
    std::vector<IsotropicSequence> out;
    std::vector<Vec> prefix;
    auto extend = [&](auto&& self, int depth) -> void {
        for (const auto& v : span_vectors) {
            prefix.push_back(v);
            if (space.is_unimodular(prefix)) {
                if (depth == q) {
                    out.push_back(IsotropicSequence(space, prefix));
                    if (out.size() > cap)
                        throw CapExceededError("span enumeration exceeds cap of " + std::to_string(cap));
                } else {
                    self(self, depth + 1);
                }
            }
            prefix.pop_back();
        }
    };
    if (q == 0)
        out.push_back(IsotropicSequence::empty(space));
    else
        extend(extend, 1);
    return out;
}

// g with d(g) = f, supported inside span(basis); exact sparse integer
// solve of the localized boundary system
Chain solve_boundary_in_span(const HyperbolicSpace& space, const std::vector<Vec>& basis,
                             const Chain& f, std::uint64_t cell_cap) {
    int q = f.degree();
    auto rows = enumerate_unimodular_in_span(space, basis, q, cell_cap);
    auto cols = enumerate_unimodular_in_span(space, basis, q + 1, cell_cap);
    std::map<IsotropicSequence, int> row_index;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) row_index.emplace(rows[i], i);
    SparseIntMatrix A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 1; i <= q + 1; ++i)
            A.add(row_index.at(cols[static_cast<std::size_t>(j)].face(i)), j, i % 2 == 1 ? 1 : -1);
    std::vector<BigInt> b(rows.size());
    for (const auto& [s, m] : f.terms()) {
        auto it = row_index.find(s);
        if (it == row_index.end())
            throw FreshVectorUnavailable("localized solve: chain leaves the span");
        b[static_cast<std::size_t>(it->second)] = m;
    }
    auto x = sparse_solve_integer(A, b);
    if (!x)
        throw FreshVectorUnavailable("localized solve: cycle does not bound inside the span");
    Chain g(space, q + 1);
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        const BigInt& c = (*x)[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        g.add_term(cols[static_cast<std::size_t>(j)], c.convert_to<std::int64_t>());
    }
    if (!(apply_d(g) == f)) throw std::logic_error("localized solve: verification failed (internal)");
    return g;
}

// prepend v to every tuple of f
Chain cone(const Vec& v, const Chain& f) {
    Chain out(f.space(), f.degree() + 1);
    for (const auto& [s, m] : f.terms()) {
        std::vector<Vec> t;
        t.reserve(s.vectors().size() + 1);
        t.push_back(v);
        for (const auto& w : s.vectors()) t.push_back(w);
        out.add_term(IsotropicSequence(f.space(), std::move(t)), m);
    }
    return out;
}

// prepend a fixed prefix to every tuple of g
Chain prefix_cone(const std::vector<Vec>& prefix, const Chain& g) {
    Chain out(g.space(), g.degree() + static_cast<int>(prefix.size()));
    for (const auto& [s, m] : g.terms()) {
        std::vector<Vec> t = prefix;
        for (const auto& w : s.vectors()) t.push_back(w);
        out.add_term(IsotropicSequence(g.space(), std::move(t)), m);
    }
    return out;
}

}  // namespace

namespace {

inline constexpr std::uint64_t kLocalSolveCap = 300'000;

// g with d(g) = f: cone over a fresh vector when one exists, else the
// localized exact solve inside span(L). The fresh scan can exhaust over a
// finite residue field; the solve is the honest substitute there.
Chain cone_or_solve(const HyperbolicSpace& space, const std::vector<Vec>& L, const Chain& f,
                    bool* used_local_solve) {
    try {
        Vec v = fresh_vector(space, L, chain_supports(f));
        return cone(v, f);
    } catch (const FreshVectorUnavailable&) {
        if (f.degree() == 0) throw;
        Chain g = solve_boundary_in_span(space, L, f, kLocalSolveCap);
        if (used_local_solve) *used_local_solve = true;
        return g;
    }
}

}  // namespace

Chain bound_cycle_recursion(const Chain& z, std::uint64_t seed, std::uint64_t gp_budget,
                            bool* used_local_solve) {
    const HyperbolicSpace& space = z.space();
    int k = z.degree();
    Chain tau(space, k + 1);
    if (z.is_zero()) return tau;
    if (k == 0)
        throw std::invalid_argument("bound_cycle: nonzero degree-0 chains are not cycles here");
    if (k > space.n - 1) throw std::invalid_argument("bound_cycle: requires degree <= n-1");
    if (!apply_d(z).is_zero()) throw std::invalid_argument("bound_cycle: input is not a cycle");

    std::vector<std::vector<Vec>> targets = chain_supports(z);
    auto cert = find_general_position(space, targets, seed, gp_budget);
    if (!cert)
        throw GeneralPositionUnavailable(
            "bound_cycle: no totally isotropic summand in general position with the supports");
    const std::vector<Vec>& W = cert->w_basis;

    // invariant: z = remaining + d(tau); remaining tuples split as
    // (prefix of length p) + (suffix of length k - p inside W)
    Chain remaining = z;
    for (int p = k; p >= 1; --p) {
        if (remaining.is_zero()) break;
        const int sign_p = p % 2 == 1 ? -1 : 1;  // (-1)^p
        std::map<std::vector<Vec>, Chain> groups;
        for (const auto& [s, m] : remaining.terms()) {
            const auto& vv = s.vectors();
            std::vector<Vec> prefix(vv.begin(), vv.begin() + p);
            std::vector<Vec> suffix(vv.begin() + p, vv.end());
            auto it = groups.find(prefix);
            if (it == groups.end()) it = groups.emplace(prefix, Chain(space, k - p)).first;
            it->second.add_term(IsotropicSequence(space, suffix), m);
        }
        // rebuild remaining at the same degree with shorter prefixes
        Chain rebuilt(space, k);
        for (auto& [prefix, f] : groups) {
            if (f.degree() >= 1 && !apply_d(f).is_zero())
                throw std::logic_error("bound_cycle: suffix chain is not a cycle (internal)");
            std::vector<Vec> L = intersect_with_perp(space, W, prefix);
            Chain g = cone_or_solve(space, L, f, used_local_solve);  // d(g) = f
            Chain ug = prefix_cone(prefix, g);                       // degree k+1
            tau = tau + ug.scaled(sign_p);                           // tau += (-1)^p (u, g)
            // remaining becomes -(-1)^p sum_i (du_i, g_i), du = sum (-1)^{i+1} face_i(u)
            for (int i = 1; i <= p; ++i) {
                std::vector<Vec> face = prefix;
                face.erase(face.begin() + (i - 1));
                int fs = i % 2 == 1 ? 1 : -1;
                rebuilt = rebuilt + prefix_cone(face, g).scaled(-sign_p * fs);
            }
        }
        remaining = std::move(rebuilt);
    }

    if (!remaining.is_zero()) {
        if (remaining.degree() >= 1 && !apply_d(remaining).is_zero())
            throw std::logic_error("bound_cycle: residual chain is not a cycle (internal)");
        tau = tau + cone_or_solve(space, W, remaining, used_local_solve);
    }
    if (!(apply_d(tau) == z)) throw std::logic_error("bound_cycle: verification failed (internal)");
    return tau;
}

std::optional<Chain> bound_cycle_snf(const Chain& z, std::uint64_t cap) {
    const HyperbolicSpace& space = z.space();
    int k = z.degree();
    if (k == 0) {
        if (z.is_zero()) return Chain(space, 1);
        return std::nullopt;
    }
    if (!apply_d(z).is_zero()) throw std::invalid_argument("bound_cycle: input is not a cycle");
    BoundaryMatrix bm = boundary_matrix(space, k + 1, cap);
    std::map<IsotropicSequence, int> row_index;
    for (int i = 0; i < static_cast<int>(bm.rows.size()); ++i) row_index.emplace(bm.rows[i], i);
    std::vector<BigInt> b(bm.rows.size());
    for (const auto& [s, m] : z.terms()) b[static_cast<std::size_t>(row_index.at(s))] = m;
    auto x = sparse_solve_integer(bm.matrix, b);
    if (!x) return std::nullopt;
    Chain tau(space, k + 1);
    for (int j = 0; j < static_cast<int>(bm.cols.size()); ++j) {
        const BigInt& c = (*x)[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        tau.add_term(bm.cols[j], c.convert_to<std::int64_t>());
    }
    if (!(apply_d(tau) == z)) throw std::logic_error("bound_cycle_snf: verification failed (internal)");
    return tau;
}

BoundCycleResult bound_cycle(const Chain& z, std::uint64_t seed, const BoundCycleOptions& opt) {
    std::exception_ptr recursion_error;
    try {
        bool used_local = false;
        Chain tau = bound_cycle_recursion(z, seed, opt.gp_budget, &used_local);
        return BoundCycleResult{std::move(tau), used_local ? "recursion+local-solve" : "recursion"};
    } catch (const GeneralPositionUnavailable&) {
        if (!opt.allow_snf_fallback) throw;
        recursion_error = std::current_exception();
    } catch (const FreshVectorUnavailable&) {
        if (!opt.allow_snf_fallback) throw;
        recursion_error = std::current_exception();
    }
    try {
        auto tau = bound_cycle_snf(z, opt.snf_cell_cap);
        if (!tau) throw std::runtime_error("bound_cycle: cycle is not a boundary (SNF certificate)");
        return BoundCycleResult{std::move(*tau), "snf"};
    } catch (const CapExceededError&) {
        // the fallback does not fit; surface the recursion's own failure
        std::rethrow_exception(recursion_error);
    }
}

}  // namespace ortho

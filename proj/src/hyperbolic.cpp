#include "ortho/hyperbolic.hpp"

#include <cassert>

namespace ortho {

Mat HyperbolicSpace::gram() const {
    Mat m(ring, dim(), dim());
    for (int i = 0; i < n; ++i) {
        m.set(2 * i, 2 * i + 1, 1);
        m.set(2 * i + 1, 2 * i, 1);
    }
    return m;
}

Vec HyperbolicSpace::e(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("basis index out of range");
    Vec v(static_cast<std::size_t>(dim()), 0);
    v[2 * (i - 1)] = 1;
    return v;
}

Vec HyperbolicSpace::f(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("basis index out of range");
    Vec v(static_cast<std::size_t>(dim()), 0);
    v[2 * (i - 1) + 1] = 1;
    return v;
}

std::int64_t HyperbolicSpace::inner(const Vec& u, const Vec& v) const {
    if (static_cast<int>(u.size()) != dim() || static_cast<int>(v.size()) != dim())
        throw std::invalid_argument("inner: dimension mismatch");
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) {
        s = ring.add(s, ring.mul(ring.reduce(u[2 * i]), ring.reduce(v[2 * i + 1])));
        s = ring.add(s, ring.mul(ring.reduce(u[2 * i + 1]), ring.reduce(v[2 * i])));
    }
    return s;
}

bool HyperbolicSpace::is_totally_isotropic(const std::vector<Vec>& seq) const {
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i; j < seq.size(); ++j)
            if (inner(seq[i], seq[j]) != 0) return false;
    return true;
}

bool HyperbolicSpace::is_unimodular(const std::vector<Vec>& seq) const {
    if (seq.empty()) return true;
    Mat m = Mat::from_columns(ring, dim(), seq);
    return residue_rank(m) == static_cast<int>(seq.size());
}

bool HyperbolicSpace::is_isotropic_unimodular(const std::vector<Vec>& seq) const {
    return is_totally_isotropic(seq) && is_unimodular(seq);
}

IsotropicSequence::IsotropicSequence(HyperbolicSpace space, std::vector<Vec> vectors)
    : space_(space), vecs_(std::move(vectors)) {
    for (auto& v : vecs_) {
        if (static_cast<int>(v.size()) != space_.dim())
            throw std::invalid_argument("isotropic sequence: vector dimension mismatch");
        v = vec_reduce(space_.ring, std::move(v));
    }
    if (!space_.is_totally_isotropic(vecs_))
        throw std::invalid_argument("isotropic sequence: not totally isotropic");
    if (!space_.is_unimodular(vecs_))
        throw std::invalid_argument("isotropic sequence: not unimodular");
}

IsotropicSequence IsotropicSequence::face(int i) const {
    if (i < 1 || i > length()) throw std::invalid_argument("face index out of range");
    std::vector<Vec> v = vecs_;
    v.erase(v.begin() + (i - 1));
    return IsotropicSequence(space_, std::move(v));
}

bool check_orthogonal(const HyperbolicSpace& space, const Mat& A) {
    if (A.rows() != space.dim() || A.cols() != space.dim()) return false;
    Mat psi = space.gram();
    return A.transpose() * psi * A == psi;
}

std::optional<std::int64_t> check_similitude(const HyperbolicSpace& space, const Mat& A) {
    if (A.rows() != space.dim() || A.cols() != space.dim()) return std::nullopt;
    const RingDesc& ring = space.ring;
    Mat psi = space.gram();
    Mat g = A.transpose() * psi * A;
    if (space.n == 0) return 1;
    std::int64_t a = g(0, 1);
    if (!ring.is_unit(a)) return std::nullopt;
    Mat scaled(ring, space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i)
        for (int j = 0; j < space.dim(); ++j) scaled.set(i, j, ring.mul(a, psi(i, j)));
    if (g == scaled) return a;
    return std::nullopt;
}

OrthogonalElement OrthogonalElement::checked(const HyperbolicSpace& space, Mat m) {
    if (!check_orthogonal(space, m))
        throw std::invalid_argument("matrix does not preserve the hyperbolic form");
    return OrthogonalElement{space, std::move(m)};
}

OrthogonalElement OrthogonalElement::operator*(const OrthogonalElement& rhs) const {
    if (!(space == rhs.space)) throw std::invalid_argument("orthogonal product: space mismatch");
    return OrthogonalElement{space, matrix * rhs.matrix};
}

OrthogonalElement OrthogonalElement::inverted() const {
    Mat psi = space.gram();
    return OrthogonalElement{space, psi * matrix.transpose() * psi};
}

IsotropicSequence OrthogonalElement::apply(const IsotropicSequence& s) const {
    std::vector<Vec> out;
    out.reserve(s.vectors().size());
    for (const auto& v : s.vectors()) out.push_back(matrix.apply(v));
    return IsotropicSequence(space, std::move(out));
}

SimilitudeElement SimilitudeElement::checked(const HyperbolicSpace& space, Mat m) {
    auto a = check_similitude(space, m);
    if (!a) throw std::invalid_argument("matrix is not a similitude of the hyperbolic form");
    return SimilitudeElement{space, std::move(m), *a};
}

Mat pair_scaling(const HyperbolicSpace& space, std::int64_t a, int k) {
    const RingDesc& ring = space.ring;
    if (!ring.is_unit(a)) throw NotAUnitError("pair_scaling: a must be a unit");
    if (k < 0 || k > space.n) throw std::invalid_argument("pair_scaling: k out of range");
    std::int64_t ai = ring.inv(a);
    Mat m = Mat::identity(ring, space.dim());
    for (int i = 0; i < k; ++i) {
        m.set(2 * i, 2 * i, a);
        m.set(2 * i + 1, 2 * i + 1, ai);
    }
    return m;
}

Mat standard_similitude(const HyperbolicSpace& space, std::int64_t a) {
    const RingDesc& ring = space.ring;
    if (!ring.is_unit(a)) throw NotAUnitError("standard_similitude: a must be a unit");
    Mat m = Mat::identity(ring, space.dim());
    for (int i = 0; i < space.n; ++i) m.set(2 * i + 1, 2 * i + 1, a);
    return m;
}

Mat scalar_matrix(const HyperbolicSpace& space, std::int64_t a) {
    const RingDesc& ring = space.ring;
    if (!ring.is_unit(a)) throw NotAUnitError("scalar_matrix: a must be a unit");
    Mat m(ring, space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) m.set(i, i, a);
    return m;
}

Mat pair_swap(const HyperbolicSpace& space, int i) {
    if (i < 1 || i > space.n) throw std::invalid_argument("pair_swap: index out of range");
    Mat m = Mat::identity(space.ring, space.dim());
    int b = 2 * (i - 1);
    m.set(b, b, 0);
    m.set(b + 1, b + 1, 0);
    m.set(b, b + 1, 1);
    m.set(b + 1, b, 1);
    return m;
}

Mat pair_permutation(const HyperbolicSpace& space, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != space.n)
        throw std::invalid_argument("pair_permutation: permutation size mismatch");
    Mat m(space.ring, space.dim(), space.dim());
    for (int i = 0; i < space.n; ++i) {
        int t = perm[i] - 1;
        if (t < 0 || t >= space.n) throw std::invalid_argument("pair_permutation: bad value");
        m.set(2 * t, 2 * i, 1);
        m.set(2 * t + 1, 2 * i + 1, 1);
    }
    return m;
}

Mat block_embed(const HyperbolicSpace& target, const Mat& inner, int m) {
    if (inner.rows() != inner.cols()) throw std::invalid_argument("block_embed: inner not square");
    if (2 * m + inner.rows() != target.dim())
        throw std::invalid_argument("block_embed: dimensions inconsistent");
    Mat out = Mat::identity(target.ring, target.dim());
    for (int i = 0; i < inner.rows(); ++i)
        for (int j = 0; j < inner.cols(); ++j) out.set(2 * m + i, 2 * m + j, inner(i, j));
    return out;
}

std::vector<IsotropicSequence> enumerate_iu(const HyperbolicSpace& space, int k, std::uint64_t cap) {
    std::vector<IsotropicSequence> out;
    if (k == 0) {
        out.push_back(IsotropicSequence::empty(space));
        return out;
    }
    if (space.n == 0) return out;
    VectorEnumeration en(space.ring, space.dim(), cap);

    // depth-first extension in vector enumeration order yields the sequences
    // in lexicographic order
    std::vector<Vec> prefix;
    auto extend = [&](auto&& self, int depth) -> void {
        for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
            Vec v = en.at(idx);
            if (!space.is_isotropic(v)) continue;
            bool ok = true;
            for (const auto& u : prefix)
                if (space.inner(u, v) != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            prefix.push_back(v);
            if (space.is_unimodular(prefix)) {
                if (depth == k) {
                    out.push_back(IsotropicSequence(space, prefix));
                    if (out.size() > cap)
                        throw CapExceededError("IU enumeration exceeds cap of " + std::to_string(cap));
                } else {
                    self(self, depth + 1);
                }
            }
            prefix.pop_back();
        }
    };
    extend(extend, 1);
    return out;
}

}  // namespace ortho

#include "ortho/groupring.hpp"

namespace ortho {

void GroupRingElem::add_term(std::int64_t unit, std::int64_t coeff) {
    if (coeff == 0) return;
    unit = ring_.reduce(unit);
    if (!ring_.is_unit(unit)) throw NotAUnitError("group ring term: key must be a unit");
    auto it = terms_.find(unit);
    if (it == terms_.end()) {
        terms_.emplace(unit, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::int64_t GroupRingElem::augmentation() const {
    std::int64_t s = 0;
    for (const auto& [u, c] : terms_) s += c;
    return s;
}

bool is_sm_sequence(const RingDesc& ring, const std::vector<std::int64_t>& units) {
    int m = static_cast<int>(units.size());
    if (m == 0) return false;
    if (m > 62) throw std::invalid_argument("is_sm_sequence: m too large to enumerate subsets");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::int64_t s = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (std::uint64_t{1} << i)) s = ring.add(s, ring.reduce(units[i]));
        if (!ring.is_unit(s)) return false;
    }
    return true;
}

SMSequence::SMSequence(RingDesc ring, std::vector<std::int64_t> units)
    : ring_(ring), units_(std::move(units)) {
    for (auto& u : units_) u = ring_.reduce(u);
    if (!is_sm_sequence(ring_, units_))
        throw std::invalid_argument("not an S(m)-sequence: some partial sum is not a unit");
}

namespace {

// depth-first lexicographic search; every prefix must itself satisfy the
// subset-sum condition, so pruning loses nothing
bool sm_search_rec(const RingDesc& ring, int m, const std::vector<std::int64_t>& units,
                   std::vector<std::int64_t>& prefix) {
    if (static_cast<int>(prefix.size()) == m) return true;
    for (std::int64_t u : units) {
        prefix.push_back(u);
        if (is_sm_sequence(ring, prefix) && sm_search_rec(ring, m, units, prefix)) return true;
        prefix.pop_back();
    }
    return false;
}

}  // namespace

std::optional<SMSequence> sm_search(const RingDesc& ring, int m) {
    if (m < 1) throw std::invalid_argument("sm_search: m must be >= 1");
    std::vector<std::int64_t> units;
    for (std::int64_t a = 1; a < ring.modulus; ++a)
        if (ring.is_unit(a)) units.push_back(a);
    std::vector<std::int64_t> prefix;
    if (!sm_search_rec(ring, m, units, prefix)) return std::nullopt;
    return SMSequence(ring, prefix);
}

GroupRingElem sm_element(const SMSequence& seq) {
    const RingDesc& ring = seq.ring();
    GroupRingElem out(ring);
    int m = seq.m();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::int64_t s = 0;
        int bits = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (std::uint64_t{1} << i)) {
                s = ring.add(s, seq.units()[i]);
                ++bits;
            }
        out.add_term(s, bits % 2 == 0 ? -1 : 1);  // -(-1)^{|I|}
    }
    return out;
}

}  // namespace ortho

#pragma once

#include "ortho/ring.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ortho {

/// Integer combination of units of R; the carrier of the localization
/// elements s_m.
class GroupRingElem {
public:
    explicit GroupRingElem(RingDesc ring) : ring_(ring) {}

    const RingDesc& ring() const { return ring_; }
    const std::map<std::int64_t, std::int64_t>& terms() const { return terms_; }

    void add_term(std::int64_t unit, std::int64_t coeff);
    std::int64_t augmentation() const;

    friend bool operator==(const GroupRingElem&, const GroupRingElem&) = default;

private:
    RingDesc ring_;
    std::map<std::int64_t, std::int64_t> terms_;
};

/// Units a_1, ..., a_m whose every nonempty partial subset sum is a unit.
/// Validated on construction.
class SMSequence {
public:
    SMSequence(RingDesc ring, std::vector<std::int64_t> units);
    const std::vector<std::int64_t>& units() const { return units_; }
    const RingDesc& ring() const { return ring_; }
    int m() const { return static_cast<int>(units_.size()); }

private:
    RingDesc ring_;
    std::vector<std::int64_t> units_;
};

/// True iff every nonempty subset sum of `units` is a unit of the ring.
bool is_sm_sequence(const RingDesc& ring, const std::vector<std::int64_t>& units);

/// Lexicographically first S(m)-sequence over the unit enumeration, or
/// nullopt after exhaustive (pruned) search. A prefix of a valid sequence
/// is valid, so pruning is exact.
std::optional<SMSequence> sm_search(const RingDesc& ring, int m);

/// s_m = -sum over nonempty I of (-1)^{|I|} <a_I>, coefficients collected
/// per distinct unit value.
GroupRingElem sm_element(const SMSequence& seq);

}  // namespace ortho

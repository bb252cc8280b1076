#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rwmso/gf2.hpp"
#include "rwmso/structure.hpp"

namespace rwmso {

// Bitmask over the classes of an ordered structure.
using ClassMask = std::uint32_t;

inline constexpr std::size_t kMaxOrderedUniverse = 32;

// Ord(A, c, C): the structure induced by c with element c_i renamed to the class
// of position i, together with the position map and the traces of C on c.
//
// Classes are numbered 0..u-1 in order of first occurrence in c, which is the
// order of their minimum positions; representative(k) recovers that minimum
// (1-based). Because of this numbering, equality of ordered structures is plain
// member-wise equality.
struct OrderedStructure {
    int t = 0;
    std::vector<std::uint8_t> positions; // class of position i
    std::vector<ClassMask> adjacency;    // per class
    std::vector<LabelVec> labels;        // per class
    std::vector<ClassMask> traces;       // per set: classes it contains

    auto universe_size() const -> std::size_t { return labels.size(); }
    auto element_count() const -> std::size_t { return positions.size(); } // m
    auto set_count() const -> std::size_t { return traces.size(); }         // p

    auto adjacent(std::size_t a, std::size_t b) const -> bool { return (adjacency[a] >> b) & 1; }
    auto in_trace(std::size_t set, std::size_t cls) const -> bool
    {
        return (traces[set] >> cls) & 1;
    }

    // Minimum 1-based position of the given class.
    auto representative(std::size_t cls) const -> std::size_t;

    // The ordered structure as a plain Structure on its classes.
    auto as_structure() const -> Structure;

    auto to_string() const -> std::string;

    friend auto operator==(const OrderedStructure&, const OrderedStructure&) -> bool = default;
};

struct OrderedStructureHash {
    auto operator()(const OrderedStructure& o) const noexcept -> std::size_t;
};

auto ordered_induced(const Structure& a, const ElementVector& c, const SetVector& sets)
    -> OrderedStructure;

} // namespace rwmso

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace rwmso {

// A vector of GF(2)^t. Bit i-1 holds label i.
using LabelVec = std::uint32_t;

inline constexpr int kMaxLabelWidth = 32;

// Scalar product over GF(2).
inline auto dot(LabelVec a, LabelVec b) -> bool
{
    return (std::popcount(a & b) & 1) != 0;
}

inline auto unit_label(int i) -> LabelVec
{
    return LabelVec{1} << (i - 1);
}

// Mask with the low t bits set.
inline auto label_mask(int t) -> LabelVec
{
    return t >= kMaxLabelWidth ? ~LabelVec{0} : ((LabelVec{1} << t) - 1);
}

// A t-relabeling, stored as the t x t matrix T_f. Row i is the image of label i+1,
// so applying it to a row vector is lab x T_f.
class Relabeling {
  public:
    Relabeling() = default;
    Relabeling(int width, std::vector<LabelVec> rows);

    static auto identity(int width) -> Relabeling;
    static auto zero(int width) -> Relabeling;

    auto width() const -> int { return width_; }
    auto rows() const -> const std::vector<LabelVec>& { return rows_; }
    auto row(int i) const -> LabelVec { return rows_[static_cast<std::size_t>(i)]; }

    auto apply(LabelVec lab) const -> LabelVec
    {
        LabelVec out = 0;
        while (lab != 0) {
            int i = std::countr_zero(lab);
            out ^= rows_[static_cast<std::size_t>(i)];
            lab &= lab - 1;
        }
        return out;
    }

    // Matrix product this x other: first apply this, then other.
    auto then(const Relabeling& other) const -> Relabeling;

    // Zero-pad to a larger width; the new labels map to nothing.
    auto widened(int width) const -> Relabeling;

    // "1 0;0 1" style, rows separated by ';'.
    auto to_string() const -> std::string;

    friend auto operator==(const Relabeling&, const Relabeling&) -> bool = default;

  private:
    int width_ = 0;
    std::vector<LabelVec> rows_;
};

// Bit string of a label vector, label 1 first.
auto label_to_string(LabelVec lab, int t) -> std::string;

// Reduced row-echelon basis of the span of the given vectors.
auto row_echelon_basis(const std::vector<LabelVec>& vectors) -> std::vector<LabelVec>;

// GF(2) rank of a bit matrix given by its rows.
auto gf2_rank(std::vector<boost::dynamic_bitset<>> rows) -> std::size_t;

} // namespace rwmso

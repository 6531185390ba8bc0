#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "capath/common.hpp"

namespace capath {

// Required path orders, one per color. Input may arrive in any order; the tuple
// is stored sorted nondecreasing and slot k remembers which input position
// (= color label - 1) it came from, so per-color semantics survive sorting.
class TargetLengths {
public:
    explicit TargetLengths(std::vector<Length> per_color);

    std::size_t count() const { return sorted_.size(); }
    Length slot(std::size_t k) const { return sorted_[k]; }
    const std::vector<Length>& sorted() const { return sorted_; }
    const std::vector<Length>& per_color() const { return input_; }
    // input position (0-based) that landed in slot k; stable for equal lengths
    std::size_t input_position(std::size_t k) const { return slot_to_input_[k]; }

    // first k slots as a tuple of their own (k >= 2)
    TargetLengths prefix(std::size_t k) const;

private:
    std::vector<Length> input_;
    std::vector<Length> sorted_;
    std::vector<std::size_t> slot_to_input_;
};

enum class FormulaBranch { TwoColorBase, GenEquality, MainFormula };
const char* to_string(FormulaBranch b);

struct BranchTrace {
    FormulaBranch branch = FormulaBranch::TwoColorBase;
    std::optional<Length> prefix_p;  // value on the first t-1 slots, when t >= 3
    std::optional<Length> s;         // weighted-floor value, when the main branch computed it
};

struct PValue {
    Length value = 0;
    BranchTrace trace;
};

// floor((l1 + 2*l2 + ... + 2^{k-1}*lk - 2) / (2^k - 2)) over a sorted slice.
// Exact integer arithmetic; inputs whose weighted sum would overflow 64 bits
// are rejected with std::overflow_error.
Length s_value(std::span<const Length> sorted_lengths);

// Least n such that every coloring of K_n with one color per slot contains,
// for some slot j, a path of order slot(j) avoiding slot j's color.
PValue p_value(const TargetLengths& targets);

// Symmetric closed form: ell + floor((ell - 2) / (2^colors - 2)).
Length r_value(Length ell, Length colors);

}  // namespace capath

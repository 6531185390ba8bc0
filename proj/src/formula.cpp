#include "capath/formula.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace capath {

namespace {

Length checked_add(Length a, Length b) {
    Length r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("target lengths too large: weighted sum exceeds 64-bit range");
    return r;
}

// a * 2^k with overflow rejection
Length checked_shl(Length a, std::size_t k) {
    if (k >= 62 || a > (std::numeric_limits<Length>::max() >> k))
        throw std::overflow_error("target lengths too large: weighted sum exceeds 64-bit range");
    return a << k;
}

}  // namespace

TargetLengths::TargetLengths(std::vector<Length> per_color) : input_(std::move(per_color)) {
    if (input_.size() < 2)
        throw std::invalid_argument("need at least two target lengths");
    for (Length l : input_)
        if (l < 2) throw std::invalid_argument("every target length must be at least 2");
    slot_to_input_.resize(input_.size());
    std::iota(slot_to_input_.begin(), slot_to_input_.end(), std::size_t{0});
    std::stable_sort(slot_to_input_.begin(), slot_to_input_.end(),
                     [&](std::size_t a, std::size_t b) { return input_[a] < input_[b]; });
    sorted_.reserve(input_.size());
    for (std::size_t idx : slot_to_input_) sorted_.push_back(input_[idx]);
}

TargetLengths TargetLengths::prefix(std::size_t k) const {
    if (k < 2 || k > sorted_.size())
        throw std::invalid_argument("prefix size out of range");
    return TargetLengths(std::vector<Length>(sorted_.begin(), sorted_.begin() + k));
}

const char* to_string(FormulaBranch b) {
    switch (b) {
        case FormulaBranch::TwoColorBase: return "TwoColorBase";
        case FormulaBranch::GenEquality: return "GenEquality";
        case FormulaBranch::MainFormula: return "MainFormula";
    }
    return "?";
}

Length s_value(std::span<const Length> ls) {
    if (ls.size() < 2)
        throw std::invalid_argument("weighted-floor value needs at least two lengths");
    Length num = -2;
    for (std::size_t k = 0; k < ls.size(); ++k) {
        if (ls[k] < 2) throw std::invalid_argument("every target length must be at least 2");
        if (k > 0 && ls[k] < ls[k - 1])
            throw std::invalid_argument("lengths must be sorted nondecreasing");
        num = checked_add(num, checked_shl(ls[k], k));
    }
    const Length den = (Length{1} << ls.size()) - 2;
    return num / den;  // num > 0 whenever all entries >= 2, so division floors
}

PValue p_value(const TargetLengths& targets) {
    const auto& ls = targets.sorted();
    const std::size_t t = ls.size();
    Length prev = ls[1] + ls[0] / 2 - 1;  // two-slot closed form
    if (t == 2) return {prev, {FormulaBranch::TwoColorBase, std::nullopt, std::nullopt}};

    BranchTrace trace;
    Length cur = prev;
    for (std::size_t k = 3; k <= t; ++k) {
        if (ls[k - 1] >= prev) {
            cur = prev;
            trace = {FormulaBranch::GenEquality, prev, std::nullopt};
        } else {
            const Length s = s_value(std::span<const Length>(ls.data(), k));
            cur = s;
            trace = {FormulaBranch::MainFormula, prev, s};
        }
        prev = cur;
    }
    return {cur, trace};
}

Length r_value(Length ell, Length colors) {
    if (ell < 2 || colors < 2)
        throw std::invalid_argument("need ell >= 2 and colors >= 2");
    if (colors >= 63)
        throw std::overflow_error("color count too large for 64-bit arithmetic");
    const Length den = (Length{1} << colors) - 2;
    return ell + (ell - 2) / den;
}

}  // namespace capath

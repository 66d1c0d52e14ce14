#pragma once

#include <cstddef>
#include <optional>

#include "randset/convex_body.hpp"

namespace randset {

/// Running Minkowski sum Y_1 + ... + Y_N of the draws seen so far.
class MeanProcessState {
public:
    MeanProcessState() = default;
    MeanProcessState(std::size_t count, ConvexBody running_sum) : count_(count), sum_(std::move(running_sum)) {}

    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    const ConvexBody& running_sum() const {
        if (!sum_) throw InvalidArgument("mean process has no draws yet");
        return *sum_;
    }

    /// The sample mean (1/N) sum Y_i.
    ConvexBody mean() const { return scale(running_sum(), 1.0 / static_cast<double>(count_)); }

private:
    std::size_t count_ = 0;
    std::optional<ConvexBody> sum_;
};

/// Appends one draw; the running sum is re-hulled so its vertex list stays minimal.
inline MeanProcessState mean_process_extend(const MeanProcessState& state, const ConvexBody& body) {
    if (state.empty()) return MeanProcessState(1, body);
    return MeanProcessState(state.count() + 1, minkowski_sum(state.running_sum(), body));
}

}  // namespace randset

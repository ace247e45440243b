#pragma once

#include <chrono>
#include <optional>

namespace paramreport {

/// Cooperative wall-clock budget. Solvers poll expired() at branch nodes and
/// oracle calls; a default-constructed budget never expires.
class Budget {
public:
    using Clock = std::chrono::steady_clock;

    Budget() = default;
    explicit Budget(std::chrono::milliseconds limit) : deadline_(Clock::now() + limit) {}

    static Budget unlimited() { return {}; }
    static Budget seconds(double s) {
        return Budget(std::chrono::milliseconds(static_cast<long long>(s * 1000.0)));
    }

    bool expired() const {
        if (!deadline_) return false;
        // Clock reads are cheap but not free; sample every 64 polls.
        if ((++polls_ & 63U) != 0U && !tripped_) return false;
        if (!tripped_ && Clock::now() >= *deadline_) tripped_ = true;
        return tripped_;
    }

    bool limited() const { return deadline_.has_value(); }

private:
    std::optional<Clock::time_point> deadline_;
    mutable unsigned polls_ = 0;
    mutable bool tripped_ = false;
};

/// Thrown internally by solvers when the budget runs out; callers convert it
/// into a timeout status with bounds.
struct BudgetExhausted {};

}  // namespace paramreport

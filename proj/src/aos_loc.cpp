#include "locaos/aos_loc.hpp"

#include <algorithm>
#include <numeric>

#include "locaos/instance.hpp"

namespace locaos {

std::vector<int> TrappedSet::members() const {
    std::vector<int> out;
    for (int i = 0; i < capacity(); ++i) {
        if (member_[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
}

void TrappedSet::insert(int op) {
    if (op < 0 || op >= capacity()) throw ContractViolation("TrappedSet: operator index out of range");
    if (!member_[static_cast<std::size_t>(op)]) {
        member_[static_cast<std::size_t>(op)] = true;
        ++count_;
    }
}

void TrappedSet::clear() {
    std::fill(member_.begin(), member_.end(), false);
    count_ = 0;
}

std::vector<double> modulate(std::span<const double> probs, const TrappedSet& lo, const LocMatrix& loc) {
    const int k = static_cast<int>(probs.size());
    if (loc.size() != k || lo.capacity() != k) throw ContractViolation("modulate: dimension mismatch");
    std::vector<double> out(probs.begin(), probs.end());
    if (lo.empty()) return out;
    for (int i : lo.members()) {
        for (int j = 0; j < k; ++j) out[j] *= std::clamp(1.0 - loc(i, j), 0.0, 2.0);
    }
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    if (total > 1e-15) {
        for (double& p : out) p /= total;
        return out;
    }
    const int open = lo.full() ? k : k - lo.size();
    for (int j = 0; j < k; ++j) out[j] = lo.full() || !lo.contains(j) ? 1.0 / open : 0.0;
    return out;
}

void update_trapped_set(TrappedSet& lo, int op, double reward) {
    if (reward > 0.0) {
        lo.clear();
    } else {
        lo.insert(op);
    }
}

}  // namespace locaos

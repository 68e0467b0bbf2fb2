#pragma once

#include <span>
#include <vector>

#include "locaos/loc.hpp"

namespace locaos {

// Operators (0-based positions in the run's operator list) confirmed trapped
// on the current solution since the last improvement.
class TrappedSet {
public:
    explicit TrappedSet(int num_ops = 0) : member_(static_cast<std::size_t>(num_ops), false) {}

    int capacity() const { return static_cast<int>(member_.size()); }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool full() const { return count_ == capacity(); }
    bool contains(int op) const { return member_.at(static_cast<std::size_t>(op)); }
    std::vector<int> members() const;

    void insert(int op);
    void clear();

    bool operator==(const TrappedSet&) const = default;

private:
    std::vector<bool> member_;
    int count_ = 0;
};

// Multiplies probs by (1 - loc[i][.]) for every i in lo, factors clamped to
// [0, 2], and renormalizes. An annihilated vector (sum <= 1e-15) falls back to
// uniform over the operators outside lo, or over all when lo is full. An empty
// lo returns probs untouched.
std::vector<double> modulate(std::span<const double> probs, const TrappedSet& lo, const LocMatrix& loc);

// Positive reward clears the set; otherwise op joins it.
void update_trapped_set(TrappedSet& lo, int op, double reward);

}  // namespace locaos

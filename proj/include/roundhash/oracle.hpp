#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace roundhash {

// Materialized reference model of the evolving arc -> bucket permutation,
// built with the forward skip-scan rule: to add bucket m, skip s entries
// from the cursor and insert; when the scan reaches the end, advance the
// step (wrapping 2*s0-1 -> s0 starts the next doubling round) and restart.
//
// Deliberately linear-time and memory-hungry: this is the audit model that
// RoundMapper's closed form is checked against, and the backing of the
// `table-check` CLI verb. It may divide freely.
class PermutationOracle {
 public:
  explicit PermutationOracle(uint32_t s0) : s0_(s0), step_(s0) {
    if (s0 == 0) throw std::invalid_argument("PermutationOracle: s0 must be positive");
    seq_.reserve(s0);
    for (uint32_t i = 0; i < s0; ++i) seq_.push_back(i);
  }

  uint64_t size() const { return seq_.size(); }
  uint32_t slack() const { return s0_; }
  uint32_t step() const { return step_; }
  uint64_t rounds_completed() const { return round_; }
  std::span<const uint64_t> sequence() const { return seq_; }

  uint64_t bucket_at(uint64_t arc) const {
    if (arc >= seq_.size()) throw std::out_of_range("PermutationOracle: arc out of range");
    return seq_[arc];
  }

  void new_bucket() {
    const size_t at = cursor_ + step_;
    seq_.insert(seq_.begin() + static_cast<ptrdiff_t>(at), seq_.size());
    cursor_ = at + 1;
    if (cursor_ == seq_.size()) {
      cursor_ = 0;
      if (step_ == 2 * s0_ - 1) {
        step_ = s0_;
        ++round_;
      } else {
        ++step_;
      }
    }
  }

  // Exact inverse of the most recent new_bucket call.
  void free_bucket() {
    if (seq_.size() == s0_) throw std::logic_error("PermutationOracle: at initial size");
    if (cursor_ == 0) {
      // the matching insert finished a scan; undo the step advance first
      if (step_ == s0_) {
        step_ = 2 * s0_ - 1;
        --round_;
      } else {
        --step_;
      }
      cursor_ = seq_.size();
    }
    const size_t at = cursor_ - 1;
    if (seq_[at] != seq_.size() - 1)
      throw std::logic_error("PermutationOracle: sequence corrupted");
    seq_.erase(seq_.begin() + static_cast<ptrdiff_t>(at));
    cursor_ = at - step_;
  }

  // Rational arc geometry: arcs [0, cursor*(s+1)) are short with weight s,
  // the rest long with weight s+1, all over the common denominator
  // total_weight(). (cursor_ counts insertions * (s+1) positions.)
  uint64_t short_arcs() const { return cursor_; }
  uint64_t arc_weight(uint64_t arc) const { return arc < cursor_ ? step_ : step_ + 1; }
  uint64_t total_weight() const { return seq_.size() * (step_ + 1) - cursor_; }

  // Arc hit by the exact fraction num/den of the circumference.
  uint64_t arc_of_fraction(uint64_t num, uint64_t den) const {
    if (den == 0 || num >= den) throw std::invalid_argument("arc_of_fraction: need num < den");
    const uint64_t w = total_weight();
    const auto v = static_cast<uint64_t>(static_cast<unsigned __int128>(num) * w / den);
    const uint64_t short_weight = cursor_ * step_;
    if (v < short_weight) return v / step_;
    return cursor_ + (v - short_weight) / (step_ + 1);
  }

 private:
  uint32_t s0_;
  uint32_t step_;
  uint64_t round_ = 0;  // completed doubling rounds
  size_t cursor_ = 0;   // scan position; also the current number of short arcs
  std::vector<uint64_t> seq_;
};

}  // namespace roundhash

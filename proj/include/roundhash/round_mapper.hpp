#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "roundhash/reciprocal.hpp"

namespace roundhash {

// Constant-time, division-free mapping from 64-bit hash values to bucket
// numbers in [0, m), where buckets are added and released one at a time and
// each change relocates keys from only s <= 2*s0-1 buckets.
//
// The unit circumference is split into m arcs, short ones of weight s and
// long ones of weight s+1 over the common denominator total_weight(); arcs
// [0, short_arcs_) are short. new_bucket shrinks the next s long arcs and
// appends a new short arc after them. All per-lookup divisions are by
// constants in [s0, 2*s0] served by precomputed multiply-shift reciprocals,
// or by powers of two.
//
// find_bucket / arc_of / bucket_of_arc / pos are pure reads; new_bucket and
// free_bucket need exclusive access (no internal synchronization).
class RoundMapper {
 public:
  // Five integers fully determine the mapping (plus derived caches).
  struct State {
    uint64_t s0;
    uint64_t m;
    uint64_t s;
    uint64_t short_arcs;  // p + 1 in arc terms: arcs [0, short_arcs) are short
    uint64_t q;           // completed doubling rounds
    bool operator==(const State&) const = default;
  };

  static constexpr uint32_t kMaxSlack = 1u << 20;

  explicit RoundMapper(uint32_t s0) {
    if (s0 == 0) throw std::invalid_argument("RoundMapper: s0 must be positive");
    if (s0 > kMaxSlack) throw std::invalid_argument("RoundMapper: s0 too large");
    s0_ = s0;
    m_ = s0;
    s_ = s0;
    short_arcs_ = 0;
    groups_done_ = 0;
    q_ = 0;
    max_round_ = 61 - std::bit_width(uint64_t{s0}) - std::bit_width(uint64_t{2} * s0);
    recip_.reserve(s0 + 1);
    for (uint64_t d = s0; d <= 2 * uint64_t{s0}; ++d) recip_.emplace_back(d);
    refresh_cache();
  }

  uint64_t num_buckets() const { return m_; }
  uint32_t slack() const { return s0_; }
  uint32_t step() const { return s_; }
  uint32_t round() const { return q_; }  // completed doubling rounds
  uint64_t short_arcs() const { return short_arcs_; }
  uint64_t total_weight() const { return weight_; }
  uint64_t max_buckets() const { return uint64_t{s0_} << (max_round_ + 1); }

  uint64_t arc_weight(uint64_t arc) const { return arc < short_arcs_ ? s_ : s_ + 1; }

  // Arc hit by h, treating h as the fixed-point fraction h / 2^64 of the
  // circumference. Non-decreasing in h; arcs are half-open so a hash exactly
  // on a boundary belongs to the arc it begins.
  uint64_t arc_of(uint64_t h) const {
    const uint64_t v = mul_hi_u64(h, weight_);
    if (v < short_weight_) return recip_[s_ - s0_].quot(v);
    return short_arcs_ + recip_[s_ + 1 - s0_].quot(v - short_weight_);
  }

  uint64_t find_bucket(uint64_t h) const { return bucket_of_arc_unchecked(arc_of(h)); }

  uint64_t bucket_of_arc(uint64_t arc) const {
    if (arc >= m_) throw std::out_of_range("RoundMapper: arc out of range");
    return bucket_of_arc_unchecked(arc);
  }

  // Bucket number at position i*s0 + x of the ideal (end-of-round-q) layout;
  // the closed form behind find_bucket. i = 0 has no 2-adic order and is a
  // contract violation.
  uint64_t pos(uint64_t i, uint32_t x, uint32_t q) const {
    if (i == 0) throw std::invalid_argument("pos: i must be positive");
    if (x >= s0_) throw std::invalid_argument("pos: x must be below s0");
    const int e = std::countr_zero(i);
    return (((uint64_t{s0_} + x) << q) + i) >> (e + 1);
  }

  // Shrinks the next s long arcs and appends a new short arc carrying bucket
  // number m; returns the bucket numbers of the shrunk arcs in clockwise
  // order. O(s0) time.
  std::vector<uint64_t> new_bucket() {
    if (short_arcs_ == m_) {  // all arcs short: relabel them long, advance the step
      if (s_ == 2 * s0_ - 1) {
        if (q_ + 1 > max_round_)
          throw std::overflow_error("RoundMapper: bucket ceiling reached");
        s_ = s0_;
        ++q_;
      } else {
        ++s_;
      }
      short_arcs_ = 0;
      groups_done_ = 0;
    }
    std::vector<uint64_t> shrunk(s_);
    for (uint32_t t = 0; t < s_; ++t) shrunk[t] = bucket_of_arc_unchecked(short_arcs_ + t);
    short_arcs_ += uint64_t{s_} + 1;
    ++groups_done_;
    ++m_;
    refresh_cache();
    return shrunk;
  }

  // Exact inverse of the most recent new_bucket: releases bucket m-1 and
  // restores the prior state. Returns the bucket numbers of the s+1 short
  // arcs involved; the last one is the released bucket.
  std::vector<uint64_t> free_bucket() {
    if (m_ == s0_) throw std::logic_error("RoundMapper: already at the initial bucket count");
    const uint64_t first = short_arcs_ - (uint64_t{s_} + 1);
    std::vector<uint64_t> group(uint64_t{s_} + 1);
    for (uint32_t t = 0; t <= s_; ++t) group[t] = bucket_of_arc_unchecked(first + t);
    --m_;
    short_arcs_ = first;
    --groups_done_;
    if (short_arcs_ == 0 && m_ > s0_) {
      // the matching new_bucket began a step; undo the advance
      if (s_ == s0_) {
        s_ = 2 * s0_ - 1;
        --q_;
      } else {
        --s_;
      }
      short_arcs_ = m_;
      groups_done_ = m_ / (uint64_t{s_} + 1);
    }
    refresh_cache();
    return group;
  }

  State state() const { return {s0_, m_, s_, short_arcs_, q_}; }

  static RoundMapper restore(const State& st) {
    if (st.s0 == 0 || st.s0 > kMaxSlack) throw std::invalid_argument("restore: bad s0");
    RoundMapper r(static_cast<uint32_t>(st.s0));
    if (st.s < st.s0 || st.s > 2 * st.s0 - 1) throw std::invalid_argument("restore: step out of range");
    if (st.m < st.s0) throw std::invalid_argument("restore: fewer buckets than s0");
    if (st.short_arcs > st.m || st.short_arcs % (st.s + 1) != 0)
      throw std::invalid_argument("restore: inconsistent short-arc count");
    if (st.q > r.max_round_) throw std::invalid_argument("restore: round above the ceiling");
    r.m_ = st.m;
    r.s_ = static_cast<uint32_t>(st.s);
    r.short_arcs_ = st.short_arcs;
    r.groups_done_ = st.short_arcs / (st.s + 1);
    r.q_ = static_cast<uint32_t>(st.q);
    r.refresh_cache();
    return r;
  }

 private:
  uint64_t bucket_of_arc_unchecked(uint64_t j) const {
    if (j < s0_) return j;
    uint64_t jp;
    uint32_t sp;
    if (j >= short_arcs_) {  // long arc: drop one entry per completed group
      jp = j - groups_done_;
      sp = s_;
    } else {
      jp = j;
      sp = s_ + 1;
    }
    const uint64_t g = recip_[sp - s0_].quot(jp);
    const uint64_t r = jp - g * sp;
    uint64_t i, x;
    uint32_t qp = q_;
    if (sp > s0_) {  // group carries entries appended in the current round
      ++qp;
      const uint64_t appended = r >= s0_;
      x = r - (appended ? s0_ : 0);
      i = 2 * g + appended;
    } else {  // first step of a round: groups replay the previous round
      i = g;
      x = r;
    }
    const int e = std::countr_zero(i);
    return (((uint64_t{s0_} + x) << qp) + i) >> (e + 1);
  }

  void refresh_cache() {
    weight_ = m_ * (uint64_t{s_} + 1) - short_arcs_;
    short_weight_ = short_arcs_ * s_;
  }

  uint32_t s0_;
  uint64_t m_;
  uint32_t s_;
  uint64_t short_arcs_;   // p + 1
  uint64_t groups_done_;  // short_arcs_ / (s + 1), kept incrementally
  uint32_t q_;
  uint32_t max_round_;
  uint64_t weight_;        // total arc weight W
  uint64_t short_weight_;  // weight of the short prefix
  std::vector<SmallDivider> recip_;
};

}  // namespace roundhash

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "roundhash/jump_hash.hpp"
#include "roundhash/linear_hash.hpp"
#include "roundhash/round_mapper.hpp"

namespace roundhash {

// Uniform view over the placement strategies for experiment drivers: hash a
// key to a bucket under the current state, add a bucket, drop one where the
// strategy supports it.
class PlacementStrategy {
 public:
  virtual ~PlacementStrategy() = default;
  virtual uint64_t bucket_of(uint64_t hash) const = 0;
  virtual uint64_t num_buckets() const = 0;
  virtual void grow() = 0;
  virtual bool can_shrink() const = 0;
  virtual void shrink() = 0;
  virtual std::string name() const = 0;

  void grow_to(uint64_t buckets) {
    while (num_buckets() < buckets) grow();
    if (num_buckets() != buckets)
      throw std::invalid_argument(name() + ": cannot start below " +
                                  std::to_string(num_buckets()) + " buckets");
  }
};

class RoundStrategy final : public PlacementStrategy {
 public:
  explicit RoundStrategy(uint32_t s0) : mapper_(s0) {}
  uint64_t bucket_of(uint64_t hash) const override { return mapper_.find_bucket(hash); }
  uint64_t num_buckets() const override { return mapper_.num_buckets(); }
  void grow() override { mapper_.new_bucket(); }
  bool can_shrink() const override { return mapper_.num_buckets() > mapper_.slack(); }
  void shrink() override { mapper_.free_bucket(); }
  std::string name() const override { return "round"; }
  const RoundMapper& mapper() const { return mapper_; }

 private:
  RoundMapper mapper_;
};

class JumpStrategy final : public PlacementStrategy {
 public:
  uint64_t bucket_of(uint64_t hash) const override { return jump_hash(hash, buckets_); }
  uint64_t num_buckets() const override { return buckets_; }
  void grow() override { ++buckets_; }
  bool can_shrink() const override { return buckets_ > 1; }
  void shrink() override { --buckets_; }
  std::string name() const override { return "jump"; }

 private:
  uint64_t buckets_ = 1;
};

class LinearStrategy final : public PlacementStrategy {
 public:
  explicit LinearStrategy(uint32_t s0) : hasher_(s0) {}
  uint64_t bucket_of(uint64_t hash) const override { return hasher_.bucket_of(hash); }
  uint64_t num_buckets() const override { return hasher_.num_buckets(); }
  void grow() override { hasher_.grow(); }
  bool can_shrink() const override { return hasher_.num_buckets() > hasher_.slack(); }
  void shrink() override { hasher_.shrink(); }
  std::string name() const override { return "linear"; }

 private:
  LinearHasher hasher_;
};

// s0 = 0 means "not given"; jump rejects an explicit s0, the others need one.
inline std::unique_ptr<PlacementStrategy> make_strategy(const std::string& name, uint32_t s0) {
  if (name == "jump") {
    if (s0 != 0) throw std::invalid_argument("jump ignores s0; do not pass one");
    return std::make_unique<JumpStrategy>();
  }
  if (s0 == 0) throw std::invalid_argument(name + " needs --s0");
  if (name == "round") return std::make_unique<RoundStrategy>(s0);
  if (name == "linear") return std::make_unique<LinearStrategy>(s0);
  throw std::invalid_argument("unknown strategy: " + name);
}

}  // namespace roundhash

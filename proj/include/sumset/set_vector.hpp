#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumset/error.hpp"

namespace sumset {

using Value = std::int64_t;

// A k-subset of [1..q] stored as its strictly increasing element tuple.
class SetVector {
 public:
  // Elements may arrive in any order; they are sorted. Repeated elements,
  // k < 2, or anything outside [1..q] is rejected. q <= 0 means "use max(A)".
  static SetVector make(std::vector<Value> elements, Value q = 0) {
    std::sort(elements.begin(), elements.end());
    if (elements.size() < 2)
      throw InvalidArgument("a set needs at least 2 elements, got " +
                            std::to_string(elements.size()));
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
      throw InvalidArgument("repeated element in set");
    if (q <= 0) q = elements.back();
    if (elements.front() < 1 || elements.back() > q)
      throw InvalidArgument("set elements must lie in [1.." + std::to_string(q) + "]");
    return SetVector(std::move(elements), q);
  }

  std::span<const Value> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  int k() const noexcept { return static_cast<int>(elements_.size()); }
  Value q() const noexcept { return q_; }
  Value operator[](std::size_t i) const { return elements_[i]; }
  Value min() const { return elements_.front(); }
  Value max() const { return elements_.back(); }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(elements_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const SetVector&, const SetVector&) = default;

 private:
  SetVector(std::vector<Value> e, Value q) : elements_(std::move(e)), q_(q) {}

  std::vector<Value> elements_;
  Value q_ = 0;
};

}  // namespace sumset

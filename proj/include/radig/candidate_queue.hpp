#pragma once

#include <cstdint>
#include <vector>

#include "radig/image.hpp"

namespace radig {

/// Min-priority queue over candidate cluster pairs with stable handles, so
/// entries can be deleted in O(log m) when reciprocity breaks. Ordering is
/// (distance, first, second), which fixes the merge tie-break.
class CandidateQueue {
 public:
  using Handle = std::int32_t;
  static constexpr Handle kNoHandle = -1;

  struct Entry {
    double distance = 0.0;
    std::int32_t first = kNotConnected;   // smaller cluster id
    std::int32_t second = kNotConnected;  // larger cluster id
  };

  Handle insert(double distance, std::int32_t a, std::int32_t b);
  Entry pop_min();
  void erase(Handle h);
  const Entry& get(Handle h) const;

  std::size_t size() const { return heap_.size(); }
  bool empty() const { return heap_.empty(); }

  /// Unordered snapshot of the current entries.
  std::vector<Entry> entries() const;

 private:
  struct Slot {
    Entry entry;
    std::int32_t heap_pos = -1;  // -1 marks a free slot
  };

  bool precedes(std::int32_t slot_a, std::int32_t slot_b) const;
  void sift_up(std::size_t pos);
  void sift_down(std::size_t pos);
  void place(std::size_t pos, std::int32_t slot);
  void remove_at(std::size_t pos);

  std::vector<Slot> slots_;
  std::vector<std::int32_t> heap_;  // heap of slot indices
  std::vector<std::int32_t> free_;
};

}  // namespace radig

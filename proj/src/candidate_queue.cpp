#include "radig/candidate_queue.hpp"

#include <algorithm>

namespace radig {

bool CandidateQueue::precedes(std::int32_t slot_a, std::int32_t slot_b) const {
  const Entry& x = slots_[slot_a].entry;
  const Entry& y = slots_[slot_b].entry;
  if (x.distance != y.distance) return x.distance < y.distance;
  if (x.first != y.first) return x.first < y.first;
  return x.second < y.second;
}

void CandidateQueue::place(std::size_t pos, std::int32_t slot) {
  heap_[pos] = slot;
  slots_[slot].heap_pos = static_cast<std::int32_t>(pos);
}

void CandidateQueue::sift_up(std::size_t pos) {
  const std::int32_t slot = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!precedes(slot, heap_[parent])) break;
    place(pos, heap_[parent]);
    pos = parent;
  }
  place(pos, slot);
}

void CandidateQueue::sift_down(std::size_t pos) {
  const std::int32_t slot = heap_[pos];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && precedes(heap_[child + 1], heap_[child])) ++child;
    if (!precedes(heap_[child], slot)) break;
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, slot);
}

CandidateQueue::Handle CandidateQueue::insert(double distance, std::int32_t a, std::int32_t b) {
  if (a > b) std::swap(a, b);
  std::int32_t slot;
  if (!free_.empty()) {
    slot = free_.back();
    free_.pop_back();
  } else {
    slot = static_cast<std::int32_t>(slots_.size());
    slots_.emplace_back();
  }
  slots_[slot].entry = Entry{distance, a, b};
  heap_.push_back(slot);
  slots_[slot].heap_pos = static_cast<std::int32_t>(heap_.size() - 1);
  sift_up(heap_.size() - 1);
  return slot;
}

void CandidateQueue::remove_at(std::size_t pos) {
  const std::int32_t slot = heap_[pos];
  slots_[slot].heap_pos = -1;
  free_.push_back(slot);
  const std::int32_t last = heap_.back();
  heap_.pop_back();
  if (pos < heap_.size()) {
    place(pos, last);
    sift_down(pos);
    sift_up(slots_[last].heap_pos);
  }
}

CandidateQueue::Entry CandidateQueue::pop_min() {
  if (heap_.empty()) throw ValidationError("CandidateQueue: pop on empty queue");
  const Entry top = slots_[heap_[0]].entry;
  remove_at(0);
  return top;
}

void CandidateQueue::erase(Handle h) {
  if (h < 0 || static_cast<std::size_t>(h) >= slots_.size() || slots_[h].heap_pos < 0) {
    throw ValidationError("CandidateQueue: erase with invalid handle");
  }
  remove_at(static_cast<std::size_t>(slots_[h].heap_pos));
}

const CandidateQueue::Entry& CandidateQueue::get(Handle h) const {
  if (h < 0 || static_cast<std::size_t>(h) >= slots_.size() || slots_[h].heap_pos < 0) {
    throw ValidationError("CandidateQueue: get with invalid handle");
  }
  return slots_[h].entry;
}

std::vector<CandidateQueue::Entry> CandidateQueue::entries() const {
  std::vector<Entry> out;
  out.reserve(heap_.size());
  for (std::int32_t slot : heap_) out.push_back(slots_[slot].entry);
  return out;
}

}  // namespace radig

#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <unordered_map>

#include "dcsim/ndn/packet.hpp"

namespace dcsim::ndn {

struct NameHash {
  std::size_t operator()(const Name& name) const noexcept;
};

// Exact-name LRU packet cache. Capacity 0 disables caching entirely.
class ContentStore {
 public:
  explicit ContentStore(std::size_t capacity) : capacity_(capacity) {}

  // Refreshes recency on a hit.
  const Data* find(const Name& name);
  void insert(const Data& data);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t evictions() const { return evictions_; }

 private:
  std::size_t capacity_;
  std::list<Data> entries_;  // front = most recently used
  std::unordered_map<Name, std::list<Data>::iterator, NameHash> index_;
  std::uint64_t evictions_ = 0;
};

}  // namespace dcsim::ndn

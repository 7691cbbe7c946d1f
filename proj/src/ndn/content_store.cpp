#include "dcsim/ndn/content_store.hpp"

#include <functional>

namespace dcsim::ndn {

std::size_t NameHash::operator()(const Name& name) const noexcept {
  std::size_t h = 0;
  for (const auto& c : name.components()) {
    h ^= std::hash<std::string>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

const Data* ContentStore::find(const Name& name) {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  entries_.splice(entries_.begin(), entries_, it->second);
  return &*it->second;
}

void ContentStore::insert(const Data& data) {
  if (capacity_ == 0) return;
  auto it = index_.find(data.name);
  if (it != index_.end()) {
    *it->second = data;
    entries_.splice(entries_.begin(), entries_, it->second);
    return;
  }
  if (entries_.size() >= capacity_) {
    index_.erase(entries_.back().name);
    entries_.pop_back();
    ++evictions_;
  }
  entries_.push_front(data);
  index_.emplace(data.name, entries_.begin());
}

}  // namespace dcsim::ndn

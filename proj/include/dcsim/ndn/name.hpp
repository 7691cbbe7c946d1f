#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dcsim::ndn {

// Hierarchical name, e.g. /a/img.png/seq=3. Components never contain '/'.
class Name {
 public:
  Name() = default;
  explicit Name(std::vector<std::string> components);
  // Parses "/a/b/c". Empty components ("//") are rejected.
  static Name parse(std::string_view uri);

  const std::vector<std::string>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  const std::string& operator[](std::size_t i) const { return components_[i]; }

  Name prefix(std::size_t n) const;
  // Name minus its last component; empty for an empty name.
  Name parent() const { return prefix(empty() ? 0 : size() - 1); }
  Name append(std::string component) const;
  Name append_sequence(std::uint64_t seq) const;
  // Parses a trailing "seq=N" component.
  std::optional<std::uint64_t> sequence() const;

  bool is_prefix_of(const Name& other) const;
  std::string to_uri() const;
  // Length of the URI form; used for packet sizing.
  std::size_t wire_bytes() const;

  auto operator<=>(const Name&) const = default;
  bool operator==(const Name&) const = default;

 private:
  std::vector<std::string> components_;
};

inline std::ostream& operator<<(std::ostream& os, const Name& n) { return os << n.to_uri(); }

}  // namespace dcsim::ndn

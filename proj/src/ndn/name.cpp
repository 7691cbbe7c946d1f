#include "dcsim/ndn/name.hpp"

#include <charconv>
#include <stdexcept>

namespace dcsim::ndn {
namespace {
constexpr std::string_view kSeqMarker = "seq=";
}

Name::Name(std::vector<std::string> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.empty() || c.find('/') != std::string::npos) {
      throw std::invalid_argument("invalid name component '" + c + "'");
    }
  }
}

Name Name::parse(std::string_view uri) {
  if (uri.empty() || uri.front() != '/') throw std::invalid_argument("name must start with '/'");
  std::vector<std::string> parts;
  std::size_t pos = 1;
  while (pos <= uri.size()) {
    const auto next = uri.find('/', pos);
    const auto end = next == std::string_view::npos ? uri.size() : next;
    if (end == pos) {
      if (end == uri.size() && parts.empty()) break;  // "/" is the root name
      throw std::invalid_argument("empty name component in '" + std::string(uri) + "'");
    }
    parts.emplace_back(uri.substr(pos, end - pos));
    pos = end + 1;
  }
  return Name(std::move(parts));
}

Name Name::prefix(std::size_t n) const {
  if (n > size()) n = size();
  Name out;
  out.components_.assign(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Name Name::append(std::string component) const {
  if (component.empty() || component.find('/') != std::string::npos) {
    throw std::invalid_argument("invalid name component '" + component + "'");
  }
  Name out = *this;
  out.components_.push_back(std::move(component));
  return out;
}

Name Name::append_sequence(std::uint64_t seq) const {
  return append(std::string(kSeqMarker) + std::to_string(seq));
}

std::optional<std::uint64_t> Name::sequence() const {
  if (empty()) return std::nullopt;
  std::string_view last = components_.back();
  if (!last.starts_with(kSeqMarker)) return std::nullopt;
  last.remove_prefix(kSeqMarker.size());
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(last.data(), last.data() + last.size(), value);
  if (ec != std::errc() || ptr != last.data() + last.size() || last.empty()) return std::nullopt;
  return value;
}

bool Name::is_prefix_of(const Name& other) const {
  if (size() > other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (components_[i] != other.components_[i]) return false;
  }
  return true;
}

std::string Name::to_uri() const {
  if (empty()) return "/";
  std::string out;
  for (const auto& c : components_) {
    out += '/';
    out += c;
  }
  return out;
}

std::size_t Name::wire_bytes() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.size() + 1;
  return n == 0 ? 1 : n;
}

}  // namespace dcsim::ndn

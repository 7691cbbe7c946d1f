#include "dcsim/experiment/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dcsim::experiment {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + ": " +
                    std::string(why));
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, v, "expected a number");
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    bad_value(key, v, "expected a non-negative integer");
  }
  return out;
}

std::uint32_t to_u32(std::string_view key, std::string_view v) {
  const auto x = to_u64(key, v);
  if (x > 0xFFFFFFFFull) bad_value(key, v, "out of range");
  return static_cast<std::uint32_t>(x);
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "expected true or false");
}

std::string from_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

struct Field {
  std::function<void(ScenarioConfig&, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <typename T>
Field number(T ScenarioConfig::*member) {
  Field f;
  f.get = [member](const ScenarioConfig& c) {
    if constexpr (std::is_same_v<T, double>) {
      return from_double(c.*member);
    } else {
      return std::to_string(c.*member);
    }
  };
  return f;
}

const std::vector<std::pair<std::string, Field>>& registry() {
  static const auto fields = [] {
    std::vector<std::pair<std::string, Field>> out;
    auto add_double = [&](const char* key, double ScenarioConfig::*m) {
      Field f = number(m);
      f.set = [m, key](ScenarioConfig& c, std::string_view v) { c.*m = to_double(key, v); };
      out.emplace_back(key, std::move(f));
    };
    auto add_u32 = [&](const char* key, std::uint32_t ScenarioConfig::*m) {
      Field f = number(m);
      f.set = [m, key](ScenarioConfig& c, std::string_view v) { c.*m = to_u32(key, v); };
      out.emplace_back(key, std::move(f));
    };
    auto add_bool = [&](const char* key, bool ScenarioConfig::*m) {
      Field f;
      f.set = [m, key](ScenarioConfig& c, std::string_view v) { c.*m = to_bool(key, v); };
      f.get = [m](const ScenarioConfig& c) { return std::string(c.*m ? "true" : "false"); };
      out.emplace_back(key, std::move(f));
    };
    auto add_text = [&](const char* key, std::string ScenarioConfig::*m) {
      Field f;
      f.set = [m](ScenarioConfig& c, std::string_view v) { c.*m = std::string(v); };
      f.get = [m](const ScenarioConfig& c) { return c.*m; };
      out.emplace_back(key, std::move(f));
    };

    add_text("scenario", &ScenarioConfig::scenario);
    out.emplace_back("topology",
                     Field{[](ScenarioConfig& c, std::string_view v) { c.topology = parse_topology(v); },
                           [](const ScenarioConfig& c) { return std::string(to_string(c.topology)); }});
    add_u32("nodes", &ScenarioConfig::nodes);
    add_u32("grid_cols", &ScenarioConfig::grid_cols);
    add_double("spacing", &ScenarioConfig::spacing);
    add_double("tx_radius", &ScenarioConfig::tx_radius);
    add_double("arena_width", &ScenarioConfig::arena_width);
    add_double("arena_height", &ScenarioConfig::arena_height);
    add_double("placement_jitter", &ScenarioConfig::placement_jitter);
    add_double("speed", &ScenarioConfig::speed);
    add_double("duration", &ScenarioConfig::duration);
    out.emplace_back("traffic",
                     Field{[](ScenarioConfig& c, std::string_view v) { c.traffic = parse_traffic(v); },
                           [](const ScenarioConfig& c) { return std::string(to_string(c.traffic)); }});
    add_u32("consumers", &ScenarioConfig::consumers);
    add_u32("producers", &ScenarioConfig::producers);
    add_u32("cs", &ScenarioConfig::cs);
    add_bool("cwl", &ScenarioConfig::cwl);
    add_bool("dil", &ScenarioConfig::dil);
    add_double("gamma", &ScenarioConfig::gamma);
    add_double("lifetime", &ScenarioConfig::lifetime);
    add_u32("payload", &ScenarioConfig::payload);
    add_u32("queue", &ScenarioConfig::queue);
    add_double("wireless_bitrate", &ScenarioConfig::wireless_bitrate);
    add_u32("mac_retries", &ScenarioConfig::mac_retries);
    add_double("p_frame_error", &ScenarioConfig::p_frame_error);
    add_double("wired_bitrate", &ScenarioConfig::wired_bitrate);
    add_double("wired_delay", &ScenarioConfig::wired_delay);
    add_bool("bottleneck", &ScenarioConfig::bottleneck);
    add_double("bottleneck_bitrate", &ScenarioConfig::bottleneck_bitrate);
    add_double("bottleneck_delay", &ScenarioConfig::bottleneck_delay);
    add_double("p_byte_error", &ScenarioConfig::p_byte_error);
    add_double("suppression", &ScenarioConfig::suppression);
    add_double("cm_fraction", &ScenarioConfig::cm_fraction);
    add_double("initial_rto", &ScenarioConfig::initial_rto);
    add_double("min_rto", &ScenarioConfig::min_rto);
    add_double("max_rto", &ScenarioConfig::max_rto);
    add_double("start_spread", &ScenarioConfig::start_spread);
    add_double("sample_interval", &ScenarioConfig::sample_interval);
    {
      Field f;
      f.set = [](ScenarioConfig& c, std::string_view v) { c.seed = to_u64("seed", v); };
      f.get = [](const ScenarioConfig& c) { return std::to_string(c.seed); };
      out.emplace_back("seed", std::move(f));
    }
    add_u32("runs", &ScenarioConfig::runs);
    add_text("placement_file", &ScenarioConfig::placement_file);
    return out;
  }();
  return fields;
}

const Field& lookup(std::string_view key) {
  for (const auto& [name, field] : registry()) {
    if (name == key) return field;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::kGrid: return "grid";
    case Topology::kLinearWireless: return "linear-wireless";
    case Topology::kLinearWired: return "linear-wired";
  }
  return "?";
}

std::string_view to_string(Traffic t) {
  switch (t) {
    case Traffic::kOneToOne: return "one-to-one";
    case Traffic::kManyToOne: return "many-to-one";
    case Traffic::kManyToMany: return "many-to-many";
  }
  return "?";
}

Topology parse_topology(std::string_view s) {
  if (s == "grid") return Topology::kGrid;
  if (s == "linear-wireless") return Topology::kLinearWireless;
  if (s == "linear-wired") return Topology::kLinearWired;
  throw ConfigError("unknown topology '" + std::string(s) + "'");
}

Traffic parse_traffic(std::string_view s) {
  if (s == "one-to-one" || s == "1-1") return Traffic::kOneToOne;
  if (s == "many-to-one" || s == "m-1") return Traffic::kManyToOne;
  if (s == "many-to-many" || s == "m-m") return Traffic::kManyToMany;
  throw ConfigError("unknown traffic mode '" + std::string(s) + "'");
}

std::uint32_t ScenarioConfig::effective_producers() const {
  if (producers != 0) return producers;
  switch (traffic) {
    case Traffic::kOneToOne: return consumers;
    case Traffic::kManyToOne: return 2;
    case Traffic::kManyToMany: return consumers;
  }
  return consumers;
}

void ScenarioConfig::validate() const {
  require(nodes >= 1 && nodes <= 100000, "nodes must lie in [1, 100000]");
  require(spacing > 0.0, "spacing must be positive");
  require(tx_radius > 0.0, "tx_radius must be positive");
  require(arena_width > 0.0 && arena_height > 0.0, "arena dimensions must be positive");
  require(placement_jitter >= 0.0, "placement_jitter must be non-negative");
  require(speed >= 0.0 && speed <= 8.0, "speed must lie in [0, 8] m/s");
  require(duration > 0.0, "duration must be positive");
  require(consumers >= 1, "at least one consumer is required");
  require(gamma > 1.0, "gamma must exceed 1");
  require(lifetime > 0.0, "lifetime must be positive");
  require(payload >= 1 && payload <= 65535, "payload must lie in [1, 65535] bytes");
  require(queue >= 1, "queue capacity must be at least 1");
  require(wireless_bitrate > 0.0 && wired_bitrate > 0.0 && bottleneck_bitrate > 0.0,
          "bitrates must be positive");
  require(wired_delay >= 0.0 && bottleneck_delay >= 0.0, "link delays must be non-negative");
  require(probability(p_frame_error), "p_frame_error must lie in [0, 1]");
  require(probability(p_byte_error), "p_byte_error must lie in [0, 1]");
  require(suppression >= 0.0, "suppression must be non-negative");
  require(cm_fraction > 0.0 && cm_fraction <= 1.0, "cm_fraction must lie in (0, 1]");
  require(min_rto > 0.0 && min_rto <= max_rto, "RTO bounds must satisfy 0 < min_rto <= max_rto");
  require(initial_rto >= min_rto && initial_rto <= max_rto,
          "initial_rto must lie within [min_rto, max_rto]");
  require(start_spread >= 0.0, "start_spread must be non-negative");
  require(sample_interval > 0.0, "sample_interval must be positive");
  require(runs >= 1, "runs must be at least 1");

  switch (topology) {
    case Topology::kGrid:
      require(grid_cols >= 1 && nodes % grid_cols == 0, "nodes must be a multiple of grid_cols");
      require((grid_cols - 1) * spacing <= arena_width &&
                  (nodes / grid_cols - 1) * spacing <= arena_height,
              "grid does not fit in the arena");
      break;
    case Topology::kLinearWireless:
    case Topology::kLinearWired:
      require(nodes >= 2, "a chain needs at least two nodes");
      require(traffic == Traffic::kOneToOne && consumers == 1 && effective_producers() == 1,
              "chain scenarios carry exactly one consumer-producer pair");
      if (topology == Topology::kLinearWired) {
        require(nodes <= 10, "wired chains span 2 to 10 nodes");
      }
      if (topology == Topology::kLinearWireless) {
        require((nodes - 1) * spacing <= arena_width, "chain does not fit in the arena");
        require(speed == 0.0, "chain scenarios are static");
      }
      break;
  }

  const std::uint32_t prods = effective_producers();
  switch (traffic) {
    case Traffic::kOneToOne:
      require(prods == consumers, "one-to-one needs as many producers as consumers");
      break;
    case Traffic::kManyToOne:
      require(prods >= 1 && prods <= consumers, "many-to-one needs 1..consumers producers");
      break;
    case Traffic::kManyToMany:
      require(consumers >= 2 && prods >= 2, "many-to-many needs at least two of each");
      break;
  }
  require(static_cast<std::uint64_t>(consumers) + prods <= nodes,
          "consumers plus producers exceed the node population");
}

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c;
  if (name == "manet") return c;
  if (name == "wireless-chain") {
    c.scenario = "wireless-chain";
    c.topology = Topology::kLinearWireless;
    c.nodes = 5;
    c.consumers = 1;
    c.cs = 0;
    c.cwl = false;
    c.dil = false;
    c.duration = 300.0;
    c.runs = 5;
    c.start_spread = 0.0;
    return c;
  }
  if (name == "wired-chain") {
    c.scenario = "wired-chain";
    c.topology = Topology::kLinearWired;
    c.nodes = 5;
    c.consumers = 1;
    c.cs = 0;
    c.cwl = false;
    c.dil = false;
    c.payload = 1460;
    c.duration = 300.0;
    c.runs = 5;
    c.start_spread = 0.0;
    return c;
  }
  throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
}

void set_field(ScenarioConfig& config, std::string_view key, std::string_view value) {
  lookup(key).set(config, trim(value));
}

std::vector<std::string> field_names() {
  std::vector<std::string> out;
  for (const auto& [name, field] : registry()) out.push_back(name);
  return out;
}

std::string get_field(const ScenarioConfig& config, std::string_view key) {
  return lookup(key).get(config);
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      set_field(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

ScenarioConfig load_config(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string emit_config(const ScenarioConfig& config) {
  std::string out;
  for (const auto& [name, field] : registry()) {
    out += name;
    out += " = ";
    out += field.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace dcsim::experiment

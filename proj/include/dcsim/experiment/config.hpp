#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcsim::experiment {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Topology { kGrid, kLinearWireless, kLinearWired };
enum class Traffic { kOneToOne, kManyToOne, kManyToMany };

std::string_view to_string(Topology t);
std::string_view to_string(Traffic t);
Topology parse_topology(std::string_view s);
// Accepts "one-to-one" / "1-1", "many-to-one" / "m-1", "many-to-many" / "m-m".
Traffic parse_traffic(std::string_view s);

// One experiment description. Defaults reproduce the 50-node grid setup.
struct ScenarioConfig {
  std::string scenario = "manet";
  Topology topology = Topology::kGrid;
  std::uint32_t nodes = 50;
  std::uint32_t grid_cols = 10;
  double spacing = 100.0;
  double tx_radius = 125.0;
  double arena_width = 1500.0;
  double arena_height = 1000.0;
  double placement_jitter = 0.0;
  double speed = 0.0;
  double duration = 100.0;
  Traffic traffic = Traffic::kOneToOne;
  std::uint32_t consumers = 10;
  // 0 derives the count from the traffic mode.
  std::uint32_t producers = 0;
  std::uint32_t cs = 200;
  bool cwl = true;
  bool dil = true;
  double gamma = 2.0;
  double lifetime = 2.0;
  std::uint32_t payload = 512;
  std::uint32_t queue = 25;
  double wireless_bitrate = 1e6;
  std::uint32_t mac_retries = 3;
  double p_frame_error = 0.0;
  double wired_bitrate = 5e6;
  double wired_delay = 0.001;
  bool bottleneck = false;
  double bottleneck_bitrate = 1e6;
  double bottleneck_delay = 0.010;
  double p_byte_error = 0.0;
  double suppression = 0.020;
  double cm_fraction = 0.5;
  double initial_rto = 2.0;
  double min_rto = 0.2;
  double max_rto = 60.0;
  double start_spread = 0.1;
  double sample_interval = 0.1;
  std::uint64_t seed = 1;
  std::uint32_t runs = 10;
  std::string placement_file;

  // Producers actually instantiated (resolves producers == 0).
  std::uint32_t effective_producers() const;
  // Throws ConfigError naming the first offending field.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

// Presets selectable with --scenario: "manet", "wireless-chain", "wired-chain".
ScenarioConfig preset(std::string_view name);

// Sets one field from its textual form. Unknown keys throw ConfigError.
void set_field(ScenarioConfig& config, std::string_view key, std::string_view value);
std::vector<std::string> field_names();
std::string get_field(const ScenarioConfig& config, std::string_view key);

// "key = value" lines; '#' starts a comment. Fields absent from the text keep
// the values already in `base`. The result is validated.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {});
// Every field, one per line, in a fixed order. parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

}  // namespace dcsim::experiment

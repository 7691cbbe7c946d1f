#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcsim/experiment/config.hpp"
#include "dcsim/experiment/metrics.hpp"
#include "dcsim/experiment/runner.hpp"
#include "dcsim/experiment/scripted.hpp"
#include "dcsim/mac/wired_network.hpp"
#include "dcsim/transport/congestion.hpp"
#include "dcsim/transport/rtt_estimator.hpp"

namespace py = pybind11;
namespace ex = dcsim::experiment;
namespace tr = dcsim::transport;

namespace {

std::string as_text(const py::handle& v) {
  if (py::isinstance<py::bool_>(v)) return v.cast<bool>() ? "true" : "false";
  if (py::isinstance<py::float_>(v)) return py::str(py::repr(v));
  return py::str(v);
}

ex::ScenarioConfig make_config(const std::string& preset, const py::kwargs& overrides) {
  ex::ScenarioConfig c = ex::preset(preset);
  for (const auto& [k, v] : overrides) ex::set_field(c, py::str(k).cast<std::string>(), as_text(v));
  return c;
}

py::dict metrics_dict(const ex::MetricsRecord& r) {
  py::dict d;
  d["seed"] = r.seed;
  const auto& cols = ex::metric_columns();
  const auto vals = ex::metric_values(r);
  for (std::size_t i = 0; i < cols.size(); ++i) d[py::str(cols[i])] = vals[i];
  return d;
}

}  // namespace

PYBIND11_MODULE(_dcsim, m) {
  m.doc() = "Adaptive-rate NDN simulator";

  py::register_exception<ex::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ex::ScenarioConfig> cfg(m, "Config");
  cfg.def(py::init(&make_config), py::arg("preset") = "manet")
      .def("__getitem__", [](const ex::ScenarioConfig& c, const std::string& k) { return ex::get_field(c, k); })
      .def("__setitem__",
           [](ex::ScenarioConfig& c, const std::string& k, const py::handle& v) { ex::set_field(c, k, as_text(v)); })
      .def("validate", &ex::ScenarioConfig::validate)
      .def("effective_producers", &ex::ScenarioConfig::effective_producers)
      .def("to_text", [](const ex::ScenarioConfig& c) { return ex::emit_config(c); })
      .def_static("from_text", [](const std::string& text) { return ex::parse_config(text); })
      .def_static("fields", &ex::field_names)
      .def("__eq__", [](const ex::ScenarioConfig& a, const ex::ScenarioConfig& b) { return a == b; })
      .def("__repr__", [](const ex::ScenarioConfig& c) {
        return "<Config " + c.scenario + " " + std::string(ex::to_string(c.topology)) + " " +
               std::string(ex::to_string(c.traffic)) + ">";
      })
      .def_property(
          "topology", [](const ex::ScenarioConfig& c) { return std::string(ex::to_string(c.topology)); },
          [](ex::ScenarioConfig& c, const std::string& s) { c.topology = ex::parse_topology(s); })
      .def_property(
          "traffic", [](const ex::ScenarioConfig& c) { return std::string(ex::to_string(c.traffic)); },
          [](ex::ScenarioConfig& c, const std::string& s) { c.traffic = ex::parse_traffic(s); });
#define DCSIM_FIELD(name) cfg.def_readwrite(#name, &ex::ScenarioConfig::name)
  DCSIM_FIELD(scenario);
  DCSIM_FIELD(nodes);
  DCSIM_FIELD(grid_cols);
  DCSIM_FIELD(spacing);
  DCSIM_FIELD(tx_radius);
  DCSIM_FIELD(arena_width);
  DCSIM_FIELD(arena_height);
  DCSIM_FIELD(placement_jitter);
  DCSIM_FIELD(speed);
  DCSIM_FIELD(duration);
  DCSIM_FIELD(consumers);
  DCSIM_FIELD(producers);
  DCSIM_FIELD(cs);
  DCSIM_FIELD(cwl);
  DCSIM_FIELD(dil);
  DCSIM_FIELD(gamma);
  DCSIM_FIELD(lifetime);
  DCSIM_FIELD(payload);
  DCSIM_FIELD(queue);
  DCSIM_FIELD(wireless_bitrate);
  DCSIM_FIELD(mac_retries);
  DCSIM_FIELD(p_frame_error);
  DCSIM_FIELD(wired_bitrate);
  DCSIM_FIELD(wired_delay);
  DCSIM_FIELD(bottleneck);
  DCSIM_FIELD(bottleneck_bitrate);
  DCSIM_FIELD(bottleneck_delay);
  DCSIM_FIELD(p_byte_error);
  DCSIM_FIELD(suppression);
  DCSIM_FIELD(cm_fraction);
  DCSIM_FIELD(initial_rto);
  DCSIM_FIELD(min_rto);
  DCSIM_FIELD(max_rto);
  DCSIM_FIELD(start_spread);
  DCSIM_FIELD(sample_interval);
  DCSIM_FIELD(seed);
  DCSIM_FIELD(runs);
  DCSIM_FIELD(placement_file);
#undef DCSIM_FIELD

  py::class_<ex::MetricsRecord>(m, "Metrics")
      .def_readonly("seed", &ex::MetricsRecord::seed)
      .def_readonly("throughput_mbps", &ex::MetricsRecord::throughput_mbps)
      .def_readonly("mean_cwnd", &ex::MetricsRecord::mean_cwnd)
      .def_readonly("mean_rtt_ms", &ex::MetricsRecord::mean_rtt_ms)
      .def_readonly("data_broadcasts", &ex::MetricsRecord::data_broadcasts)
      .def_readonly("mean_hop_count", &ex::MetricsRecord::mean_hop_count)
      .def_readonly("cache_hits", &ex::MetricsRecord::cache_hits)
      .def_readonly("duplicates", &ex::MetricsRecord::duplicates)
      .def_readonly("unique_data", &ex::MetricsRecord::unique_data)
      .def_readonly("invariant_violations", &ex::MetricsRecord::invariant_violations)
      .def("as_dict", &metrics_dict)
      .def("__eq__", [](const ex::MetricsRecord& a, const ex::MetricsRecord& b) { return a == b; });

  py::class_<ex::RunResult>(m, "RunResult")
      .def_readonly("metrics", &ex::RunResult::metrics)
      .def_readonly("trace", &ex::RunResult::trace)
      .def_readonly("violations", &ex::RunResult::violations);

  m.def("preset", &ex::preset, py::arg("name"));
  m.def("metric_columns", &ex::metric_columns);
  m.def(
      "run_single",
      [](const ex::ScenarioConfig& c, std::uint64_t seed, bool trace, bool check) {
        c.validate();
        py::gil_scoped_release release;
        return ex::run_single(c, seed, {.trace = trace, .check_invariants = check});
      },
      py::arg("config"), py::arg("seed"), py::arg("trace") = false,
      py::arg("check_invariants") = false);
  m.def(
      "run_experiment",
      [](const ex::ScenarioConfig& c, unsigned threads) {
        py::gil_scoped_release release;
        return ex::run_experiment(c, {.threads = threads});
      },
      py::arg("config"), py::arg("threads") = 1);
  m.def(
      "summarize",
      [](const std::vector<ex::MetricsRecord>& records) {
        py::dict out;
        for (const auto& s : ex::summarize(records)) out[py::str(s.name)] = py::make_tuple(s.mean, s.stddev);
        return out;
      },
      py::arg("records"));
  m.def("emit_csv", &ex::emit_csv, py::arg("config"), py::arg("records"));

  m.def(
      "aggregation_scenario",
      [](bool dynamic_lifetime, std::uint64_t seed) {
        const auto r = ex::run_aggregation_scenario(dynamic_lifetime, seed);
        py::dict d;
        d["z_downstreams"] = r.z_downstreams;
        d["z_pit_count"] = r.z_pit_count;
        d["data_broadcasts"] = r.data_broadcasts;
        d["delivered"] = r.delivered;
        d["retransmitted_at"] = r.retransmitted_at;
        d["log"] = r.log;
        return d;
      },
      py::arg("dynamic_lifetime"), py::arg("seed") = 1);
  m.def(
      "cache_redundancy_scenario",
      [](std::uint32_t cs, std::uint64_t seed) {
        const auto r = ex::run_cache_redundancy_scenario(cs, seed);
        py::dict d;
        d["delivered"] = r.delivered;
        d["duplicates"] = r.duplicates;
        d["cache_hits"] = r.cache_hits;
        d["data_broadcasts"] = r.data_broadcasts;
        d["log"] = r.log;
        return d;
      },
      py::arg("cs"), py::arg("seed") = 1);

  py::class_<tr::RttEstimator>(m, "RttEstimator")
      .def(py::init([](double initial_rto, double min_rto, double max_rto) {
             return tr::RttEstimator(tr::RtoParams{initial_rto, min_rto, max_rto});
           }),
           py::arg("initial_rto") = 2.0, py::arg("min_rto") = 0.2, py::arg("max_rto") = 60.0)
      .def("add_sample", &tr::RttEstimator::add_sample)
      .def("backoff", &tr::RttEstimator::backoff)
      .def_property_readonly("rto", &tr::RttEstimator::rto)
      .def_property_readonly("srtt", &tr::RttEstimator::srtt)
      .def_property_readonly("rttvar", &tr::RttEstimator::rttvar);

  py::class_<tr::CongestionState>(m, "Window")
      .def(py::init([](double cwnd, double ssthresh) {
             return tr::CongestionState{.cwnd = cwnd, .ssthresh = ssthresh};
           }),
           py::arg("cwnd") = 1.0, py::arg("ssthresh") = std::numeric_limits<double>::infinity())
      .def_readwrite("cwnd", &tr::CongestionState::cwnd)
      .def_readwrite("ssthresh", &tr::CongestionState::ssthresh)
      .def("increase", &tr::window_increase)
      .def("decrease", &tr::window_decrease)
      .def("apply_cwl", &tr::apply_cwl, py::arg("hop_count"));
  m.def("cwl_from_hops", &tr::cwl_from_hops, py::arg("hop_count"));
  m.def("wired_drop_probability", &dcsim::mac::wired_drop_probability, py::arg("p_byte_error"),
        py::arg("bytes"));
}

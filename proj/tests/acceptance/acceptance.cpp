// Runs every acceptance criterion and prints one PASS/FAIL line for each.
//
//   acceptance [--only N]... [--expected-fail N]... [--cli PATH]
//
// Exit status is 0 when the failing criteria are exactly the ones declared
// with --expected-fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dcsim/experiment/config.hpp"
#include "dcsim/experiment/runner.hpp"
#include "dcsim/experiment/scripted.hpp"
#include "dcsim/mac/wired_network.hpp"
#include "dcsim/transport/consumer.hpp"

using namespace dcsim;
namespace ex = dcsim::experiment;
namespace tr = dcsim::transport;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string cli_path;

// One-sided sign test: probability of at least `wins` successes out of
// `wins + losses` fair coin flips. Ties are discarded.
double sign_test_p(int wins, int losses) {
  const int n = wins + losses;
  double p = 0.0;
  for (int k = wins; k <= n; ++k) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                  n * std::log(2.0));
  }
  return p;
}

class NullLink final : public mac::LinkLayer {
 public:
  std::size_t node_count() const override { return 1; }
  bool send(NodeId, ndn::Packet, NodeId) override { return true; }
  std::size_t queue_length(NodeId, NodeId) const override { return 0; }
  std::size_t queue_capacity() const override { return 25; }
};

// cwnd of a consumer after `hops`-hop Data for its first four requests.
double consumer_cwnd_after_data(bool cwl, std::uint32_t hops) {
  Simulator sim(1);
  NullLink link;
  ndn::Forwarder fwd(0, sim, link, {});
  tr::ConsumerConfig cfg;
  cfg.prefix = ndn::Name::parse("/p0");
  cfg.cwl_enabled = cwl;
  tr::ConsumerApp app(0, sim, fwd, cfg);
  app.start(Time::zero());
  sim.run_until(Time::zero());
  for (std::uint64_t s = 0; s < 4; ++s) {
    ndn::Data d;
    d.name = cfg.prefix.append_sequence(s);
    d.hop_count = hops;
    app.on_data(d);
  }
  return app.window().cwnd;
}

Outcome aimd_vectors() {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  int bad = 0;
  auto near = [&](double got, double want) {
    if (std::abs(got - want) > 1e-12) ++bad;
  };
  tr::CongestionState s{.cwnd = 1.0, .ssthresh = kInf};
  tr::window_increase(s);
  near(s.cwnd, 2.0);
  s = {.cwnd = 4.0, .ssthresh = 2.0};
  tr::window_increase(s);
  near(s.cwnd, 4.25);
  s = {.cwnd = 2.0, .ssthresh = 2.0};
  tr::window_increase(s);
  near(s.cwnd, 2.5);
  for (auto [cwnd, ss, after] : {std::tuple{10.0, 5.0, 5.0}, {1.0, 0.5, 1.0}, {3.0, 1.5, 1.5}}) {
    s = {.cwnd = cwnd, .ssthresh = kInf};
    tr::window_decrease(s);
    near(s.ssthresh, ss);
    near(s.cwnd, after);
  }
  s = {.cwnd = 4.25};
  tr::apply_cwl(s, 3);
  near(s.cwnd, 1.0);
  s = {.cwnd = 2.0};
  tr::apply_cwl(s, 12);
  near(s.cwnd, 2.0);
  near(consumer_cwnd_after_data(false, 3), 5.0);
  near(consumer_cwnd_after_data(true, 3), 1.0);
  return {bad == 0, fmt("%d mismatches across 9 vectors", bad)};
}

Outcome cwl_table() {
  const std::uint32_t expected[] = {2, 2, 1, 1, 2, 2, 3, 3, 3, 3, 4, 4, 4, 5, 5};
  std::string got;
  bool ok = true;
  for (std::uint32_t h = 1; h <= 15; ++h) {
    const auto v = tr::cwl_from_hops(h);
    ok = ok && v == expected[h - 1];
    got += std::to_string(v) + (h < 15 ? "," : "");
  }
  return {ok, "hops 1-15 -> " + got};
}

// Reference estimator written from the textbook definition.
struct ReferenceRto {
  double lo, hi;
  bool primed = false;
  double srtt = 0, var = 0, rto;
  ReferenceRto(double initial, double lo_, double hi_) : lo(lo_), hi(hi_), rto(initial) {
    rto = std::min(std::max(rto, lo), hi);
  }
  void sample(double r) {
    if (!primed) {
      srtt = r;
      var = r / 2;
      primed = true;
    } else {
      var = 0.75 * var + 0.25 * std::fabs(srtt - r);
      srtt = 0.875 * srtt + 0.125 * r;
    }
    rto = std::min(std::max(srtt + 4 * var, lo), hi);
  }
  void timeout() { rto = std::min(rto * 2, hi); }
};

Outcome rto_oracle() {
  RandomStream rand(2024, "rto-oracle");
  double worst = 0.0;
  std::uint64_t clamped_low = 0, clamped_high = 0, steps = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    const double lo = std::pow(10.0, rand.uniform(-3.0, 0.0));
    const double hi = lo * std::pow(10.0, rand.uniform(1.0, 4.0));
    const double initial = rand.uniform(lo, hi);
    tr::RttEstimator impl(tr::RtoParams{initial, lo, hi});
    ReferenceRto ref(initial, lo, hi);
    worst = std::max(worst, std::abs(impl.rto() - ref.rto));
    const auto len = rand.uniform_int(1, 60);
    for (std::uint64_t i = 0; i < len; ++i) {
      if (rand.bernoulli(0.1)) {
        impl.backoff();
        ref.timeout();
      } else {
        const double r = std::pow(10.0, rand.uniform(-3.5, 1.0));
        impl.add_sample(r);
        ref.sample(r);
        worst = std::max({worst, std::abs(*impl.srtt() - ref.srtt),
                          std::abs(impl.rttvar() - ref.var)});
      }
      worst = std::max(worst, std::abs(impl.rto() - ref.rto));
      clamped_low += ref.rto == lo;
      clamped_high += ref.rto == hi;
      ++steps;
    }
  }
  return {worst <= 1e-9 && clamped_low > 0 && clamped_high > 0,
          fmt("max |diff| %.3g over %llu steps (%llu at min, %llu at max)", worst,
              (unsigned long long)steps, (unsigned long long)clamped_low,
              (unsigned long long)clamped_high)};
}

Outcome aggregation() {
  const auto fixed = ex::run_aggregation_scenario(false);
  const auto dil = ex::run_aggregation_scenario(true);
  const bool ok = fixed.z_downstreams == 2 && fixed.data_broadcasts >= 1 &&
                  dil.z_downstreams == 1 && dil.data_broadcasts == 0;
  return {ok, fmt("fixed: %zu downstreams, %llu data broadcasts; dynamic: %zu downstreams, %llu "
                  "data broadcasts",
                  fixed.z_downstreams, (unsigned long long)fixed.data_broadcasts,
                  dil.z_downstreams, (unsigned long long)dil.data_broadcasts)};
}

Outcome cache_redundancy() {
  const auto on = ex::run_cache_redundancy_scenario(200);
  const auto off = ex::run_cache_redundancy_scenario(0);
  return {on.duplicates >= 1 && off.cache_hits == 0,
          fmt("cs=200: %llu duplicates; cs=0: %llu cache hits",
              (unsigned long long)on.duplicates, (unsigned long long)off.cache_hits)};
}

Outcome wired_loss() {
  constexpr int kFrames = 100000;
  Simulator sim(7);
  mac::WiredNetwork net(sim, 2, kFrames);
  mac::WiredLink link;
  link.p_byte_error = 1e-5;
  net.connect(0, 1, link);
  std::uint64_t arrived = 0;
  net.set_receiver([&](NodeId, NodeId, const ndn::Packet&) { ++arrived; });
  ndn::Data d;
  d.name = ndn::Name::parse("/w");
  d.payload_size = 1500 - static_cast<std::uint32_t>(d.name.wire_bytes()) - ndn::kDataOverheadBytes -
                   ndn::kLinkOverheadBytes;
  const ndn::Packet packet = d;
  if (ndn::frame_bytes(packet) != 1500) return {false, "frame is not 1500 bytes"};
  for (int i = 0; i < kFrames; ++i) net.send(0, packet, 1);
  sim.run_until(Time::from_seconds(1000));
  const double lost = 1.0 - static_cast<double>(arrived) / kFrames;
  return {std::abs(lost - 0.0149) <= 0.002,
          fmt("%.4f%% of %d frames lost", lost * 100, kFrames)};
}

Outcome contention_trend() {
  constexpr int kSeeds = 60;
  auto variant = [](bool cwl, bool dil) {
    ex::ScenarioConfig c = ex::preset("manet");
    c.cwl = cwl;
    c.dil = dil;
    c.runs = kSeeds;
    return ex::run_experiment(c, {.threads = 0});
  };
  const auto both = variant(true, true);
  const auto cwl = variant(true, false);
  const auto none = variant(false, false);
  auto compare = [](const auto& hi, const auto& lo, auto metric) {
    int w = 0, l = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
      const double a = metric(hi[i]), b = metric(lo[i]);
      w += a > b;
      l += a < b;
    }
    return std::pair{w, l};
  };
  auto thr = [](const ex::MetricsRecord& r) { return r.throughput_mbps; };
  auto bc = [](const ex::MetricsRecord& r) { return static_cast<double>(r.data_broadcasts); };
  auto mean = [](const auto& v, auto metric) {
    double s = 0;
    for (const auto& r : v) s += metric(r);
    return s / static_cast<double>(v.size());
  };
  const auto t1 = compare(both, cwl, thr);
  const auto t2 = compare(cwl, none, thr);
  const auto b1 = compare(none, cwl, bc);
  const auto b2 = compare(cwl, both, bc);
  double worst = 0;
  for (auto [w, l] : {t1, t2, b1, b2}) worst = std::max(worst, sign_test_p(w, l));
  return {worst < 0.05,
          fmt("%d seeds; throughput %.3f/%.3f/%.3f Mbps (wins %d-%d, %d-%d); data broadcasts "
              "%.0f/%.0f/%.0f (wins %d-%d, %d-%d); largest p %.2g",
              kSeeds, mean(both, thr), mean(cwl, thr), mean(none, thr), t1.first, t1.second,
              t2.first, t2.second, mean(none, bc), mean(cwl, bc), mean(both, bc), b1.first,
              b1.second, b2.first, b2.second, worst)};
}

Outcome caching_trend() {
  constexpr int kSeeds = 30;
  auto mean_throughput = [](ex::Traffic traffic, std::uint32_t cs) {
    ex::ScenarioConfig c = ex::preset("manet");
    c.traffic = traffic;
    c.cs = cs;
    c.runs = kSeeds;
    double s = 0;
    for (const auto& r : ex::run_experiment(c, {.threads = 0})) s += r.throughput_mbps;
    return s / kSeeds;
  };
  const double o0 = mean_throughput(ex::Traffic::kOneToOne, 0);
  const double o200 = mean_throughput(ex::Traffic::kOneToOne, 200);
  const double m0 = mean_throughput(ex::Traffic::kManyToOne, 0);
  const double m200 = mean_throughput(ex::Traffic::kManyToOne, 200);
  const double mm200 = mean_throughput(ex::Traffic::kManyToMany, 200);
  const double gain_m1 = m200 / m0 - 1.0;
  const double gain_11 = o200 / o0 - 1.0;
  const bool a = gain_m1 > 0.10, b = gain_m1 > gain_11, c = mm200 > o200;
  return {a && b && c,
          fmt("%d seeds; m-1 gain %+.1f%% (%s), 1-1 gain %+.1f%% (m-1 above 1-1: %s), m-m %.3f "
              "vs 1-1 %.3f Mbps at cs=200 (%s)",
              kSeeds, gain_m1 * 100, a ? "ok" : "needs > +10%", gain_11 * 100, b ? "ok" : "no",
              mm200, o200, c ? "ok" : "no")};
}

Outcome invariants() {
  ex::ScenarioConfig c = ex::preset("manet");
  c.speed = 4.0;
  c.cwl = true;
  c.dil = true;
  c.runs = 3;
  ex::RunOptions o;
  o.check_invariants = true;
  o.threads = 0;
  std::uint64_t violations = 0;
  std::string first;
  for (const auto& r : ex::run_experiment_detailed(c, o)) {
    violations += r.metrics.invariant_violations;
    if (first.empty() && !r.violations.empty()) first = r.violations.front();
  }
  return {violations == 0, fmt("%d runs of %.0f s at %.0f m/s, %llu violations%s%s", c.runs,
                               c.duration, c.speed, (unsigned long long)violations,
                               first.empty() ? "" : "; first: ", first.c_str())};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  if (cli_path.empty() || !fs::exists(cli_path)) return {false, "command-line binary not found"};
  const fs::path root = fs::temp_directory_path() / ("dcsim-determinism-" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::string> csvs;
  std::vector<std::vector<std::string>> traces;
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path dir = root / std::to_string(rep);
    fs::create_directories(dir);
    const std::string cmd = "\"" + cli_path + "\" run --speed 4 --duration 30 --runs 3 --seed 11" +
                            " --threads " + std::to_string(rep + 1) + " --out \"" +
                            (dir / "out.csv").string() + "\" --trace \"" +
                            (dir / "trace").string() + "\" 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
    csvs.push_back(slurp(dir / "out.csv"));
    std::vector<std::string> t;
    for (int s = 11; s <= 13; ++s) {
      t.push_back(slurp(dir / "trace" / ("trace_seed" + std::to_string(s) + ".csv")));
    }
    traces.push_back(t);
  }
  fs::remove_all(root);
  std::size_t trace_bytes = 0;
  for (const auto& t : traces[0]) trace_bytes += t.size();
  const bool ok = !csvs[0].empty() && csvs[0] == csvs[1] && trace_bytes > 0 &&
                  traces[0] == traces[1];
  return {ok, fmt("2 executions: csv %zu bytes %s, 3 traces %zu bytes %s", csvs[0].size(),
                  csvs[0] == csvs[1] ? "identical" : "DIFFER", trace_bytes,
                  traces[0] == traces[1] ? "identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--only" || a == "--expected-fail" || a == "--cli") && i + 1 < argc) {
      const std::string v = argv[++i];
      if (a == "--cli") {
        cli_path = v;
      } else {
        (a == "--only" ? only : expected_fail).insert(std::stoi(v));
      }
    } else {
      std::cerr << "usage: acceptance [--only N]... [--expected-fail N]... [--cli PATH]\n";
      return 2;
    }
  }
#ifdef DCSIM_CLI_PATH
  if (cli_path.empty()) cli_path = DCSIM_CLI_PATH;
#endif

  const std::vector<Criterion> criteria = {
      {1, "AIMD unit vectors", aimd_vectors},
      {2, "hop-count window limit table", cwl_table},
      {3, "RTO against a reference estimator", rto_oracle},
      {4, "PIT aggregation, fixed vs dynamic lifetime", aggregation},
      {5, "cache redundancy over two paths", cache_redundancy},
      {6, "wired per-packet loss", wired_loss},
      {7, "contention control trend", contention_trend},
      {8, "caching trend", caching_trend},
      {9, "runtime invariants on a mobile grid", invariants},
      {10, "determinism of CSV and traces", determinism},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << o.detail
              << fmt(" [%.1fs]", secs)
              << (!o.pass && expected_fail.contains(c.id) ? " (expected failure)" : "") << "\n"
              << std::flush;
  }
  std::set<int> want;
  for (int id : expected_fail) {
    if (only.empty() || only.contains(id)) want.insert(id);
  }
  if (failed != want) {
    for (int id : want) {
      if (!failed.contains(id)) std::cout << "criterion " << id << " was expected to fail but passed\n";
    }
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmsim {

// Full parameter set of one simulation. Defaults are the reference setup:
// 900 traders on a 30x30 small-world lattice, 25% fundamentalists, equal
// endowments, uncorrelated assets (delta = 0).
struct SimConfig {
  int side = 30;                          // lattice side, N = side^2 agents
  double fraction_fundamentalists = 0.25; // rest are chartists
  double p1_0 = 500.0;                    // initial asset prices
  double p2_0 = 500.0;
  double alpha = 0.95;       // information kept per transmission, (0, 1]
  double sigma_1f = 1.0;     // std dev of fundamental-value increments
  double sigma_2f = 1.0;
  int t_f = 10;              // steps between fundamental-value updates
  double theta = 30.0;       // fundamentalist heterogeneity half-range
  double phi = 0.5;          // fundamentalist convergence speed
  int t_max = 100;           // max chartist window length
  double kappa = 2.0;        // chartist trend sensitivity
  double sigma = 30.0;       // expectation noise half-range
  double tau = 15.0;         // hold/act sensitivity threshold
  double m0 = 40000.0;       // initial money per trader
  long q1_0 = 200;           // initial holdings per trader
  long q2_0 = 200;
  double delta = 0.0;        // cross-asset imbalance coupling
  double beta_ask = 1.0;     // asker price-range width factor
  double rewiring_prob = 0.1;
  long transient_steps = 5000;
  long record_steps = 10000;
  std::uint64_t seed = 1;
  double price_floor = 1.0;  // global prices never drop below this

  int num_agents() const { return side * side; }
  int num_fundamentalists() const {
    return static_cast<int>(fraction_fundamentalists * num_agents());
  }
};

// Returns the offending field names, empty when the config is valid.
std::vector<std::string> invalid_fields(const SimConfig& cfg);

// Throws ConfigError listing the offending fields.
void validate(const SimConfig& cfg);

// All recognized keys, in serialization order.
const std::vector<std::string>& config_keys();

// Sets one field from its text value. Throws ConfigError on unknown key or
// unparsable value.
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

// key=value lines, '#' comments, blank lines ignored.
SimConfig parse_config_text(const std::string& text);
SimConfig parse_config_file(const std::string& path);

std::string serialize_config(const SimConfig& cfg);
std::string get_field(const SimConfig& cfg, const std::string& key);

bool operator==(const SimConfig& a, const SimConfig& b);

}  // namespace mmsim

#include "mmsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mmsim/errors.hpp"

namespace mmsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = trim(value);
  const char* first = v.data();
  const char* last = v.data() + v.size();
  std::from_chars_result res;
  if constexpr (std::is_floating_point_v<T>) {
    res = std::from_chars(first, last, out);
  } else {
    res = std::from_chars(first, last, out, 10);
  }
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("config: cannot parse value '" + v + "' for key '" + key + "'", {key});
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FieldOps {
  std::function<void(SimConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

const std::vector<std::pair<std::string, FieldOps>>& field_table() {
  static const std::vector<std::pair<std::string, FieldOps>> table = {
#define MM_FIELD_NUM(name, type)                                                      \
  {#name,                                                                             \
   FieldOps{[](SimConfig& c, const std::string& k, const std::string& v) {            \
              c.name = parse_number<type>(k, v);                                      \
            },                                                                        \
            [](const SimConfig& c) {                                                  \
              if constexpr (std::is_floating_point_v<type>)                           \
                return format_double(c.name);                                         \
              else                                                                    \
                return std::to_string(c.name);                                        \
            }}}
      MM_FIELD_NUM(side, int),
      MM_FIELD_NUM(fraction_fundamentalists, double),
      MM_FIELD_NUM(p1_0, double),
      MM_FIELD_NUM(p2_0, double),
      MM_FIELD_NUM(alpha, double),
      MM_FIELD_NUM(sigma_1f, double),
      MM_FIELD_NUM(sigma_2f, double),
      MM_FIELD_NUM(t_f, int),
      MM_FIELD_NUM(theta, double),
      MM_FIELD_NUM(phi, double),
      MM_FIELD_NUM(t_max, int),
      MM_FIELD_NUM(kappa, double),
      MM_FIELD_NUM(sigma, double),
      MM_FIELD_NUM(tau, double),
      MM_FIELD_NUM(m0, double),
      MM_FIELD_NUM(q1_0, long),
      MM_FIELD_NUM(q2_0, long),
      MM_FIELD_NUM(delta, double),
      MM_FIELD_NUM(beta_ask, double),
      MM_FIELD_NUM(rewiring_prob, double),
      MM_FIELD_NUM(transient_steps, long),
      MM_FIELD_NUM(record_steps, long),
      MM_FIELD_NUM(seed, std::uint64_t),
      MM_FIELD_NUM(price_floor, double),
#undef MM_FIELD_NUM
  };
  return table;
}

const FieldOps* find_field(const std::string& key) {
  for (const auto& [name, ops] : field_table()) {
    if (name == key) return &ops;
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> invalid_fields(const SimConfig& cfg) {
  std::vector<std::string> bad;
  auto check = [&](bool ok, const char* name) {
    if (!ok) bad.push_back(name);
  };
  check(cfg.side >= 2, "side");
  check(cfg.fraction_fundamentalists >= 0.0 && cfg.fraction_fundamentalists <= 1.0,
        "fraction_fundamentalists");
  check(cfg.p1_0 > 0.0, "p1_0");
  check(cfg.p2_0 > 0.0, "p2_0");
  check(cfg.alpha > 0.0 && cfg.alpha <= 1.0, "alpha");
  check(cfg.sigma_1f >= 0.0, "sigma_1f");
  check(cfg.sigma_2f >= 0.0, "sigma_2f");
  check(cfg.t_f >= 1, "t_f");
  check(cfg.theta >= 0.0, "theta");
  check(cfg.phi >= 0.0 && cfg.phi <= 1.0, "phi");
  check(cfg.t_max >= 2, "t_max");
  check(cfg.kappa >= 0.0, "kappa");
  check(cfg.sigma >= 0.0, "sigma");
  check(cfg.tau >= 0.0, "tau");
  check(cfg.m0 >= 0.0, "m0");
  check(cfg.q1_0 >= 0, "q1_0");
  check(cfg.q2_0 >= 0, "q2_0");
  check(cfg.q1_0 + cfg.q2_0 > 0, "q1_0");
  check(cfg.delta >= 0.0, "delta");
  check(cfg.beta_ask >= 0.0, "beta_ask");
  check(cfg.rewiring_prob >= 0.0 && cfg.rewiring_prob <= 1.0, "rewiring_prob");
  check(cfg.transient_steps >= 0, "transient_steps");
  check(cfg.record_steps >= 0, "record_steps");
  check(cfg.price_floor > 0.0, "price_floor");
  return bad;
}

void validate(const SimConfig& cfg) {
  auto bad = invalid_fields(cfg);
  if (!bad.empty()) {
    std::string msg = "config: invalid value for";
    for (const auto& k : bad) msg += " '" + k + "'";
    throw ConfigError(msg, bad);
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [name, ops] : field_table()) out.push_back(name);
    return out;
  }();
  return keys;
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
  const FieldOps* ops = find_field(key);
  if (!ops) throw ConfigError("config: unknown key '" + key + "'", {key});
  ops->set(cfg, key, value);
}

std::string get_field(const SimConfig& cfg, const std::string& key) {
  const FieldOps* ops = find_field(key);
  if (!ops) throw ConfigError("config: unknown key '" + key + "'", {key});
  return ops->get(cfg);
}

SimConfig parse_config_text(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value: '" + s + "'");
    }
    apply_override(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return cfg;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const SimConfig& cfg) {
  std::string out;
  for (const auto& [name, ops] : field_table()) {
    out += name;
    out += "=";
    out += ops.get(cfg);
    out += "\n";
  }
  return out;
}

bool operator==(const SimConfig& a, const SimConfig& b) {
  for (const auto& [name, ops] : field_table()) {
    if (ops.get(a) != ops.get(b)) return false;
  }
  return true;
}

}  // namespace mmsim

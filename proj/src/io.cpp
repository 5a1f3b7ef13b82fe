#include "mmsim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mmsim/errors.hpp"

namespace mmsim::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw InputError("io: cannot open '" + path + "' for writing");
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double_field(const std::string& s, const std::string& path, std::size_t line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path + ": line " + std::to_string(line) + ": bad number '" + s + "'", line);
  }
}

long parse_long_field(const std::string& s, const std::string& path, std::size_t line) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path + ": line " + std::to_string(line) + ": bad integer '" + s + "'", line);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_prices_csv(const std::vector<StepRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "t,p1,p2,p_avg\n";
  for (const StepRow& r : rows) {
    out << r.t << ',' << format_double(r.p1) << ',' << format_double(r.p2) << ','
        << format_double(r.p_avg) << '\n';
  }
}

void write_avalanches_csv(const std::vector<StepRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "t,size\n";
  for (const StepRow& r : rows) out << r.t << ',' << r.avalanche_size << '\n';
}

void write_books_csv(const std::vector<StepRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "t,nb1,na1,nt1,pl1,omega1,nb2,na2,nt2,pl2,omega2\n";
  auto side = [&](const BookStepStats& b) {
    std::string pl = b.p_last ? format_double(*b.p_last) : "";
    return std::to_string(b.n_b) + ',' + std::to_string(b.n_a) + ',' + std::to_string(b.n_t) +
           ',' + pl + ',' + std::to_string(b.omega);
  };
  for (const StepRow& r : rows) {
    out << r.t << ',' << side(r.book1) << ',' << side(r.book2) << '\n';
  }
}

void write_agents_csv(const std::vector<AgentSnapshot>& agents, const std::string& path) {
  auto out = open_out(path);
  out << "id,character,money,q1,q2,wealth\n";
  for (const AgentSnapshot& a : agents) {
    out << a.id << ',' << to_string(a.character) << ',' << format_double(a.money) << ',' << a.q1
        << ',' << a.q2 << ',' << format_double(a.wealth) << '\n';
  }
}

PriceSeries read_prices_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io: cannot open '" + path + "'");
  PriceSeries ps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "t,p1,p2,p_avg") {
        throw ParseError(path + ": line 1: unexpected header '" + line + "'", 1);
      }
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      throw ParseError(path + ": line " + std::to_string(lineno) + ": expected 4 fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    }
    ps.t.push_back(parse_long_field(fields[0], path, lineno));
    ps.p1.push_back(parse_double_field(fields[1], path, lineno));
    ps.p2.push_back(parse_double_field(fields[2], path, lineno));
    ps.p_avg.push_back(parse_double_field(fields[3], path, lineno));
  }
  return ps;
}

std::vector<std::uint64_t> read_avalanches_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io: cannot open '" + path + "'");
  std::vector<std::uint64_t> sizes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "t,size") {
        throw ParseError(path + ": line 1: unexpected header '" + line + "'", 1);
      }
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw ParseError(path + ": line " + std::to_string(lineno) + ": expected 2 fields", lineno);
    }
    sizes.push_back(static_cast<std::uint64_t>(parse_long_field(fields[1], path, lineno)));
  }
  return sizes;
}

void write_pdf_csv(const std::vector<PdfRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "series,bin_center,density,gaussian_ref,qgaussian_model\n";
  for (const PdfRow& r : rows) {
    out << r.series << ',' << format_double(r.bin_center) << ',' << format_double(r.density)
        << ',' << format_double(r.gaussian_ref) << ',' << format_double(r.qgaussian_model)
        << '\n';
  }
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("io: cannot open '" + path + "' for checksum");
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

void write_manifest(const Manifest& manifest, const std::string& path) {
  nlohmann::json j;
  nlohmann::json cfg;
  for (const auto& key : config_keys()) {
    if (key == "seed" || key == "transient_steps" || key == "record_steps" || key == "side" ||
        key == "t_f" || key == "t_max" || key == "q1_0" || key == "q2_0") {
      cfg[key] = std::stoll(get_field(manifest.config, key));
    } else {
      cfg[key] = std::stod(get_field(manifest.config, key));
    }
  }
  j["config"] = cfg;
  j["seeds"] = manifest.seeds;
  j["outputs"] = manifest.checksums;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io: cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what(), 0);
  }
  Manifest m;
  try {
    for (auto& [key, value] : j.at("config").items()) {
      std::ostringstream text;
      if (value.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", value.get<double>());
        text << buf;
      } else {
        text << value;
      }
      apply_override(m.config, key, text.str());
    }
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("outputs")) {
      m.checksums = j.at("outputs").get<std::map<std::string, std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": bad manifest structure: " + e.what(), 0);
  }
  return m;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw InputError("io: cannot create directory '" + path + "': " + ec.message());
}

}  // namespace mmsim::io

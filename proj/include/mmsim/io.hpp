#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mmsim/config.hpp"
#include "mmsim/engine.hpp"
#include "mmsim/stats.hpp"

namespace mmsim::io {

// All CSV output: comma-separated, header row, LF endings, floats with
// 9 significant digits.
std::string format_double(double v);

void write_prices_csv(const std::vector<StepRow>& rows, const std::string& path);
void write_avalanches_csv(const std::vector<StepRow>& rows, const std::string& path);
void write_books_csv(const std::vector<StepRow>& rows, const std::string& path);
void write_agents_csv(const std::vector<AgentSnapshot>& agents, const std::string& path);

struct PriceSeries {
  std::vector<long> t;
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<double> p_avg;
};

// Throws ParseError with the 1-based line number on malformed input.
PriceSeries read_prices_csv(const std::string& path);
std::vector<std::uint64_t> read_avalanches_csv(const std::string& path);

struct PdfRow {
  std::string series;
  double bin_center;
  double density;
  double gaussian_ref;
  double qgaussian_model;
};

void write_pdf_csv(const std::vector<PdfRow>& rows, const std::string& path);

// FNV-1a 64-bit over the file bytes, as "fnv1a64:<hex>".
std::string file_checksum(const std::string& path);

struct Manifest {
  SimConfig config;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, std::string> checksums;  // path relative to out dir
};

void write_manifest(const Manifest& manifest, const std::string& path);
Manifest read_manifest(const std::string& path);

void ensure_directory(const std::string& path);

}  // namespace mmsim::io

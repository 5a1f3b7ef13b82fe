#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mmsim {

// Invalid or out-of-range configuration; carries the offending keys.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::string msg, std::vector<std::string> keys = {})
      : std::runtime_error(std::move(msg)), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

// Malformed caller input (mismatched series lengths, missing files, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV or manifest parse failure; line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t line)
      : std::runtime_error(std::move(msg)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Zero-variance series where a standardization or moment is requested.
class DegenerateSeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relaxation exceeded the toppling cap; only reachable when alpha >= 1.
class RunawayAvalancheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mmsim

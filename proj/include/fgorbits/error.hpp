#pragma once

#include <stdexcept>
#include <string>

namespace fgorbits {

enum class error_kind { invalid_input, unsupported_rank, resource_limit };

inline const char* to_string(error_kind k) {
  switch (k) {
    case error_kind::invalid_input: return "invalid-input";
    case error_kind::unsupported_rank: return "unsupported-rank";
    case error_kind::resource_limit: return "resource-limit";
  }
  return "unknown";
}

// Base for every error raised by the library. what() carries the message
// without the kind prefix; the CLI formats both on one line.
class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

class invalid_input : public error {
 public:
  explicit invalid_input(const std::string& msg) : error(error_kind::invalid_input, msg) {}
};

class unsupported_rank : public error {
 public:
  explicit unsupported_rank(const std::string& msg) : error(error_kind::unsupported_rank, msg) {}
};

class resource_limit : public error {
 public:
  explicit resource_limit(const std::string& msg) : error(error_kind::resource_limit, msg) {}
};

}  // namespace fgorbits

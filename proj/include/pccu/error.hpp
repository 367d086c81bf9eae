#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pccu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent user input (config, BCs, overrides).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Where in the space-time mesh a numerical failure happened.
struct Location {
  std::optional<int> j = std::nullopt;
  std::optional<int> k = std::nullopt;
  std::optional<double> t = std::nullopt;
  std::optional<int> stage = std::nullopt;

  std::string describe() const {
    std::string s;
    auto add = [&s](const std::string& part) {
      if (!s.empty()) s += ", ";
      s += part;
    };
    if (j) add("j=" + std::to_string(*j));
    if (k) add("k=" + std::to_string(*k));
    if (t) add("t=" + std::to_string(*t));
    if (stage) add("stage=" + std::to_string(*stage));
    return s;
  }
};

/// Failure of the discrete scheme: inadmissible state, root solve failure,
/// non-finite values. Carries the location so blow-ups can be traced.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& reason, Location where = {})
      : Error(reason), reason_(reason), where_(where) {
    refresh();
  }

  const Location& where() const { return where_; }
  const std::string& reason() const { return reason_; }
  const char* what() const noexcept override { return message_.c_str(); }

  /// Fills in location fields that are not yet known; used while the
  /// exception travels up through line sweeps, stages and the step loop.
  void add_location(const Location& loc) {
    if (!where_.j && loc.j) where_.j = loc.j;
    if (!where_.k && loc.k) where_.k = loc.k;
    if (!where_.t && loc.t) where_.t = loc.t;
    if (!where_.stage && loc.stage) where_.stage = loc.stage;
    refresh();
  }

  void set_location(const Location& loc) {
    where_ = loc;
    refresh();
  }

 private:
  void refresh() {
    const std::string loc = where_.describe();
    message_ = loc.empty() ? reason_ : reason_ + " (" + loc + ")";
  }

  std::string reason_;
  Location where_;
  std::string message_;
};

class AdmissibilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ReconstructionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pccu

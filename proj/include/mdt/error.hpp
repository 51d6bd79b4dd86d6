#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdt {

/// Raised when a lexicon file cannot be parsed or fails validation.
/// `file` and `line` are empty/zero when the error is not tied to a location.
class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(format(file, line, message)), file_(std::move(file)), line_(line) {}

  explicit LexiconError(const std::string& message) : std::runtime_error(message) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& file, std::size_t line, const std::string& message) {
    if (file.empty()) return message;
    if (line == 0) return file + ": " + message;
    return file + ":" + std::to_string(line) + ": " + message;
  }

  std::string file_;
  std::size_t line_ = 0;
};

}  // namespace mdt

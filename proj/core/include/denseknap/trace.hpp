#pragma once

#include <string>
#include <vector>

namespace denseknap {

// Receives one JSON object per line describing solver branches, skip reasons
// and diagnostic thresholds. Passing nullptr everywhere disables tracing.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void emit(const std::string& json_line) = 0;
};

class VectorTrace final : public TraceSink {
 public:
  void emit(const std::string& json_line) override { lines_.push_back(json_line); }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
};

}  // namespace denseknap

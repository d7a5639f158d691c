#pragma once

#include <string>
#include <vector>

namespace madelab {

struct Warning {
  std::string code;
  std::string message;
};

// Runtime warnings. Without an active capture they go to stderr (unless
// quiet); with one, they are recorded into the innermost capture of the
// calling thread.
void warn(std::string code, std::string message);
void set_warnings_quiet(bool quiet);

class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<Warning>& warnings() const { return warnings_; }
  bool contains(const std::string& code) const;

 private:
  friend void warn(std::string, std::string);
  std::vector<Warning> warnings_;
  WarningCapture* previous_;
};

}  // namespace madelab

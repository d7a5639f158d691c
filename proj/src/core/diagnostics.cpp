#include "madelab/core/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>

namespace madelab {

namespace {
thread_local WarningCapture* active_capture = nullptr;
std::atomic<bool> quiet{false};
}  // namespace

void set_warnings_quiet(bool q) { quiet = q; }

void warn(std::string code, std::string message) {
  if (active_capture != nullptr) {
    active_capture->warnings_.push_back({std::move(code), std::move(message)});
    return;
  }
  if (!quiet) std::cerr << "warning [" << code << "]: " << message << '\n';
}

WarningCapture::WarningCapture() : previous_(active_capture) {
  active_capture = this;
}

WarningCapture::~WarningCapture() { active_capture = previous_; }

bool WarningCapture::contains(const std::string& code) const {
  return std::any_of(warnings_.begin(), warnings_.end(),
                     [&](const Warning& w) { return w.code == code; });
}

}  // namespace madelab

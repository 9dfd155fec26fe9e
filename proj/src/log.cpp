#include "zen/log.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace zen {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](const std::string& msg) {
    std::cerr << "zen: warning: " << msg << '\n';
  };
  return s;
}

}  // namespace

WarningSink set_warning_sink(WarningSink next) {
  std::lock_guard lock(sink_mutex());
  return std::exchange(sink(), std::move(next));
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

WarningCapture::WarningCapture()
    : previous_(set_warning_sink(
          [this](const std::string& msg) { messages_.push_back(msg); })) {}

WarningCapture::~WarningCapture() { set_warning_sink(std::move(previous_)); }

}  // namespace zen
